#include "quantrep/representation.hpp"

#include <stdexcept>

namespace quantrep {

namespace {

std::uint32_t pack(std::span<const int> row, int m) {
  std::uint32_t code = 0;
  for (int s : row) code = code * static_cast<std::uint32_t>(m) + static_cast<std::uint32_t>(s - 1);
  return code;
}

}  // namespace

Representation Representation::from_rows(int n, int m, const std::vector<OutcomeVector>& rows) {
  if (n < 1 || m < 2) throw DomainError("representation needs n >= 1 and m >= 2");
  int bits = 0;
  while ((1 << bits) < m) ++bits;
  if (n * bits > kMaxExplicitBits) throw DomainError("representation too large to tabulate");
  Representation rep;
  rep.n_ = n;
  rep.m_ = m;
  rep.packed_.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(n)) throw DomainError("row has wrong length");
    for (int s : row)
      if (s < 1 || s > m) throw DomainError("outcome index outside 1..m");
    rep.packed_.push_back(pack(row, m));
  }
  return rep;
}

int Representation::outcome(int i, std::uint64_t l) const {
  if (i < 1 || i > n_) throw std::out_of_range("copy index i=" + std::to_string(i));
  std::uint32_t code = packed_.at(l);
  for (int j = n_; j > i; --j) code /= static_cast<std::uint32_t>(m_);
  return static_cast<int>(code % static_cast<std::uint32_t>(m_)) + 1;
}

OutcomeVector Representation::row(std::uint64_t l) const {
  OutcomeVector out(static_cast<std::size_t>(n_));
  std::uint32_t code = packed_.at(l);
  for (int i = n_; i >= 1; --i) {
    out[static_cast<std::size_t>(i - 1)] = static_cast<int>(code % static_cast<std::uint32_t>(m_)) + 1;
    code /= static_cast<std::uint32_t>(m_);
  }
  return out;
}

Representation representation_from_perm(const OutcomeModel& model, const ValueTable& table,
                                        const AdmissiblePermutation& pi) {
  const auto verdict = verify_admissible(model, table, pi.mapping);
  if (!verdict) throw DomainError("inadmissible permutation: " + verdict.diagnostic);
  Representation rep;
  rep.n_ = table.n();
  rep.m_ = model.m();
  rep.packed_.reserve(pi.mapping.size());
  for (std::uint64_t image : pi.mapping)
    rep.packed_.push_back(pack(decode_weight_index(model, table.n(), BigInt(image)), model.m()));
  return rep;
}

AdmissiblePermutation perm_from_representation(const OutcomeModel& model, const ValueTable& table,
                                               const Representation& rep) {
  if (rep.n() != table.n() || rep.m() != model.m())
    throw DomainError("representation shape does not match the table");
  if (rep.cells() != table.cell_count().get_ui())
    throw DomainError("representation has the wrong number of cells");
  AdmissiblePermutation pi;
  pi.n = table.n();
  pi.mapping.reserve(rep.cells());
  std::vector<bool> seen(rep.cells(), false);
  for (std::uint64_t l = 0; l < rep.cells(); ++l) {
    const std::uint64_t image = encode_weight_index(model, rep.row(l)).get_ui();
    if (seen[image])
      throw DomainError("two cells carry the same outcome vector (row " + std::to_string(l) + ")");
    seen[image] = true;
    pi.mapping.push_back(image);
  }
  pi.blocks = blocks_of(model, table, pi.mapping);
  return pi;
}

Verdict check_representation(const OutcomeModel& model, const ValueTable& table, const Representation& rep) {
  const int n = rep.n();
  const int m = rep.m();
  if (n != table.n() || m != model.m()) return {false, "shape mismatch"};
  const std::uint64_t cells = table.cell_count().get_ui();
  if (rep.cells() != cells) return {false, "wrong number of cells"};

  std::vector<std::uint64_t> marginal(static_cast<std::size_t>(n * m), 0);
  std::vector<bool> seen(cells, false);
  for (std::uint64_t l = 0; l < cells; ++l) {
    const auto row = rep.row(l);
    ExactScalar sum = ExactScalar::zero(model.radicand());
    for (int i = 0; i < n; ++i) {
      const int s = row[static_cast<std::size_t>(i)];
      sum += model.outcome(s);
      ++marginal[static_cast<std::size_t>(i * m + s - 1)];
    }
    if (cmp(sum, is_star(table, BigInt(l))) != 0)
      return {false, "row " + std::to_string(l) + " sums to " + sum.to_string() + " not IS*"};
    const std::uint64_t code = pack(row, m);
    if (seen[code]) return {false, "outcome vector repeated at row " + std::to_string(l)};
    seen[code] = true;
  }
  const std::uint64_t expected = cells / static_cast<std::uint64_t>(m);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < m; ++s)
      if (marginal[static_cast<std::size_t>(i * m + s)] != expected)
        return {false, "copy " + std::to_string(i + 1) + " takes o_" + std::to_string(s + 1) + " on " +
                           std::to_string(marginal[static_cast<std::size_t>(i * m + s)]) +
                           " cells, expected " + std::to_string(expected)};
  return {};
}

OutcomeVector canonical_row(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l,
                            OracleStats* stats) {
  return decode_weight_index(model, table.n(), f_perm(model, table, l, stats));
}

}  // namespace quantrep
