#include "quantrep/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace quantrep {

namespace {

void require_explicit(const ValueTable& table) {
  if (table.level_bits() > kMaxExplicitBits)
    throw DomainError("explicit permutation tables need n(M+1) <= " + std::to_string(kMaxExplicitBits) +
                      "; use f_perm for larger n");
}

std::uint64_t to_u64(const BigInt& x) { return static_cast<std::uint64_t>(x.get_ui()); }

// Uniform draw from [0, bound) without modulo bias.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

LevelIndex f_perm(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l,
                  OracleStats* stats) {
  const int t = istep(table, l);
  const BigInt s = l - table.smc(t) + 1;
  return enum_b(model, table, t, s, stats);
}

LevelIndex f_perm_bruteforce(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l) {
  const int t = istep(table, l);
  BigInt remaining = l - table.smc(t) + 1;
  for (LevelIndex image = 0; image < table.cell_count(); ++image)
    if (iweight(model, table, image) == t && --remaining == 0) return image;
  throw std::logic_error("weight class smaller than step class");
}

LevelIndex inv_f(const OutcomeModel& model, const ValueTable& table, const LevelIndex& image,
                 OracleStats* stats) {
  const int t = iweight(model, table, image);
  const BigInt s = beta_fast(model, table, t, image, stats);
  return table.smc(t) + s - 1;
}

bool gamma_relation(const OutcomeModel& model, const ValueTable& table, const LevelIndex& l,
                    const LevelIndex& image, OracleStats* stats) {
  const int t = istep(table, l);
  const BigInt rhs = alpha(table, t, l);
  // alpha(t, l) >= 1 on the step class, so chi = 0 already decides the relation.
  if (!rib(model, table, t, image)) return sgn(rhs) == 0;
  return beta_fast(model, table, t, image, stats) == rhs;
}

std::vector<std::vector<std::uint64_t>> weight_classes(const OutcomeModel& model, const ValueTable& table) {
  require_explicit(table);
  std::vector<std::vector<std::uint64_t>> classes(static_cast<std::size_t>(table.T() + 1));
  const std::uint64_t cells = to_u64(table.cell_count());
  for (std::uint64_t l = 0; l < cells; ++l)
    classes[static_cast<std::size_t>(iweight(model, table, BigInt(l)))].push_back(l);
  return classes;
}

AdmissiblePermutation make_admissible(const OutcomeModel& model, const ValueTable& table,
                                      BlockSystem blocks) {
  require_explicit(table);
  if (blocks.size() != static_cast<std::size_t>(table.T() + 1))
    throw DomainError("need one block per class: expected " + std::to_string(table.T() + 1) + ", got " +
                      std::to_string(blocks.size()));
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    const auto& block = blocks[t];
    const std::uint64_t size = to_u64(table.gamma(static_cast<int>(t)));
    if (block.size() != size)
      throw DomainError("block t=" + std::to_string(t) + " has size " + std::to_string(block.size()) +
                        ", expected gamma=" + std::to_string(size));
    std::vector<bool> seen(size, false);
    for (std::uint64_t v : block) {
      if (v < 1 || v > size || seen[v - 1])
        throw DomainError("block t=" + std::to_string(t) + " is not a permutation of 1..gamma");
      seen[v - 1] = true;
    }
  }
  const auto classes = weight_classes(model, table);
  AdmissiblePermutation pi;
  pi.n = table.n();
  pi.mapping.resize(to_u64(table.cell_count()));
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    const std::uint64_t start = to_u64(table.smc(static_cast<int>(t)));
    for (std::size_t s = 0; s < blocks[t].size(); ++s) pi.mapping[start + s] = classes[t][blocks[t][s] - 1];
  }
  pi.blocks = std::move(blocks);
  return pi;
}

AdmissiblePermutation canonical_permutation(const OutcomeModel& model, const ValueTable& table) {
  BlockSystem blocks;
  for (const auto& g : table.gammas()) {
    std::vector<std::uint64_t> block(to_u64(g));
    std::iota(block.begin(), block.end(), std::uint64_t{1});
    blocks.push_back(std::move(block));
  }
  return make_admissible(model, table, std::move(blocks));
}

std::vector<std::uint64_t> f_perm_table(const OutcomeModel& model, const ValueTable& table,
                                        OracleStats* stats) {
  require_explicit(table);
  const std::uint64_t cells = to_u64(table.cell_count());
  std::vector<std::uint64_t> out(cells);
  for (std::uint64_t l = 0; l < cells; ++l) out[l] = to_u64(f_perm(model, table, BigInt(l), stats));
  return out;
}

BlockSystem blocks_of(const OutcomeModel& model, const ValueTable& table,
                      std::span<const std::uint64_t> mapping) {
  const auto verdict = verify_admissible(model, table, mapping);
  if (!verdict) throw DomainError("not admissible: " + verdict.diagnostic);
  const auto classes = weight_classes(model, table);
  BlockSystem blocks(classes.size());
  for (std::size_t t = 0; t < classes.size(); ++t) {
    const std::uint64_t start = to_u64(table.smc(static_cast<int>(t)));
    for (std::size_t s = 0; s < classes[t].size(); ++s) {
      const auto it = std::lower_bound(classes[t].begin(), classes[t].end(), mapping[start + s]);
      blocks[t].push_back(static_cast<std::uint64_t>(it - classes[t].begin()) + 1);
    }
  }
  return blocks;
}

Verdict verify_admissible(const OutcomeModel& model, const ValueTable& table,
                          std::span<const std::uint64_t> mapping) {
  if (table.level_bits() > kMaxExplicitBits) return {false, "table too large to verify explicitly"};
  const std::uint64_t cells = to_u64(table.cell_count());
  if (mapping.size() != cells)
    return {false,
            "table has " + std::to_string(mapping.size()) + " entries, expected " + std::to_string(cells)};
  std::vector<bool> hit(cells, false);
  for (std::uint64_t l = 0; l < cells; ++l) {
    const std::uint64_t image = mapping[l];
    if (image >= cells) return {false, "pi(" + std::to_string(l) + ") out of range"};
    if (hit[image]) return {false, "not a bijection: " + std::to_string(image) + " is hit twice"};
    hit[image] = true;
  }
  for (std::uint64_t l = 0; l < cells; ++l) {
    const int step = istep(table, BigInt(l));
    const int weight = iweight(model, table, BigInt(mapping[l]));
    if (step != weight)
      return {false, "IWeight(pi(" + std::to_string(l) + ")) = " + std::to_string(weight) + " but IStep(" +
                         std::to_string(l) + ") = " + std::to_string(step)};
  }
  return {};
}

BigInt count_admissible(const ValueTable& table) {
  BigInt product = 1;
  BigInt f;
  for (const auto& g : table.gammas()) {
    if (!g.fits_ulong_p()) throw DomainError("class too large for factorial");
    mpz_fac_ui(f.get_mpz_t(), g.get_ui());
    product *= f;
  }
  return product;
}

AdmissiblePermutation random_admissible(const OutcomeModel& model, const ValueTable& table,
                                        std::uint64_t seed) {
  require_explicit(table);
  std::mt19937_64 rng(seed);
  BlockSystem blocks;
  for (const auto& g : table.gammas()) {
    std::vector<std::uint64_t> block(to_u64(g));
    std::iota(block.begin(), block.end(), std::uint64_t{1});
    for (std::size_t i = block.size(); i > 1; --i) std::swap(block[i - 1], block[bounded(rng, i)]);
    blocks.push_back(std::move(block));
  }
  return make_admissible(model, table, std::move(blocks));
}

}  // namespace quantrep
