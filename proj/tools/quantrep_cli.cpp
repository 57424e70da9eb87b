// quantrep: command-line front end for the quantile representation library.
//
// Exit status: 0 on success, 1 on a domain error (bad model, out-of-range
// index, failed verification), 2 on a usage error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quantrep/bench.hpp"
#include "quantrep/clt.hpp"
#include "quantrep/index_machinery.hpp"
#include "quantrep/model_io.hpp"
#include "quantrep/permutation.hpp"
#include "quantrep/representation.hpp"
#include "quantrep/selftest.hpp"

namespace {

using namespace quantrep;

struct Rows {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> data;
};

struct Common {
  std::string model_path;
  std::string format = "csv";
  bool header = false;
  int n = 0;
};

std::string fmt_double(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

std::string join(const std::vector<int>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s.push_back(sep);
    s += std::to_string(xs[i]);
  }
  return s;
}

void emit(const Common& c, const Rows& rows) {
  if (c.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows.data) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[rows.columns[i]] = row[i];
      out.push_back(std::move(obj));
    }
    std::cout << out.dump(2) << '\n';
    return;
  }
  auto line = [](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << cells[i];
    std::cout << '\n';
  };
  if (c.header) line(rows.columns);
  for (const auto& row : rows.data) line(row);
}

BigInt parse_big(const std::string& text) {
  BigInt x;
  if (text.empty() || x.set_str(text, 10) != 0) throw DomainError("not an integer: '" + text + "'");
  return x;
}

std::vector<BigInt> indices(const ValueTable& table, const std::string& l, bool all) {
  std::vector<BigInt> out;
  if (all) {
    if (table.level_bits() > kMaxExplicitBits) throw DomainError("--all needs n(M+1) <= 24");
    for (BigInt x = 0; x < table.cell_count(); ++x) out.push_back(x);
  } else {
    if (l.empty()) throw CLI::ValidationError("--l", "one of --l or --all is required");
    out.push_back(parse_big(l));
  }
  return out;
}

std::vector<std::uint64_t> read_perm_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open permutation file '" + path + "'");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || !std::isdigit(static_cast<unsigned char>(line[0]))) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected 'l,pi(l)'");
    pairs.emplace_back(std::stoull(line.substr(0, comma)), std::stoull(line.substr(comma + 1)));
  }
  std::vector<std::uint64_t> mapping(pairs.size(), ~std::uint64_t{0});
  for (const auto& [l, image] : pairs) {
    if (l >= mapping.size()) throw DomainError("index " + std::to_string(l) + " out of range");
    mapping[l] = image;
  }
  return mapping;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Admissible permutations and strong trim representations of multinomial quantiles"};
  app.require_subcommand(1);

  Common c;
  auto add_common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--model", c.model_path, "Model file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--header", c.header, "Print a CSV header row");
    if (with_n) sub->add_option("--n", c.n, "Level n")->required()->check(CLI::PositiveNumber);
  };

  std::string l_text, xi_text;
  bool all = false;
  int t = 0;
  bool fast = false, brute = false;
  std::string trace_path, perm_path;
  std::uint64_t seed = 1;
  int grid = 0;
  std::vector<int> n_list;
  int samples = 3;
  int jobs = 1;
  int brute_bits = 20;
  int n_max = 4;

  auto* model_cmd = app.add_subcommand("model", "Show the outcome model");
  add_common(model_cmd, false);
  auto* table_cmd = app.add_subcommand("table", "Values, class masses and SMC prefix sums");
  add_common(table_cmd, true);
  auto* step_cmd = app.add_subcommand("step", "IStep and IS* at level indices");
  add_common(step_cmd, true);
  auto* weight_cmd = app.add_subcommand("weight", "IWeight, decoded outcomes and IS at level indices");
  add_common(weight_cmd, true);
  auto* beta_cmd = app.add_subcommand("beta", "Cardinality function beta(n, t, xi)");
  add_common(beta_cmd, true);
  auto* fperm_cmd = app.add_subcommand("fperm", "Canonical admissible permutation F_n");
  add_common(fperm_cmd, true);
  auto* invf_cmd = app.add_subcommand("invf", "Inverse of F_n");
  add_common(invf_cmd, true);
  auto* verify_cmd = app.add_subcommand("verify", "Check admissibility of a permutation table");
  add_common(verify_cmd, true);
  auto* count_cmd = app.add_subcommand("count", "Number of admissible permutations");
  add_common(count_cmd, true);
  auto* random_cmd = app.add_subcommand("random", "Seeded uniform admissible permutation");
  add_common(random_cmd, true);
  auto* repr_cmd = app.add_subcommand("repr", "Strong trim representation table");
  add_common(repr_cmd, true);
  auto* clt_cmd = app.add_subcommand("clt", "Standardized cdf of S_n against the normal cdf");
  add_common(clt_cmd, true);
  auto* bench_cmd = app.add_subcommand("bench", "Oracle-query scaling of f_perm");
  add_common(bench_cmd, false);
  auto* selftest_cmd = app.add_subcommand("selftest", "Run every invariant suite up to n_max");
  add_common(selftest_cmd, false);

  for (auto* sub : {step_cmd, weight_cmd, fperm_cmd, invf_cmd, repr_cmd}) {
    sub->add_option("--l", l_text, "Level index");
  }
  for (auto* sub : {step_cmd, weight_cmd, fperm_cmd, invf_cmd}) sub->add_flag("--all", all, "Every index");
  beta_cmd->add_option("--t", t, "Class index")->required();
  beta_cmd->add_option("--xi", xi_text, "Threshold index")->required();
  beta_cmd->add_flag("--fast", fast, "Fast walk (default)");
  beta_cmd->add_flag("--brute", brute, "Direct enumeration");
  beta_cmd->add_option("--trace", trace_path, "Write per-bit walk contributions as CSV ('-' for stdout)");
  verify_cmd->add_option("--perm", perm_path, "CSV of 'l,pi(l)' lines; default F_n")
      ->check(CLI::ExistingFile);
  random_cmd->add_option("--seed", seed, "RNG seed");
  auto* repr_seed = repr_cmd->add_option("--seed", seed, "Use a random admissible permutation");
  clt_cmd->add_option("--grid", grid, "Emit at most this many rows (0 = all)");
  bench_cmd->add_option("--n-list", n_list, "Increasing list of n")->delimiter(',')->required();
  bench_cmd->add_option("--samples", samples, "Random indices per n")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", seed, "RNG seed");
  bench_cmd->add_option("--jobs", jobs, "Concurrent per-n tasks")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--brute-max-bits", brute_bits, "Also time brute force up to n(M+1) bits");
  selftest_cmd->add_option("--n-max", n_max, "Largest n")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const OutcomeModel model = load_model(c.model_path);
    auto table_for_n = [&] { return ValueTable::build(model, c.n); };

    if (model_cmd->parsed()) {
      if (c.format == "json") {
        std::cout << model_to_json(model) << '\n';
      } else {
        Rows rows{{"s", "pattern", "value"}, {}};
        for (int s = 1; s <= model.m(); ++s)
          rows.data.push_back({std::to_string(s),
                               pattern_to_string(model.pattern_of(s), model.pattern_width()),
                               model.outcome(s).to_string()});
        emit(c, rows);
      }
      return 0;
    }

    if (table_cmd->parsed()) {
      const auto table = table_for_n();
      if (c.format == "json") {
        nlohmann::json out;
        out["n"] = table.n();
        out["T"] = table.T();
        out["cells"] = table.cell_count().get_str();
        for (int k = 0; k <= table.T(); ++k) {
          out["values"].push_back(table.value(k).to_string());
          out["gamma"].push_back(table.gamma(k).get_str());
        }
        for (const auto& s : table.smcs()) out["smc"].push_back(s.get_str());
        std::cout << out.dump(2) << '\n';
      } else {
        Rows rows{{"t", "value", "gamma", "smc_lt", "smc_leq"}, {}};
        for (int k = 0; k <= table.T(); ++k)
          rows.data.push_back({std::to_string(k), table.value(k).to_string(), table.gamma(k).get_str(),
                               table.smc(k).get_str(), table.smc(k + 1).get_str()});
        emit(c, rows);
      }
      return 0;
    }

    if (step_cmd->parsed() || weight_cmd->parsed()) {
      const auto table = table_for_n();
      const bool step = step_cmd->parsed();
      Rows rows{step ? std::vector<std::string>{"l", "t", "value"}
                     : std::vector<std::string>{"l", "t", "value", "outcomes"},
                {}};
      for (const auto& l : indices(table, l_text, all)) {
        if (step) {
          const int k = istep(table, l);
          rows.data.push_back({l.get_str(), std::to_string(k), table.value(k).to_string()});
        } else {
          const int k = iweight(model, table, l);
          rows.data.push_back({l.get_str(), std::to_string(k), table.value(k).to_string(),
                               join(decode_weight_index(model, table.n(), l), ' ')});
        }
      }
      emit(c, rows);
      return 0;
    }

    if (beta_cmd->parsed()) {
      const auto table = table_for_n();
      const BigInt xi = parse_big(xi_text);
      if (!fast && !brute) fast = true;
      std::vector<std::string> results;
      BetaTrace trace;
      if (fast) results.push_back(beta_fast(model, table, t, xi, nullptr, &trace).get_str());
      if (brute) {
        if (table.level_bits() > kMaxExplicitBits) throw DomainError("--brute needs n(M+1) <= 24");
        results.push_back(beta_bruteforce(model, table, t, xi).get_str());
      }
      Rows rows{fast && brute ? std::vector<std::string>{"fast", "brute"}
                              : std::vector<std::string>{fast ? "fast" : "brute"},
                {results}};
      emit(c, rows);
      if (!trace_path.empty() && fast) {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (trace_path != "-") {
          file.open(trace_path);
          if (!file) throw DomainError("cannot write trace file '" + trace_path + "'");
          out = &file;
        }
        *out << "zeta,chunk,position,contribution\n";
        for (const auto& step : trace.steps)
          *out << step.zeta << ',' << step.chunk << ',' << step.position << ',' << step.contribution.get_str()
               << '\n';
        *out << "self," << (trace.self_term ? 1 : 0) << '\n';
      }
      return 0;
    }

    if (fperm_cmd->parsed() || invf_cmd->parsed()) {
      const auto table = table_for_n();
      Rows rows{{"l", fperm_cmd->parsed() ? "F" : "invF"}, {}};
      for (const auto& l : indices(table, l_text, all)) {
        const BigInt image = fperm_cmd->parsed() ? f_perm(model, table, l) : inv_f(model, table, l);
        rows.data.push_back({l.get_str(), image.get_str()});
      }
      emit(c, rows);
      return 0;
    }

    if (verify_cmd->parsed()) {
      const auto table = table_for_n();
      const auto mapping = perm_path.empty() ? f_perm_table(model, table) : read_perm_csv(perm_path);
      const auto verdict = verify_admissible(model, table, mapping);
      std::cout << (verdict ? "true" : "false") << '\n';
      if (!verdict) {
        std::cerr << "not admissible: " << verdict.diagnostic << '\n';
        return 1;
      }
      return 0;
    }

    if (count_cmd->parsed()) {
      std::cout << count_admissible(table_for_n()).get_str() << '\n';
      return 0;
    }

    if (random_cmd->parsed()) {
      const auto table = table_for_n();
      const auto pi = random_admissible(model, table, seed);
      Rows rows{{"l", "pi"}, {}};
      for (std::size_t l = 0; l < pi.mapping.size(); ++l)
        rows.data.push_back({std::to_string(l), std::to_string(pi.mapping[l])});
      emit(c, rows);
      return 0;
    }

    if (repr_cmd->parsed()) {
      const auto table = table_for_n();
      Rows rows{{"l", "i", "s", "value"}, {}};
      auto add_row = [&](const BigInt& l, const OutcomeVector& row) {
        for (std::size_t i = 0; i < row.size(); ++i)
          rows.data.push_back({l.get_str(), std::to_string(i + 1), std::to_string(row[i]),
                               model.outcome(row[i]).to_string()});
      };
      if (!l_text.empty() && repr_seed->count() == 0) {
        const BigInt l = parse_big(l_text);
        add_row(l, canonical_row(model, table, l));
      } else {
        const auto pi =
            repr_seed->count() ? random_admissible(model, table, seed) : canonical_permutation(model, table);
        const auto rep = representation_from_perm(model, table, pi);
        for (std::uint64_t l = 0; l < rep.cells(); ++l) {
          if (!l_text.empty() && parse_big(l_text) != l) continue;
          add_row(BigInt(l), rep.row(l));
        }
      }
      emit(c, rows);
      return 0;
    }

    if (clt_cmd->parsed()) {
      const auto table = table_for_n();
      const auto result = clt_table(model, table, grid);
      Rows rows{{"t", "z", "empirical_cdf", "reference"}, {}};
      for (const auto& r : result.rows)
        rows.data.push_back(
            {std::to_string(r.t), fmt_double(r.z), fmt_double(r.empirical_cdf), fmt_double(r.reference)});
      if (c.format == "json") {
        emit(c, rows);
        std::cout << R"({"sup_distance": )" << fmt_double(result.sup_distance) << "}\n";
      } else {
        emit(c, rows);
        std::cout << "sup_distance," << fmt_double(result.sup_distance) << '\n';
      }
      return 0;
    }

    if (bench_cmd->parsed()) {
      BenchOptions options;
      options.n_list = n_list;
      options.samples_per_n = samples;
      options.seed = seed;
      options.jobs = jobs;
      options.brute_force_max_bits = brute_bits;
      const auto id = std::filesystem::path(c.model_path).stem().string();
      const auto result = bench_scaling(model, id, options);
      if (c.format == "json") {
        nlohmann::json out;
        for (const auto& r : result.records)
          out["records"].push_back({{"model", r.model_id},
                                    {"n", r.n},
                                    {"operation", r.operation},
                                    {"samples", r.samples},
                                    {"tau1_queries", r.tau1_queries},
                                    {"tau2_queries", r.tau2_queries},
                                    {"bigint_ops", r.bigint_ops},
                                    {"wall_seconds", r.wall_seconds},
                                    {"brute_force_cost", r.brute_force_cost},
                                    {"brute_force_executed", r.brute_force_executed}});
        out["slope"] = result.query_slope;
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << bench_csv(result);
      }
      return 0;
    }

    if (selftest_cmd->parsed()) {
      const auto report = selftest(model, n_max, seed);
      std::cout << report.to_text();
      return report.ok() ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
