#include "quantrep/bench.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "quantrep/permutation.hpp"

namespace quantrep {

BigInt random_level_index(std::mt19937_64& rng, int bits) {
  BigInt l = 0;
  int filled = 0;
  while (filled < bits) {
    const int take = std::min(32, bits - filled);
    l <<= static_cast<mp_bitcnt_t>(take);
    l += static_cast<unsigned long>(rng() >> (64 - take));
    filled += take;
  }
  return l;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

std::vector<BenchRecord> bench_one(const OutcomeModel& model, const std::string& model_id, int n,
                                   const BenchOptions& options) {
  using clock = std::chrono::steady_clock;
  const ValueTable table = ValueTable::build(model, n);
  const BigInt cells = table.cell_count();
  // Seed per n so results do not depend on how tasks are scheduled.
  std::mt19937_64 rng(options.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
  std::vector<BigInt> points;
  for (int i = 0; i < options.samples_per_n; ++i)
    points.push_back(random_level_index(rng, table.level_bits()));

  std::vector<BenchRecord> out;
  BenchRecord fast;
  fast.model_id = model_id;
  fast.n = n;
  fast.operation = "f_perm";
  fast.samples = points.size();
  fast.brute_force_cost = cells.get_str();
  OracleStats stats;
  const auto start = clock::now();
  std::vector<BigInt> images;
  for (const auto& l : points) images.push_back(f_perm(model, table, l, &stats));
  fast.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
  fast.tau1_queries = stats.tau1_queries;
  fast.tau2_queries = stats.tau2_queries;
  fast.bigint_ops = stats.bigint_ops;

  if (table.level_bits() <= options.brute_force_max_bits) {
    fast.brute_force_executed = true;
    BenchRecord brute = fast;
    brute.operation = "f_perm_bruteforce";
    brute.tau1_queries = brute.tau2_queries = brute.bigint_ops = 0;
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < points.size(); ++i)
      if (f_perm_bruteforce(model, table, points[i]) != images[i])
        throw std::logic_error("f_perm disagrees with brute force at n=" + std::to_string(n));
    brute.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    out.push_back(fast);
    out.push_back(brute);
  } else {
    out.push_back(fast);
  }
  return out;
}

}  // namespace

BenchResult bench_scaling(const OutcomeModel& model, const std::string& model_id,
                          const BenchOptions& options) {
  if (options.samples_per_n < 1) throw DomainError("samples_per_n must be >= 1");
  for (std::size_t i = 1; i < options.n_list.size(); ++i)
    if (options.n_list[i] <= options.n_list[i - 1]) throw DomainError("n_list must increase");

  std::vector<std::vector<BenchRecord>> per_n(options.n_list.size());
  if (options.jobs <= 1) {
    for (std::size_t i = 0; i < options.n_list.size(); ++i)
      per_n[i] = bench_one(model, model_id, options.n_list[i], options);
  } else {
    std::size_t next = 0;
    while (next < options.n_list.size()) {
      std::vector<std::future<std::vector<BenchRecord>>> wave;
      const std::size_t stop = std::min(options.n_list.size(), next + static_cast<std::size_t>(options.jobs));
      for (std::size_t i = next; i < stop; ++i)
        wave.push_back(std::async(std::launch::async, bench_one, std::cref(model), std::cref(model_id),
                                  options.n_list[i], std::cref(options)));
      for (std::size_t i = next; i < stop; ++i) per_n[i] = wave[i - next].get();
      next = stop;
    }
  }

  BenchResult result;
  std::vector<double> xs, ys;
  for (auto& records : per_n)
    for (auto& r : records) {
      if (r.operation == "f_perm") {
        xs.push_back(r.n);
        ys.push_back(static_cast<double>(r.tau1_queries) / static_cast<double>(r.samples));
      }
      result.records.push_back(std::move(r));
    }
  if (xs.size() >= 2) result.query_slope = fit_loglog_slope(xs, ys);
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "model,n,operation,samples,tau1_queries,tau2_queries,bigint_ops,wall_seconds,"
         "brute_force_cost,brute_force_executed\n";
  for (const auto& r : result.records)
    out << r.model_id << ',' << r.n << ',' << r.operation << ',' << r.samples << ',' << r.tau1_queries << ','
        << r.tau2_queries << ',' << r.bigint_ops << ',' << r.wall_seconds << ',' << r.brute_force_cost << ','
        << (r.brute_force_executed ? "true" : "false") << '\n';
  out << "slope," << result.query_slope << '\n';
  return out.str();
}

}  // namespace quantrep
