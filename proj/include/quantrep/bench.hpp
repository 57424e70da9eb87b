#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "quantrep/outcome_model.hpp"

namespace quantrep {

struct BenchRecord {
  std::string model_id;
  int n = 0;
  std::string operation;
  std::uint64_t samples = 0;
  std::uint64_t tau1_queries = 0;  // totals over all samples
  std::uint64_t tau2_queries = 0;
  std::uint64_t bigint_ops = 0;
  double wall_seconds = 0;
  std::string brute_force_cost;  // 2^{n(M+1)} decodes, in decimal
  bool brute_force_executed = false;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  /// Least-squares slope of log(tau1 queries per f_perm call) on log(n).
  double query_slope = 0;
};

struct BenchOptions {
  std::vector<int> n_list;
  int samples_per_n = 1;
  std::uint64_t seed = 1;
  /// Brute-force f_perm is also timed when n(M+1) is at most this.
  int brute_force_max_bits = 20;
  /// Per-n tasks run on this many threads.
  int jobs = 1;
};

/// Times f_perm at seeded random indices for each n, counting oracle calls.
BenchResult bench_scaling(const OutcomeModel& model, const std::string& model_id,
                          const BenchOptions& options);

double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Uniform index with the given bit length.
BigInt random_level_index(std::mt19937_64& rng, int bits);

std::string bench_csv(const BenchResult& result);

}  // namespace quantrep
