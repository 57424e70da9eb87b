#pragma once

#include <vector>

#include "quantrep/multinomial.hpp"

namespace quantrep {

/// Standard normal cdf by Abramowitz & Stegun 26.2.17 (a degree-5
/// polynomial in 1/(1+pz)); absolute error below 7.5e-8. Demo output only.
double normal_cdf(double z);

struct CltRow {
  int t = 0;
  double z = 0;              // v^t_n / (theta sqrt(n))
  double empirical_cdf = 0;  // P(S_n <= v^t_n)
  double reference = 0;      // normal_cdf(z)
};

struct CltTable {
  std::vector<CltRow> rows;
  /// Kolmogorov distance, taken over both sides of every jump.
  double sup_distance = 0;
};

/// Standardized cdf of S_n against the normal cdf. At most grid_size rows
/// are emitted (evenly spread over t; 0 means all), but the sup distance
/// always runs over every value.
CltTable clt_table(const OutcomeModel& model, const ValueTable& table, int grid_size = 0);

}  // namespace quantrep
