#include "quantrep/clt.hpp"

#include <algorithm>
#include <cmath>

namespace quantrep {

double normal_cdf(double z) {
  constexpr double p = 0.2316419;
  constexpr double b1 = 0.319381530;
  constexpr double b2 = -0.356563782;
  constexpr double b3 = 1.781477937;
  constexpr double b4 = -1.821255978;
  constexpr double b5 = 1.330274429;
  const double x = std::fabs(z);
  const double u = 1.0 / (1.0 + p * x);
  const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  const double tail = density * u * (b1 + u * (b2 + u * (b3 + u * (b4 + u * b5))));
  return z >= 0 ? 1.0 - tail : tail;
}

CltTable clt_table(const OutcomeModel& model, const ValueTable& table, int grid_size) {
  const double theta = std::sqrt(model.variance().to_double());
  const double scale = theta * std::sqrt(static_cast<double>(table.n()));
  const double cells = table.cell_count().get_d();
  const int count = table.T() + 1;

  CltTable out;
  std::vector<CltRow> all;
  all.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    CltRow row;
    row.t = t;
    row.z = table.value(t).to_double() / scale;
    row.empirical_cdf = table.smc(t + 1).get_d() / cells;
    row.reference = normal_cdf(row.z);
    const double below = table.smc(t).get_d() / cells;
    out.sup_distance = std::max(
        {out.sup_distance, std::fabs(row.empirical_cdf - row.reference), std::fabs(below - row.reference)});
    all.push_back(row);
  }
  if (grid_size <= 0 || grid_size >= count) {
    out.rows = std::move(all);
  } else if (grid_size == 1) {
    out.rows.push_back(all[static_cast<std::size_t>(count / 2)]);
  } else {
    for (int j = 0; j < grid_size; ++j) {
      const long t = std::lround(static_cast<double>(j) * (count - 1) / (grid_size - 1));
      out.rows.push_back(all[static_cast<std::size_t>(t)]);
    }
  }
  return out;
}

}  // namespace quantrep
