#include "hyperbolic/hull.hpp"

#include <cmath>
#include <limits>

#include "hyperbolic/errors.hpp"

namespace hyperbolic {

bool convex_hull_contains(const std::vector<std::vector<double>>& points,
                          const std::vector<double>& target, double tol) {
  if (points.empty()) throw InputError("convex hull of an empty set");
  const int dim = static_cast<int>(target.size());
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim) throw InputError("hull points differ in dimension");

  // Rows: sum_s w_s p_s = target, sum_s w_s = 1; columns: w then one
  // artificial per row. Every row is sign-normalized so rhs >= 0.
  const int rows = dim + 1;
  const int nw = static_cast<int>(points.size());
  const int cols = nw + rows;
  std::vector<std::vector<double>> t(rows, std::vector<double>(cols + 1, 0.0));
  for (int i = 0; i < rows; ++i) {
    for (int s = 0; s < nw; ++s) t[i][s] = (i < dim) ? points[s][i] : 1.0;
    t[i][cols] = (i < dim) ? target[i] : 1.0;
    if (t[i][cols] < 0.0)
      for (double& v : t[i]) v = -v;
    t[i][nw + i] = 1.0;
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = nw + i;

  // Reduced costs for min sum(artificials): c_j - sum_i row_i[j].
  std::vector<double> cost(cols + 1, 0.0);
  for (int j = 0; j <= cols; ++j) {
    double acc = (j >= nw && j < cols) ? 1.0 : 0.0;
    for (int i = 0; i < rows; ++i) acc -= t[i][j];
    cost[j] = acc;
  }

  constexpr double eps = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (cost[j] < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= eps) continue;
      const double ratio = t[i][cols] / t[i][enter];
      if (leave < 0 || ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) break;  // unbounded cannot occur in phase 1
    const double pivot = t[leave][enter];
    for (double& v : t[leave]) v /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const double f = cost[enter];
    for (int j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  // cost[cols] holds minus the objective value.
  return -cost[cols] <= tol;
}

}  // namespace hyperbolic
