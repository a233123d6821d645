#pragma once

#include <vector>

namespace hyperbolic {

// Is target a convex combination of points? Phase-1 simplex with Bland's
// rule; feasible when the artificial objective ends at or below tol.
bool convex_hull_contains(const std::vector<std::vector<double>>& points,
                          const std::vector<double>& target, double tol = 1e-9);

}  // namespace hyperbolic
