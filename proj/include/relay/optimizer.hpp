#pragma once
// Derivative-free maximization over products of probability simplexes.
//
// The search is deterministic for a fixed seed: a coarse phase (lattice
// enumeration for a single simplex, structured plus seeded random starts for
// products) followed by local refinement that moves mass between pairs of
// coordinates, halving the step whenever no transfer improves the objective.
// Constrained searches reject infeasible candidates; a candidate that lands
// outside the feasible set is pulled back to the constraint boundary by
// bisection along the segment toward a caller-supplied zero-information
// point, which is feasible for any nonnegative rate budget.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "relay/probability.hpp"

namespace relay {

struct SearchConfig {
  double grid_step = 0.005;        // lattice resolution of the coarse phase
  int restarts = 32;               // seeded random starts for product searches
  double refine_tolerance = 1e-6;  // bits; controls the final transfer step
  std::uint64_t seed = 0;
  int max_iterations = 10000;      // accepted moves per local search

  void validate() const;  // ValidationError on nonsense settings
};

using SimplexPoint = ProbVector;
using ProductPoint = std::vector<ProbVector>;

struct Optimum {
  double value = 0.0;
  ProductPoint argument;
  double constraint_slack = 0.0;  // >= -1e-9 whenever a constraint was active
  bool converged = false;         // refinement reached its step floor
};

// Feasible means slack(point) >= 0 bits (callers may rely on -1e-9 slop in
// reported results). `relax` maps a point to a counterpart whose constrained
// blocks carry no information, so it satisfies the constraint for any
// nonnegative threshold while leaving the other blocks untouched.
struct ProductConstraint {
  std::function<double(const ProductPoint&)> slack;
  std::function<ProductPoint(const ProductPoint&)> relax;
};

// Maximizes `objective` over the dim-simplex. Deterministic; for concave
// objectives with dim <= 4 the result is within 1e-4 bits of the optimum
// (in practice far closer once refinement has run its course).
Optimum maximize_over_simplex(const std::function<double(const SimplexPoint&)>& objective,
                              std::size_t dim, const SearchConfig& config);

// Maximizes `objective` over a product of simplexes with the given block
// sizes, subject to an optional constraint. `extra_starts` lets callers seed
// domain-specific configurations next to the built-in structured starts.
Optimum maximize_over_product(const std::function<double(const ProductPoint&)>& objective,
                              const std::vector<std::size_t>& shapes,
                              const std::optional<ProductConstraint>& constraint,
                              const SearchConfig& config,
                              const std::vector<ProductPoint>& extra_starts = {});

// G(gamma) = inf H(U|V) over p(v|t) subject to H(T|V) >= gamma, where
// (T, U) ~ p_t(t) p_u_given_t(u|t) and V is conditionally independent of U
// given T. The auxiliary alphabet defaults to |T| + 2 when v_card is 0.
// gamma must lie in [0, H(T)].
double witsenhausen_G(const ProbVector& p_t, const StochasticMatrix& p_u_given_t,
                      double gamma, const SearchConfig& config, std::size_t v_card = 0);

}  // namespace relay
