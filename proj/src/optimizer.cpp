#include "relay/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rng_util.hpp"

namespace relay {

void SearchConfig::validate() const {
  if (!(grid_step > 0.0) || grid_step > 0.5) {
    throw ValidationError("SearchConfig: grid_step must lie in (0, 0.5]");
  }
  if (restarts < 0) throw ValidationError("SearchConfig: restarts must be nonnegative");
  if (!(refine_tolerance > 0.0)) {
    throw ValidationError("SearchConfig: refine_tolerance must be positive");
  }
  if (max_iterations < 1) throw ValidationError("SearchConfig: max_iterations must be positive");
}

namespace {

// Feasibility slop absorbing floating-point noise in slack evaluations, well
// below every rate tolerance in play. Without it a zero-budget constraint
// (r0 = 0) could reject its own zero-information anchor over a stray -1e-16.
constexpr double kSlackSlop = 1e-12;

using Blocks = std::vector<std::vector<double>>;

ProductPoint to_point(const Blocks& blocks) {
  ProductPoint point;
  point.reserve(blocks.size());
  for (const auto& b : blocks) point.emplace_back(std::vector<double>(b));
  return point;
}

Blocks to_blocks(const ProductPoint& point) {
  Blocks blocks;
  blocks.reserve(point.size());
  for (const auto& p : point) blocks.push_back(p.weights());
  return blocks;
}

std::string describe(const Blocks& blocks) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    out << (b ? " | " : "");
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      out << (i ? "," : "") << blocks[b][i];
    }
  }
  return out.str();
}

// Shared state for one product search: wraps the caller's objective and
// constraint, counting evaluations and rejecting NaN objectives outright.
struct Problem {
  const std::function<double(const ProductPoint&)>& objective;
  const std::optional<ProductConstraint>& constraint;

  double eval(const Blocks& blocks) const {
    const double v = objective(to_point(blocks));
    if (std::isnan(v)) {
      throw NumericalError("optimizer: objective returned NaN at " + describe(blocks));
    }
    return v;
  }

  bool constrained() const { return constraint.has_value(); }

  double slack(const Blocks& blocks) const { return constraint->slack(to_point(blocks)); }

  // Pulls an infeasible point back to the constraint boundary by bisecting
  // along the segment toward its zero-information counterpart. Returns false
  // when even that counterpart is infeasible.
  bool project(Blocks& blocks) const {
    const ProductPoint from = to_point(blocks);
    const ProductPoint anchor = constraint->relax(from);
    if (constraint->slack(anchor) < -kSlackSlop) return false;
    double lo = 0.0, hi = 1.0;
    Blocks mix = blocks;
    for (int iter = 0; iter < 25; ++iter) {
      const double mid = 0.5 * (lo + hi);
      for (std::size_t b = 0; b < mix.size(); ++b) {
        for (std::size_t i = 0; i < mix[b].size(); ++i) {
          mix[b][i] = (1.0 - mid) * from[b][i] + mid * anchor[b][i];
        }
      }
      if (constraint->slack(to_point(mix)) >= -kSlackSlop) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t i = 0; i < blocks[b].size(); ++i) {
        blocks[b][i] = (1.0 - hi) * from[b][i] + hi * anchor[b][i];
      }
    }
    return true;
  }
};

struct Refined {
  double value = -std::numeric_limits<double>::infinity();
  Blocks blocks;
  bool converged = false;
};

// Pairwise mass-transfer descent with step halving. Every candidate move is
// kept feasible, either outright or by boundary projection, so the running
// point never leaves the feasible set.
Refined refine(Blocks blocks, const Problem& problem, const SearchConfig& config,
               double initial_step) {
  Refined state;
  state.blocks = std::move(blocks);
  state.value = problem.eval(state.blocks);

  const double floor_step = std::max(1e-9, config.refine_tolerance * 1e-3);
  int iterations = 0;
  double step = initial_step;
  while (step >= floor_step) {
    for (;;) {  // best-improvement sweeps at the current step
      double best_value = state.value;
      Blocks best_blocks;
      for (std::size_t b = 0; b < state.blocks.size(); ++b) {
        auto& block = state.blocks[b];
        for (std::size_t i = 0; i < block.size(); ++i) {
          if (block[i] <= 0.0) continue;
          const double m = std::min(step, block[i]);
          for (std::size_t j = 0; j < block.size(); ++j) {
            if (j == i) continue;
            const double old_i = block[i];
            const double old_j = block[j];
            block[i] = old_i - m;
            block[j] = old_j + m;
            bool usable = true;
            Blocks projected;
            const Blocks* candidate = &state.blocks;
            if (problem.constrained() && problem.slack(state.blocks) < -kSlackSlop) {
              projected = state.blocks;
              usable = problem.project(projected);
              candidate = &projected;
            }
            if (usable) {
              const double v = problem.eval(*candidate);
              if (v > best_value) {
                best_value = v;
                best_blocks = *candidate;
              }
            }
            block[i] = old_i;
            block[j] = old_j;
          }
        }
      }
      if (best_blocks.empty()) break;
      state.blocks = std::move(best_blocks);
      state.value = best_value;
      if (++iterations >= config.max_iterations) {
        state.converged = false;
        return state;
      }
    }
    step *= 0.5;
  }
  state.converged = true;
  return state;
}

bool lexicographically_less(const Blocks& a, const Blocks& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (a[i][j] != b[i][j]) return a[i][j] < b[i][j];
    }
  }
  return false;
}

// Core driver shared by the simplex and product entry points.
Optimum run_search(const std::function<double(const ProductPoint&)>& objective,
                   const std::vector<std::size_t>& shapes,
                   const std::optional<ProductConstraint>& constraint,
                   const SearchConfig& config, const std::vector<ProductPoint>& extra_starts,
                   double initial_step) {
  config.validate();
  if (shapes.empty()) throw ValidationError("optimizer: empty shape list");
  for (std::size_t s : shapes) {
    if (s == 0) throw ValidationError("optimizer: zero-dimensional block");
  }

  const Problem problem{objective, constraint};

  std::vector<Blocks> starts;
  auto make_blocks = [&](auto&& fill) {
    Blocks blocks;
    blocks.reserve(shapes.size());
    for (std::size_t b = 0; b < shapes.size(); ++b) {
      std::vector<double> w(shapes[b], 0.0);
      fill(b, w);
      blocks.push_back(std::move(w));
    }
    return blocks;
  };
  // Structured starts: all-uniform, constant column, and a staircase that
  // realizes an identity map whenever block k stands for row k of a kernel.
  starts.push_back(make_blocks([&](std::size_t b, std::vector<double>& w) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(shapes[b]));
  }));
  starts.push_back(make_blocks([&](std::size_t, std::vector<double>& w) { w[0] = 1.0; }));
  starts.push_back(make_blocks([&](std::size_t b, std::vector<double>& w) {
    w[std::min(b, shapes[b] - 1)] = 1.0;
  }));
  for (const auto& point : extra_starts) {
    if (point.size() != shapes.size()) {
      throw ValidationError("optimizer: extra start has the wrong number of blocks");
    }
    for (std::size_t b = 0; b < point.size(); ++b) {
      if (point[b].size() != shapes[b]) {
        throw ValidationError("optimizer: extra start block has the wrong dimension");
      }
    }
    starts.push_back(to_blocks(point));
  }
  detail::Rng rng(config.seed);
  for (int r = 0; r < config.restarts; ++r) {
    starts.push_back(make_blocks(
        [&](std::size_t b, std::vector<double>& w) { w = rng.dirichlet(shapes[b], 1.0); }));
  }

  bool have_best = false;
  Refined best;
  for (auto& start : starts) {
    if (problem.constrained() && problem.slack(start) < -kSlackSlop) {
      if (!problem.project(start)) continue;
    }
    Refined result = refine(std::move(start), problem, config, initial_step);
    if (!have_best || result.value > best.value ||
        (result.value == best.value && lexicographically_less(result.blocks, best.blocks))) {
      best = std::move(result);
      have_best = true;
    }
  }
  if (!have_best) {
    throw InfeasibleError("optimizer: no feasible start; constraint admits no searchable point");
  }

  Optimum opt;
  opt.value = best.value;
  opt.argument = to_point(best.blocks);
  opt.constraint_slack = problem.constrained() ? problem.slack(best.blocks) : 0.0;
  opt.converged = best.converged;
  return opt;
}

// Number of lattice points of the n-division grid on the dim-simplex,
// computed in floating point to keep the overflow check trivial.
double lattice_count(std::size_t n, std::size_t dim) {
  double count = 1.0;
  for (std::size_t k = 1; k < dim; ++k) {
    count *= static_cast<double>(n + k) / static_cast<double>(k);
  }
  return count;
}

}  // namespace

Optimum maximize_over_simplex(const std::function<double(const SimplexPoint&)>& objective,
                              std::size_t dim, const SearchConfig& config) {
  config.validate();
  if (dim == 0) throw ValidationError("maximize_over_simplex: dimension must be positive");

  auto product_objective = [&objective](const ProductPoint& point) {
    return objective(point.front());
  };

  // Coarse lattice enumeration. The division count follows grid_step but is
  // capped so that high-dimensional simplexes stay enumerable; refinement
  // recovers the lost resolution for the concave objectives this targets.
  std::size_t divisions = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / config.grid_step)));
  while (lattice_count(divisions, dim) > 60000.0 && divisions > 8) {
    divisions = divisions * 2 / 3;
  }

  struct GridBest {
    double value;
    std::vector<double> point;
  };
  std::vector<GridBest> top;  // best three lattice points, ties broken lexicographically
  auto offer = [&](double value, const std::vector<double>& point) {
    if (std::isnan(value)) {
      throw NumericalError("optimizer: objective returned NaN on the lattice");
    }
    GridBest entry{value, point};
    auto better = [](const GridBest& a, const GridBest& b) {
      if (a.value != b.value) return a.value > b.value;
      return std::lexicographical_compare(a.point.begin(), a.point.end(), b.point.begin(),
                                          b.point.end());
    };
    top.insert(std::upper_bound(top.begin(), top.end(), entry, better), std::move(entry));
    if (top.size() > 3) top.pop_back();
  };

  std::vector<std::size_t> counts(dim, 0);
  std::vector<double> point(dim, 0.0);
  const double inv = 1.0 / static_cast<double>(divisions);
  // Enumerates all assignments of `divisions` mass units to `dim` cells.
  auto enumerate = [&](auto&& self, std::size_t axis, std::size_t remaining) -> void {
    if (axis + 1 == dim) {
      counts[axis] = remaining;
      for (std::size_t k = 0; k < dim; ++k) point[k] = static_cast<double>(counts[k]) * inv;
      offer(objective(SimplexPoint(std::vector<double>(point))), point);
      return;
    }
    for (std::size_t used = 0; used <= remaining; ++used) {
      counts[axis] = used;
      self(self, axis + 1, remaining - used);
    }
  };
  enumerate(enumerate, 0, divisions);

  std::vector<ProductPoint> seeds;
  for (const auto& entry : top) {
    seeds.push_back({SimplexPoint(std::vector<double>(entry.point))});
  }
  return run_search(product_objective, {dim}, std::nullopt, config, seeds, 0.5);
}

Optimum maximize_over_product(const std::function<double(const ProductPoint&)>& objective,
                              const std::vector<std::size_t>& shapes,
                              const std::optional<ProductConstraint>& constraint,
                              const SearchConfig& config,
                              const std::vector<ProductPoint>& extra_starts) {
  return run_search(objective, shapes, constraint, config, extra_starts, 0.5);
}

double witsenhausen_G(const ProbVector& p_t, const StochasticMatrix& p_u_given_t,
                      double gamma, const SearchConfig& config, std::size_t v_card) {
  config.validate();
  const std::size_t nt = p_t.size();
  const std::size_t nu = p_u_given_t.cols();
  if (p_u_given_t.rows() != nt) {
    throw ValidationError("witsenhausen_G: p(u|t) row count does not match p_t");
  }
  const double h_t = entropy(p_t);
  if (gamma < 0.0 || gamma > h_t + 1e-9) {
    throw DomainError("witsenhausen_G: gamma must lie in [0, H(T)]");
  }
  const std::size_t nv = v_card == 0 ? nt + 2 : v_card;

  // H(U|V) and H(T|V) from the joint p(t) p(u|t) p(v|t); V and U are
  // conditionally independent given T, so small direct tables suffice.
  auto cond_entropies = [&](const ProductPoint& rows, double& h_u_v, double& h_t_v) {
    std::vector<double> p_v(nv, 0.0), p_uv(nu * nv, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t v = 0; v < nv; ++v) {
        const double w = p_t[t] * rows[t][v];
        p_v[v] += w;
        for (std::size_t u = 0; u < nu; ++u) {
          p_uv[u * nv + v] += w * p_u_given_t(t, u);
        }
      }
    }
    const double h_v = entropy(std::span<const double>(p_v));
    h_u_v = entropy(std::span<const double>(p_uv)) - h_v;
    std::vector<double> p_tv(nt * nv);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t v = 0; v < nv; ++v) p_tv[t * nv + v] = p_t[t] * rows[t][v];
    }
    h_t_v = entropy(std::span<const double>(p_tv)) - h_v;
  };

  auto objective = [&](const ProductPoint& rows) {
    double h_u_v = 0.0, h_t_v = 0.0;
    cond_entropies(rows, h_u_v, h_t_v);
    return -h_u_v;  // the driver maximizes; G is an infimum
  };
  ProductConstraint constraint;
  constraint.slack = [&](const ProductPoint& rows) {
    double h_u_v = 0.0, h_t_v = 0.0;
    cond_entropies(rows, h_u_v, h_t_v);
    return h_t_v - gamma;
  };
  constraint.relax = [&, nv](const ProductPoint& rows) {
    std::vector<double> avg(nv, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t v = 0; v < nv; ++v) avg[v] += p_t[t] * rows[t][v];
    }
    // Identical rows make V independent of T, so H(T|V) = H(T) >= gamma.
    ProductPoint relaxed;
    relaxed.reserve(nt);
    const ProbVector row((std::vector<double>(avg)));
    for (std::size_t t = 0; t < nt; ++t) relaxed.push_back(row);
    return relaxed;
  };

  std::vector<std::size_t> shapes(nt, nv);
  std::vector<ProductPoint> seeds;
  {
    ProductPoint identity;
    for (std::size_t t = 0; t < nt; ++t) {
      identity.push_back(ProbVector::point_mass(nv, std::min(t, nv - 1)));
    }
    seeds.push_back(std::move(identity));
  }
  const Optimum opt =
      maximize_over_product(objective, shapes, std::optional<ProductConstraint>(constraint),
                            config, seeds);
  return std::max(0.0, -opt.value);
}

}  // namespace relay
