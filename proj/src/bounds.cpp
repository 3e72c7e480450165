#include "relay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <memory>
#include <sstream>

namespace relay {

namespace {

constexpr double kBranchTieTol = 1e-9;
constexpr double kConstraintFormTol = 1e-9;

// Point layout shared by the constrained engines: block 0 is p(x), blocks
// 1 .. t_size are the rows of p(v|t).
StochasticMatrix rows_from(const ProductPoint& point) {
  std::vector<std::vector<double>> rows;
  rows.reserve(point.size() - 1);
  for (std::size_t b = 1; b < point.size(); ++b) rows.push_back(point[b].weights());
  return StochasticMatrix::from_rows(rows);
}

std::vector<std::size_t> engine_shapes(const ChannelSpec& channel, std::size_t v_card) {
  std::vector<std::size_t> shapes{channel.x_size()};
  shapes.insert(shapes.end(), channel.t_size(), v_card);
  return shapes;
}

// I(T;V) straight from the state prior and the rows of p(v|t); this is the
// (t, v) marginal of the full joint, so no channel sweep is needed.
double state_description_rate(const ProbVector& p_t, const ProductPoint& point) {
  const std::size_t nt = p_t.size();
  const std::size_t nv = point[1].size();
  std::vector<double> p_v(nv, 0.0), p_tv(nt * nv);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t v = 0; v < nv; ++v) {
      const double w = p_t[t] * point[1 + t][v];
      p_tv[t * nv + v] = w;
      p_v[v] += w;
    }
  }
  return entropy(p_t) + entropy(std::span<const double>(p_v)) -
         entropy(std::span<const double>(p_tv));
}

// Replaces every row of p(v|t) by their p(t)-weighted average, which makes V
// independent of the whole channel and so satisfies either rate constraint.
ProductPoint relax_rows(const ProbVector& p_t, const ProductPoint& point) {
  const std::size_t nt = p_t.size();
  const std::size_t nv = point[1].size();
  std::vector<double> avg(nv, 0.0);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t v = 0; v < nv; ++v) avg[v] += p_t[t] * point[1 + t][v];
  }
  ProductPoint relaxed = point;
  const ProbVector row((std::vector<double>(avg)));
  for (std::size_t t = 0; t < nt; ++t) relaxed[1 + t] = row;
  return relaxed;
}

std::vector<ProductPoint> engine_starts(const ChannelSpec& channel, std::size_t v_card) {
  const ProbVector ux = ProbVector::uniform(channel.x_size());
  std::vector<ProductPoint> starts;
  auto with_rows = [&](const StochasticMatrix& rows) {
    ProductPoint point{ux};
    for (std::size_t t = 0; t < channel.t_size(); ++t) point.push_back(rows.row(t));
    starts.push_back(std::move(point));
  };
  with_rows(StochasticMatrix::identity_like(channel.t_size(), v_card));
  with_rows(StochasticMatrix::constant_rows(channel.t_size(),
                                            ProbVector::point_mass(v_card, 0)));
  with_rows(StochasticMatrix::constant_rows(channel.t_size(), ProbVector::uniform(v_card)));
  return starts;
}

// p(y|t) under the current input distribution; the conditional constraint of
// the compress-and-forward search re-derives its marginals from this table,
// memoized on p(x) because row moves leave it untouched.
struct OutputGivenState {
  std::vector<double> p_x;
  std::vector<double> table;  // [t][y]
  bool valid = false;
};

void refresh_output_given_state(const ChannelSpec& ch, const ProbVector& p_x,
                                OutputGivenState& memo) {
  if (memo.valid && memo.p_x == p_x.weights()) return;
  const std::size_t nt = ch.t_size(), ny = ch.y_size();
  memo.table.assign(nt * ny, 0.0);
  for (std::size_t x = 0; x < ch.x_size(); ++x) {
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t y = 0; y < ny; ++y) {
        memo.table[t * ny + y] += p_x[x] * ch.kernel(x, t, y);
      }
    }
  }
  memo.p_x = p_x.weights();
  memo.valid = true;
}

// I(T;V|Y) = H(T,Y) + H(V,Y) - H(T,V,Y) - H(Y) on the exact marginals of the
// factorization p(t) p(v|t) p(y|t).
double conditional_description_rate(const ChannelSpec& ch, const ProductPoint& point,
                                    OutputGivenState& memo) {
  refresh_output_given_state(ch, point[0], memo);
  const std::size_t nt = ch.t_size(), ny = ch.y_size(), nv = point[1].size();
  std::vector<double> p_tvy(nt * nv * ny), p_ty(nt * ny), p_vy(nv * ny, 0.0), p_y(ny, 0.0);
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double w_ty = ch.p_t()[t] * memo.table[t * ny + y];
      p_ty[t * ny + y] = w_ty;
      p_y[y] += w_ty;
      for (std::size_t v = 0; v < nv; ++v) {
        const double w = w_ty * point[1 + t][v];
        p_tvy[(t * nv + v) * ny + y] = w;
        p_vy[v * ny + y] += w;
      }
    }
  }
  return entropy(std::span<const double>(p_ty)) + entropy(std::span<const double>(p_vy)) -
         entropy(std::span<const double>(p_tvy)) - entropy(std::span<const double>(p_y));
}

ActiveBranch classify(double multiple_access, double broadcast) {
  if (std::abs(multiple_access - broadcast) <= kBranchTieTol) return ActiveBranch::both;
  return multiple_access < broadcast ? ActiveBranch::multiple_access : ActiveBranch::broadcast;
}

void require_rate(double r0) {
  if (!(r0 >= 0.0)) throw DomainError("relay rate r0 must be nonnegative");
}

}  // namespace

const char* to_string(ActiveBranch branch) {
  switch (branch) {
    case ActiveBranch::multiple_access: return "multiple_access";
    case ActiveBranch::broadcast: return "broadcast";
    case ActiveBranch::both: return "both";
    case ActiveBranch::none: return "none";
  }
  return "none";
}

RateGrid RateGrid::linspace(double lo, double hi, std::size_t points) {
  if (points == 0) throw ValidationError("RateGrid: need at least one point");
  std::vector<double> values;
  values.reserve(points);
  if (points == 1) {
    values.push_back(lo);
  } else {
    for (std::size_t i = 0; i < points; ++i) {
      values.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
  }
  RateGrid grid{std::move(values)};
  grid.validate();
  return grid;
}

void RateGrid::validate() const {
  if (r0_values.empty()) throw ValidationError("RateGrid: empty grid");
  double prev = -1.0;
  for (double r : r0_values) {
    if (!(r >= 0.0)) throw ValidationError("RateGrid: rates must be nonnegative");
    if (r <= prev) throw ValidationError("RateGrid: rates must be strictly ascending");
    prev = r;
  }
}

BoundResult cut_set_bound(const ChannelSpec& channel, double r0, const SearchConfig& config) {
  require_rate(r0);
  // A one-letter auxiliary makes the generic joint usable without a real V.
  const StochasticMatrix no_v =
      StochasticMatrix::constant_rows(channel.t_size(), ProbVector(std::vector<double>{1.0}));
  auto objective = [&](const SimplexPoint& p_x) {
    const JointDistribution joint = build_joint(p_x, channel, no_v);
    const double ma = mutual_information(joint, {"x"}, {"y"}) + r0;
    const double bc = conditional_mutual_information(joint, {"x"}, {"y"}, {"t"});
    return std::min(ma, bc);
  };
  const Optimum opt = maximize_over_simplex(objective, channel.x_size(), config);

  const JointDistribution joint = build_joint(opt.argument.front(), channel, no_v);
  const double ma = mutual_information(joint, {"x"}, {"y"}) + r0;
  const double bc = conditional_mutual_information(joint, {"x"}, {"y"}, {"t"});
  return BoundResult{std::max(0.0, opt.value), opt.argument.front(), std::nullopt,
                     classify(ma, bc), 0.0};
}

BoundResult new_upper_bound(const ChannelSpec& channel, double r0, std::size_t v_card,
                            const SearchConfig& config) {
  require_rate(r0);
  const std::size_t nv = v_card == 0 ? channel.t_size() + 2 : v_card;

  struct BranchMemo {
    std::vector<double> p_x;
    double broadcast = 0.0;
    bool valid = false;
  };
  auto memo = std::make_shared<BranchMemo>();
  auto objective = [&channel, memo](const ProductPoint& point) {
    const JointDistribution joint = build_joint(point[0], channel, rows_from(point));
    const double ma = mutual_information(joint, {"x", "v"}, {"y"});
    if (!memo->valid || memo->p_x != point[0].weights()) {
      memo->broadcast = conditional_mutual_information(joint, {"x"}, {"y"}, {"t"});
      memo->p_x = point[0].weights();
      memo->valid = true;
    }
    return std::min(ma, memo->broadcast);
  };

  ProductConstraint constraint;
  constraint.slack = [&channel, r0](const ProductPoint& point) {
    return r0 - state_description_rate(channel.p_t(), point);
  };
  constraint.relax = [&channel](const ProductPoint& point) {
    return relax_rows(channel.p_t(), point);
  };

  const Optimum opt =
      maximize_over_product(objective, engine_shapes(channel, nv), constraint, config,
                            engine_starts(channel, nv));

  const StochasticMatrix rows = rows_from(opt.argument);
  const JointDistribution joint = build_joint(opt.argument[0], channel, rows);
  const double ma = mutual_information(joint, {"x", "v"}, {"y"});
  const double bc = conditional_mutual_information(joint, {"x"}, {"y"}, {"t"});
  return BoundResult{std::max(0.0, opt.value), opt.argument[0], rows, classify(ma, bc),
                     opt.constraint_slack};
}

BoundResult caf_rate(const ChannelSpec& channel, double r0, std::size_t v_card,
                     const SearchConfig& config) {
  require_rate(r0);
  const std::size_t nv = v_card == 0 ? 2 : v_card;

  auto objective = [&channel](const ProductPoint& point) {
    const JointDistribution joint = build_joint(point[0], channel, rows_from(point));
    return conditional_mutual_information(joint, {"x"}, {"y"}, {"v"});
  };

  auto memo = std::make_shared<OutputGivenState>();
  ProductConstraint constraint;
  constraint.slack = [&channel, r0, memo](const ProductPoint& point) {
    return r0 - conditional_description_rate(channel, point, *memo);
  };
  constraint.relax = [&channel](const ProductPoint& point) {
    return relax_rows(channel.p_t(), point);
  };

  const Optimum opt =
      maximize_over_product(objective, engine_shapes(channel, nv), constraint, config,
                            engine_starts(channel, nv));

  // The conditional constraint drives the search; the identity
  // I(T;V|Y) = I(T;V) - I(V;Y) must hold on the reported joint.
  const StochasticMatrix rows = rows_from(opt.argument);
  const JointDistribution joint = build_joint(opt.argument[0], channel, rows);
  const double conditional = conditional_mutual_information(joint, {"t"}, {"v"}, {"y"});
  const double rewrite = mutual_information(joint, {"t"}, {"v"}) -
                         mutual_information(joint, {"v"}, {"y"});
  if (std::abs(conditional - rewrite) > kConstraintFormTol) {
    std::ostringstream msg;
    msg << "caf_rate: constraint forms disagree by " << std::abs(conditional - rewrite)
        << " bits at the reported optimum";
    throw NumericalError(msg.str());
  }
  return BoundResult{std::max(0.0, opt.value), opt.argument[0], rows, ActiveBranch::none,
                     r0 - conditional};
}

std::pair<double, double> capacity_endpoints(const ChannelSpec& channel,
                                             const SearchConfig& config) {
  const StochasticMatrix no_v =
      StochasticMatrix::constant_rows(channel.t_size(), ProbVector(std::vector<double>{1.0}));
  auto plain = [&](const SimplexPoint& p_x) {
    return mutual_information(build_joint(p_x, channel, no_v), {"x"}, {"y"});
  };
  auto informed = [&](const SimplexPoint& p_x) {
    return conditional_mutual_information(build_joint(p_x, channel, no_v), {"x"}, {"y"}, {"t"});
  };
  const double c0 = std::max(0.0, maximize_over_simplex(plain, channel.x_size(), config).value);
  const double cinf =
      std::max(0.0, maximize_over_simplex(informed, channel.x_size(), config).value);
  return {c0, cinf};
}

CriticalRate critical_r0_lower_bound(const ChannelSpec& channel, const RateGrid& grid,
                                     double tol, const SearchConfig& config,
                                     std::size_t v_card) {
  grid.validate();
  if (!(tol > 0.0)) throw ValidationError("critical_r0_lower_bound: tol must be positive");
  const double h_t = channel.state_entropy();
  if (grid.r0_values.front() > 1e-9 || grid.r0_values.back() < h_t - 1e-9) {
    std::ostringstream msg;
    msg << "critical_r0_lower_bound: grid must span [0, H(T)] = [0, " << h_t << "]";
    throw ValidationError(msg.str());
  }
  const double saturated = capacity_endpoints(channel, config).second;
  for (std::size_t i = 0; i < grid.r0_values.size(); ++i) {
    const double r = grid.r0_values[i];
    if (new_upper_bound(channel, r, v_card, config).value >= saturated - tol) {
      const double step = i == 0 ? 0.0 : r - grid.r0_values[i - 1];
      return CriticalRate{r, step};
    }
  }
  throw ResolutionError(
      "critical_r0_lower_bound: no grid rate reached the saturated capacity; the grid is too "
      "coarse for the requested tolerance");
}

std::vector<SweepRow> sweep(const ChannelSpec& channel, const RateGrid& grid,
                            std::size_t v_card_ub, std::size_t v_card_caf,
                            const SearchConfig& config, const ClosedFormColumns* closed,
                            bool parallel) {
  grid.validate();
  auto compute = [&](double r0) {
    SweepRow row{r0,
                 cut_set_bound(channel, r0, config).value,
                 new_upper_bound(channel, r0, v_card_ub, config).value,
                 caf_rate(channel, r0, v_card_caf, config).value,
                 std::nullopt,
                 std::nullopt};
    if (closed != nullptr) {
      if (closed->capacity) row.closed_capacity = closed->capacity(r0);
      if (closed->cutset) row.closed_cutset = closed->cutset(r0);
    }
    return row;
  };

  std::vector<SweepRow> rows;
  rows.reserve(grid.r0_values.size());
  if (parallel) {
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(grid.r0_values.size());
    for (double r0 : grid.r0_values) {
      futures.push_back(std::async(std::launch::async, compute, r0));
    }
    for (auto& f : futures) rows.push_back(f.get());
  } else {
    for (double r0 : grid.r0_values) rows.push_back(compute(r0));
  }
  return rows;
}

}  // namespace relay
