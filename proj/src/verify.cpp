#include "relay/verify.hpp"

#include <cmath>
#include <sstream>

#include "relay/io.hpp"
#include "relay/zoo.hpp"
#include "rng_util.hpp"

namespace relay {

namespace {

constexpr double kTightTol = 1e-6;    // cut-set comparisons, exact identities aside
constexpr double kSearchTol = 2e-3;   // searched quantities with restarts in play
constexpr double kIdentityTol = 1e-12;

void check_range(std::size_t lo, std::size_t hi, std::size_t cap, const char* what) {
  if (lo < 1 || hi > cap || lo > hi) {
    std::ostringstream msg;
    msg << "RandomChannelConfig: " << what << " range [" << lo << ", " << hi
        << "] must sit inside [1, " << cap << "]";
    throw ValidationError(msg.str());
  }
}

std::string format_channel(const ChannelSpec& channel) {
  return io::channel_to_json_text(channel);
}

}  // namespace

void RandomChannelConfig::validate() const {
  check_range(x_min, x_max, 4, "input");
  check_range(t_min, t_max, 4, "state");
  check_range(y_min, y_max, 5, "output");
  if (!(dirichlet_concentration > 0.0)) {
    throw ValidationError("RandomChannelConfig: concentration must be positive");
  }
}

ChannelSpec random_channel(const RandomChannelConfig& config) {
  config.validate();
  detail::Rng rng(config.seed);
  const std::size_t nx = rng.between(config.x_min, config.x_max);
  const std::size_t nt = rng.between(config.t_min, config.t_max);
  const std::size_t ny = rng.between(config.y_min, config.y_max);
  ProbVector p_t = ProbVector::normalized(rng.dirichlet(nt, config.dirichlet_concentration));
  std::vector<double> kernel;
  kernel.reserve(nx * nt * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t t = 0; t < nt; ++t) {
      const auto row = rng.dirichlet(ny, config.dirichlet_concentration);
      const ProbVector clean = ProbVector::normalized(std::vector<double>(row));
      kernel.insert(kernel.end(), clean.weights().begin(), clean.weights().end());
    }
  }
  return ChannelSpec(nx, nt, ny, std::move(p_t), kernel);
}

Report check_bounds_properties(const ChannelSpec& channel, const RateGrid& grid,
                               const SearchConfig& config, const std::string& tag,
                               const BoundChecks& checks) {
  grid.validate();
  Report report{"bounds-properties", 0, {}};
  const std::size_t matched = channel.t_size() + 2;

  auto complain = [&](const std::string& check, double r0, const std::string& what) {
    std::ostringstream detail;
    detail << tag << ": " << what << " at r0=" << r0 << " (grid_step=" << config.grid_step
           << ", restarts=" << config.restarts << ", seed=" << config.seed << ")\n"
           << format_channel(channel);
    report.violations.push_back(Violation{check, detail.str()});
  };

  double prev_cs = 0.0, prev_ub = 0.0, prev_caf = 0.0;
  bool have_prev = false;
  for (double r0 : grid.r0_values) {
    const double cs = cut_set_bound(channel, r0, config).value;
    const double ub = new_upper_bound(channel, r0, matched, config).value;
    const double caf = caf_rate(channel, r0, matched, config).value;

    if (checks.ordering) {
      ++report.checks;
      if (!(caf <= ub + kSearchTol)) {
        std::ostringstream what;
        what << "caf " << caf << " exceeds upper bound " << ub;
        complain("ordering: caf <= upper_bound", r0, what.str());
      }
      ++report.checks;
      if (!(ub <= cs + kTightTol)) {
        std::ostringstream what;
        what << "upper bound " << ub << " exceeds cut-set " << cs;
        complain("ordering: upper_bound <= cut_set", r0, what.str());
      }
    }
    if (checks.monotonicity && have_prev) {
      ++report.checks;
      if (!(cs >= prev_cs - kTightTol)) {
        std::ostringstream what;
        what << "cut-set fell from " << prev_cs << " to " << cs;
        complain("monotonicity: cut_set", r0, what.str());
      }
      ++report.checks;
      if (!(ub >= prev_ub - kSearchTol)) {
        std::ostringstream what;
        what << "upper bound fell from " << prev_ub << " to " << ub;
        complain("monotonicity: upper_bound", r0, what.str());
      }
      ++report.checks;
      if (!(caf >= prev_caf - kSearchTol)) {
        std::ostringstream what;
        what << "caf fell from " << prev_caf << " to " << caf;
        complain("monotonicity: caf", r0, what.str());
      }
    }
    prev_cs = cs;
    prev_ub = ub;
    prev_caf = caf;
    have_prev = true;
  }
  return report;
}

Report check_bounds_properties_random(std::size_t channels, const RateGrid& grid,
                                      const RandomChannelConfig& channel_config,
                                      const SearchConfig& config, const BoundChecks& checks) {
  channel_config.validate();
  Report report{"bounds-properties-random", 0, {}};
  for (std::size_t i = 0; i < channels; ++i) {
    RandomChannelConfig one = channel_config;
    one.seed = channel_config.seed + i;
    std::ostringstream tag;
    tag << "random channel " << i << " (seed " << one.seed << ")";
    const Report sub =
        check_bounds_properties(random_channel(one), grid, config, tag.str(), checks);
    report.checks += sub.checks;
    report.violations.insert(report.violations.end(), sub.violations.begin(),
                             sub.violations.end());
  }
  return report;
}

Report check_ordering(const ChannelSpec& channel, const RateGrid& grid,
                      const SearchConfig& config, const std::string& tag) {
  BoundChecks only_ordering;
  only_ordering.monotonicity = false;
  Report report = check_bounds_properties(channel, grid, config, tag, only_ordering);
  report.suite = "bounds-ordering";
  return report;
}

Report check_identities(std::size_t samples, std::uint64_t seed) {
  Report report{"information-identities", 0, {}};
  detail::Rng rng(seed);

  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t nx = rng.between(2, 3);
    const std::size_t nt = rng.between(2, 3);
    const std::size_t ny = rng.between(2, 4);
    const std::size_t nv = rng.between(2, 4);

    const ProbVector p_x = ProbVector::normalized(rng.dirichlet(nx, 1.0));
    const ProbVector p_t = ProbVector::normalized(rng.dirichlet(nt, 1.0));
    std::vector<double> kernel;
    kernel.reserve(nx * nt * ny);
    for (std::size_t k = 0; k < nx * nt; ++k) {
      const auto row = ProbVector::normalized(rng.dirichlet(ny, 1.0));
      kernel.insert(kernel.end(), row.weights().begin(), row.weights().end());
    }
    const ChannelSpec channel(nx, nt, ny, p_t, kernel);
    std::vector<std::vector<double>> v_rows;
    for (std::size_t t = 0; t < nt; ++t) {
      v_rows.push_back(ProbVector::normalized(rng.dirichlet(nv, 1.0)).weights());
    }
    const JointDistribution joint =
        build_joint(p_x, channel, StochasticMatrix::from_rows(v_rows));

    auto complain = [&](const char* check, double residual) {
      std::ostringstream detail;
      detail << "sample " << i << " (seed " << seed << "): residual " << residual << "\n"
             << format_channel(channel);
      report.violations.push_back(Violation{check, detail.str()});
    };

    const double conditional = conditional_mutual_information(joint, {"t"}, {"v"}, {"y"});
    const double rewrite =
        mutual_information(joint, {"t"}, {"v"}) - mutual_information(joint, {"v"}, {"y"});
    ++report.checks;
    if (!(std::abs(conditional - rewrite) < kIdentityTol)) {
      complain("identity: I(T;V|Y) = I(T;V) - I(V;Y)", std::abs(conditional - rewrite));
    }

    const double lhs = mutual_information(joint, {"x", "v"}, {"y"});
    const double rhs = mutual_information(joint, {"v"}, {"y"}) +
                       conditional_mutual_information(joint, {"x"}, {"y"}, {"v"});
    ++report.checks;
    if (!(std::abs(lhs - rhs) < kIdentityTol)) {
      complain("chain rule: I(X,V;Y) = I(V;Y) + I(X;Y|V)", std::abs(lhs - rhs));
    }

    // With V a copy of T the conditional description rate pins to H(T|Y).
    const JointDistribution copy =
        build_joint(p_x, channel, StochasticMatrix::identity_like(nt, nt));
    const double pinned = conditional_mutual_information(copy, {"t"}, {"v"}, {"y"});
    const double h_t_given_y = copy.entropy_of({"t", "y"}) - copy.entropy_of({"y"});
    ++report.checks;
    if (!(std::abs(pinned - h_t_given_y) < kIdentityTol)) {
      complain("pinning: I(T;T|Y) = H(T|Y)", std::abs(pinned - h_t_given_y));
    }
  }
  return report;
}

Report check_entropy_inequality(std::size_t samples, std::uint64_t seed) {
  Report report{"ternary-entropy-inequality", 0, {}};
  detail::Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto w = rng.dirichlet(3, 1.0);
    const ProbVector p = ProbVector::normalized(std::vector<double>(w));
    const double bound = binary_entropy(p[1]) + 1.0 - p[1];

    ++report.checks;
    const double value = ternary_entropy(p[0], p[1], p[2]);
    if (!(value <= bound + kIdentityTol)) {
      std::ostringstream detail;
      detail << "sample " << i << " (seed " << seed << "): H(" << p[0] << ", " << p[1] << ", "
             << p[2] << ") = " << value << " exceeds " << bound;
      report.violations.push_back(Violation{"ternary entropy upper bound", detail.str()});
    }

    // Splitting the off-mass evenly meets the bound exactly.
    ++report.checks;
    const double half = (1.0 - p[1]) / 2.0;
    const double symmetric = ternary_entropy(half, p[1], half);
    if (!(std::abs(symmetric - bound) <= 1e-9)) {
      std::ostringstream detail;
      detail << "sample " << i << " (seed " << seed << "): H(" << half << ", " << p[1] << ", "
             << half << ") = " << symmetric << " misses the bound " << bound;
      report.violations.push_back(Violation{"ternary entropy equality case", detail.str()});
    }
  }
  return report;
}

Report check_witsenhausen(const std::vector<double>& eps_values, std::size_t gamma_points,
                          const SearchConfig& config) {
  if (gamma_points < 2) {
    throw ValidationError("check_witsenhausen: need at least two gamma points");
  }
  Report report{"witsenhausen-erasure", 0, {}};
  const ProbVector p_t({0.3, 0.7});
  const double h_t = entropy(p_t);
  for (double eps : eps_values) {
    const StochasticMatrix observation = zoo::erasure_state_channel(eps);
    for (std::size_t g = 0; g < gamma_points; ++g) {
      const double gamma =
          h_t * static_cast<double>(g) / static_cast<double>(gamma_points - 1);
      const double numeric = witsenhausen_G(p_t, observation, gamma, config);
      const double closed = binary_entropy(eps) + eps * gamma;
      ++report.checks;
      if (!(std::abs(numeric - closed) <= 1e-3)) {
        std::ostringstream detail;
        detail << "eps=" << eps << " gamma=" << gamma << ": numeric " << numeric
               << " vs closed " << closed << " (restarts=" << config.restarts
               << ", seed=" << config.seed << ")";
        report.violations.push_back(Violation{"witsenhausen closed form", detail.str()});
      }
    }
  }
  return report;
}

}  // namespace relay
