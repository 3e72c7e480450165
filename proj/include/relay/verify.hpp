#pragma once
// Property suites guarding the engines: bound ordering and monotonicity on
// random channels, the information identities behind the compress-and-forward
// constraint, the ternary entropy inequality, and the scalar entropy
// functional against its closed form.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "relay/bounds.hpp"
#include "relay/optimizer.hpp"
#include "relay/probability.hpp"

namespace relay {

struct RandomChannelConfig {
  std::uint64_t seed = 0;
  std::size_t x_min = 2, x_max = 3;  // input alphabet range, within [1, 4]
  std::size_t t_min = 2, t_max = 3;  // state alphabet range, within [1, 4]
  std::size_t y_min = 2, y_max = 4;  // output alphabet range, within [1, 5]
  double dirichlet_concentration = 1.0;

  void validate() const;
};

// Deterministic for a fixed config: sizes are drawn first, then the state
// prior, then the kernel rows in (x, t) order, all from one seeded stream.
ChannelSpec random_channel(const RandomChannelConfig& config);

struct Violation {
  std::string check;
  std::string detail;  // reproduction bundle: seed, channel, rate, config
};

struct Report {
  std::string suite;
  std::size_t checks = 0;
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
};

// Which of the bound property checks to run on a channel/grid pair.
struct BoundChecks {
  bool ordering = true;      // caf <= ub + 2e-3 and ub <= cs + 1e-6 per rate
  bool monotonicity = true;  // nondecreasing in r0: cs within 1e-6, ub/caf within 2e-3
};

// Computes all three bounds once per rate and applies the selected checks.
// The upper bound and caf run with matched auxiliary cardinality |T| + 2.
Report check_bounds_properties(const ChannelSpec& channel, const RateGrid& grid,
                               const SearchConfig& config, const std::string& tag,
                               const BoundChecks& checks = {});

// Same checks over `channels` random channels (seeded config.seed + index)
// at the given rates.
Report check_bounds_properties_random(std::size_t channels, const RateGrid& grid,
                                      const RandomChannelConfig& channel_config,
                                      const SearchConfig& config,
                                      const BoundChecks& checks = {});

// Ordering-only convenience wrappers.
Report check_ordering(const ChannelSpec& channel, const RateGrid& grid,
                      const SearchConfig& config, const std::string& tag);

// Residuals of I(T;V|Y) = I(T;V) - I(V;Y) and the chain rule
// I(X,V;Y) = I(V;Y) + I(X;Y|V) on random factored joints; each must stay
// below 1e-12. Also pins I(T;V|Y) = H(T|Y) when V = T.
Report check_identities(std::size_t samples, std::uint64_t seed);

// ternary_entropy(a, b, c) <= h(b) + 1 - b on random simplex points, with
// equality within 1e-9 when a = c.
Report check_entropy_inequality(std::size_t samples, std::uint64_t seed);

// Numeric witsenhausen_G against h(eps) + eps*gamma for the erasure state
// channel, over the given eps values and gamma_points rates spanning
// [0, H(T)]; each must agree within 1e-3 bits.
Report check_witsenhausen(const std::vector<double>& eps_values, std::size_t gamma_points,
                          const SearchConfig& config);

}  // namespace relay
