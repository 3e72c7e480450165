#include <cmath>

#include "doctest.h"
#include "relay/bounds.hpp"
#include "relay/probability.hpp"
#include "relay/verify.hpp"
#include "relay/zoo.hpp"

namespace {

using namespace relay;

// property suites run many searches, so keep each one cheap
SearchConfig fast_config() {
  SearchConfig config;
  config.grid_step = 0.02;
  config.restarts = 4;
  return config;
}

}  // namespace

TEST_CASE("random channels are deterministic in the seed") {
  RandomChannelConfig config;
  config.seed = 17;
  const ChannelSpec a = random_channel(config);
  const ChannelSpec b = random_channel(config);
  CHECK(a == b);
  config.seed = 18;
  CHECK(a != random_channel(config));
}

TEST_CASE("random channels respect the requested alphabet ranges") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomChannelConfig config;
    config.seed = seed;
    const ChannelSpec ch = random_channel(config);
    CHECK(ch.x_size() >= 2);
    CHECK(ch.x_size() <= 3);
    CHECK(ch.t_size() >= 2);
    CHECK(ch.t_size() <= 3);
    CHECK(ch.y_size() >= 2);
    CHECK(ch.y_size() <= 4);
  }
  RandomChannelConfig pinned;
  pinned.seed = 3;
  pinned.x_min = pinned.x_max = 4;
  pinned.t_min = pinned.t_max = 1;
  pinned.y_min = pinned.y_max = 5;
  const ChannelSpec ch = random_channel(pinned);
  CHECK(ch.x_size() == 4);
  CHECK(ch.t_size() == 1);
  CHECK(ch.y_size() == 5);
}

TEST_CASE("high concentration pulls the draws toward uniform") {
  RandomChannelConfig config;
  config.seed = 11;
  config.y_min = config.y_max = 3;
  config.dirichlet_concentration = 1e4;
  const ChannelSpec ch = random_channel(config);
  for (std::size_t x = 0; x < ch.x_size(); ++x) {
    for (std::size_t t = 0; t < ch.t_size(); ++t) {
      for (std::size_t y = 0; y < 3; ++y) {
        CHECK(std::abs(ch.kernel(x, t, y) - 1.0 / 3.0) < 0.05);
      }
    }
  }
  const double uniform_t = 1.0 / static_cast<double>(ch.t_size());
  for (double w : ch.p_t().weights()) CHECK(std::abs(w - uniform_t) < 0.05);
}

TEST_CASE("random channel configuration is validated") {
  auto broken = [](auto&& tweak) {
    RandomChannelConfig config;
    tweak(config);
    return config;
  };
  CHECK_THROWS_AS(random_channel(broken([](auto& c) { c.x_min = 0; })), ValidationError);
  CHECK_THROWS_AS(random_channel(broken([](auto& c) { c.x_max = 5; })), ValidationError);
  CHECK_THROWS_AS(random_channel(broken([](auto& c) { c.y_max = 6; })), ValidationError);
  CHECK_THROWS_AS(random_channel(broken([](auto& c) {
                    c.t_min = 3;
                    c.t_max = 2;
                  })),
                  ValidationError);
  CHECK_THROWS_AS(random_channel(broken([](auto& c) { c.dirichlet_concentration = 0.0; })),
                  ValidationError);
}

TEST_CASE("report bookkeeping") {
  Report report{"demo", 2, {}};
  CHECK(report.clean());
  report.violations.push_back(Violation{"demo check", "went sideways"});
  CHECK_FALSE(report.clean());
}

TEST_CASE("information identity suite runs clean") {
  const Report report = check_identities(50, 7);
  CHECK(report.suite == "information-identities");
  CHECK(report.checks == 150);
  CHECK(report.clean());
}

TEST_CASE("ternary entropy suite runs clean") {
  const Report report = check_entropy_inequality(200, 3);
  CHECK(report.suite == "ternary-entropy-inequality");
  CHECK(report.checks == 400);
  CHECK(report.clean());
}

TEST_CASE("witsenhausen suite runs clean") {
  const Report report = check_witsenhausen({0.4}, 4, fast_config());
  CHECK(report.suite == "witsenhausen-erasure");
  CHECK(report.checks == 4);
  CHECK(report.clean());
  CHECK_THROWS_AS(check_witsenhausen({0.4}, 1, fast_config()), ValidationError);
}

TEST_CASE("bounds property suite runs clean on the erasure channel") {
  const ChannelSpec channel = zoo::erasure_two_state({0.3, 0.4});
  const RateGrid grid{{0.0, 0.2, 0.5}};
  const Report report = check_bounds_properties(channel, grid, fast_config(), "erasure");
  CHECK(report.suite == "bounds-properties");
  // two ordering checks per rate plus three monotonicity checks per step
  CHECK(report.checks == 12);
  CHECK(report.clean());
}

TEST_CASE("ordering-only wrapper renames the suite") {
  const ChannelSpec channel = zoo::kim_xor(0.3);
  const RateGrid grid{{0.0, 0.4}};
  const Report report = check_ordering(channel, grid, fast_config(), "xor");
  CHECK(report.suite == "bounds-ordering");
  CHECK(report.checks == 4);
  CHECK(report.clean());
}

TEST_CASE("random channel property sweep runs clean") {
  RandomChannelConfig channels;
  channels.seed = 23;
  const RateGrid grid{{0.0, 0.3}};
  const Report report =
      check_bounds_properties_random(3, grid, channels, fast_config());
  CHECK(report.suite == "bounds-properties-random");
  CHECK(report.checks == 21);
  CHECK(report.clean());
}
