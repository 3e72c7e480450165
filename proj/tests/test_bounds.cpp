#include <cmath>
#include <vector>

#include "doctest.h"
#include "relay/bounds.hpp"
#include "relay/zoo.hpp"

using namespace relay;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

SearchConfig fast_config() {
  SearchConfig config;
  config.grid_step = 0.01;
  config.restarts = 6;
  return config;
}

const zoo::ErasureParams kErasure{0.3, 0.4};

}  // namespace

TEST_CASE("rate grids validate and linspace endpoints are exact") {
  const RateGrid grid = RateGrid::linspace(0.0, 1.2, 13);
  CHECK(grid.r0_values.size() == 13);
  CHECK(grid.r0_values.front() == 0.0);
  CHECK(grid.r0_values.back() == 1.2);
  CHECK_THROWS_AS(RateGrid{{}}.validate(), ValidationError);
  CHECK_THROWS_AS((RateGrid{{0.2, 0.1}}).validate(), ValidationError);
  CHECK_THROWS_AS((RateGrid{{-0.1, 0.2}}).validate(), ValidationError);
  CHECK_THROWS_AS(RateGrid::linspace(0.0, 1.0, 0), ValidationError);
}

TEST_CASE("negative relay rates are rejected") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  CHECK_THROWS_AS(cut_set_bound(channel, -0.1, fast_config()), DomainError);
  CHECK_THROWS_AS(new_upper_bound(channel, -0.1, 0, fast_config()), DomainError);
  CHECK_THROWS_AS(caf_rate(channel, -0.1, 0, fast_config()), DomainError);
}

TEST_CASE("erasure endpoints match the closed forms") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  const auto [c0, cinf] = capacity_endpoints(channel, fast_config());
  CHECK(close(c0, 0.047484, 1e-3));
  CHECK(close(cinf, 0.4, 1e-6));
}

TEST_CASE("erasure cut-set matches its closed form tightly") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  for (double r0 : {0.0, 0.1, 0.2, 0.35, 0.6}) {
    const BoundResult result = cut_set_bound(channel, r0, fast_config());
    CHECK(close(result.value, zoo::erasure_cutset_closed(kErasure, r0), 1e-6));
  }
  // below the knee the rate-limited cut binds, beyond it the informed cut
  CHECK(cut_set_bound(channel, 0.1, fast_config()).active_branch ==
        ActiveBranch::multiple_access);
  CHECK(cut_set_bound(channel, 0.9, fast_config()).active_branch == ActiveBranch::broadcast);
}

TEST_CASE("erasure upper bound and caf track the capacity") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  for (double r0 : {0.0, 0.2, 0.5, 1.0}) {
    const double closed = zoo::erasure_capacity_closed(kErasure, r0);
    const BoundResult ub = new_upper_bound(channel, r0, 0, fast_config());
    const BoundResult caf = caf_rate(channel, r0, 0, fast_config());
    CHECK(close(ub.value, closed, 1e-3));
    CHECK(close(caf.value, closed, 1e-3));
    CHECK(ub.p_v_given_t.has_value());
    CHECK(caf.p_v_given_t.has_value());
    CHECK(ub.constraint_slack >= -1e-9);
    CHECK(caf.constraint_slack >= -1e-9);
    CHECK(caf.active_branch == ActiveBranch::none);
  }
}

TEST_CASE("frozen erasure values at r0 = 0.2") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  CHECK(close(cut_set_bound(channel, 0.2, fast_config()).value, 0.247484, 1e-6));
  CHECK(close(new_upper_bound(channel, 0.2, 0, fast_config()).value, 0.127484, 1e-3));
  CHECK(close(caf_rate(channel, 0.2, 0, fast_config()).value, 0.127484, 1e-3));
}

TEST_CASE("upper bound at rate zero degenerates to the uninformed capacity") {
  for (const ChannelSpec& channel :
       {zoo::erasure_two_state(kErasure), zoo::kim_xor(0.3),
        zoo::multiplicative({0.5, 0.5})}) {
    const double c0 = capacity_endpoints(channel, fast_config()).first;
    CHECK(close(new_upper_bound(channel, 0.0, 0, fast_config()).value, c0, 2e-3));
  }
}

TEST_CASE("upper bound saturates at generous relay rates") {
  for (const ChannelSpec& channel :
       {zoo::erasure_two_state(kErasure), zoo::multiplicative({0.5, 0.5})}) {
    const double cinf = capacity_endpoints(channel, fast_config()).second;
    const double r0 = channel.state_entropy() + 0.1;
    CHECK(close(new_upper_bound(channel, r0, 0, fast_config()).value, cinf, 2e-3));
  }
}

TEST_CASE("xor channel collapses the upper bound onto the cut-set") {
  const ChannelSpec channel = zoo::kim_xor(0.3);
  for (double r0 : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double cs = cut_set_bound(channel, r0, fast_config()).value;
    const double ub = new_upper_bound(channel, r0, 0, fast_config()).value;
    CHECK(std::abs(ub - cs) <= 2e-3);
  }
}

TEST_CASE("critical rate search on the erasure channel") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  // 0.92/23 = 0.04 per step, spanning [0, H(T)] comfortably
  const RateGrid grid = RateGrid::linspace(0.0, 0.92, 24);
  const CriticalRate critical =
      critical_r0_lower_bound(channel, grid, 1e-3, fast_config(), 0);
  CHECK(close(critical.r0, 0.88, 1e-9));
  CHECK(close(critical.grid_step, 0.04, 1e-9));
}

TEST_CASE("critical rate is zero when the state is degenerate") {
  // |T| = 1: a plain BSC(0.1) dressed up as a state channel
  const std::vector<double> kernel{0.9, 0.1, 0.1, 0.9};
  const ChannelSpec channel(2, 1, 2, ProbVector({1.0}), kernel);
  const RateGrid grid{{0.0}};
  const CriticalRate critical =
      critical_r0_lower_bound(channel, grid, 1e-3, fast_config(), 0);
  CHECK(critical.r0 == 0.0);
  CHECK(critical.grid_step == 0.0);
}

TEST_CASE("critical rate reports unusable grids honestly") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  // grid does not reach H(T)
  CHECK_THROWS_AS(critical_r0_lower_bound(channel, RateGrid::linspace(0.0, 0.5, 6), 1e-3,
                                          fast_config(), 0),
                  ValidationError);
  // a grid top sitting just inside the span slop leaves a genuine capacity
  // shortfall of about 2e-10, so a 1e-11 tolerance can never be met
  const double h_t = channel.state_entropy();
  const RateGrid shy{{0.0, 0.4, h_t - 5e-10}};
  CHECK_THROWS_AS(critical_r0_lower_bound(channel, shy, 1e-11, fast_config(), 0),
                  ResolutionError);
}

TEST_CASE("sweep rows agree with individual bound calls") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  const RateGrid grid{{0.0, 0.3, 0.9}};
  const SearchConfig config = fast_config();
  const auto rows = sweep(channel, grid, 0, 2, config);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double r0 = grid.r0_values[i];
    CHECK(rows[i].r0 == r0);
    CHECK(rows[i].cut_set == cut_set_bound(channel, r0, config).value);
    CHECK(rows[i].upper_bound == new_upper_bound(channel, r0, 0, config).value);
    CHECK(rows[i].caf == caf_rate(channel, r0, 2, config).value);
    CHECK_FALSE(rows[i].closed_capacity.has_value());
    CHECK_FALSE(rows[i].closed_cutset.has_value());
  }
}

TEST_CASE("sweep closed-form columns and parallel execution") {
  const ChannelSpec channel = zoo::erasure_two_state(kErasure);
  const RateGrid grid{{0.1, 0.5}};
  ClosedFormColumns closed;
  closed.capacity = [](double r0) { return zoo::erasure_capacity_closed(kErasure, r0); };
  closed.cutset = [](double r0) { return zoo::erasure_cutset_closed(kErasure, r0); };
  const SearchConfig config = fast_config();
  const auto serial = sweep(channel, grid, 0, 2, config, &closed, false);
  const auto parallel = sweep(channel, grid, 0, 2, config, &closed, true);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].cut_set == parallel[i].cut_set);
    CHECK(serial[i].upper_bound == parallel[i].upper_bound);
    CHECK(serial[i].caf == parallel[i].caf);
    REQUIRE(serial[i].closed_capacity.has_value());
    CHECK(*serial[i].closed_capacity ==
          zoo::erasure_capacity_closed(kErasure, grid.r0_values[i]));
    CHECK(*serial[i].closed_cutset ==
          zoo::erasure_cutset_closed(kErasure, grid.r0_values[i]));
  }
}

TEST_CASE("branch labels render") {
  CHECK(std::string(to_string(ActiveBranch::multiple_access)) == "multiple_access");
  CHECK(std::string(to_string(ActiveBranch::broadcast)) == "broadcast");
  CHECK(std::string(to_string(ActiveBranch::both)) == "both");
  CHECK(std::string(to_string(ActiveBranch::none)) == "none");
}
