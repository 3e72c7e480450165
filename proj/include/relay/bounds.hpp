#pragma once
// Capacity bounds for a relay configuration in which the relay observes the
// channel state sequence and describes it to the receiver over a noiseless
// link of rate r0 bits per channel use.
//
//   cut_set_bound    max over p(x) of min{ I(X;Y) + r0, I(X;Y|T) }
//   new_upper_bound  sup over p(x), p(v|t) with I(T;V) <= r0 of
//                    min{ I(X,V;Y), I(X;Y|T) }
//   caf_rate         sup over p(x), p(v|t) with I(T;V|Y) <= r0 of I(X;Y|V)
//
// The first term of each min is the multiple-access style cut, the second
// the broadcast style cut. caf_rate is achievable, the other two are upper
// bounds, so caf <= capacity <= new_upper_bound <= cut_set always.

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "relay/optimizer.hpp"
#include "relay/probability.hpp"

namespace relay {

enum class ActiveBranch { multiple_access, broadcast, both, none };

const char* to_string(ActiveBranch branch);

struct BoundResult {
  double value;                                  // bits, clamped at 0
  ProbVector p_x;                                // maximizing input distribution
  std::optional<StochasticMatrix> p_v_given_t;   // absent for the cut-set bound
  ActiveBranch active_branch;
  double constraint_slack;                       // bits; 0 when unconstrained
};

// Strictly ascending nonnegative rates.
struct RateGrid {
  std::vector<double> r0_values;

  static RateGrid linspace(double lo, double hi, std::size_t points);
  void validate() const;
};

struct SweepRow {
  double r0;
  double cut_set;
  double upper_bound;
  double caf;
  std::optional<double> closed_capacity;
  std::optional<double> closed_cutset;
};

// Closed-form reference columns for a sweep; either function may be empty.
struct ClosedFormColumns {
  std::function<double(double)> capacity;
  std::function<double(double)> cutset;
};

BoundResult cut_set_bound(const ChannelSpec& channel, double r0, const SearchConfig& config);

// v_card = 0 selects the sufficient auxiliary cardinality |T| + 2.
BoundResult new_upper_bound(const ChannelSpec& channel, double r0, std::size_t v_card,
                            const SearchConfig& config);

// Compress-and-forward rate; v_card = 0 selects a binary auxiliary.
// The conditional constraint I(T;V|Y) <= r0 drives the search and is checked
// against the rewrite I(T;V) - I(V;Y) at the reported optimum.
BoundResult caf_rate(const ChannelSpec& channel, double r0, std::size_t v_card,
                     const SearchConfig& config);

// (C at r0 = 0, C at unlimited r0) = (max I(X;Y), max I(X;Y|T)).
std::pair<double, double> capacity_endpoints(const ChannelSpec& channel,
                                             const SearchConfig& config);

struct CriticalRate {
  double r0;         // smallest grid rate at which the upper bound saturates
  double grid_step;  // spacing that produced it; the answer is only this sharp
};

// Smallest grid rate r with new_upper_bound(r) >= C(unlimited) - tol. The
// grid must span [0, H(T)]. Channels with |T| = 1 saturate at 0.
CriticalRate critical_r0_lower_bound(const ChannelSpec& channel, const RateGrid& grid,
                                     double tol, const SearchConfig& config,
                                     std::size_t v_card = 0);

// One row per grid rate; rows are independent and deterministic for a fixed
// config, so `parallel` only changes wall-clock time, never values.
std::vector<SweepRow> sweep(const ChannelSpec& channel, const RateGrid& grid,
                            std::size_t v_card_ub, std::size_t v_card_caf,
                            const SearchConfig& config,
                            const ClosedFormColumns* closed = nullptr,
                            bool parallel = false);

}  // namespace relay
