#pragma once
// Named channel families with known structure, used to cross-check the
// generic engines against closed forms and known capacity results.

#include <cstddef>
#include <string>

#include "relay/bounds.hpp"
#include "relay/optimizer.hpp"
#include "relay/probability.hpp"

namespace relay::zoo {

// State-dependent erasure channel: binary input, ternary output, binary
// state with Pr(T=0) = alpha. Under either state the input is erased with
// probability eps; the state selects which input symbol is vulnerable.
struct ErasureParams {
  double alpha;
  double eps;
  void validate() const;
};

ChannelSpec erasure_two_state(const ErasureParams& params);

// Capacity of the erasure family: min(eps(1 - h(alpha)) + eps*r0, eps).
double erasure_capacity_closed(const ErasureParams& params, double r0);

// Cut-set value for the same family: min(eps(1 - h(alpha)) + r0, eps).
double erasure_cutset_closed(const ErasureParams& params, double r0);

// Per-state observation channel p(u|t) for the erasure family, the kernel
// whose conditional entropy drives the erasure bound:
// rows (eps, 1-eps, 0) and (0, 1-eps, eps).
StochasticMatrix erasure_state_channel(double eps);

// Y = X xor T with T ~ Ber(delta): the state is a deterministic function of
// (X, Y), so the new upper bound coincides with the cut-set bound.
ChannelSpec kim_xor(double delta);

// Y = X xor Z with Z ~ Ber(delta); the relay sees T = Z xor Ztilde where
// Ztilde ~ Ber(delta_tilde) is independent. delta_tilde = 0 recovers kim_xor.
struct ModAddParams {
  double delta;
  double delta_tilde;
  void validate() const;
};

ChannelSpec mod_add(const ModAddParams& params);

// Capacity of the mod_add family: max of 1 - H(Z|V) over p(v|t) subject to
// I(T;V) <= r0 (a uniform input is optimal). v_card = 0 selects |T| + 2 to
// match the default of new_upper_bound.
double yu_capacity(const ModAddParams& params, double r0, std::size_t v_card,
                   const SearchConfig& config);

// Y = T*X + N over {0, 1, 2} with T ~ Ber(alpha), N ~ Ber(delta): the relay
// watches a multiplicative fade. Capacity is unknown for this family.
struct MultiplicativeParams {
  double alpha;
  double delta;
  void validate() const;
};

ChannelSpec multiplicative(const MultiplicativeParams& params);

// Closed scans for the multiplicative family, valid only for delta = 1/2
// (DomainError otherwise). p denotes Pr(X=1); both scan p at step 1e-4.
//   upper bound:  max_p min{ H(Y) - 1 - (p/2) max(h(alpha) - r0, 0), I(X;Y|T) }
//   cut-set:      max_p min{ H(Y) - 1 - (p/2) h(alpha) + r0,         I(X;Y|T) }
double multiplicative_ub_closed(const MultiplicativeParams& params, double r0);
double multiplicative_cutset_closed(const MultiplicativeParams& params, double r0);

// A zoo channel resolved from a command-line description such as
// "erasure:alpha=0.3,eps=0.4". `closed` carries whatever closed-form columns
// exist for the family (empty functions otherwise).
struct NamedChannel {
  std::string name;
  ChannelSpec spec;
  ClosedFormColumns closed;
};

// Families: erasure (alpha, eps), kim (delta), modadd (delta, delta_tilde),
// multiplicative (alpha, delta). Unknown families or keys raise LookupError
// and ValidationError respectively.
NamedChannel make_named(const std::string& description);

}  // namespace relay::zoo
