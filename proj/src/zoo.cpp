#include "relay/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace relay::zoo {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1], got " << v;
    throw ValidationError(msg.str());
  }
}

// kernel layout is [x][t][y] flattened with y fastest
std::size_t at(std::size_t x, std::size_t t, std::size_t y, std::size_t nt, std::size_t ny) {
  return (x * nt + t) * ny + y;
}

}  // namespace

void ErasureParams::validate() const {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(eps, "eps");
}

void ModAddParams::validate() const {
  require_unit_interval(delta, "delta");
  require_unit_interval(delta_tilde, "delta_tilde");
}

void MultiplicativeParams::validate() const {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(delta, "delta");
}

ChannelSpec erasure_two_state(const ErasureParams& params) {
  params.validate();
  const double e = params.eps;
  std::vector<double> kernel(2 * 2 * 3, 0.0);
  // state 0 erases input 1, state 1 erases input 0; output 1 is the erasure slot
  kernel[at(0, 0, 0, 2, 3)] = 0.0;
  kernel[at(0, 0, 1, 2, 3)] = 1.0 - e;
  kernel[at(0, 0, 2, 2, 3)] = e;
  kernel[at(0, 1, 0, 2, 3)] = e;
  kernel[at(0, 1, 1, 2, 3)] = 1.0 - e;
  kernel[at(0, 1, 2, 2, 3)] = 0.0;
  kernel[at(1, 0, 0, 2, 3)] = e;
  kernel[at(1, 0, 1, 2, 3)] = 1.0 - e;
  kernel[at(1, 0, 2, 2, 3)] = 0.0;
  kernel[at(1, 1, 0, 2, 3)] = 0.0;
  kernel[at(1, 1, 1, 2, 3)] = 1.0 - e;
  kernel[at(1, 1, 2, 2, 3)] = e;
  return ChannelSpec(2, 2, 3, ProbVector({params.alpha, 1.0 - params.alpha}), kernel);
}

double erasure_capacity_closed(const ErasureParams& params, double r0) {
  if (!(r0 >= 0.0)) throw DomainError("r0 must be nonnegative");
  const double e = params.eps;
  return std::min(e * (1.0 - binary_entropy(params.alpha)) + e * r0, e);
}

double erasure_cutset_closed(const ErasureParams& params, double r0) {
  if (!(r0 >= 0.0)) throw DomainError("r0 must be nonnegative");
  const double e = params.eps;
  return std::min(e * (1.0 - binary_entropy(params.alpha)) + r0, e);
}

StochasticMatrix erasure_state_channel(double eps) {
  require_unit_interval(eps, "eps");
  return StochasticMatrix::from_rows(
      {{eps, 1.0 - eps, 0.0}, {0.0, 1.0 - eps, eps}});
}

ChannelSpec kim_xor(double delta) {
  require_unit_interval(delta, "delta");
  std::vector<double> kernel(2 * 2 * 2, 0.0);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t t = 0; t < 2; ++t) kernel[at(x, t, x ^ t, 2, 2)] = 1.0;
  }
  return ChannelSpec(2, 2, 2, ProbVector({1.0 - delta, delta}), kernel);
}

ChannelSpec mod_add(const ModAddParams& params) {
  params.validate();
  const double d = params.delta, dt = params.delta_tilde;
  const double q = d * (1.0 - dt) + (1.0 - d) * dt;  // Pr(T = 1)
  // Z is the part of the noise the relay does not see: p(z|t) follows from
  // p(z, t) = p(t|z) p(z) with Z ~ Ber(delta) and T = Z xor (flip w.p. delta_tilde).
  double pz1_t0 = 0.0, pz1_t1 = 1.0;
  if (q > 0.0 && q < 1.0) {
    pz1_t0 = d * dt / (1.0 - q);
    pz1_t1 = d * (1.0 - dt) / q;
  } else if (q == 0.0) {
    // T is constant 0, so Z is deterministic given nothing: z = 1 w.p. d (d is 0 or 1 here)
    pz1_t0 = d;
  } else {
    pz1_t1 = d;
  }
  const double pz_given_t[2][2] = {{1.0 - pz1_t0, pz1_t0}, {1.0 - pz1_t1, pz1_t1}};
  std::vector<double> kernel(2 * 2 * 2, 0.0);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t t = 0; t < 2; ++t) {
      for (std::size_t y = 0; y < 2; ++y) {
        kernel[at(x, t, y, 2, 2)] = pz_given_t[t][x ^ y];
      }
    }
  }
  return ChannelSpec(2, 2, 2, ProbVector({1.0 - q, q}), kernel);
}

double yu_capacity(const ModAddParams& params, double r0, std::size_t v_card,
                   const SearchConfig& config) {
  if (!(r0 >= 0.0)) throw DomainError("r0 must be nonnegative");
  const ChannelSpec ch = mod_add(params);
  const std::size_t nv = v_card == 0 ? ch.t_size() + 2 : v_card;
  const std::size_t nt = 2;

  // joint of the relay observation T and the residual noise Z
  const double d = params.delta, dt = params.delta_tilde;
  const double p_zt[2][2] = {{(1.0 - d) * (1.0 - dt), (1.0 - d) * dt},
                             {d * dt, d * (1.0 - dt)}};
  const ProbVector& p_t = ch.p_t();

  // capacity = 1 - min H(Z|V) over descriptions V of T with I(T;V) <= r0
  auto objective = [&](const ProductPoint& point) {
    std::vector<double> p_v(nv, 0.0), p_zv(2 * nv, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t v = 0; v < nv; ++v) {
        const double w = point[t][v];
        p_v[v] += p_t[t] * w;
        for (std::size_t z = 0; z < 2; ++z) p_zv[z * nv + v] += p_zt[z][t] * w;
      }
    }
    const double h_cond = entropy(std::span<const double>(p_zv)) -
                          entropy(std::span<const double>(p_v));
    return 1.0 - h_cond;
  };

  ProductConstraint constraint;
  constraint.slack = [&](const ProductPoint& point) {
    std::vector<double> p_v(nv, 0.0), p_tv(nt * nv);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t v = 0; v < nv; ++v) {
        const double w = p_t[t] * point[t][v];
        p_tv[t * nv + v] = w;
        p_v[v] += w;
      }
    }
    const double mi = entropy(p_t) + entropy(std::span<const double>(p_v)) -
                      entropy(std::span<const double>(p_tv));
    return r0 - mi;
  };
  constraint.relax = [&](const ProductPoint& point) {
    std::vector<double> avg(nv, 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t v = 0; v < nv; ++v) avg[v] += p_t[t] * point[t][v];
    }
    ProductPoint relaxed = point;
    const ProbVector row((std::vector<double>(avg)));
    for (std::size_t t = 0; t < nt; ++t) relaxed[t] = row;
    return relaxed;
  };

  std::vector<ProductPoint> starts;
  {
    ProductPoint ident;
    for (std::size_t t = 0; t < nt; ++t) {
      ident.push_back(ProbVector::point_mass(nv, std::min(t, nv - 1)));
    }
    starts.push_back(std::move(ident));
  }

  const Optimum opt = maximize_over_product(objective, std::vector<std::size_t>(nt, nv),
                                            constraint, config, starts);
  return std::clamp(opt.value, 0.0, 1.0);
}

ChannelSpec multiplicative(const MultiplicativeParams& params) {
  params.validate();
  const double d = params.delta;
  std::vector<double> kernel(2 * 2 * 3, 0.0);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t t = 0; t < 2; ++t) {
      const std::size_t tx = t * x;
      kernel[at(x, t, tx, 2, 3)] = 1.0 - d;
      kernel[at(x, t, tx + 1, 2, 3)] = d;
    }
  }
  return ChannelSpec(2, 2, 3, ProbVector({1.0 - params.alpha, params.alpha}), kernel);
}

namespace {

void require_symmetric_noise(const MultiplicativeParams& params) {
  params.validate();
  if (std::abs(params.delta - 0.5) > 1e-12) {
    throw DomainError("multiplicative closed forms are only available at delta = 1/2");
  }
}

// H(Y) for input weight p and state weight alpha at delta = 1/2; Y takes the
// value tx + n with n uniform on {0, 1}.
double multiplicative_output_entropy(double alpha, double p) {
  const double s = alpha * p;  // Pr(TX = 1)
  return ternary_entropy((1.0 - s) / 2.0, 0.5, s / 2.0);
}

double scan_closed(double alpha, double r0, bool cutset) {
  const double h_a = binary_entropy(alpha);
  const double step = 1e-4;
  double best = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double p = static_cast<double>(i) * step;
    const double h_y = multiplicative_output_entropy(alpha, p);
    const double slope = cutset ? h_a : std::max(h_a - r0, 0.0);
    double value = h_y - 1.0 - (p / 2.0) * slope;
    if (cutset) value += r0;
    // the broadcast side: I(X;Y|T) = alpha * (H3 term) + (1-alpha)*0 at delta=1/2
    const double informed =
        (1.0 - alpha) * 1.0 +
        alpha * ternary_entropy((1.0 - p) / 2.0, 0.5, p / 2.0) - 1.0;
    best = std::max(best, std::min(value, informed));
  }
  return best;
}

}  // namespace

double multiplicative_ub_closed(const MultiplicativeParams& params, double r0) {
  if (!(r0 >= 0.0)) throw DomainError("r0 must be nonnegative");
  require_symmetric_noise(params);
  return scan_closed(params.alpha, r0, false);
}

double multiplicative_cutset_closed(const MultiplicativeParams& params, double r0) {
  if (!(r0 >= 0.0)) throw DomainError("r0 must be nonnegative");
  require_symmetric_noise(params);
  return scan_closed(params.alpha, r0, true);
}

namespace {

std::map<std::string, double> parse_kv(const std::string& body, const std::string& name) {
  std::map<std::string, double> out;
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("channel '" + name + "': expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(val, &used);
    } catch (const std::exception&) {
      throw ValidationError("channel '" + name + "': '" + val + "' is not a number");
    }
    if (used != val.size()) {
      throw ValidationError("channel '" + name + "': '" + val + "' is not a number");
    }
    if (!out.emplace(key, parsed).second) {
      throw ValidationError("channel '" + name + "': duplicate key '" + key + "'");
    }
  }
  return out;
}

double take(std::map<std::string, double>& kv, const std::string& key, const std::string& name) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw ValidationError("channel '" + name + "': missing parameter '" + key + "'");
  }
  const double v = it->second;
  kv.erase(it);
  return v;
}

void expect_empty(const std::map<std::string, double>& kv, const std::string& name) {
  if (!kv.empty()) {
    throw ValidationError("channel '" + name + "': unknown parameter '" + kv.begin()->first +
                          "'");
  }
}

}  // namespace

NamedChannel make_named(const std::string& description) {
  const auto colon = description.find(':');
  const std::string family =
      colon == std::string::npos ? description : description.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : description.substr(colon + 1);
  auto kv = parse_kv(body, description);

  if (family == "erasure") {
    ErasureParams params{take(kv, "alpha", description), take(kv, "eps", description)};
    expect_empty(kv, description);
    ClosedFormColumns closed;
    closed.capacity = [params](double r0) { return erasure_capacity_closed(params, r0); };
    closed.cutset = [params](double r0) { return erasure_cutset_closed(params, r0); };
    return NamedChannel{description, erasure_two_state(params), std::move(closed)};
  }
  if (family == "kim") {
    const double delta = take(kv, "delta", description);
    expect_empty(kv, description);
    return NamedChannel{description, kim_xor(delta), {}};
  }
  if (family == "modadd") {
    ModAddParams params{take(kv, "delta", description), take(kv, "delta_tilde", description)};
    expect_empty(kv, description);
    return NamedChannel{description, mod_add(params), {}};
  }
  if (family == "multiplicative") {
    MultiplicativeParams params{take(kv, "alpha", description), take(kv, "delta", description)};
    expect_empty(kv, description);
    ClosedFormColumns closed;
    if (std::abs(params.delta - 0.5) <= 1e-12) {
      closed.capacity = [params](double r0) { return multiplicative_ub_closed(params, r0); };
      closed.cutset = [params](double r0) { return multiplicative_cutset_closed(params, r0); };
    }
    return NamedChannel{description, multiplicative(params), std::move(closed)};
  }
  throw LookupError("unknown channel family '" + family +
                    "' (expected erasure, kim, modadd, or multiplicative)");
}

}  // namespace relay::zoo
