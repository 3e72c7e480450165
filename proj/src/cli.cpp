#include "relay/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relay/bounds.hpp"
#include "relay/io.hpp"
#include "relay/verify.hpp"
#include "relay/zoo.hpp"

namespace relay::cli {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string format_dist(const ProbVector& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ' ';
    out += fixed6(p[i]);
  }
  return out + "]";
}

// RELAY_BOUNDS_SEED supplies the default seed; an explicit --seed wins.
std::uint64_t env_seed() {
  const char* env = std::getenv("RELAY_BOUNDS_SEED");
  if (env == nullptr) return 0;
  const std::string text(env);
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(value);
  } catch (const std::exception&) {
    throw ValidationError("RELAY_BOUNDS_SEED must be a nonnegative integer, got '" + text +
                          "'");
  }
}

// Search settings shared by every computing subcommand.
struct SearchFlags {
  double grid_step = 0.005;
  int restarts = 32;
  std::uint64_t seed = 0;
  CLI::Option* seed_option = nullptr;

  void attach(CLI::App* sub, int default_restarts) {
    restarts = default_restarts;
    sub->add_option("--grid-step", grid_step, "coarse lattice resolution for input search")
        ->capture_default_str();
    sub->add_option("--restarts", restarts, "seeded random restarts per search")
        ->capture_default_str();
    seed_option = sub->add_option("--seed", seed, "search seed (default RELAY_BOUNDS_SEED or 0)");
  }

  SearchConfig config() const {
    SearchConfig c;
    c.grid_step = grid_step;
    c.restarts = restarts;
    c.seed = seed_option != nullptr && seed_option->count() > 0 ? seed : env_seed();
    c.validate();
    return c;
  }
};

// A channel source containing ':' is a zoo description; anything else is a
// path to a channel file.
struct SourcedChannel {
  ChannelSpec spec;
  ClosedFormColumns closed;  // empty functions unless the zoo supplies oracles
};

SourcedChannel resolve_channel(const std::string& source) {
  if (source.find(':') != std::string::npos) {
    zoo::NamedChannel named = zoo::make_named(source);
    return SourcedChannel{std::move(named.spec), std::move(named.closed)};
  }
  return SourcedChannel{io::read_channel_file(source), {}};
}

void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text;
  } else {
    io::write_text_file(output_path, text);
  }
}

void print_bound(std::ostream& out, const char* label, const BoundResult& result,
                 bool constrained) {
  out << label << " " << fixed6(result.value) << " branch=" << to_string(result.active_branch);
  if (constrained) out << " slack=" << fixed6(result.constraint_slack);
  out << " p_x=" << format_dist(result.p_x) << "\n";
}

int cmd_bounds(const std::string& source, double r0, std::size_t v_card_ub,
               std::size_t v_card_caf, const SearchConfig& config, std::ostream& out) {
  const SourcedChannel channel = resolve_channel(source);
  print_bound(out, "cutset", cut_set_bound(channel.spec, r0, config), false);
  print_bound(out, "upper_bound", new_upper_bound(channel.spec, r0, v_card_ub, config), true);
  print_bound(out, "caf", caf_rate(channel.spec, r0, v_card_caf, config), true);
  return 0;
}

int cmd_sweep(const std::string& source, double r0_min, double r0_max, std::size_t r0_steps,
              std::size_t v_card_ub, std::size_t v_card_caf, bool parallel,
              const std::string& output_path, const SearchConfig& config, std::ostream& out) {
  const SourcedChannel channel = resolve_channel(source);
  const RateGrid grid = RateGrid::linspace(r0_min, r0_max, r0_steps);
  const bool has_closed = static_cast<bool>(channel.closed.capacity) ||
                          static_cast<bool>(channel.closed.cutset);
  const std::vector<SweepRow> rows =
      sweep(channel.spec, grid, v_card_ub, v_card_caf, config,
            has_closed ? &channel.closed : nullptr, parallel);
  emit(io::sweep_to_csv(rows), output_path, out);
  return 0;
}

int cmd_reproduce(const std::string& figure, const std::string& output_path,
                  const SearchConfig& config, std::ostream& out) {
  if (figure == "fig3") {
    const zoo::NamedChannel named = zoo::make_named("erasure:alpha=0.3,eps=0.4");
    const RateGrid grid = RateGrid::linspace(0.0, 1.2, 61);
    const auto rows = sweep(named.spec, grid, 0, 2, config, &named.closed, false);
    emit(io::sweep_to_csv(rows), output_path, out);
    return 0;
  }
  if (figure == "fig4") {
    const zoo::NamedChannel named = zoo::make_named("multiplicative:alpha=0.5,delta=0.5");
    const RateGrid grid = RateGrid::linspace(0.0, 1.0, 51);
    const auto rows = sweep(named.spec, grid, 0, 2, config, &named.closed, false);
    emit(io::sweep_to_csv(rows), output_path, out);
    return 0;
  }
  throw LookupError("unknown figure '" + figure + "' (expected fig3 or fig4)");
}

int cmd_verify(const std::string& suites_csv, std::size_t channels, const SearchConfig& config,
               std::ostream& out) {
  const std::set<std::string> known{"ordering", "identities", "entropy", "witsenhausen",
                                    "monotonicity"};
  std::set<std::string> suites;
  std::stringstream ss(suites_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!known.count(token)) {
      throw ValidationError("unknown suite '" + token +
                            "' (expected ordering, identities, entropy, witsenhausen, "
                            "monotonicity)");
    }
    suites.insert(token);
  }
  if (suites.empty()) throw ValidationError("no suites selected");

  std::vector<Report> reports;
  if (suites.count("ordering") || suites.count("monotonicity")) {
    BoundChecks checks;
    checks.ordering = suites.count("ordering") > 0;
    checks.monotonicity = suites.count("monotonicity") > 0;
    RateGrid grid{{0.0, 0.05, 0.15, 0.3, 0.6}};
    RandomChannelConfig channel_config;
    channel_config.seed = config.seed;
    reports.push_back(
        check_bounds_properties_random(channels, grid, channel_config, config, checks));
  }
  if (suites.count("identities")) reports.push_back(check_identities(1000, config.seed));
  if (suites.count("entropy")) reports.push_back(check_entropy_inequality(10000, config.seed));
  if (suites.count("witsenhausen")) {
    reports.push_back(check_witsenhausen({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, 10,
                                         config));
  }

  bool clean = true;
  for (const Report& report : reports) {
    out << "suite " << report.suite << ": " << report.checks << " checks, "
        << report.violations.size() << " violations\n";
    for (const Violation& violation : report.violations) {
      clean = false;
      out << "  [" << violation.check << "] " << violation.detail << "\n";
    }
  }
  out << (clean ? "verification clean\n" : "verification FAILED\n");
  return clean ? 0 : 1;
}

int cmd_witsenhausen(double eps, double alpha, std::size_t gamma_steps,
                     const std::string& output_path, const SearchConfig& config,
                     std::ostream& out) {
  if (gamma_steps < 2) throw ValidationError("--gamma-steps must be at least 2");
  const ProbVector p_t({alpha, 1.0 - alpha});
  const StochasticMatrix observation = zoo::erasure_state_channel(eps);
  const double h_t = entropy(p_t);
  std::ostringstream csv;
  csv << "gamma,numeric_G,closed_G\n";
  for (std::size_t g = 0; g < gamma_steps; ++g) {
    const double gamma =
        h_t * static_cast<double>(g) / static_cast<double>(gamma_steps - 1);
    const double numeric = witsenhausen_G(p_t, observation, gamma, config);
    const double closed = binary_entropy(eps) + eps * gamma;
    csv << fixed6(gamma) << ',' << fixed6(numeric) << ',' << fixed6(closed) << '\n';
  }
  emit(csv.str(), output_path, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"capacity bounds for state-aware relay configurations"};
  app.require_subcommand(1);

  // bounds
  auto* bounds_sub =
      app.add_subcommand("bounds", "three bounds for one channel at one relay rate");
  std::string bounds_channel;
  double bounds_r0 = 0.0;
  std::size_t bounds_v_ub = 0, bounds_v_caf = 2;
  SearchFlags bounds_flags;
  bounds_sub->add_option("--channel", bounds_channel,
                         "channel file path, or zoo name such as erasure:alpha=0.3,eps=0.4")
      ->required();
  bounds_sub->add_option("--r0", bounds_r0, "relay link rate in bits")->required();
  bounds_sub->add_option("--v-card-ub", bounds_v_ub, "auxiliary cardinality, 0 = |T|+2")
      ->capture_default_str();
  bounds_sub->add_option("--v-card-caf", bounds_v_caf, "auxiliary cardinality for caf")
      ->capture_default_str();
  bounds_flags.attach(bounds_sub, 32);

  // sweep
  auto* sweep_sub = app.add_subcommand("sweep", "bounds over a rate grid, emitted as CSV");
  std::string sweep_channel, sweep_output;
  double sweep_min = 0.0, sweep_max = 0.0;
  std::size_t sweep_steps = 0;
  std::size_t sweep_v_ub = 0, sweep_v_caf = 2;
  bool sweep_parallel = false;
  SearchFlags sweep_flags;
  sweep_sub->add_option("--channel", sweep_channel, "channel file path or zoo name")
      ->required();
  sweep_sub->add_option("--r0-min", sweep_min, "lowest rate")->capture_default_str();
  sweep_sub->add_option("--r0-max", sweep_max, "highest rate")->required();
  sweep_sub->add_option("--r0-steps", sweep_steps, "number of grid rates")->required();
  sweep_sub->add_option("--v-card-ub", sweep_v_ub, "auxiliary cardinality, 0 = |T|+2")
      ->capture_default_str();
  sweep_sub->add_option("--v-card-caf", sweep_v_caf, "auxiliary cardinality for caf")
      ->capture_default_str();
  sweep_sub->add_flag("--parallel", sweep_parallel, "compute rows concurrently");
  sweep_sub->add_option("--output", sweep_output, "CSV path (stdout when omitted)");
  sweep_flags.attach(sweep_sub, 32);

  // reproduce
  auto* repro_sub = app.add_subcommand("reproduce", "regenerate a figure data table");
  std::string repro_figure, repro_output;
  SearchFlags repro_flags;
  repro_sub->add_option("--figure", repro_figure, "fig3 or fig4")->required();
  repro_sub->add_option("--output", repro_output, "CSV path (stdout when omitted)");
  repro_flags.attach(repro_sub, 32);

  // verify
  auto* verify_sub = app.add_subcommand("verify", "run the property suites");
  std::string verify_suites = "ordering,identities,entropy,witsenhausen,monotonicity";
  std::size_t verify_channels = 100;
  SearchFlags verify_flags;
  verify_sub->add_option("--suites", verify_suites, "comma-separated suite list")
      ->capture_default_str();
  verify_sub->add_option("--channels", verify_channels, "random channels for bound suites")
      ->capture_default_str();
  verify_flags.attach(verify_sub, 6);

  // witsenhausen
  auto* wits_sub =
      app.add_subcommand("witsenhausen", "numeric G(gamma) against its closed form");
  double wits_eps = 0.0, wits_alpha = 0.3;
  std::size_t wits_steps = 6;
  std::string wits_output;
  SearchFlags wits_flags;
  wits_sub->add_option("--eps", wits_eps, "erasure probability in [0, 1]")->required();
  wits_sub->add_option("--alpha", wits_alpha, "Pr(T=0) of the binary state")
      ->capture_default_str();
  wits_sub->add_option("--gamma-steps", wits_steps, "grid points spanning [0, H(T)]")
      ->capture_default_str();
  wits_sub->add_option("--output", wits_output, "CSV path (stdout when omitted)");
  wits_flags.attach(wits_sub, 32);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("relay_bounds");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const std::string& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds_sub->parsed()) {
      return cmd_bounds(bounds_channel, bounds_r0, bounds_v_ub, bounds_v_caf,
                        bounds_flags.config(), out);
    }
    if (sweep_sub->parsed()) {
      return cmd_sweep(sweep_channel, sweep_min, sweep_max, sweep_steps, sweep_v_ub,
                       sweep_v_caf, sweep_parallel, sweep_output, sweep_flags.config(), out);
    }
    if (repro_sub->parsed()) {
      return cmd_reproduce(repro_figure, repro_output, repro_flags.config(), out);
    }
    if (verify_sub->parsed()) {
      return cmd_verify(verify_suites, verify_channels, verify_flags.config(), out);
    }
    if (wits_sub->parsed()) {
      return cmd_witsenhausen(wits_eps, wits_alpha, wits_steps, wits_output,
                              wits_flags.config(), out);
    }
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (dynamic_cast<const NumericalError*>(&e) != nullptr ||
        dynamic_cast<const InfeasibleError*>(&e) != nullptr) {
      return 3;
    }
    if (dynamic_cast<const IoError*>(&e) != nullptr) return 4;
    return 2;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace relay::cli
