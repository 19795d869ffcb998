#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cayleymix/entropic.hpp"
#include "cayleymix/error.hpp"
#include "cayleymix/harness.hpp"
#include "cayleymix/mixingstats.hpp"
#include "cayleymix/spectral.hpp"

using nlohmann::json;
using namespace cayleymix;

namespace {

enum class FlagType { integer, unsigned_integer, real, real_or_inf, optional_real, boolean, text, real_list };

struct FlagSpec {
  std::string name;  // --name on the command line, name with '-' → '_' in JSON
  FlagType type;
  json fallback;
  std::string help;
};

std::string json_key(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

double parse_real(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument("not a number: '" + std::string(s) + "'");
  }
  return x;
}

std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    out.push_back(parse_real(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

json parse_flag(const FlagSpec& spec, const std::string& raw) {
  switch (spec.type) {
    case FlagType::integer:
      return static_cast<std::int64_t>(std::stoll(raw));
    case FlagType::unsigned_integer:
      if (!raw.empty() && raw[0] == '-') throw InvalidArgument("--" + spec.name + " must be >= 0");
      return static_cast<std::uint64_t>(std::stoull(raw));
    case FlagType::real:
    case FlagType::optional_real:
      return parse_real(raw);
    case FlagType::real_or_inf: {
      const double x = parse_real(raw);
      return std::isinf(x) ? json("inf") : json(x);
    }
    case FlagType::boolean:
      if (raw.empty() || raw == "true" || raw == "1") return true;
      if (raw == "false" || raw == "0") return false;
      throw InvalidArgument("--" + spec.name + " expects true or false");
    case FlagType::text:
      return raw;
    case FlagType::real_list:
      return parse_real_list(raw);
  }
  return nullptr;
}

// Brings a default or config-file value to the flag's canonical JSON type.
json coerce(const FlagSpec& spec, const json& value) {
  try {
    switch (spec.type) {
      case FlagType::integer:
        return value.get<std::int64_t>();
      case FlagType::unsigned_integer:
        if (value.is_number_integer() && value.get<std::int64_t>() < 0) break;
        return value.get<std::uint64_t>();
      case FlagType::real:
        return value.get<double>();
      case FlagType::optional_real:
        return value.is_null() ? json(nullptr) : json(value.get<double>());
      case FlagType::real_or_inf:
        if (value.is_string()) return parse_flag(spec, value.get<std::string>());
        return value.get<double>();
      case FlagType::boolean:
        return value.get<bool>();
      case FlagType::text:
        return value.get<std::string>();
      case FlagType::real_list:
        return value.get<std::vector<double>>();
    }
  } catch (const json::exception&) {
  }
  throw InvalidArgument("config value for '" + json_key(spec.name) + "' has the wrong type: " + value.dump());
}

// One subcommand: declared flags, stored raw strings, resolution config → flags.
class Command {
 public:
  Command(CLI::App& app, std::string name, std::string description, std::vector<FlagSpec> flags)
      : flags_(std::move(flags)) {
    sub_ = app.add_subcommand(std::move(name), std::move(description));
    sub_->add_option("--config", config_path_, "JSON file mirroring the flags");
    for (const FlagSpec& f : flags_) {
      CLI::Option* opt = sub_->add_option("--" + f.name, raw_[f.name], f.help);
      if (f.type == FlagType::boolean) opt->expected(0, 1);
      options_[f.name] = opt;
    }
  }

  CLI::App* app() const { return sub_; }

  json resolve() const {
    json out = json::object();
    for (const FlagSpec& f : flags_) out[json_key(f.name)] = f.fallback;
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw InvalidArgument("cannot open config file " + config_path_);
      const json file = json::parse(in);
      if (!file.is_object()) throw InvalidArgument("config file must hold a JSON object");
      for (const auto& [key, value] : file.items()) {
        if (!out.contains(key)) throw InvalidArgument("unknown config key '" + key + "'");
        out[key] = value;
      }
    }
    for (const FlagSpec& f : flags_) {
      const std::string key = json_key(f.name);
      out[key] = options_.at(f.name)->count() > 0 ? parse_flag(f, raw_.at(f.name)) : coerce(f, out[key]);
    }
    return out;
  }

 private:
  CLI::App* sub_ = nullptr;
  std::vector<FlagSpec> flags_;
  std::string config_path_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, CLI::Option*> options_;
};

// Keys that never change results; left out of the provenance line.
json provenance(json config) {
  config.erase("workers");
  config.erase("output");
  return config;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

ExperimentConfig experiment_config(const json& resolved) {
  ExperimentConfig c;
  from_json(resolved, c);
  return c;
}

std::vector<double> parse_alpha_range(std::string_view s) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) return parse_real_list(s);
  const double lo = parse_real(s.substr(0, dots));
  const double hi = parse_real(s.substr(dots + 2));
  if (lo > hi) throw InvalidArgument("empty alpha range");
  std::vector<double> out;
  for (double a = lo; a <= hi + 1e-9; a += 1.0) out.push_back(a);
  return out;
}

int run_entropic(const json& cfg) {
  const WalkKind kind = parse_walk_kind(cfg.at("kind").get<std::string>());
  const auto k = cfg.at("k").get<std::int64_t>();
  const auto n = cfg.at("n").get<std::uint64_t>();
  SolverOptions options;
  if (!cfg.at("omega").is_null()) options.omega_override = cfg.at("omega").get<double>();
  const EntropicSchedule sch = solve_t0(kind, k, n, options);
  const AsymptoticEstimate est = asymptotic_t0(kind, k, n);
  json out{{"kind", std::string(to_string(kind))},
           {"k", k},
           {"n", n},
           {"t0", sch.t0},
           {"v", sch.v},
           {"omega", sch.omega},
           {"kappa", sch.kappa},
           {"regime", std::string(to_string(est.regime))},
           {"asymptotic_t0", est.estimate}};
  json times = json::array();
  for (const double a : cfg.at("alphas").get<std::vector<double>>()) {
    times.push_back({{"alpha", a}, {"t", solve_t_alpha(sch, a)}});
  }
  out["t_alpha"] = times;
  out["config"] = provenance(cfg);
  Output o(cfg.at("output").get<std::string>());
  o.stream() << out.dump(2) << '\n';
  return 0;
}

int run_tvcurve(const json& cfg) {
  const AbelianGroup group = parse_group_literal(cfg.at("group").get<std::string>());
  const auto k = cfg.at("k").get<std::int64_t>();
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const bool directed = cfg.at("directed").get<bool>();
  const auto spec_times = cfg.at("times").get<std::string>();
  std::vector<double> times;
  std::vector<std::optional<double>> alphas;
  constexpr std::string_view kAuto = "auto:alphas=";
  if (spec_times.starts_with(kAuto)) {
    const EntropicSchedule sch =
        solve_t0(directed ? WalkKind::poisson : WalkKind::srw, k, group.order());
    for (const double a : parse_alpha_range(std::string_view(spec_times).substr(kAuto.size()))) {
      alphas.emplace_back(a);
      times.push_back(solve_t_alpha(sch, a));
    }
  } else {
    times = parse_real_list(spec_times);
    alphas.resize(times.size());
  }
  const GeneratorMultiset gens =
      sample_generators(group, static_cast<std::size_t>(k), cfg.at("seed").get<std::uint64_t>());
  const std::vector<CurvePoint> curve = tv_curve(group, gens, directed, times);
  Output o(cfg.at("output").get<std::string>());
  std::ostream& out = o.stream();
  write_config_line(out, provenance(cfg));
  out << "t,alpha,tv,l2\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << format_number(curve[i].t) << ',' << (alphas[i] ? format_number(*alphas[i]) : "") << ','
        << format_number(curve[i].tv) << ',' << format_number(curve[i].l2) << '\n';
  }
  return 0;
}

int run_dalpha(const json& cfg) {
  const AbelianGroup group = parse_group_literal(cfg.at("group").get<std::string>());
  const auto k = cfg.at("k").get<std::int64_t>();
  const bool directed = cfg.at("directed").get<bool>();
  const EntropicSchedule sch = solve_t0(directed ? WalkKind::poisson : WalkKind::srw, k, group.order());
  const double omega = cfg.at("omega").is_null() ? 0.0 : cfg.at("omega").get<double>();
  const DAlphaEstimate d =
      estimate_D_alpha(group, sch, cfg.at("alpha").get<double>(), cfg.at("trials").get<std::size_t>(),
                       cfg.at("seed").get<std::uint64_t>(), omega);
  const json out{{"estimate", d.estimate},
                 {"stderr", d.std_error},
                 {"p_typ", d.p_typ},
                 {"accepted", d.accepted},
                 {"attempted", d.attempted},
                 {"zero_fraction", d.zero_fraction},
                 {"r", d.r},
                 {"config", provenance(cfg)}};
  Output o(cfg.at("output").get<std::string>());
  o.stream() << out.dump(2) << '\n';
  return 0;
}

int run_typdist(const json& cfg) {
  const ExperimentConfig c = experiment_config(cfg);
  const TypdistRun run = run_typdist_experiment(c);
  Output o(c.output);
  write_typdist_csv(o.stream(), provenance(cfg), run);
  return 0;
}

int run_cutoff(const json& cfg) {
  const ExperimentConfig c = experiment_config(cfg);
  const CutoffProfile profile = run_cutoff_profile(c);
  Output o(c.output);
  write_rows_csv(o.stream(), provenance(cfg), kCutoffSchema, profile.rows);
  if (profile.skipped_non_generating > 0) {
    std::cerr << "skipped " << profile.skipped_non_generating << " non-generating generator samples\n";
  }
  return 0;
}

int run_audit(const json& cfg) {
  const ExperimentConfig c = experiment_config(cfg);
  const LowerBoundAudit audit = run_lower_bound_audit(c);
  Output o(c.output);
  write_rows_csv(o.stream(), provenance(cfg), kAuditSchema, audit.rows);
  for (const std::string& v : audit.violations) std::cerr << "violation: " << v << '\n';
  return audit.violations.empty() ? 0 : 1;
}

int run_validate(const json& cfg) {
  ExperimentConfig c;
  c.seed = cfg.at("seed").get<std::uint64_t>();
  ValidationOptions options;
  if (cfg.at("mutate_gcd").get<bool>()) {
    options.gcd = [](std::int64_t a, std::int64_t b) { return std::gcd(a, b) + 1; };
  }
  const ValidationReport report = run_validation_suite(c, options);
  Output o(cfg.at("output").get<std::string>());
  std::ostream& out = o.stream();
  for (const ValidationCheck& check : report.checks) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name << " : " << check.property;
    if (!check.passed) out << " [" << check.detail << "]";
    out << '\n';
  }
  return report.all_passed() ? 0 : 1;
}

std::vector<FlagSpec> experiment_flags(std::size_t trials, std::uint64_t seed) {
  return {
      {"group", FlagType::text, "65536", "group literal, e.g. 65536 or 6x4"},
      {"k", FlagType::integer, 8, "number of generators"},
      {"directed", FlagType::boolean, false, "directed walk (Poisson auxiliary law)"},
      {"alphas", FlagType::real_list, json::array({-2, -1, 0, 1, 2}), "comma-separated window offsets"},
      {"betas", FlagType::real_list, json::array({0.1, 0.5, 0.9}), "comma-separated coverage fractions"},
      {"p", FlagType::real_or_inf, 1.0, "L_p exponent (number or inf)"},
      {"trials", FlagType::unsigned_integer, trials, "number of generator samples"},
      {"seed", FlagType::unsigned_integer, seed, "master seed"},
      {"omega", FlagType::optional_real, nullptr, "override for (vk)^{1/4}"},
      {"omega-factors", FlagType::real_list, json::array({0.5, 1.0, 2.0}), "omega sweep as multiples of omega_0"},
      {"samples", FlagType::unsigned_integer, 100000, "Monte Carlo Q samples per alpha"},
      {"radius", FlagType::optional_real, nullptr, "lattice search radius for p != 1"},
      {"output", FlagType::text, "", "output file (default stdout)"},
      {"workers", FlagType::unsigned_integer, 0, "worker threads (default from CAYLEYMIX_WORKERS, else 1)"},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks on random Cayley graphs of Abelian groups"};
  app.require_subcommand(1);

  Command entropic(app, "entropic", "entropic time schedule as JSON",
                   {{"kind", FlagType::text, "srw", "poisson | srw"},
                    {"k", FlagType::integer, 8, "number of generators"},
                    {"n", FlagType::unsigned_integer, 65536, "group order"},
                    {"alphas", FlagType::real_list, json::array({-2, -1, 0, 1, 2}), "window offsets"},
                    {"omega", FlagType::optional_real, nullptr, "override for (vk)^{1/4}"},
                    {"output", FlagType::text, "", "output file (default stdout)"}});
  Command tvcurve(app, "tvcurve", "exact TV and L2 curve as CSV",
                  {{"group", FlagType::text, "65536", "group literal"},
                   {"k", FlagType::integer, 8, "number of generators"},
                   {"seed", FlagType::unsigned_integer, 7, "generator seed"},
                   {"directed", FlagType::boolean, false, "directed walk"},
                   {"times", FlagType::text, "auto:alphas=-2..2", "auto:alphas=LO..HI | auto:alphas=a,b,.. | t1,t2,.."},
                   {"output", FlagType::text, "", "output file (default stdout)"}});
  Command dalpha(app, "dalpha", "D_alpha estimate as JSON",
                 {{"group", FlagType::text, "65536", "group literal"},
                  {"k", FlagType::integer, 8, "number of generators"},
                  {"directed", FlagType::boolean, false, "directed walk"},
                  {"alpha", FlagType::real, 0.0, "window offset"},
                  {"trials", FlagType::unsigned_integer, 200000, "accepted typical pairs"},
                  {"seed", FlagType::unsigned_integer, 1, "master seed"},
                  {"omega", FlagType::optional_real, nullptr, "override for (vk)^{1/4}"},
                  {"output", FlagType::text, "", "output file (default stdout)"}});
  Command typdist(app, "typdist", "typical graph distance quantiles as CSV", experiment_flags(20, 3));
  Command cutoff(app, "cutoff-profile", "TV at the cutoff window times as CSV", experiment_flags(32, 1));
  Command audit(app, "lower-bound-audit", "TV against the Monte Carlo lower bound as CSV",
                experiment_flags(32, 1));
  Command validate(app, "validate", "run the built-in invariant checks",
                   {{"seed", FlagType::unsigned_integer, 1, "seed for randomized checks"},
                    {"mutate-gcd", FlagType::boolean, false, "replace gcd with gcd + 1 (mutation sanity)"},
                    {"output", FlagType::text, "", "output file (default stdout)"}});

  CLI11_PARSE(app, argc, argv);

  try {
    if (entropic.app()->parsed()) return run_entropic(entropic.resolve());
    if (tvcurve.app()->parsed()) return run_tvcurve(tvcurve.resolve());
    if (dalpha.app()->parsed()) return run_dalpha(dalpha.resolve());
    if (typdist.app()->parsed()) return run_typdist(typdist.resolve());
    if (cutoff.app()->parsed()) return run_cutoff(cutoff.resolve());
    if (audit.app()->parsed()) return run_audit(audit.resolve());
    if (validate.app()->parsed()) return run_validate(validate.resolve());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
