#include "cayleymix/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

#include "cayleymix/entropic.hpp"
#include "cayleymix/error.hpp"
#include "cayleymix/group.hpp"
#include "cayleymix/rng.hpp"
#include "cayleymix/spectral.hpp"
#include "cayleymix/typdist.hpp"

namespace cayleymix {

using nlohmann::json;

namespace {

std::uint64_t label(ExperimentId id) { return static_cast<std::uint64_t>(id); }

// Linear interpolation between order statistics.
double sample_quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw InvalidArgument("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

SolverOptions solver_options(const ExperimentConfig& c) {
  SolverOptions o;
  o.omega_override = c.omega;
  return o;
}

GeneratorMultiset trial_generators(const AbelianGroup& group, const ExperimentConfig& c,
                                   ExperimentId id, std::size_t trial) {
  return sample_generators(group, static_cast<std::size_t>(c.k), derive_seed(c.seed, label(id), trial));
}

ResultRow row(std::string experiment, std::optional<std::size_t> trial,
              std::vector<std::pair<std::string, double>> params, std::string metric, double value,
              std::optional<double> std_error = std::nullopt) {
  return ResultRow{std::move(experiment), trial, std::move(params), std::move(metric), value, std_error};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (!(p >= 1.0)) throw InvalidArgument("p must be in [1, inf]");
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (omega && !(*omega > 0.0)) throw InvalidArgument("omega must be > 0");
  if (radius && !(*radius >= 0.0)) throw InvalidArgument("radius must be >= 0");
  for (const double b : betas) {
    if (!(b > 0.0 && b <= 1.0)) throw InvalidArgument("betas must lie in (0, 1]");
  }
  for (const double a : alphas) {
    if (!std::isfinite(a)) throw InvalidArgument("alphas must be finite");
  }
  for (const double f : omega_factors) {
    if (!(f > 0.0)) throw InvalidArgument("omega factors must be > 0");
  }
  (void)parse_group_literal(group);
}

std::size_t ExperimentConfig::resolved_workers() const {
  if (workers > 0) return workers;
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    std::size_t w = 0;
    const std::string_view sv(env);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), w);
    if (ec != std::errc{} || ptr != sv.data() + sv.size() || w == 0) {
      throw InvalidArgument(std::string(kWorkersEnv) + " must be a positive integer, got '" + env + "'");
    }
    return w;
  }
  return 1;
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"group", c.group},
           {"k", c.k},
           {"directed", c.directed},
           {"alphas", c.alphas},
           {"betas", c.betas},
           {"trials", c.trials},
           {"seed", c.seed},
           {"omega_factors", c.omega_factors},
           {"samples", c.samples},
           {"output", c.output},
           {"workers", c.workers}};
  j["p"] = std::isinf(c.p) ? json("inf") : json(c.p);
  j["omega"] = c.omega ? json(*c.omega) : json(nullptr);
  j["radius"] = c.radius ? json(*c.radius) : json(nullptr);
}

void from_json(const json& j, ExperimentConfig& c) {
  const auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(field);
  };
  get("group", c.group);
  get("k", c.k);
  get("directed", c.directed);
  get("alphas", c.alphas);
  get("betas", c.betas);
  get("trials", c.trials);
  get("seed", c.seed);
  get("omega_factors", c.omega_factors);
  get("samples", c.samples);
  get("output", c.output);
  get("workers", c.workers);
  if (j.contains("p")) {
    const json& p = j.at("p");
    if (p.is_string()) {
      if (p.get<std::string>() != "inf") throw InvalidArgument("p must be a number or \"inf\"");
      c.p = kInfinityNorm;
    } else {
      c.p = p.get<double>();
    }
  }
  if (j.contains("omega")) {
    c.omega = j.at("omega").is_null() ? std::nullopt : std::optional<double>(j.at("omega").get<double>());
  }
  if (j.contains("radius")) {
    c.radius = j.at("radius").is_null() ? std::nullopt : std::optional<double>(j.at("radius").get<double>());
  }
}

std::optional<double> ResultRow::param(std::string_view name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  return std::nullopt;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NumericalError("refusing to emit a non-finite value");
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return std::string(buf, ptr);
}

void write_config_line(std::ostream& out, const json& config) {
  out << "# json-config: " << config.dump() << '\n';
}

void write_rows_csv(std::ostream& out, const json& config, const RowSchema& schema,
                    const std::vector<ResultRow>& rows) {
  write_config_line(out, config);
  out << "experiment,trial";
  for (const auto& p : schema.params) out << ',' << p;
  out << ",metric,value,stderr\n";
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << (r.trial ? std::to_string(*r.trial) : std::string("summary"));
    for (const auto& p : schema.params) {
      out << ',';
      if (const auto v = r.param(p)) out << format_number(*v);
    }
    out << ',' << r.metric << ',' << format_number(r.value) << ',';
    if (r.std_error) out << format_number(*r.std_error);
    out << '\n';
  }
}

CutoffProfile run_cutoff_profile(const ExperimentConfig& config) {
  config.validate();
  const AbelianGroup group = parse_group_literal(config.group);
  const EntropicSchedule schedule = solve_t0(config.kind(), config.k, group.order(), solver_options(config));
  std::vector<double> times;
  for (const double a : config.alphas) times.push_back(solve_t_alpha(schedule, a));

  struct Trial {
    bool non_generating = false;
    std::vector<CurvePoint> curve;
  };
  const std::vector<Trial> trials =
      parallel_trials(config.trials, config.resolved_workers(), [&](std::size_t i) {
        const CharacterSpectrum spectrum = eigenvalues(
            group, trial_generators(group, config, ExperimentId::generators, i), config.directed);
        if (detect_non_generating(spectrum)) return Trial{true, {}};
        return Trial{false, tv_curve(spectrum, times)};
      });

  const std::string id = kCutoffSchema.experiment;
  CutoffProfile out;
  std::vector<std::vector<double>> tv_by_alpha(config.alphas.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (trials[i].non_generating) {
      ++out.skipped_non_generating;
      continue;
    }
    for (std::size_t a = 0; a < times.size(); ++a) {
      const CurvePoint& pt = trials[i].curve[a];
      const std::vector<std::pair<std::string, double>> params{{"alpha", config.alphas[a]}, {"t", pt.t}};
      out.rows.push_back(row(id, i, params, "tv", pt.tv));
      out.rows.push_back(row(id, i, params, "l2", pt.l2));
      tv_by_alpha[a].push_back(pt.tv);
    }
  }
  if (out.skipped_non_generating == trials.size()) {
    throw NumericalError("all " + std::to_string(trials.size()) + " generator samples fail to generate " +
                         group.literal());
  }
  for (std::size_t a = 0; a < times.size(); ++a) {
    const std::vector<std::pair<std::string, double>> params{{"alpha", config.alphas[a]}, {"t", times[a]}};
    out.rows.push_back(row(id, std::nullopt, params, "tv_median", sample_quantile(tv_by_alpha[a], 0.5)));
    out.rows.push_back(row(id, std::nullopt, params, "tv_q25", sample_quantile(tv_by_alpha[a], 0.25)));
    out.rows.push_back(row(id, std::nullopt, params, "tv_q75", sample_quantile(tv_by_alpha[a], 0.75)));
    out.rows.push_back(row(id, std::nullopt, params, "psi", psi(config.alphas[a])));
  }
  out.rows.push_back(row(id, std::nullopt, {}, "skipped_non_generating",
                         static_cast<double>(out.skipped_non_generating)));
  const HypothesisReport report = validate_hypotheses(group, config.k, HypothesisFamily::cutoff);
  for (const HypothesisClause& c : report.clauses) {
    out.rows.push_back(row(id, std::nullopt, {}, "hypothesis." + c.name, c.holds ? 1.0 : 0.0));
  }
  return out;
}

LowerBoundAudit run_lower_bound_audit(const ExperimentConfig& config) {
  config.validate();
  const AbelianGroup group = parse_group_literal(config.group);
  const EntropicSchedule schedule = solve_t0(config.kind(), config.k, group.order(), solver_options(config));
  const std::size_t workers = config.resolved_workers();
  std::vector<double> times;
  for (const double a : config.alphas) times.push_back(solve_t_alpha(schedule, a));
  std::vector<double> omegas;
  for (const double f : config.omega_factors) omegas.push_back(f * schedule.omega);

  // The Monte Carlo bound does not depend on Z; one estimate per (α, ω).
  const std::size_t n_omega = omegas.size();
  const std::vector<Estimate> bounds =
      parallel_trials(times.size() * n_omega, workers, [&](std::size_t j) {
        const std::size_t a = j / n_omega;
        const std::size_t o = j % n_omega;
        return lower_bound_estimate(schedule, times[a], omegas[o], config.samples,
                                    derive_seed(config.seed, label(ExperimentId::lower_bound_audit), a, o));
      });

  struct Trial {
    bool non_generating = false;
    std::vector<CurvePoint> curve;
  };
  const std::vector<Trial> trials = parallel_trials(config.trials, workers, [&](std::size_t i) {
    const CharacterSpectrum spectrum =
        eigenvalues(group, trial_generators(group, config, ExperimentId::generators, i), config.directed);
    return Trial{detect_non_generating(spectrum), tv_curve(spectrum, times)};
  });

  const std::string id = kAuditSchema.experiment;
  LowerBoundAudit out;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    out.rows.push_back(row(id, i, {}, "non_generating", trials[i].non_generating ? 1.0 : 0.0));
    for (std::size_t a = 0; a < times.size(); ++a) {
      const double tv = trials[i].curve[a].tv;
      out.rows.push_back(row(id, i, {{"alpha", config.alphas[a]}, {"t", times[a]}}, "tv", tv));
      for (std::size_t o = 0; o < n_omega; ++o) {
        const Estimate& lb = bounds[a * n_omega + o];
        const std::vector<std::pair<std::string, double>> params{
            {"alpha", config.alphas[a]}, {"t", times[a]}, {"omega", omegas[o]}};
        const double margin = tv - lb.value;
        out.rows.push_back(row(id, i, params, "lower_bound", lb.value, lb.std_error));
        out.rows.push_back(row(id, i, params, "margin", margin, lb.std_error));
        ++checked;
        if (margin < -3.0 * lb.std_error) {
          std::ostringstream msg;
          msg << "trial " << i << " alpha " << config.alphas[a] << " t " << times[a] << " omega "
              << omegas[o] << ": tv " << tv << " < bound " << lb.value << " - 3*" << lb.std_error
              << (trials[i].non_generating ? " (non-generating)" : "");
          out.violations.push_back(msg.str());
        }
      }
    }
  }
  out.rows.push_back(row(id, std::nullopt, {}, "checked", static_cast<double>(checked)));
  out.rows.push_back(row(id, std::nullopt, {}, "violations", static_cast<double>(out.violations.size())));
  return out;
}

TypdistRun run_typdist_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.betas.empty()) throw InvalidArgument("no betas requested");
  const AbelianGroup group = parse_group_literal(config.group);
  const auto n = static_cast<double>(group.order());
  TypdistRun out;
  out.reference = reference_radius(config.k, config.p, n, config.directed);
  const double search_radius = config.radius.value_or(std::ceil(4.0 * out.reference));
  const double max_beta = *std::max_element(config.betas.begin(), config.betas.end());

  const std::vector<std::vector<double>> per_trial =
      parallel_trials(config.trials, config.resolved_workers(), [&](std::size_t i) {
        const GeneratorMultiset gens = trial_generators(group, config, ExperimentId::typdist, i);
        const DistanceHistogram hist =
            config.p == 1.0 ? graph_distances(group, gens, config.directed)
                            : lp_distances(group, gens, config.p, search_radius, config.directed);
        if (static_cast<double>(hist.reached) < max_beta * n * (1.0 - 1e-12)) {
          throw LimitExceeded("trial " + std::to_string(i) + ": coverage " +
                              std::to_string(static_cast<double>(hist.reached) / n) +
                              " < max beta " + std::to_string(max_beta));
        }
        std::vector<double> d;
        for (const double b : config.betas) d.push_back(quantile(hist, b));
        return d;
      });

  const std::string id = kTypdistSchema.experiment;
  for (std::size_t i = 0; i < per_trial.size(); ++i) {
    for (std::size_t b = 0; b < config.betas.size(); ++b) {
      const std::vector<std::pair<std::string, double>> params{{"beta", config.betas[b]}};
      out.rows.push_back(row(id, i, params, "D", per_trial[i][b]));
      out.rows.push_back(row(id, i, params, "Mref", out.reference));
      out.rows.push_back(row(id, i, params, "ratio", per_trial[i][b] / out.reference));
    }
  }
  for (std::size_t b = 0; b < config.betas.size(); ++b) {
    std::vector<double> ds;
    for (const auto& d : per_trial) ds.push_back(d[b]);
    const double median = sample_quantile(ds, 0.5);
    const std::vector<std::pair<std::string, double>> params{{"beta", config.betas[b]}};
    out.rows.push_back(row(id, std::nullopt, params, "D", median));
    out.rows.push_back(row(id, std::nullopt, params, "Mref", out.reference));
    out.rows.push_back(row(id, std::nullopt, params, "ratio", median / out.reference));
  }
  return out;
}

void write_typdist_csv(std::ostream& out, const json& config, const TypdistRun& run) {
  write_config_line(out, config);
  out << "trial,beta,D,Mref,ratio\n";
  // rows come in (D, Mref, ratio) triples
  for (std::size_t i = 0; i + 2 < run.rows.size(); i += 3) {
    const ResultRow& d = run.rows[i];
    out << (d.trial ? std::to_string(*d.trial) : std::string("median")) << ','
        << format_number(*d.param("beta")) << ',' << format_number(d.value) << ','
        << format_number(run.rows[i + 1].value) << ',' << format_number(run.rows[i + 2].value) << '\n';
  }
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

namespace {

// Cube enumeration; independent of the library's counting routines.
std::uint64_t brute_ball(std::int64_t k, double p, std::int64_t R) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(k), -R);
  std::uint64_t count = 0;
  while (true) {
    if (lp_norm(x, p) <= static_cast<double>(R) * (1.0 + 1e-12)) ++count;
    std::size_t i = 0;
    while (i < x.size() && ++x[i] > R) x[i++] = -R;
    if (i == x.size()) break;
  }
  return count;
}

using CheckFn = std::function<std::string()>;  // empty string on success

}  // namespace

ValidationReport run_validation_suite(const ExperimentConfig& config, const ValidationOptions& options) {
  std::vector<std::tuple<std::string, std::string, CheckFn>> suite;
  const auto add = [&](std::string name, std::string property, CheckFn fn) {
    suite.emplace_back(std::move(name), std::move(property), std::move(fn));
  };

  add("group.invariant_factors", "diagonal regrouping gives the invariant factor chain", [] {
    const auto f1 = parse_group_literal("6x4").invariant_factors();
    const auto f2 = parse_group_literal("2x3").invariant_factors();
    const auto f3 = parse_group_literal("4x4").invariant_factors();
    if (f1 != std::vector<std::int64_t>{2, 12}) return std::string("6x4 did not give [2, 12]");
    if (f2 != std::vector<std::int64_t>{6}) return std::string("2x3 did not give [6]");
    if (f3 != std::vector<std::int64_t>{4, 4}) return std::string("4x4 did not give [4, 4]");
    return std::string();
  });

  add("group.index_roundtrip", "element_of and index_of are inverse bijections", [] {
    const AbelianGroup g = parse_group_literal("6x4x5");
    for (Index i = 0; i < g.order(); ++i) {
      if (g.index_of(g.element_of(i)) != i) return "index " + std::to_string(i) + " does not round-trip";
    }
    return std::string();
  });

  add("walklaw.mass", "truncated laws keep unit mass", [] {
    for (const WalkKind kind : {WalkKind::poisson, WalkKind::srw}) {
      for (const double s : {1e-3, 0.5, 7.0, 300.0}) {
        const double m = make_law(kind, s).total_mass();
        if (std::fabs(m - 1.0) > 1e-12) {
          return std::string(to_string(kind)) + " s=" + std::to_string(s) + " mass " + std::to_string(m);
        }
      }
    }
    return std::string();
  });

  add("walklaw.closed_form_entropy", "series entropy of the directed law matches the summed pmf", [] {
    for (int i = 0; i <= 40; ++i) {
      const double s = 1e-3 * std::pow(5e4, i / 40.0);
      const double gap = std::fabs(entropy_directed_closed_form(s) - entropy(poisson_law(s)));
      if (gap > 1e-10) return "s=" + std::to_string(s) + " gap " + std::to_string(gap);
    }
    return std::string();
  });

  add("walklaw.r_p_bounds", "r_alpha and p_alpha stay within their closed-form envelopes", [] {
    for (const WalkKind kind : {WalkKind::poisson, WalkKind::srw}) {
      for (const std::int64_t k : {4, 8, 16}) {
        for (const double n : {1e4, 1e6}) {
          const EntropicSchedule sch = solve_t0(kind, k, static_cast<std::uint64_t>(n));
          const LatticeWalkLaw law = make_law(kind, sch.t0 / static_cast<double>(k));
          const std::int64_t r = r_alpha(law, k);
          const double kd = static_cast<double>(k);
          const double r_star = 0.5 * std::pow(n, 1.0 / kd) * std::log(kd) * std::log(kd);
          const double p_star = std::pow(n, -1.0 / kd) / (kd * kd);
          if (static_cast<double>(r) > r_star || p_alpha(law, r) < p_star) {
            return std::string(to_string(kind)) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
          }
        }
      }
    }
    return std::string();
  });

  add("entropic.solver", "entropy at t0/k hits log n / k within 1e-10", [] {
    for (const WalkKind kind : {WalkKind::poisson, WalkKind::srw}) {
      for (const std::int64_t k : {4, 16}) {
        const EntropicSchedule sch = solve_t0(kind, k, 1'000'000);
        const double gap = std::fabs(entropy(make_law(kind, sch.t0 / static_cast<double>(k))) -
                                     sch.log_n() / static_cast<double>(k));
        if (gap > 1e-10) return std::string(to_string(kind)) + " k=" + std::to_string(k) + " gap " + std::to_string(gap);
      }
    }
    return std::string();
  });

  add("spectral.two_point", "the walk on Z_2 matches (1 + e^{-2t})/2 at the identity", [] {
    const AbelianGroup g = parse_group_literal("2");
    const GeneratorMultiset gens{{GroupElement{{1}}}, 0};
    const CharacterSpectrum spec = eigenvalues(g, gens, false);
    for (const double t : {0.0, 0.1, 1.0, 3.0}) {
      const GroupDistribution d = walk_distribution(spec, t);
      if (std::fabs(d.probs[0] - 0.5 * (1.0 + std::exp(-2.0 * t))) > 1e-14 ||
          std::fabs(tv_distance(d) - 0.5 * std::exp(-2.0 * t)) > 1e-14) {
        return "t=" + std::to_string(t);
      }
    }
    return std::string();
  });

  add("spectral.parseval", "L2 distance equals the non-trivial character mass; TV <= L2/2", [&] {
    const AbelianGroup g = parse_group_literal("6x4x3");
    const GeneratorMultiset gens = sample_generators(g, 3, config.seed);
    for (const bool directed : {false, true}) {
      const CharacterSpectrum spec = eigenvalues(g, gens, directed);
      for (const double t : {0.3, 2.0}) {
        const GroupDistribution d = walk_distribution(spec, t);
        double chars = 0.0;
        for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i) {
          chars += std::norm(std::exp(t * (spec.eigenvalues[i] - 1.0)));
        }
        const double l2 = l2_distance(d);
        if (std::fabs(l2 * l2 - chars) > 1e-9 || tv_distance(d) > 0.5 * l2 + 1e-12) {
          return "t=" + std::to_string(t) + (directed ? " directed" : " undirected");
        }
      }
    }
    return std::string();
  });

  add("mixingstats.vz_uniform", "v.Z is uniform on the subgroup prod g_j Z_{m_j/g_j}", [&] {
    const AbelianGroup z12 = parse_group_literal("12");
    for (std::int64_t a = 0; a < 12; ++a) {
      const std::vector<std::int64_t> v1{a};
      if (!verify_vz_uniform(z12, v1, options.gcd).matches) return "Z_12 v=(" + std::to_string(a) + ")";
      for (std::int64_t b = 0; b < 12; ++b) {
        const std::vector<std::int64_t> v2{a, b};
        if (!verify_vz_uniform(z12, v2, options.gcd).matches) {
          return "Z_12 v=(" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
      }
    }
    const AbelianGroup z2z3 = parse_group_literal("2x3");
    for (std::int64_t a = 0; a < 7; ++a) {
      const std::vector<std::int64_t> v{a};
      if (!verify_vz_uniform(z2z3, v, options.gcd).matches) return "Z_2+Z_3 v=(" + std::to_string(a) + ")";
    }
    return std::string();
  });

  add("mixingstats.divisibility", "P(gamma | V_i, i in I) <= gamma^{-|I|} on truncated walk laws", [] {
    for (const double s : {0.3, 1.0, 2.5}) {
      const LatticeWalkLaw law = srw_law(s);
      const std::int64_t r = r_alpha(law, 8);
      const DivisibilityCheck c = divisibility_check(typical_difference_law(law, r), 2 * r, 4);
      if (c.worst_ratio > 1.0 + 1e-12) {
        return "s=" + std::to_string(s) + " gamma=" + std::to_string(c.worst_gamma) + " ratio " +
               std::to_string(c.worst_ratio);
      }
    }
    return std::string();
  });

  add("mixingstats.psi", "Psi(a) + Psi(-a) = 1 and Psi(0) = 1/2", [] {
    if (std::fabs(psi(0.0) - 0.5) > 1e-15) return std::string("Psi(0)");
    for (const double a : {0.1, 1.0, 2.5, 6.0}) {
      if (std::fabs(psi(a) + psi(-a) - 1.0) > 1e-14) return "a=" + std::to_string(a);
    }
    return std::string();
  });

  add("typdist.l1_bracket", "2^k C(R,k) 1{R>=k} <= |B_{k,1}(R)| <= 2^k C(R+k,k)", [] {
    for (std::int64_t k = 1; k <= 12; ++k) {
      for (std::int64_t R = 0; R <= 60; ++R) {
        const BigInt c = ball_count_l1(k, static_cast<double>(R)).exact_count;
        const BigInt two_k = BigInt(1) << static_cast<unsigned>(k);
        BigInt lo = 0;
        if (R >= k) lo = two_k * ball_count_l1(k, static_cast<double>(R - k), true).exact_count;
        const BigInt hi = two_k * ball_count_l1(k, static_cast<double>(R), true).exact_count;
        if (c < lo || c > hi) return "k=" + std::to_string(k) + " R=" + std::to_string(R);
      }
    }
    return std::string();
  });

  add("typdist.brute_force_counts", "lattice counts agree with cube enumeration", [] {
    for (std::int64_t k = 1; k <= 3; ++k) {
      for (std::int64_t R = 0; R <= 5; ++R) {
        for (const double p : {1.0, 2.0, kInfinityNorm}) {
          const std::uint64_t truth = brute_ball(k, p, R);
          const BallCount c = p == 2.0 ? ball_count_enumerate(k, p, static_cast<double>(R))
                                       : ball_count_lp(k, p, static_cast<double>(R));
          if (c.exact_count != truth) {
            return "k=" + std::to_string(k) + " R=" + std::to_string(R) + " p=" + std::to_string(p);
          }
        }
      }
    }
    return std::string();
  });

  add("typdist.distance_lower_bound", "D(beta) >= R whenever |B(R)| < beta n; directed D >= undirected D", [&] {
    const AbelianGroup g = parse_group_literal("1009");
    for (std::uint64_t s = 0; s < 4; ++s) {
      const GeneratorMultiset gens = sample_generators(g, 3, derive_seed(config.seed, s));
      const DistanceHistogram und = graph_distances(g, gens, false);
      const DistanceHistogram dir = graph_distances(g, gens, true);
      for (const double beta : {0.1, 0.5, 0.9, 1.0}) {
        const double d = quantile(und, beta);
        for (std::int64_t R = 0; static_cast<double>(R) < d + 3; ++R) {
          if (ball_count_l1(3, static_cast<double>(R)).as_double() < beta * 1009.0 && d < static_cast<double>(R)) {
            return "seed " + std::to_string(s) + " beta " + std::to_string(beta);
          }
        }
        if (quantile(dir, beta) < d) return "directed below undirected, seed " + std::to_string(s);
      }
    }
    return std::string();
  });

  ValidationReport report;
  for (auto& [name, property, fn] : suite) {
    ValidationCheck check{name, property, false, {}};
    try {
      check.detail = fn();
      check.passed = check.detail.empty();
    } catch (const std::exception& e) {
      check.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace cayleymix
