#include "cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "cli/json_io.hpp"
#include "symcalc/error.hpp"
#include "symcalc/loop_geometry.hpp"
#include "symcalc/spectral.hpp"
#include "symcalc/traces.hpp"
#include "symcalc/verify.hpp"

namespace symcalc::cli {

namespace {

struct LoopInputs {
  std::string algebra;
  std::string u;
  std::string v;
  std::string w;
  int loop_modes = 4;
  std::string connection = "levi-civita";
  double s = 0.5;
};

struct Extras {
  std::string distribution = "uniform+";
  double component_degree = 0.0;
  bool has_component = false;
  double q = 2.0;
  std::string csv;
  std::string suite;
  LoopInputs loops;
};

void validate(const RunConfig& cfg) {
  if (cfg.modes == 0 || cfg.modes < -1) throw SchemaError("--modes must be positive");
  if (cfg.depth < -1) throw SchemaError("--depth must be non-negative");
  if (cfg.band < -1) throw SchemaError("--band must be non-negative");
  if (!(cfg.eps_min > 0.0) || !(cfg.eps_max > cfg.eps_min)) {
    throw SchemaError("epsilon grid needs 0 < --eps-min < --eps-max");
  }
  if (cfg.eps_count < 2) throw SchemaError("--eps-count must be at least 2");
  if (!(cfg.tol > 0.0)) throw SchemaError("--tol must be positive");
}

json config_json(const RunConfig& cfg) {
  return {{"command", cfg.command}, {"inputs", cfg.inputs},   {"modes", cfg.modes},
          {"depth", cfg.depth},     {"band", cfg.band},       {"eps_min", cfg.eps_min},
          {"eps_max", cfg.eps_max}, {"eps_count", cfg.eps_count}, {"seed", cfg.seed},
          {"tol", cfg.tol},         {"out", cfg.out}};
}

void emit(const json& report, const RunConfig& cfg, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!cfg.out.empty()) {
    std::ofstream file(cfg.out);
    if (!file) throw SchemaError("cannot write '" + cfg.out + "'");
    file << text;
  }
}

ClassicalSymbol load_symbol(RunConfig& cfg, json& notes) {
  if (cfg.inputs.empty()) throw SchemaError(cfg.command + ": a symbol JSON file is required");
  ClassicalSymbol a = symbol_from_json(read_json_file(cfg.inputs.front()));
  if (cfg.depth >= 0 && cfg.depth < a.depth()) a = a.truncated_to_depth(cfg.depth);
  if (cfg.band >= 0 && cfg.band < a.band()) {
    a = a.with_band(cfg.band);
    notes["band_truncation_loss"] = a.truncation_loss();
  }
  return a;
}

json zero_modes(const CosphereFunction& f) {
  return {{"plus", complex_to_json(CosphereDistribution::uniform_plus()(f))},
          {"minus", complex_to_json(CosphereDistribution::uniform_minus()(f))}};
}

// --- residue, symbol-trace --------------------------------------------------

int cmd_residue(RunConfig& cfg, std::ostream& out) {
  json notes = json::object();
  const ClassicalSymbol a = load_symbol(cfg, notes);
  json report = {{"config", config_json(cfg)}, {"order", a.order().value()}, {"depth", a.depth()}};
  report["res_w"] = complex_to_json(wodzicki_residue(a));
  const bool carries = a.order().is_integer() && a.order() >= HalfInt::integer(-1);
  report["integrand_zero_mode"] =
      carries ? zero_modes(component_trace_function(a, HalfInt::integer(-1))) : json(nullptr);
  if (!notes.empty()) report["notes"] = notes;
  emit(report, cfg, out);
  return kSuccess;
}

int cmd_symbol_trace(RunConfig& cfg, const Extras& extras, std::ostream& out) {
  json notes = json::object();
  const ClassicalSymbol a = load_symbol(cfg, notes);
  const CosphereDistribution f = distribution_from_name(extras.distribution);
  json report = {{"config", config_json(cfg)}, {"distribution", f.name()}, {"order", a.order().value()}};
  if (extras.has_component) {
    const HalfInt r = HalfInt::from_double(extras.component_degree);
    report["component_degree"] = r.value();
    report["value"] = complex_to_json(component_trace(r, f, a));
  } else {
    report["value"] = complex_to_json(symbol_trace(f, a));
  }
  if (!notes.empty()) report["notes"] = notes;
  emit(report, cfg, out);
  return kSuccess;
}

// --- heat-fit ---------------------------------------------------------------

json comparison(std::optional<Complex> fitted, std::optional<Complex> predicted, double tol) {
  json row = {{"fitted", fitted ? complex_to_json(*fitted) : json(nullptr)},
              {"predicted", predicted ? complex_to_json(*predicted) : json(nullptr)}};
  if (fitted && predicted) {
    const double diff = std::abs(*fitted - *predicted);
    const double scale = std::abs(*predicted);
    const double relative = scale > 0.0 ? diff / scale : diff;
    row["relative_diff"] = relative;
    row["agree"] = relative < tol;
  }
  return row;
}

int cmd_heat_fit(RunConfig& cfg, const Extras& extras, std::ostream& out) {
  if (cfg.modes < 0) cfg.modes = 2000;
  json notes = json::object();
  const ClassicalSymbol a = load_symbol(cfg, notes);
  if (!a.order().is_integer()) throw SchemaError("heat-fit: the symbol order must be an integer");
  if (!(extras.q > 0.0)) throw SchemaError("heat-fit: --q must be positive");
  const int order = a.order().as_integer();
  const int n = cfg.modes;
  if (n < a.band()) throw SchemaError("heat-fit: --modes must be at least the symbol band");

  // Q is diagonal, so only the diagonal blocks of A enter the trace.
  const FourierMatrix op = FourierMatrix::block_diagonal(n, a.fiber_dim(), quantize_diagonal(a, n));
  const FourierMatrix weight = weight_matrix(0.5 * extras.q, n, a.fiber_dim());
  const std::vector<double> grid = log_spaced_grid(cfg.eps_min, cfg.eps_max, cfg.eps_count);
  const HeatSweep sweep = heat_trace_sweep(op, weight, grid);

  FitSpec spec;
  spec.order = std::max(order, -1);
  spec.weight_order = extras.q;
  const AsymptoticFit fit = fit_expansion(sweep.samples, spec);

  json coefficients = json::array();
  for (const auto& c : fit.coefficients) coefficients.push_back(complex_to_json(c));
  json report = {{"config", config_json(cfg)},
                 {"q", extras.q},
                 {"order", order},
                 {"fiber_dim", a.fiber_dim()},
                 {"exponents", fit.exponents},
                 {"coefficients", coefficients},
                 {"coefficient_errors", fit.coefficient_errors},
                 {"log_coefficient", fit.has_log ? complex_to_json(fit.log_coefficient) : json(nullptr)},
                 {"finite_part", complex_to_json(fit.finite_part)},
                 {"finite_part_error", fit.finite_part_error},
                 {"residual", fit.residual},
                 {"warnings", sweep.warnings}};

  std::optional<Complex> fitted_a0;
  if (!fit.coefficients.empty()) fitted_a0 = fit.leading();
  std::optional<Complex> predicted_a0_value;
  if (order > -1) predicted_a0_value = predicted_a0(a, extras.q);
  json a0 = comparison(fitted_a0, predicted_a0_value, cfg.tol);
  if (order > -1) a0["predicted_with_fiber_factor"] = complex_to_json(predicted_a0_with_fiber_factor(a, extras.q));
  const Complex fitted_b0 = fit.has_log ? fit.log_coefficient : Complex(0.0);
  std::optional<Complex> predicted_b0_value;
  if (a.degree_is_truncated(HalfInt::integer(-1))) {
    notes["b0"] = "degree -1 lies below the retained depth; no residue prediction";
  } else {
    predicted_b0_value = predicted_b0(a, extras.q);
  }
  report["comparison"] = {{"a0", a0}, {"b0", comparison(fitted_b0, predicted_b0_value, cfg.tol)}};
  if (!notes.empty()) report["notes"] = notes;

  std::string csv_path = extras.csv;
  if (csv_path.empty() && !cfg.out.empty()) {
    csv_path = cfg.out;
    const auto dot = csv_path.rfind('.');
    csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw SchemaError("cannot write '" + csv_path + "'");
    csv << "epsilon,trace_re,trace_im\n" << std::setprecision(17);
    for (const auto& sample : sweep.samples) {
      csv << sample.epsilon << ',' << sample.value.real() << ',' << sample.value.imag() << '\n';
    }
    report["csv"] = csv_path;
  }
  emit(report, cfg, out);
  return kSuccess;
}

// --- loop-curvature, chern ----------------------------------------------------

struct LoopSetup {
  LieAlgebra g = LieAlgebra::su2();
  LoopElement u;
  LoopElement v;
  LoopElement w;
  json inputs;
};

LoopSetup load_loops(const RunConfig& cfg, const LoopInputs& in) {
  if (in.loop_modes < 0) throw SchemaError("--loop-modes must be non-negative");
  LieAlgebra g = in.algebra.empty() ? LieAlgebra::su2() : algebra_from_json(read_json_file(in.algebra));
  std::mt19937_64 rng(cfg.seed);
  auto pick = [&](const std::string& path) {
    LoopElement random = LoopElement::random_real(g.dim(), in.loop_modes, rng);
    return path.empty() ? random : loop_from_json(read_json_file(path), g.dim());
  };
  LoopElement u = pick(in.u);
  LoopElement v = pick(in.v);
  LoopElement w = pick(in.w);
  json inputs = {{"algebra_dim", g.dim()}, {"u", loop_to_json(u)}, {"v", loop_to_json(v)}};
  return {std::move(g), std::move(u), std::move(v), std::move(w), std::move(inputs)};
}

Connection connection_from(const RunConfig& cfg, const LoopInputs& in) {
  Connection theta;
  if (in.connection == "levi-civita") {
    theta.kind = ConnectionKind::LeviCivita;
  } else if (in.connection == "conjugation") {
    theta.kind = ConnectionKind::Conjugation;
  } else {
    throw SchemaError("--connection must be levi-civita or conjugation");
  }
  theta.s = in.s;
  theta.depth = cfg.depth >= 0 ? cfg.depth : 3;
  return theta;
}

int cmd_loop_curvature(RunConfig& cfg, const Extras& extras, std::ostream& out) {
  const LoopSetup setup = load_loops(cfg, extras.loops);
  const Connection theta = connection_from(cfg, extras.loops);
  const ClassicalSymbol omega = curvature(setup.g, theta, setup.u, setup.v);
  json components = json::array();
  for (const auto& c : omega.components()) {
    components.push_back({{"degree", c.degree.value()},
                          {"norm", c.norm()},
                          {"trace_zero_mode", zero_modes({c.plus.trace(), c.minus.trace()})}});
  }
  json report = {{"config", config_json(cfg)},
                 {"connection", extras.loops.connection},
                 {"s", theta.s},
                 {"depth", theta.depth},
                 {"inputs", setup.inputs},
                 {"components", components},
                 {"sigma0_norm", omega.component(0).norm()},
                 {"res_w", complex_to_json(wodzicki_residue(omega))},
                 {"curvature_symbol", symbol_to_json(omega)}};
  emit(report, cfg, out);
  return kSuccess;
}

int cmd_chern(RunConfig& cfg, const Extras& extras, std::ostream& out) {
  if (cfg.modes < 0) cfg.modes = 4096;
  LoopSetup setup = load_loops(cfg, extras.loops);
  const int depth = cfg.depth >= 0 ? cfg.depth : 3;
  const double s = extras.loops.s;
  const Connection theta{ConnectionKind::LeviCivita, s, depth};
  const LieAlgebra& g = setup.g;

  const Complex symbol_side = weighted_first_chern(g, setup.u, setup.v, depth, s);
  const std::vector<CMatrix> diagonal = curvature_diagonal_blocks(g, theta, setup.u, setup.v, cfg.modes);
  const ConditionalTrace spectral = conditional_trace(diagonal);
  const Complex spectral_value = spectral.value + spectral.tail_estimate;
  double mass = 0.0;
  for (const auto& b : diagonal) mass += std::abs(b.trace());
  const double scale = std::max({std::abs(symbol_side), std::abs(spectral_value), mass});
  const double relative = scale > 0.0 ? std::abs(symbol_side - spectral_value) / scale : 0.0;

  const LoopTwoForm beta = [&](const LoopElement& x, const LoopElement& y) {
    return weighted_first_chern(g, x, y, depth, s);
  };
  const Complex d_beta = ce_differential(g, beta, setup.u, setup.v, setup.w);

  setup.inputs["w"] = loop_to_json(setup.w);
  json report = {{"config", config_json(cfg)},
                 {"s", s},
                 {"depth", depth},
                 {"inputs", setup.inputs},
                 {"weighted_first_chern", complex_to_json(symbol_side)},
                 {"conditional_trace",
                  {{"partial_sum", complex_to_json(spectral.value)},
                   {"tail_estimate", complex_to_json(spectral.tail_estimate)},
                   {"diverged", spectral.diverged},
                   {"mode_cutoff", spectral.mode_cutoff}}},
                 {"diagonal_mass", mass},
                 {"relative_gap", relative},
                 {"agree", !spectral.diverged && relative < cfg.tol},
                 {"ce_differential", complex_to_json(d_beta)}};
  emit(report, cfg, out);
  return kSuccess;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(RunConfig& cfg, const Extras& extras, std::ostream& out) {
  suite_criteria(extras.suite);  // rejects unknown names before any work
  VerifyOptions options;
  options.seed = cfg.seed;
  const std::vector<CheckResult> results = run_suite(extras.suite, options);
  json checks = json::array();
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  [" << r.criterion << "] " << r.name << ": ";
    json entry = {{"criterion", r.criterion}, {"name", r.name}, {"tolerance", r.tolerance}, {"pass", r.pass}};
    if (r.timing) {
      out << (r.pass ? "within" : "over") << " budget " << r.tolerance;
    } else {
      out << "value " << std::setprecision(6) << r.value << " tol " << r.tolerance;
      entry["value"] = r.value;
      if (!r.detail.empty()) {
        out << " (" << r.detail << ")";
        entry["detail"] = r.detail;
      }
    }
    out << '\n';
    checks.push_back(std::move(entry));
  }
  const bool ok = all_passed(results);
  const auto failures = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
  out << "suite " << extras.suite << " seed " << cfg.seed << ": " << results.size() - failures << "/"
      << results.size() << " checks passed\n";
  if (!cfg.out.empty()) {
    std::ofstream file(cfg.out);
    if (!file) throw SchemaError("cannot write '" + cfg.out + "'");
    file << json{{"config", config_json(cfg)}, {"suite", extras.suite}, {"pass", ok}, {"checks", checks}}.dump(2)
         << "\n";
  }
  return ok ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symcalc: symbol calculus, trace functionals and loop-group curvature on the circle"};
  app.require_subcommand(1);
  RunConfig cfg;
  Extras extras;

  app.add_option("--modes", cfg.modes, "Fourier mode cutoff N");
  app.add_option("--depth", cfg.depth, "symbol depth J");
  app.add_option("--band", cfg.band, "band limit B applied to input symbols");
  app.add_option("--eps-min", cfg.eps_min, "smallest heat parameter");
  app.add_option("--eps-max", cfg.eps_max, "largest heat parameter");
  app.add_option("--eps-count", cfg.eps_count, "number of log-spaced heat parameters");
  app.add_option("--seed", cfg.seed, "seed for randomized inputs and suites");
  app.add_option("--tol", cfg.tol, "relative tolerance for comparison columns");
  app.add_option("--out", cfg.out, "also write the report to this file");

  auto* residue = app.add_subcommand("residue", "Wodzicki residue of a symbol");
  residue->add_option("symbol", cfg.inputs, "symbol JSON")->required();

  auto* trace = app.add_subcommand("symbol-trace", "leading-symbol trace Tr^f or component trace Tr_r^f");
  trace->add_option("symbol", cfg.inputs, "symbol JSON")->required();
  trace->add_option("--f", extras.distribution, "distribution: uniform+, uniform-, uniform, delta:x0:+, mode:k:-, d(...)");
  trace->add_option("--component", extras.component_degree, "component degree r for Tr_r^f")
      ->each([&](const std::string&) { extras.has_component = true; });

  auto* heat = app.add_subcommand("heat-fit", "heat-trace sweep of A e^{-eps Q} and asymptotic fit");
  heat->add_option("symbol", cfg.inputs, "symbol JSON")->required();
  heat->add_option("--q", extras.q, "order q of the weight (Q = (Laplacian + P)^{q/2})");
  heat->add_option("--csv", extras.csv, "CSV sweep output (default: --out with .csv)");

  auto add_loop_options = [&](CLI::App* sub, bool with_w) {
    sub->add_option("--algebra", extras.loops.algebra, "Lie algebra JSON (default su(2))");
    sub->add_option("--u", extras.loops.u, "loop JSON for U (default: random from --seed)");
    sub->add_option("--v", extras.loops.v, "loop JSON for V (default: random from --seed)");
    if (with_w) sub->add_option("--w", extras.loops.w, "loop JSON for W (default: random from --seed)");
    sub->add_option("--loop-modes", extras.loops.loop_modes, "mode cutoff K of random loops");
    sub->add_option("--s", extras.loops.s, "Sobolev exponent");
  };
  auto* loop = app.add_subcommand("loop-curvature", "curvature symbol of a loop-group connection");
  add_loop_options(loop, false);
  loop->add_option("--connection", extras.loops.connection, "levi-civita or conjugation");

  auto* chern = app.add_subcommand("chern", "weighted first Chern form vs the spectral conditional trace");
  add_loop_options(chern, true);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", extras.suite, "traces, composition, loopgroup, chern or all")->required();

  for (auto* sub : {residue, trace, heat, loop, chern, verify}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    validate(cfg);
    if (residue->parsed()) return cfg.command = "residue", cmd_residue(cfg, out);
    if (trace->parsed()) return cfg.command = "symbol-trace", cmd_symbol_trace(cfg, extras, out);
    if (heat->parsed()) return cfg.command = "heat-fit", cmd_heat_fit(cfg, extras, out);
    if (loop->parsed()) return cfg.command = "loop-curvature", cmd_loop_curvature(cfg, extras, out);
    if (chern->parsed()) return cfg.command = "chern", cmd_chern(cfg, extras, out);
    if (verify->parsed()) return cfg.command = "verify", cmd_verify(cfg, extras, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace symcalc::cli
