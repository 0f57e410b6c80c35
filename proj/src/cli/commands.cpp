#include "scalevar/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scalevar/operators.hpp"
#include "scalevar/residual.hpp"

namespace scalevar::cli {

namespace {

OrderedJson complex_json(Complex z) { return OrderedJson::array({z.real(), z.imag()}); }

OrderedJson bracket_json(const BracketResult& b) {
  OrderedJson j;
  j["verdict"] = to_string(b.verdict);
  j["limit"] = b.limit ? complex_json(*b.limit) : OrderedJson(nullptr);
  j["exponent"] = b.exponent;
  j["misfit"] = b.residual;
  if (!b.diagnostic.empty()) j["diagnostic"] = b.diagnostic;
  return j;
}

OrderedJson residual_json(const ResidualReport& r) {
  OrderedJson j;
  j["grid_n"] = r.grid.size();
  j["sup_norm"] = r.sup_norm;
  std::size_t counts[3] = {0, 0, 0};
  double max_limit = 0.0;
  OrderedJson limits = OrderedJson::array();
  for (const auto& b : r.bracketed) {
    ++counts[static_cast<int>(b.verdict)];
    if (b.limit) max_limit = std::max(max_limit, std::abs(*b.limit));
    limits.push_back(b.limit ? complex_json(*b.limit) : OrderedJson(nullptr));
  }
  j["limit_sup_norm"] = max_limit;
  j["bracket_counts"] = {{"zero", counts[0]}, {"nonzero", counts[1]}, {"divergent", counts[2]}};
  j["limits"] = std::move(limits);
  j["verdict"] = to_string(r.verdict);
  return j;
}

std::vector<Row> rows_of(const Eigen::VectorXd& grid, const Eigen::VectorXcd& values) {
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(grid.size()));
  for (Eigen::Index i = 0; i < grid.size(); ++i) rows.push_back({grid(i), values(i)});
  return rows;
}

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::validation, field + ": " + what);
}

ProblemSpec prepare(const Flags& flags) {
  ProblemSpec spec;
  if (flags.spec_path) {
    spec = load_problem(*flags.spec_path);
  }
  if (flags.eps) spec.eps = *flags.eps;
  if (flags.tol) spec.tolerances.zero = *flags.tol;
  revalidate(spec);
  return spec;
}

const LagrangianSpec& need_lagrangian(const ProblemSpec& spec) {
  if (!spec.lagrangian) invalid("lagrangian", "missing (pass --spec with a \"lagrangian\" entry)");
  return *spec.lagrangian;
}

std::optional<Complex> param_of(const LagrangianSpec& lag) {
  if (!lag.has_param) return std::nullopt;
  if (!lag.xi) invalid("lagrangian.xi", "required for a Lagrangian with a parameter");
  return lag.xi;
}

int grid_of(const Flags& flags, int fallback) {
  const int n = flags.grid.value_or(fallback);
  if (n < 1) invalid("--grid", "must be at least 1");
  return n;
}

ExitCode exit_for(ExtremalVerdict v) {
  return v == ExtremalVerdict::extremal ? ExitCode::ok : ExitCode::failure;
}

Report deriv(const ProblemSpec& spec, const Flags& flags) {
  Report r;
  std::string name;
  if (flags.curve) name = *flags.curve;
  else if (spec.lagrangian) name = spec.lagrangian->curve;
  else invalid("--curve", "required");

  const Curve curve = [&] {
    if (spec.curves.contains(name) || spec.variations.contains(name)) return spec.curve(name);
    try {
      return corpus_curve(parse_curve_kind(name));
    } catch (const Error&) {
      invalid("--curve", "'" + name + "' is neither a spec curve nor a corpus kind");
    }
  }();
  if (spec.eps.empty()) invalid("eps", "missing (use --eps or the spec)");
  const Epsilon eps(spec.eps.front());
  const double from = flags.from ? *flags.from : spec.interval ? spec.interval->lo : NAN;
  const double to = flags.to ? *flags.to : spec.interval ? spec.interval->hi : NAN;
  if (std::isnan(from) || std::isnan(to)) invalid("--from/--to", "required without a spec interval");
  if (!(from <= to)) invalid("--from/--to", "need from <= to");
  const int n = grid_of(flags, 101);

  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? from : i + 1 == n ? to : from + (to - from) * i / (n - 1);
    r.rows.push_back({x, box(curve.handle(), x, eps)});
  }
  OrderedJson xs = OrderedJson::array(), re = OrderedJson::array(), im = OrderedJson::array();
  for (const Row& row : r.rows) {
    xs.push_back(row.x);
    re.push_back(row.value.real());
    im.push_back(row.value.imag());
  }
  r.results = {{"curve", name}, {"eps", eps.value()}, {"x", xs}, {"re", re}, {"im", im}};
  r.verdict = "ok";
  return r;
}

Report eval(const ProblemSpec& spec) {
  const LagrangianSpec& lag = need_lagrangian(spec);
  const Functional f = spec.functional();
  const Complex v = evaluate_functional(f, spec.subject(), param_of(lag));
  Report r;
  r.results = {{"value", complex_json(v)}};
  r.verdict = "ok";
  return r;
}

Report residual(const ProblemSpec& spec, const Flags& flags) {
  const LagrangianSpec& lag = need_lagrangian(spec);
  const Functional f = spec.functional();
  const Curve& y = spec.subject();
  const int n = grid_of(flags, kDefaultResidualGrid);
  const auto xi = param_of(lag);
  Report r;
  auto with_param = [&](const ParamResidualReport& p) {
    r.results = residual_json(p.residual);
    if (p.param_value) r.results["param_value"] = complex_json(*p.param_value);
    if (p.param_integral) r.results["param_integral"] = bracket_json(*p.param_integral);
    r.results["verdict"] = to_string(p.verdict);
    r.rows = rows_of(p.residual.grid, p.residual.values);
    r.verdict = to_string(p.verdict);
    r.exit = exit_for(p.verdict);
  };
  if (lag.order == 2) {
    with_param(el_residual_higher2(f, y, xi, n, spec.ladder));
  } else if (xi) {
    with_param(el_residual_param(f, y, *xi, n, spec.ladder));
  } else {
    const ResidualReport rep = el_residual(f, y, n, spec.ladder);
    r.results = residual_json(rep);
    r.rows = rows_of(rep.grid, rep.values);
    r.verdict = to_string(rep.verdict);
    r.exit = exit_for(rep.verdict);
  }
  return r;
}

Report variation(const ProblemSpec& spec) {
  const LagrangianSpec& lag = need_lagrangian(spec);
  const VariationCurve& h = spec.variation(lag.variation);
  const Complex v = first_variation(spec.functional(), spec.subject(), h, param_of(lag));
  Report r;
  const bool stationary = std::abs(v) <= spec.tolerances.zero;
  r.results = {{"variation", lag.variation}, {"value", complex_json(v)}, {"tolerance", spec.tolerances.zero}};
  r.verdict = stationary ? "stationary" : "not-stationary";
  r.exit = stationary ? ExitCode::ok : ExitCode::failure;
  return r;
}

Report bracket_cmd(const ProblemSpec& spec) {
  const LagrangianSpec& lag = need_lagrangian(spec);
  const Functional f = spec.functional();
  const Curve& y = spec.subject();
  const auto xi = param_of(lag);
  LadderConfig cfg = spec.ladder;
  cfg.eps0 = f.eps().max();
  const BracketResult b = bracket(
      [&](Epsilon e) { return evaluate_functional(f.scaled(e.value() / cfg.eps0), y, xi); }, cfg);
  Report r;
  r.results = bracket_json(b);
  OrderedJson samples = OrderedJson::array();
  for (std::size_t i = 0; i < b.samples.size(); ++i)
    samples.push_back({{"eps", b.rungs[i]}, {"value", complex_json(b.samples[i])}});
  r.results["samples"] = std::move(samples);
  r.verdict = std::string(to_string(b.verdict));
  r.exit = b.verdict == BracketVerdict::divergent ? ExitCode::failure : ExitCode::ok;
  return r;
}

Report isoperimetric(const ProblemSpec& spec, const Flags& flags) {
  const LagrangianSpec& lag = need_lagrangian(spec);
  if (!lag.constraint) invalid("lagrangian.constraint", "required for isoperimetric");
  const MultiplierResult m = isoperimetric_multiplier(
      spec.functional(), spec.functional(*lag.constraint), spec.subject(),
      grid_of(flags, kDefaultResidualGrid), spec.ladder);
  Report r;
  const bool ok = m.k_residual_sup <= spec.tolerances.k_residual;
  r.results = {{"lambda", complex_json(m.lambda)},
               {"k_residual_sup", m.k_residual_sup},
               {"psi_residual_sup", m.psi_residual_sup},
               {"tolerance", spec.tolerances.k_residual}};
  r.rows = rows_of(m.grid, m.k_residual);
  r.verdict = ok ? "extremal" : "not-extremal";
  r.exit = ok ? ExitCode::ok : ExitCode::failure;
  return r;
}

Report solve_param_cmd(const ProblemSpec& spec) {
  const LagrangianSpec& lag = need_lagrangian(spec);
  if (!lag.has_param) invalid("lagrangian.has_param", "solve-param needs a parameter");
  const Functional f = spec.functional();
  const Complex xi0 = lag.xi.value_or(0.0);
  const Complex xi = solve_param(f, spec.subject(), xi0, spec.tolerances.solve);
  Report r;
  r.results = {{"xi0", complex_json(xi0)},
               {"xi", complex_json(xi)},
               {"g", complex_json(param_integral(f, spec.subject(), xi))}};
  r.verdict = "converged";
  return r;
}

std::string canonical_flags(const std::string& command, const Flags& flags) {
  OrderedJson j;
  j["command"] = command;
  if (flags.grid) j["grid"] = *flags.grid;
  if (flags.eps) j["eps"] = *flags.eps;
  if (flags.tol) j["tol"] = *flags.tol;
  if (flags.curve) j["curve"] = *flags.curve;
  if (flags.from) j["from"] = *flags.from;
  if (flags.to) j["to"] = *flags.to;
  return j.dump();
}

}  // namespace

ExitCode exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::nonconvergence:
    case ErrorKind::condition_violation:
    case ErrorKind::division_by_zero:
    case ErrorKind::insufficient_data:
      return ExitCode::failure;
    default:
      return ExitCode::input_error;
  }
}

OrderedJson Report::to_json() const {
  OrderedJson j;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  j["results"] = results;
  j["verdict"] = verdict;
  j["timing_ms"] = timing_ms;
  return j;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out = "x,re,im\n";
  char buf[96];
  for (const Row& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.x, r.value.real(), r.value.imag());
    out += buf;
  }
  return out;
}

Report run_command(const std::string& command, const Flags& flags) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  if (command == "verify-paper") {
    r = verify_paper();
  } else {
    const ProblemSpec spec = prepare(flags);
    if (command == "deriv") r = deriv(spec, flags);
    else if (command == "eval") r = eval(spec);
    else if (command == "residual") r = residual(spec, flags);
    else if (command == "variation") r = variation(spec);
    else if (command == "bracket") r = bracket_cmd(spec);
    else if (command == "isoperimetric") r = isoperimetric(spec, flags);
    else if (command == "solve-param") r = solve_param_cmd(spec);
    else throw Error(ErrorKind::invalid_argument, "unknown command '" + command + "'");
    r.inputs_digest = hex_digest(spec.source.dump() + "\n" + canonical_flags(command, flags));
  }
  r.command = command;
  r.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale-derivative calculus of variations toolkit", "scalevar"};
  app.require_subcommand(1);
  Flags flags;
  std::string format;
  std::vector<double> eps;

  const std::pair<const char*, const char*> commands[] = {
      {"deriv", "Scale derivative of a curve on a grid (CSV by default)"},
      {"eval", "Value of the functional"},
      {"residual", "Euler-Lagrange residual on a grid and its bracket"},
      {"variation", "First variation along the spec's variation curve"},
      {"bracket", "Bracket of the functional value as eps -> 0"},
      {"isoperimetric", "Lagrange multiplier for the constraint functional"},
      {"solve-param", "Solve for xi with vanishing parameter integral"},
      {"verify-paper", "Built-in checks of the reference examples"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (std::string_view(name) == "verify-paper") {
      sub->add_option("--out", flags.out_path, "Write the report to this file");
      continue;
    }
    sub->add_option("--spec", flags.spec_path, "Problem spec (JSON)");
    sub->add_option("--out", flags.out_path, "Write the report to this file");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--grid", flags.grid, "Number of grid points");
    sub->add_option("--eps", eps, "Comma-separated epsilons")->delimiter(',');
    sub->add_option("--tol", flags.tol, "Zero tolerance for verdicts");
    if (std::string_view(name) == "deriv") {
      sub->add_option("--curve", flags.curve, "Spec curve name or corpus kind");
      sub->add_option("--from", flags.from, "First abscissa");
      sub->add_option("--to", flags.to, "Last abscissa (inclusive)");
    }
  }

  std::string command = "(none)";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    OrderedJson j = {{"command", command}, {"error", {{"kind", "usage"}, {"message", e.what()}}}};
    out << j.dump(2) << "\n";
    return static_cast<int>(ExitCode::input_error);
  }
  command = app.get_subcommands().front()->get_name();
  if (!eps.empty()) flags.eps = eps;
  if (!format.empty()) {
    flags.format_given = true;
    flags.format = format == "csv" ? Format::csv : Format::json;
  } else if (command == "deriv") {
    flags.format = Format::csv;
  }

  try {
    const Report report = run_command(command, flags);
    std::string text;
    if (flags.format == Format::csv) {
      if (report.rows.empty()) invalid("--format", "csv is not available for '" + command + "'");
      text = to_csv(report.rows);
    } else {
      text = report.to_json().dump(2) + "\n";
    }
    if (flags.out_path) {
      std::ofstream file(*flags.out_path, std::ios::binary);
      if (!file) invalid("--out", "cannot write '" + *flags.out_path + "'");
      file << text;
    } else {
      out << text;
    }
    return static_cast<int>(report.exit);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    OrderedJson j = {{"command", command},
                     {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
    out << j.dump(2) << "\n";
    return static_cast<int>(exit_code_for(e.kind()));
  }
}

}  // namespace scalevar::cli
