#include "cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "selfsim/errors.hpp"
#include "selfsim/hypergeom.hpp"
#include "selfsim/residual.hpp"
#include "selfsim/series.hpp"
#include "selfsim/similarity.hpp"

namespace selfsim::cli {

using Json = nlohmann::ordered_json;

namespace {

/// Raised for malformed or out-of-range command-line input; maps to exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RawOptions {
  std::string kind;
  std::optional<unsigned> p, q, index;
  std::string alpha = "0", beta = "0";
  std::size_t order = 30;
  std::string tol = "1e-12";
  std::string x0 = "0.5", x1 = "2", y0 = "0.5", y1 = "2";
  unsigned nx = 4, ny = 4;
  std::string format;
  bool numeric = false;
  bool inject_fault = false;
  std::string from;
  std::string step = "1e-3";
  std::string b;
  std::string z;
};

EquationKind parse_kind(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (text.starts_with("eq")) text.erase(0, 2);
  if (text == "1") return EquationKind::eq1;
  if (text == "2") return EquationKind::eq2;
  if (text == "3") return EquationKind::eq3;
  if (text == "4") return EquationKind::eq4;
  throw UsageError("kind must be 1..4");
}

Rational rational_arg(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

Real positive_real_arg(const std::string& name, const std::string& text) {
  const Rational value = rational_arg(name, text);
  if (value <= 0) throw UsageError("--" + name + " must be positive");
  return to_real(value);
}

void add_spec_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--kind", raw.kind, "Equation kind 1..4");
  sub->add_option("--p", raw.p, "Order in x");
  sub->add_option("--q", raw.q, "Order in y");
  sub->add_option("--alpha", raw.alpha, "Power of x, rational or decimal");
  sub->add_option("--beta", raw.beta, "Power of y, rational or decimal");
}

void add_index_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--i", raw.index, "Solution index (default: all)");
  sub->add_option("--N", raw.order, "Truncation order");
}

RunConfig to_config(Command command, const RawOptions& raw) {
  RunConfig config;
  config.command = command;
  if (!raw.from.empty()) config.from_file = raw.from;
  if (!config.from_file) {
    if (raw.kind.empty() || !raw.p || !raw.q) throw UsageError("--kind, --p and --q are required");
  }
  if (!raw.kind.empty()) config.spec.kind = parse_kind(raw.kind);
  if (raw.p) config.spec.p = *raw.p;
  if (raw.q) config.spec.q = *raw.q;
  config.spec.alpha = rational_arg("alpha", raw.alpha);
  config.spec.beta = rational_arg("beta", raw.beta);
  config.index = raw.index;
  config.order = raw.order;
  config.tol = positive_real_arg("tol", raw.tol);

  config.grid.x0 = positive_real_arg("x0", raw.x0);
  config.grid.x1 = positive_real_arg("x1", raw.x1);
  config.grid.y0 = positive_real_arg("y0", raw.y0);
  config.grid.y1 = positive_real_arg("y1", raw.y1);
  if (raw.nx == 0 || raw.ny == 0) throw UsageError("--nx and --ny must be at least 1");
  config.grid.nx = raw.nx;
  config.grid.ny = raw.ny;

  if (raw.format == "json") config.format = OutputFormat::json;
  else if (raw.format == "csv") config.format = OutputFormat::csv;
  else if (!raw.format.empty()) throw UsageError("--format must be json or csv");

  config.numeric = raw.numeric;
  config.inject_fault = raw.inject_fault;
  config.step = positive_real_arg("step", raw.step);
  if (!raw.b.empty()) config.b_override = rational_arg("b", raw.b);
  if (!raw.z.empty()) config.z = to_real(rational_arg("z", raw.z));
  return config;
}

double as_double(const Real& value) { return static_cast<double>(value); }

Json equation_json(const EquationSpec& spec) {
  return Json{{"kind", static_cast<int>(spec.kind)},
              {"p", spec.p},
              {"q", spec.q},
              {"alpha", to_string(spec.alpha)},
              {"beta", to_string(spec.beta)}};
}

EquationSpec equation_from_json(const Json& j) {
  EquationSpec spec;
  const int kind = j.at("kind").get<int>();
  if (kind < 1 || kind > 4) throw UsageError("kind must be 1..4");
  spec.kind = static_cast<EquationKind>(kind);
  spec.p = j.at("p").get<unsigned>();
  spec.q = j.at("q").get<unsigned>();
  spec.alpha = parse_rational(j.at("alpha").get<std::string>());
  spec.beta = parse_rational(j.at("beta").get<std::string>());
  return spec;
}

Json monomial_json(const MonomialTerm& term) {
  return Json{{"coef", to_string(term.coef)}, {"ex", to_string(term.ex)}, {"ey", to_string(term.ey)}};
}

Json pfq_json(const HypergeomSpec& h) {
  Json num = Json::array(), den = Json::array();
  for (const auto& v : h.num_params) num.push_back(to_string(v));
  for (const auto& v : h.den_params) den.push_back(to_string(v));
  return Json{{"num", num}, {"den", den}, {"scale", to_string(h.scale)}, {"factorial", h.factorial}};
}

std::vector<unsigned> indices(const RunConfig& config, unsigned p) {
  if (config.index) {
    if (*config.index >= p)
      throw UsageError("--i must lie in 0.." + std::to_string(p - 1));
    return {*config.index};
  }
  std::vector<unsigned> all(p);
  for (unsigned i = 0; i < p; ++i) all[i] = i;
  return all;
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

void require_json(const RunConfig& config) {
  if (config.format && *config.format != OutputFormat::json)
    throw UsageError("this command only writes json");
}

std::vector<Real> axis(const Real& lo, const Real& hi, unsigned count) {
  std::vector<Real> values;
  values.reserve(count);
  for (unsigned k = 0; k < count; ++k)
    values.push_back(count == 1 ? lo : Real(lo + (hi - lo) * k / (count - 1)));
  return values;
}

/// Solutions read back from a coefficient document written by `coeffs`.
std::vector<SeriesSolution> solutions_from_file(const std::string& path, EquationSpec& spec) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
    spec = equation_from_json(doc.at("equation"));
    const SimilarityParams params = derive_params(spec);
    std::vector<SeriesSolution> out;
    for (const auto& entry : doc.at("solutions")) {
      SeriesSolution sol;
      sol.spec = spec;
      sol.params = params;
      sol.index = entry.at("i").get<unsigned>();
      if (sol.index >= spec.p) throw UsageError("solution index out of range in '" + path + "'");
      for (const auto& c : entry.at("coeffs")) sol.coeffs.push_back(parse_rational(c.get<std::string>()));
      if (sol.coeffs.empty()) throw UsageError("empty coefficient list in '" + path + "'");
      out.push_back(std::move(sol));
    }
    return out;
  } catch (const Json::exception& e) {
    throw UsageError("malformed coefficient file '" + path + "': " + e.what());
  }
}

std::vector<Point> numeric_points() {
  std::vector<Point> points;
  for (const char* y : {"0.75", "1.25"})
    for (const char* x : {"0.75", "1.25"}) points.emplace_back(Real(x), Real(y));
  return points;
}

}  // namespace

int cmd_params(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_json(config);
  const SimilarityParams params = derive_params(config.spec);

  Json gammas = Json::array(), gammas_dec = Json::array();
  for (const auto& g : params.gammas) {
    gammas.push_back(to_string(g));
    gammas_dec.push_back(as_double(to_real(g)));
  }
  const auto printed = tabulated_b(config.spec);
  Json doc{{"equation", equation_json(config.spec)},
           {"a", to_string(params.a)},
           {"b", to_string(params.b)},
           {"c", to_string(params.c)},
           {"gammas", gammas},
           {"K", to_string(params.scale)},
           {"decimal",
            {{"a", as_double(to_real(params.a))},
             {"b", as_double(to_real(params.b))},
             {"c", as_double(to_real(params.c))},
             {"gammas", gammas_dec},
             {"K", as_double(to_real(params.scale))}}},
           {"b_tabulated", printed ? Json(to_string(*printed)) : Json(nullptr)},
           {"b_printed_in_paper_differs", tabulated_b_differs(config.spec)}};
  emit_json(out, doc);
  return kExitOk;
}

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream&) {
  const SimilarityParams params = derive_params(config.spec);
  const auto which = indices(config, config.spec.p);
  std::vector<std::pair<unsigned, std::vector<Rational>>> rows;
  for (unsigned i : which) rows.emplace_back(i, coeff_sequence(config.spec, params, i, config.order));

  if (config.format.value_or(OutputFormat::json) == OutputFormat::csv) {
    out << "i,n,coef\n";
    for (const auto& [i, coeffs] : rows)
      for (std::size_t n = 0; n < coeffs.size(); ++n) out << i << ',' << n << ',' << to_string(coeffs[n]) << '\n';
    return kExitOk;
  }
  Json solutions = Json::array();
  for (const auto& [i, coeffs] : rows) {
    Json list = Json::array();
    for (const auto& c : coeffs) list.push_back(to_string(c));
    solutions.push_back(Json{{"i", i}, {"gamma", to_string(params.gammas[i])}, {"coeffs", list}});
  }
  emit_json(out, Json{{"equation", equation_json(config.spec)}, {"N", config.order}, {"solutions", solutions}});
  return kExitOk;
}

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SimilarityParams params = derive_params(config.spec);
  const auto which = indices(config, config.spec.p);

  struct Column {
    unsigned index;
    std::optional<SeriesSolution> sol;
  };
  std::vector<Column> columns;
  for (unsigned i : which) {
    Column col{i, std::nullopt};
    try {
      build_pfq(config.spec, params, i);
      col.sol = SeriesSolution{config.spec, params, i, {Rational(1)}};
    } catch (const std::exception& e) {
      err << "warning: u" << i << " unavailable: " << e.what() << '\n';
    }
    columns.push_back(std::move(col));
  }

  const auto xs = axis(config.grid.x0, config.grid.x1, config.grid.nx);
  const auto ys = axis(config.grid.y0, config.grid.y1, config.grid.ny);
  const bool csv = config.format.value_or(OutputFormat::csv) == OutputFormat::csv;

  Json rows = Json::array();
  if (csv) {
    out << "x,y";
    for (const auto& col : columns) out << ",u" << col.index;
    out << '\n';
  }
  for (const auto& y : ys) {
    for (const auto& x : xs) {
      std::vector<std::optional<Real>> values;
      for (const auto& col : columns) {
        if (!col.sol) {
          values.emplace_back();
          continue;
        }
        try {
          values.emplace_back(eval_solution(*col.sol, x, y, config.tol));
        } catch (const std::exception& e) {
          err << "warning: u" << col.index << " at (" << to_decimal_string(x) << ", "
              << to_decimal_string(y) << "): " << e.what() << '\n';
          values.emplace_back();
        }
      }
      if (csv) {
        out << to_decimal_string(x) << ',' << to_decimal_string(y);
        for (const auto& v : values) out << ',' << (v ? to_decimal_string(*v) : std::string("nan"));
        out << '\n';
      } else {
        Json row{{"x", as_double(x)}, {"y", as_double(y)}};
        for (std::size_t k = 0; k < columns.size(); ++k)
          row["u" + std::to_string(columns[k].index)] = values[k] ? Json(as_double(*values[k])) : Json(nullptr);
        rows.push_back(std::move(row));
      }
    }
  }
  if (!csv) emit_json(out, Json{{"equation", equation_json(config.spec)}, {"rows", rows}});
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_json(config);
  EquationSpec spec = config.spec;
  std::vector<SeriesSolution> sols;
  if (config.from_file) {
    sols = solutions_from_file(*config.from_file, spec);
    if (config.index)
      std::erase_if(sols, [&](const SeriesSolution& s) { return s.index != *config.index; });
  } else {
    derive_params(spec);
    for (unsigned i : indices(config, spec.p)) sols.push_back(make_solution(spec, i, config.order));
  }
  if (config.inject_fault) {
    for (auto& sol : sols) {
      if (sol.coeffs.size() < 2) throw UsageError("--inject-fault needs N >= 1");
      sol.coeffs[1] += 1;
    }
  }

  bool all_ok = true;
  Json reports = Json::array();
  const auto points = numeric_points();
  for (const auto& sol : sols) {
    const ResidualReport report = residual_series(sol);
    all_ok = all_ok && report.interior_ok;
    Json entry{{"i", sol.index},
               {"N", sol.order()},
               {"interior_ok", report.interior_ok},
               {"trailing", monomial_json(report.trailing)},
               {"trailing_predicted", monomial_json(predicted_trailing(sol))},
               {"max_interior_coeff", to_string(report.max_interior_coeff)},
               {"message", report.message}};
    if (report.first_failure)
      entry["first_failure"] = Json{{"slot", report.first_failure->slot},
                                    {"entry", monomial_json(report.first_failure->entry)}};
    if (config.numeric) {
      const NumericResidual numeric = residual_numeric(sol, points, config.step);
      for (const auto& d : numeric.diagnostics) err << "warning: u" << sol.index << ": " << d << '\n';
      entry["numeric"] = Json{{"h", as_double(config.step)},
                              {"max_relative", as_double(numeric.max_relative)},
                              {"diagnostics", numeric.diagnostics}};
    }
    reports.push_back(std::move(entry));
  }
  emit_json(out, Json{{"equation", equation_json(spec)},
                      {"inject_fault", config.inject_fault},
                      {"ok", all_ok},
                      {"reports", reports}});
  return all_ok ? kExitOk : kExitFailure;
}

int cmd_independence(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_json(config);
  derive_params(config.spec);
  const Rational b = config.b_override.value_or(derive_b(config.spec));
  const IndependenceReport report = independence_check(config.spec, b);
  Json pairs = Json::array();
  for (const auto& [i, s] : report.violating_pairs) pairs.push_back(Json{{"i", i}, {"s", s}});
  emit_json(out, Json{{"equation", equation_json(config.spec)},
                      {"b", to_string(b)},
                      {"ok", report.ok},
                      {"alpha_integral_violation", report.alpha_integral_violation},
                      {"violating_pairs", pairs}});
  return report.ok ? kExitOk : kExitFailure;
}

int cmd_pfq(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_json(config);
  const SimilarityParams params = derive_params(config.spec);
  bool all_ok = true;
  Json solutions = Json::array();
  for (unsigned i : indices(config, config.spec.p)) {
    Json entry{{"i", i}};
    try {
      const HypergeomSpec raw = build_pfq(config.spec, params, i);
      const HypergeomSpec reduced = reduce_params(raw);
      entry["raw"] = pfq_json(raw);
      entry["reduced"] = pfq_json(reduced);
      entry["cancelled_pairs"] = cancelled_pairs(raw, reduced);
      if (config.z) {
        const EvalResult r = eval_pfq(reduced, *config.z, config.tol);
        entry["value"] = Json{{"z", as_double(*config.z)},
                              {"value", to_decimal_string(r.value)},
                              {"terms_used", r.terms_used},
                              {"bound_on_tail", as_double(r.bound_on_tail)},
                              {"terminated", r.terminated}};
      }
    } catch (const std::exception& e) {
      all_ok = false;
      entry["error"] = e.what();
    }
    solutions.push_back(std::move(entry));
  }
  emit_json(out, Json{{"equation", equation_json(config.spec)}, {"solutions", solutions}});
  return all_ok ? kExitOk : kExitFailure;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-similar series solutions of degenerate two-variable linear PDEs", "selfsim"};
  app.require_subcommand(1);
  RawOptions raw;

  auto* params = app.add_subcommand("params", "Similarity parameters a, b, c, gammas, K");
  auto* coeffs = app.add_subcommand("coeffs", "Exact series coefficients c_0..c_N");
  auto* eval = app.add_subcommand("eval", "Evaluate u_i on a grid");
  auto* verify = app.add_subcommand("verify", "Check the residual of truncated series");
  auto* independence = app.add_subcommand("independence", "Linear-independence conditions");
  auto* pfq = app.add_subcommand("pfq", "Hypergeometric parameters, optionally evaluated");

  for (auto* sub : {params, coeffs, eval, verify, independence, pfq}) add_spec_options(sub, raw);
  for (auto* sub : {coeffs, eval, verify, pfq}) add_index_options(sub, raw);
  for (auto* sub : {coeffs, eval}) sub->add_option("--format", raw.format, "json or csv");
  for (auto* sub : {eval, pfq}) sub->add_option("--tol", raw.tol, "Relative tolerance");

  eval->add_option("--x0", raw.x0);
  eval->add_option("--x1", raw.x1);
  eval->add_option("--nx", raw.nx);
  eval->add_option("--y0", raw.y0);
  eval->add_option("--y1", raw.y1);
  eval->add_option("--ny", raw.ny);

  verify->add_flag("--numeric", raw.numeric, "Also check a finite-difference residual");
  verify->add_flag("--inject-fault", raw.inject_fault, "Corrupt c_1 before checking");
  verify->add_option("--from", raw.from, "Coefficient JSON written by `coeffs`");
  verify->add_option("--step", raw.step, "Finite-difference step");

  independence->add_option("--b", raw.b, "Override the exponent b");
  pfq->add_option("--z", raw.z, "Evaluate the reduced series at z");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const std::pair<CLI::App*, Command> table[] = {
      {params, Command::params}, {coeffs, Command::coeffs},
      {eval, Command::eval},     {verify, Command::verify},
      {independence, Command::independence}, {pfq, Command::pfq}};
  Command command = Command::params;
  for (const auto& [sub, cmd] : table)
    if (sub->parsed()) command = cmd;

  try {
    const RunConfig config = to_config(command, raw);
    switch (command) {
      case Command::params: return cmd_params(config, out, err);
      case Command::coeffs: return cmd_coeffs(config, out, err);
      case Command::eval: return cmd_eval(config, out, err);
      case Command::verify: return cmd_verify(config, out, err);
      case Command::independence: return cmd_independence(config, out, err);
      case Command::pfq: return cmd_pfq(config, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidSpec& e) {
    err << "error: invalid equation: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DegenerateEquation& e) {
    err << "error: degenerate equation: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ZeroPivot& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace selfsim::cli
