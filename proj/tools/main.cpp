// fraclane: solve, evaluate, verify and compare truncated fractional
// power-series solutions of Lane-Emden-type equations.
//
// Exit codes: 0 success, 2 invalid input (flags, DSL, spec files, grids),
// 3 numerical failure (coefficient overflow, singular recurrence factor).

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fraclane/catalog.hpp"
#include "fraclane/equation.hpp"
#include "fraclane/series.hpp"
#include "fraclane/solver.hpp"

namespace {

using nlohmann::json;
using namespace fraclane;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Options shared by solve/eval/residual; compare has its own reduced set.
struct InputOptions {
  std::string eq;
  std::string spec_path;
  int example = 0;
  int n = 0;
  std::string sign = "minus";
  double alpha = 1.0;
  double y0 = 1.0;
  double dy0 = 0.0;
  int terms = 30;

  CLI::Option* eq_opt = nullptr;
  CLI::Option* spec_opt = nullptr;
  CLI::Option* example_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* sign_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* y0_opt = nullptr;
  CLI::Option* dy0_opt = nullptr;
};

void add_equation_options(CLI::App* cmd, InputOptions& in) {
  in.eq_opt = cmd->add_option("--eq", in.eq, "Equation in the DSL, e.g. "
                              "\"D2y + (2/x)*Dy + y = 0\"");
  in.spec_opt =
      cmd->add_option("--spec", in.spec_path, "Path to an equation spec JSON");
  in.example_opt =
      cmd->add_option("--example", in.example, "Catalog example id (1..7)");
  in.n_opt = cmd->add_option("--n", in.n,
                             "Exponent variant for examples 2 and 4");
  in.sign_opt = cmd->add_option("--sign", in.sign,
                                "Source sign for example 4: minus|plus");
  in.alpha_opt = cmd->add_option("--alpha", in.alpha,
                                 "Fractional order, 0 < alpha <= 1");
  in.y0_opt = cmd->add_option("--y0", in.y0, "Initial value y(0)");
  in.dy0_opt = cmd->add_option("--dy0", in.dy0,
                               "Initial fractional derivative (Dy)(0)");
  cmd->add_option("--terms", in.terms, "Truncation order M")
      ->check(CLI::PositiveNumber);
}

SourceSign parse_sign(const std::string& sign) {
  if (sign == "minus") return SourceSign::minus;
  if (sign == "plus") return SourceSign::plus;
  throw UsageError("--sign must be 'minus' or 'plus'");
}

json read_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  json j;
  try {
    file >> j;
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return j;
}

// Resolves exactly one of --eq/--spec/--example into a validated spec.
// Returns the example id (0 when the input was not an example).
int resolve_spec(const InputOptions& in, EquationSpec& spec) {
  int sources = (in.eq_opt->count() > 0) + (in.spec_opt->count() > 0) +
                (in.example_opt->count() > 0);
  if (sources != 1) {
    throw UsageError("exactly one of --eq, --spec or --example is required");
  }
  int example_id = 0;
  if (in.eq_opt->count() > 0) {
    spec = parse_equation(in.eq, in.alpha, in.y0, in.dy0);
  } else if (in.spec_opt->count() > 0) {
    spec = spec_from_json(read_json_file(in.spec_path));
    if (in.alpha_opt->count() > 0) spec.alpha = in.alpha;
    if (in.y0_opt->count() > 0) spec.y0 = in.y0;
    if (in.dy0_opt->count() > 0) spec.dy0 = in.dy0;
  } else {
    example_id = in.example;
    if (in.y0_opt->count() > 0 || in.dy0_opt->count() > 0) {
      throw UsageError("--y0/--dy0 are fixed by the example");
    }
    if (in.sign_opt->count() > 0 && example_id != 4) {
      throw UsageError("--sign only applies to example 4");
    }
    std::optional<int> n;
    if (in.n_opt->count() > 0) n = in.n;
    spec = example_spec(example_id, in.alpha, n, parse_sign(in.sign));
  }
  if (auto violations = validate(spec); !violations.empty()) {
    std::string msg = "invalid equation spec:";
    for (const std::string& v : violations) msg += "\n  - " + v;
    throw UsageError(msg);
  }
  return example_id;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + out_path);
  file << text;
}

json solution_to_json(const SeriesSolution& sol, double residual_max,
                      const std::vector<std::string>& errata) {
  return json{{"alpha", sol.spec.alpha},
              {"M", sol.series.order()},
              {"coefficients", sol.series.coeffs()},
              {"spec", spec_to_json(sol.spec)},
              {"residual_max", residual_max},
              {"errata", errata}};
}

struct Grid {
  double start = 0.0;
  double end = 0.0;
  double step = 1.0;

  std::vector<double> points() const {
    int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs.push_back(start + i * step);
    return xs;
  }
};

Grid parse_grid(const std::string& text) {
  Grid g;
  std::istringstream stream(text);
  std::string part;
  std::vector<double> vals;
  while (std::getline(stream, part, ':')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("malformed grid component '" + part + "'");
    }
  }
  if (vals.size() != 3) throw UsageError("grid must be start:end:step");
  g.start = vals[0];
  g.end = vals[1];
  g.step = vals[2];
  if (!std::isfinite(g.start) || !std::isfinite(g.end) ||
      !std::isfinite(g.step)) {
    throw UsageError("grid values must be finite");
  }
  if (g.start < 0.0) throw UsageError("grid starts at x < 0");
  if (g.step <= 0.0) throw UsageError("grid step must be positive");
  if (g.end < g.start) throw UsageError("grid end precedes start");
  return g;
}

const std::vector<std::string>& errata_for(int example_id) {
  static const std::vector<std::string> none;
  return example_id > 0 ? example_errata(example_id) : none;
}

// --- solve ---------------------------------------------------------------

struct SolveCmd {
  InputOptions in;
  std::string out_path;
  std::string format = "json";
};

int run_solve(const SolveCmd& cmd) {
  EquationSpec spec;
  int example_id = resolve_spec(cmd.in, spec);
  SeriesSolution sol = solve(spec, cmd.in.terms);
  double residual_max = residual(sol).max_abs;
  std::string text;
  if (cmd.format == "json") {
    text = solution_to_json(sol, residual_max, errata_for(example_id)).dump(2);
    text += '\n';
  } else {
    std::ostringstream csv;
    csv << "m,coefficient\n";
    for (int m = 0; m <= sol.series.order(); ++m) {
      csv << m << ',' << format_double(sol.series.coeffs()[m]) << '\n';
    }
    text = csv.str();
  }
  write_output(text, cmd.out_path);
  return 0;
}

// --- eval ----------------------------------------------------------------

struct EvalCmd {
  InputOptions in;
  std::string solution_path;
  std::string grid_text;
  std::string out_path;
  std::string format = "csv";

  CLI::Option* solution_opt = nullptr;
};

int run_eval(const EvalCmd& cmd) {
  std::optional<FracSeries> series;
  if (cmd.solution_opt->count() > 0) {
    json j = read_json_file(cmd.solution_path);
    if (!j.contains("alpha") || !j.contains("coefficients")) {
      throw UsageError(cmd.solution_path +
                       ": solution file needs \"alpha\" and \"coefficients\"");
    }
    series.emplace(j.at("alpha").get<double>(),
                   j.at("coefficients").get<std::vector<double>>());
  } else {
    EquationSpec spec;
    resolve_spec(cmd.in, spec);
    series.emplace(solve(spec, cmd.in.terms).series);
  }
  Grid grid = parse_grid(cmd.grid_text);
  std::vector<double> xs = grid.points();
  std::string text;
  if (cmd.format == "csv") {
    std::ostringstream csv;
    csv << "x,y\n";
    for (double x : xs) {
      csv << format_double(x) << ',' << format_double(series->evaluate(x))
          << '\n';
    }
    text = csv.str();
  } else {
    json rows = json::array();
    json ys = json::array();
    for (double x : xs) {
      rows.push_back(x);
      ys.push_back(series->evaluate(x));
    }
    text = json{{"x", rows}, {"y", ys}}.dump(2) + '\n';
  }
  write_output(text, cmd.out_path);
  return 0;
}

// --- residual ------------------------------------------------------------

struct ResidualCmd {
  InputOptions in;
  std::string solution_path;
  std::string out_path;
  std::string format = "json";

  CLI::Option* solution_opt = nullptr;
};

int run_residual(const ResidualCmd& cmd) {
  SeriesSolution sol{EquationSpec{}, FracSeries(1.0, {}), {}};
  if (cmd.solution_opt->count() > 0) {
    json j = read_json_file(cmd.solution_path);
    if (!j.contains("alpha") || !j.contains("coefficients") ||
        !j.contains("spec")) {
      throw UsageError(cmd.solution_path +
                       ": solution file needs \"alpha\", \"coefficients\" "
                       "and \"spec\"");
    }
    EquationSpec spec = spec_from_json(j.at("spec"));
    sol = SeriesSolution{
        spec,
        FracSeries(j.at("alpha").get<double>(),
                   j.at("coefficients").get<std::vector<double>>()),
        {}};
  } else {
    EquationSpec spec;
    resolve_spec(cmd.in, spec);
    sol = solve(spec, cmd.in.terms);
  }
  ResidualReport report = residual(sol);
  std::string text;
  if (cmd.format == "json") {
    text = json{{"alpha", sol.spec.alpha},
                {"M", sol.series.order()},
                {"orders", report.orders},
                {"residual", report.residual},
                {"max_abs", report.max_abs},
                {"scale", report.scale}}
               .dump(2);
    text += '\n';
  } else {
    std::ostringstream csv;
    csv << "order,residual\n";
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
      csv << report.orders[i] << ',' << format_double(report.residual[i])
          << '\n';
    }
    text = csv.str();
  }
  write_output(text, cmd.out_path);
  return 0;
}

// --- compare -------------------------------------------------------------

struct CompareCmd {
  int example = 0;
  int n = 0;
  std::string sign = "minus";
  double alpha = 1.0;
  int terms = 30;
  double xmax = 1.0;
  bool force_classical = false;
  std::string out_path;
  std::string format = "json";

  CLI::Option* n_opt = nullptr;
  CLI::Option* sign_opt = nullptr;
};

int run_compare(const CompareCmd& cmd) {
  if (cmd.sign_opt->count() > 0 && cmd.example != 4) {
    throw UsageError("--sign only applies to example 4");
  }
  std::optional<int> n;
  if (cmd.n_opt->count() > 0) n = cmd.n;
  SourceSign sign = parse_sign(cmd.sign);
  EquationSpec spec = example_spec(cmd.example, cmd.alpha, n, sign);
  SeriesSolution sol = solve(spec, cmd.terms);

  bool classical = cmd.alpha == 1.0;
  if (cmd.force_classical && !classical) {
    throw UsageError(
        "no classical reference exists at alpha < 1; drop --classical");
  }
  if (cmd.xmax <= 0.0 || !std::isfinite(cmd.xmax)) {
    throw UsageError("--xmax must be positive");
  }

  std::vector<double> xs;
  for (int i = 0; i <= 10; ++i) xs.push_back(cmd.xmax * i / 10.0);

  json out{{"example", cmd.example},
           {"alpha", cmd.alpha},
           {"M", sol.series.order()},
           {"xmax", cmd.xmax},
           {"coefficients", sol.series.coeffs()},
           {"errata", example_errata(cmd.example)}};
  if (n) out["n"] = *n;
  if (cmd.example == 4) out["sign"] = cmd.sign;

  std::ostringstream csv;
  if (classical) {
    // References registered as truncated series stop at a fixed order; the
    // pointwise comparison cuts the computed series to the same order so the
    // difference reflects coefficient agreement, not reference truncation.
    const CatalogEntry& entry = catalog_entry(cmd.example);
    FracSeries row_series = sol.series;
    if (entry.truncated_reference && entry.reference_order >= 0 &&
        sol.series.order() > entry.reference_order) {
      std::vector<double> cut(sol.series.coeffs().begin(),
                              sol.series.coeffs().begin() +
                                  entry.reference_order + 1);
      row_series = FracSeries(sol.series.alpha(), std::move(cut));
    }
    double max_diff = 0.0;
    json rows = json::array();
    csv << "x,series,classical,abs_diff\n";
    for (double x : xs) {
      double ys = row_series.evaluate(x);
      double yc = classical_reference(cmd.example, x, n, sign);
      double diff = std::abs(ys - yc);
      max_diff = std::max(max_diff, diff);
      rows.push_back(json{
          {"x", x}, {"series", ys}, {"classical", yc}, {"abs_diff", diff}});
      csv << format_double(x) << ',' << format_double(ys) << ','
          << format_double(yc) << ',' << format_double(diff) << '\n';
    }
    out["rows"] = rows;
    out["max_abs_diff"] = max_diff;
  } else {
    json rows = json::array();
    csv << "x,series\n";
    for (double x : xs) {
      double ys = sol.series.evaluate(x);
      rows.push_back(json{{"x", x}, {"series", ys}});
      csv << format_double(x) << ',' << format_double(ys) << '\n';
    }
    out["rows"] = rows;
    out["residual_max"] = residual(sol).max_abs;
  }

  std::string text =
      (cmd.format == "json") ? out.dump(2) + "\n" : csv.str();
  write_output(text, cmd.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fraclane: truncated fractional power-series solutions of "
      "Lane-Emden-type equations"};
  app.require_subcommand(1);

  SolveCmd solve_cmd;
  CLI::App* solve_app = app.add_subcommand(
      "solve", "Solve an equation and write the coefficient series");
  add_equation_options(solve_app, solve_cmd.in);
  solve_app->add_option("--out", solve_cmd.out_path, "Output path (stdout "
                        "when omitted)");
  solve_app->add_option("--format", solve_cmd.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  EvalCmd eval_cmd;
  CLI::App* eval_app = app.add_subcommand(
      "eval", "Evaluate a solution series on an x grid");
  add_equation_options(eval_app, eval_cmd.in);
  eval_cmd.solution_opt = eval_app->add_option(
      "--solution", eval_cmd.solution_path, "Solution JSON produced by solve");
  eval_app
      ->add_option("--grid", eval_cmd.grid_text, "start:end:step (x values)")
      ->required();
  eval_app->add_option("--out", eval_cmd.out_path, "Output path");
  eval_app->add_option("--format", eval_cmd.format, "csv|json")
      ->check(CLI::IsMember({"json", "csv"}));

  ResidualCmd residual_cmd;
  CLI::App* residual_app = app.add_subcommand(
      "residual", "Substitute a solution back and report the defect series");
  add_equation_options(residual_app, residual_cmd.in);
  residual_cmd.solution_opt =
      residual_app->add_option("--solution", residual_cmd.solution_path,
                               "Solution JSON produced by solve");
  residual_app->add_option("--out", residual_cmd.out_path, "Output path");
  residual_app->add_option("--format", residual_cmd.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CompareCmd compare_cmd;
  CLI::App* compare_app = app.add_subcommand(
      "compare", "Compare a catalog example against its classical reference");
  compare_app->add_option("--example", compare_cmd.example,
                          "Catalog example id (1..7)")
      ->required();
  compare_cmd.n_opt = compare_app->add_option(
      "--n", compare_cmd.n, "Exponent variant for examples 2 and 4");
  compare_cmd.sign_opt = compare_app->add_option(
      "--sign", compare_cmd.sign, "Source sign for example 4: minus|plus");
  compare_app->add_option("--alpha", compare_cmd.alpha, "Fractional order");
  compare_app->add_option("--terms", compare_cmd.terms, "Truncation order M")
      ->check(CLI::PositiveNumber);
  compare_app->add_option("--xmax", compare_cmd.xmax,
                          "Right end of the comparison window");
  compare_app->add_flag("--classical", compare_cmd.force_classical,
                        "Require the classical reference (errors at alpha < 1)");
  compare_app->add_option("--out", compare_cmd.out_path, "Output path");
  compare_app->add_option("--format", compare_cmd.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve_app) return run_solve(solve_cmd);
    if (*eval_app) return run_eval(eval_cmd);
    if (*residual_app) return run_residual(residual_cmd);
    return run_compare(compare_cmd);
  } catch (const SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
