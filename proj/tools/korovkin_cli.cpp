// Command-line front end.
//
// Subcommands:
//   sweep  -- evaluate the error/gamma ladder of the built-in family on a
//             list of (r,s) points and write a CSV
//   demo   -- print the built-in demonstration report
//   check  -- run the modulus bound check for a user expression f(x,y)
//
// Exit codes: 0 success, 1 usage or parse error, 2 numeric budget failure,
// 3 periodicity gate failure.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "korovkin/korovkin.hpp"

namespace {

std::vector<std::pair<double, double>> parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> pts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    if (!item.empty()) {
      const std::size_t comma = item.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("malformed point '" + item + "' (expected r,s)");
      double r = 0.0, s = 0.0;
      const char* b1 = item.data();
      const char* e1 = item.data() + comma;
      const char* b2 = item.data() + comma + 1;
      const char* e2 = item.data() + item.size();
      auto [p1, ec1] = std::from_chars(b1, e1, r);
      auto [p2, ec2] = std::from_chars(b2, e2, s);
      if (ec1 != std::errc() || p1 != e1 || ec2 != std::errc() || p2 != e2)
        throw std::invalid_argument("malformed point '" + item + "' (expected r,s)");
      pts.emplace_back(r, s);
    }
    pos = end + 1;
  }
  return pts;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-series summability and Korovkin-type convergence checks "
               "for 2pi-periodic functions of two variables"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an (r,s) sweep and write a CSV");
  std::string weights = "abel";
  std::string points_text;
  std::string out_path;
  std::string expr_text;
  int grid = 256;
  double tol = 1e-8;
  long long max_terms = korovkin::kDefaultTermBudget;
  bool serial = false;
  int gate_samples = 4096;
  sweep->add_option("--weights", weights, "weight family: abel | log")
      ->check(CLI::IsMember({"abel", "log"}));
  sweep->add_option("--points", points_text, "semicolon-separated list r1,s1;r2,s2;...");
  sweep->add_option("--grid", grid, "grid resolution per axis (multiple of 4)");
  sweep->add_option("--tol", tol, "transform tolerance");
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--max-terms", max_terms, "series term budget");
  sweep->add_flag("--serial", serial, "bitwise-reproducible serial mode (the default)");

  // demo
  auto* demo = app.add_subcommand("demo", "print the demonstration report");

  // check
  auto* check = app.add_subcommand("check", "modulus bound check for an expression f(x,y)");
  std::string check_points = "0.9,0.9";
  int check_grid = 128;
  double check_tol = 1e-8;
  check->add_option("--f", expr_text, "2pi-periodic expression in x and y")->required();
  check->add_option("--weights", weights, "weight family: abel | log")
      ->check(CLI::IsMember({"abel", "log"}));
  check->add_option("--points", check_points, "semicolon-separated list r1,s1;...");
  check->add_option("--grid", check_grid, "grid resolution per axis (multiple of 4)");
  check->add_option("--tol", check_tol, "transform tolerance");
  check->add_option("--gate-samples", gate_samples, "periodicity gate sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) {
      korovkin::SweepSpec spec;
      spec.weights = weights;
      spec.points = parse_points(points_text);
      spec.grid = grid;
      spec.tol = tol;
      spec.term_budget = max_terms;
      spec.out_path = out_path;
      spec.serial = true;
      korovkin::run_sweep(spec);
      return 0;
    }

    if (demo->parsed()) {
      std::cout << korovkin::run_demo_report();
      return 0;
    }

    if (check->parsed()) {
      korovkin::Expr e;
      try {
        e = korovkin::parse_expr(expr_text);
      } catch (const korovkin::ExprParseError& pe) {
        std::cerr << "expression error " << pe.what() << "\n";
        return 1;
      }
      const korovkin::PeriodicityReport rep = korovkin::periodicity_gate(e, gate_samples);
      if (!rep.pass) {
        std::cerr << "periodicity gate failed: defect " << rep.worst_defect
                  << " along " << rep.axis << " at (" << rep.x << ", " << rep.y
                  << "); f must be 2pi-periodic in both variables\n";
        return 3;
      }
      const korovkin::WeightFamily w = korovkin::weights_by_name(weights);
      const korovkin::Grid2D g(check_grid, check_grid);
      korovkin::Fn2D f = korovkin::to_fn2d(e);
      f.claimed_bound = korovkin::sup_norm(f, g);
      const korovkin::OperatorFamily L = korovkin::parity_poisson_family();
      for (const auto& [r, s] : parse_points(check_points)) {
        const korovkin::MethodPoint pt(r, s);
        const korovkin::BoundCheck bc =
            korovkin::modulus_bound_check(f, L, w, pt, g, check_tol);
        std::printf("r=%g s=%g  lhs=%.12g  rhs=%.12g  holds=%s\n", r, s, bc.lhs,
                    bc.rhs, bc.holds ? "yes" : "no");
      }
      return 0;
    }
  } catch (const korovkin::BudgetError& e) {
    std::cerr << "numeric budget failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
