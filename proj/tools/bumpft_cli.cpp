// bumpft: Fourier transforms of C-infinity bump functions, numeric vs saddle-point.

#include <bumpft/bumpft.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace {

using namespace bumpft;

// non-convergence is reported separately from bad input
struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitInvalid = 1;
constexpr int kExitNotConverged = 2;

struct ShapeArgs {
  double alpha = 2.0;
  double beta = 1.0;
  BumpParams params() const { return BumpParams::make(alpha, beta); }
};

void add_shape(CLI::App* cmd, ShapeArgs& shape) {
  cmd->add_option("--alpha", shape.alpha, "singularity order, > 1")->capture_default_str();
  cmd->add_option("--beta", shape.beta, "singularity strength, > 0")->capture_default_str();
}

const std::map<std::string, ExponentRule> kRules{{"nonvanishing", ExponentRule::nonvanishing},
                                                 {"exact", ExponentRule::exact}};

void print(double v) { std::cout << format_double(v) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier transform of generalized C-infinity bump functions: adaptive oscillatory "
               "quadrature versus closed-form saddle-point asymptotics"};
  app.require_subcommand(1);

  // eval
  ShapeArgs eval_shape;
  double eval_x = 0.0;
  auto* eval_cmd = app.add_subcommand("eval", "print f(x)");
  add_shape(eval_cmd, eval_shape);
  eval_cmd->add_option("--x", eval_x, "abscissa")->required();

  // ft
  ShapeArgs ft_shape;
  double ft_k = 0.0;
  std::string ft_method = "both";
  double ft_tol = 1e-12;
  ExponentRule ft_rule = ExponentRule::nonvanishing;
  auto* ft_cmd = app.add_subcommand("ft", "print F(k) numerically and/or asymptotically");
  add_shape(ft_cmd, ft_shape);
  ft_cmd->add_option("--k", ft_k, "frequency")->required();
  ft_cmd->add_option("--method", ft_method)->check(CLI::IsMember({"numeric", "asymptotic", "both"}))->capture_default_str();
  ft_cmd->add_option("--tol", ft_tol, "absolute quadrature tolerance")->capture_default_str();
  ft_cmd->add_option("--exponent", ft_rule, "exponent at the saddle")->transform(CLI::CheckedTransformer(kRules));

  // sweep
  ShapeArgs sweep_shape;
  double sweep_kmin = 0.5, sweep_kmax = 150.0;
  std::size_t sweep_points = 200;
  std::string sweep_spacing = "linear", sweep_format = "csv", sweep_out;
  double sweep_tol = 1e-12;
  ExponentRule sweep_rule = ExponentRule::nonvanishing;
  unsigned sweep_threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "numeric vs asymptotic F(k) over a k grid");
  add_shape(sweep_cmd, sweep_shape);
  sweep_cmd->add_option("--kmin", sweep_kmin)->capture_default_str();
  sweep_cmd->add_option("--kmax", sweep_kmax)->capture_default_str();
  sweep_cmd->add_option("--points", sweep_points)->capture_default_str();
  sweep_cmd->add_option("--spacing", sweep_spacing)->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  sweep_cmd->add_option("--tol", sweep_tol)->capture_default_str();
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->add_option("--exponent", sweep_rule)->transform(CLI::CheckedTransformer(kRules));
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads, 0 = all cores")->capture_default_str();

  // fit
  std::string fit_in, fit_use = "numeric";
  double fit_kmin = 20.0;
  bool fit_growth = false;
  auto* fit_cmd = app.add_subcommand("fit", "fit log|F| ~ log C - p log k - c sqrt(k) on envelope maxima");
  fit_cmd->add_option("--in", fit_in, "sweep CSV or JSON")->required();
  fit_cmd->add_option("--use", fit_use)->check(CLI::IsMember({"numeric", "asymptotic"}))->capture_default_str();
  fit_cmd->add_option("--kmin", fit_kmin, "ignore records below this k")->capture_default_str();
  fit_cmd->add_flag("--fit-growth", fit_growth, "also fit the power of k in the exponential term");

  // normalize
  ShapeArgs norm_shape;
  double norm_tol = 1e-12;
  auto* norm_cmd = app.add_subcommand("normalize", "print int_0^1 f(x) dx");
  add_shape(norm_cmd, norm_shape);
  norm_cmd->add_option("--tol", norm_tol)->capture_default_str();

  // saddle
  ShapeArgs saddle_shape;
  double saddle_k = 0.0;
  auto* saddle_cmd = app.add_subcommand("saddle", "print t0, g(t0), g''(t0) and A as JSON");
  add_shape(saddle_cmd, saddle_shape);
  saddle_cmd->add_option("--k", saddle_k)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval_cmd) {
      print(eval_bump(eval_shape.params(), eval_x));
    } else if (*ft_cmd) {
      const BumpParams params = ft_shape.params();
      if (ft_method != "asymptotic") {
        const QuadratureResult q = fourier_transform_numeric(params, ft_k, ft_tol);
        if (!q.converged) {
          throw ConvergenceFailure("quadrature did not converge: abs_error " + format_double(q.abs_error));
        }
        if (ft_method == "numeric") {
          print(q.value);
        } else {
          std::cout << "numeric " << format_double(q.value) << '\n'
                    << "numeric_abs_error " << format_double(q.abs_error) << '\n';
        }
      }
      if (ft_method != "numeric") {
        const double asym = asymptotic_ft(params, ft_k, ft_rule);
        if (ft_method == "asymptotic") {
          print(asym);
        } else {
          std::cout << "asymptotic " << format_double(asym) << '\n';
        }
      }
    } else if (*sweep_cmd) {
      SweepOptions options;
      options.spacing = sweep_spacing == "log" ? Spacing::log : Spacing::linear;
      options.tol = sweep_tol;
      options.rule = sweep_rule;
      options.threads = sweep_threads;
      std::vector<SweepRecord> records;
      try {
        records = run_sweep(sweep_shape.params(), sweep_kmin, sweep_kmax, sweep_points, options);
      } catch (const std::runtime_error& e) {
        throw ConvergenceFailure(e.what());
      }
      const Format format = sweep_format == "json" ? Format::json : Format::csv;
      if (sweep_out.empty()) {
        emit(records, format, std::cout);
      } else {
        emit(records, format, sweep_out);
      }
    } else if (*fit_cmd) {
      const auto records = read_records(fit_in);
      const FitBranch use = fit_use == "asymptotic" ? FitBranch::asymptotic : FitBranch::numeric;
      FitOptions options;
      options.k_min = fit_kmin;
      write_json(std::cout, fit_growth ? fit_decay_growth(records, use, options) : fit_decay(records, use, options));
    } else if (*norm_cmd) {
      try {
        print(normalization(norm_shape.params(), norm_tol));
      } catch (const std::runtime_error& e) {
        throw ConvergenceFailure(e.what());
      }
    } else if (*saddle_cmd) {
      write_json(std::cout, analyze_saddle(saddle_shape.params(), saddle_k));
    }
  } catch (const ConvergenceFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
