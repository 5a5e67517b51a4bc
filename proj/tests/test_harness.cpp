#include <bumpft/harness.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace bumpft;
using Catch::Approx;

namespace {

double max_envelope_rel_err(const std::vector<SweepRecord>& rows, double k_from) {
  double worst = 0.0;
  for (std::size_t i : envelope_indices(rows, FitBranch::numeric)) {
    if (rows[i].k >= k_from) worst = std::max(worst, rows[i].rel_err);
  }
  return worst;
}

// C k^(-p) exp(-c k^s) cos(k - sqrt k - 3pi/8) on a linear grid
std::vector<SweepRecord> synthetic(double k_min, double k_max, std::size_t n, double p, double c, double s,
                                   bool oscillate) {
  std::vector<SweepRecord> rows;
  for (double k : sweep_grid(k_min, k_max, n, Spacing::linear)) {
    SweepRecord r;
    r.k = k;
    r.f_asymptotic = kCanonicalEnvelopeConstant * std::pow(k, -p) * std::exp(-c * std::pow(k, s));
    if (oscillate) r.f_asymptotic *= std::cos(k - std::sqrt(k) - 3 * std::numbers::pi / 8);
    r.f_numeric = r.f_asymptotic;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep_grid", "[harness]") {
  const auto lin = sweep_grid(0.5, 150.0, 200, Spacing::linear);
  REQUIRE(lin.size() == 200);
  CHECK(lin.front() == 0.5);
  CHECK(lin.back() == 150.0);
  const auto lg = sweep_grid(10.0, 200.0, 50, Spacing::log);
  REQUIRE(lg.size() == 50);
  CHECK(lg.front() == 10.0);
  CHECK(lg.back() == 200.0);
  CHECK(lg[1] / lg[0] == Approx(lg[49] / lg[48]).epsilon(1e-12));
  for (std::size_t i = 1; i < lin.size(); ++i) CHECK(lin[i] > lin[i - 1]);

  CHECK_THROWS_AS(sweep_grid(0.0, 1.0, 5, Spacing::linear), std::invalid_argument);
  CHECK_THROWS_AS(sweep_grid(2.0, 1.0, 5, Spacing::linear), std::invalid_argument);
  CHECK_THROWS_AS(sweep_grid(1.0, 2.0, 1, Spacing::log), std::invalid_argument);
}

TEST_CASE("degenerate sweep at a single frequency", "[harness]") {
  const auto rows = run_sweep(BumpParams::canonical(), 10.0, 10.0, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.k == 10.0);
    CHECK(std::isfinite(r.f_numeric));
    CHECK(std::isfinite(r.f_asymptotic));
    CHECK(std::isfinite(r.rel_err));
  }
  CHECK(rows[0] == rows[1]);
}

TEST_CASE("sweep record invariants", "[harness]") {
  const auto rows = run_sweep(BumpParams::make(2.5, 1.5), 0.5, 60.0, 40);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i) CHECK(r.k > rows[i - 1].k);
    CHECK(r.abs_err == std::abs(r.f_numeric - r.f_asymptotic));
    CHECK(r.rel_err == r.abs_err / std::max(std::abs(r.f_numeric), kRelErrFloor));
    CHECK(r.quad_abs_error <= 1e-12);
    CHECK(r.n_evals > 0);
  }
}

TEST_CASE("sweeps are independent of the thread count", "[harness]") {
  SweepOptions one, many;
  one.threads = 1;
  many.threads = 7;
  const auto p = BumpParams::make(3.0, 1.0);
  CHECK(run_sweep(p, 1.0, 90.0, 53, one) == run_sweep(p, 1.0, 90.0, 53, many));
}

TEST_CASE("non-convergence aborts the sweep with a diagnostic", "[harness]") {
  SweepOptions options;
  options.tol = 1e-16;
  options.quadrature.max_panels = 2;
  try {
    run_sweep(BumpParams::canonical(), 5.0, 50.0, 10, options);
    FAIL("expected a convergence failure");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    CHECK(what.find("did not converge") != std::string::npos);
    CHECK(what.find("k = 5 ") != std::string::npos);
  }
  SweepOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(run_sweep(BumpParams::canonical(), 5.0, 50.0, 10, bad), std::invalid_argument);
}

TEST_CASE("canonical sweep matches within ten percent at envelope points", "[harness]") {
  const auto rows = run_sweep(BumpParams::canonical(), 4.0, 150.0, 200);
  CHECK(envelope_indices(rows, FitBranch::numeric).size() >= 20);
  CHECK(max_envelope_rel_err(rows, 4.0) < 0.10);
}

TEST_CASE("relative error trends down for alpha = 3", "[harness]") {
  SweepOptions options;
  options.spacing = Spacing::log;
  const auto rows = run_sweep(BumpParams::make(3.0, 1.0), 10.0, 200.0, 50, options);
  std::vector<double> k, err;
  for (const auto& r : rows) {
    k.push_back(r.k);
    err.push_back(r.rel_err);
  }
  CHECK(rank_correlation(k, err) < 0.0);
}

TEST_CASE("decay-law fit of the canonical transform", "[harness]") {
  const auto rows = run_sweep(BumpParams::canonical(), 20.0, 300.0, 600);
  const auto asym = fit_decay(rows, FitBranch::asymptotic);
  const auto num = fit_decay(rows, FitBranch::numeric);
  CHECK(asym.p_exponent == Approx(0.75).margin(0.02));
  CHECK(asym.c_root == Approx(1.0).margin(0.01));
  CHECK(num.p_exponent == Approx(asym.p_exponent).margin(0.05));
  CHECK(num.c_root == Approx(asym.c_root).margin(0.05));
}

TEST_CASE("fitted growth power for alpha = 3 is (alpha-1)/alpha", "[harness]") {
  const auto rows = run_sweep(BumpParams::make(3.0, 1.0), 10.0, 200.0, 600);
  FitOptions options;
  options.k_min = 10.0;
  for (FitBranch use : {FitBranch::asymptotic, FitBranch::numeric}) {
    CHECK(fit_decay_growth(rows, use, options).growth_power == Approx(2.0 / 3.0).margin(0.03));
  }
}

TEST_CASE("envelope_indices picks centered 5-point maxima", "[harness]") {
  const std::vector<double> v{0, 1, 5, 1, 0, -2, -7, -2, 0, 3, 4, 3, 9};
  CHECK(envelope_indices(v) == std::vector<std::size_t>{2, 6});
  CHECK(envelope_indices(std::vector<double>{1, 2, 3, 4}).empty());
  CHECK(envelope_indices(std::vector<double>(9, 0.0)).empty());
}

TEST_CASE("rank_correlation", "[harness]") {
  CHECK(rank_correlation({1, 2, 3, 4, 5}, {2, 4, 6, 8, 10}) == Approx(1.0));
  CHECK(rank_correlation({1, 2, 3, 4, 5}, {9, 7, 5, 3, 1}) == Approx(-1.0));
  // ranks (1, 2.5, 2.5, 4) vs (1, 2, 3, 4)
  CHECK(rank_correlation({1, 2, 2, 3}, {1, 2, 3, 4}) == Approx(0.9486832980505138));
  CHECK(rank_correlation({1, 1, 1}, {1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(rank_correlation({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(rank_correlation({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("fitter recovers an exact envelope", "[harness]") {
  FitOptions options;
  options.envelope = EnvelopeMode::all_points;
  const auto fit = fit_decay(synthetic(20.0, 300.0, 600, 0.75, 1.0, 0.5, false), FitBranch::asymptotic, options);
  CHECK(fit.p_exponent == Approx(0.75).margin(1e-6));
  CHECK(fit.c_root == Approx(1.0).margin(1e-6));
  CHECK(fit.log_amplitude == Approx(std::log(kCanonicalEnvelopeConstant)).margin(1e-6));
  CHECK(fit.residual_rms < 1e-9);
  CHECK(fit.n_points == 600);

  const auto grown =
      fit_decay_growth(synthetic(10.0, 200.0, 600, 0.5, 1.3, 2.0 / 3.0, false), FitBranch::asymptotic, options);
  CHECK(grown.growth_power == Approx(2.0 / 3.0).margin(1e-6));
  CHECK(grown.p_exponent == Approx(0.5).margin(1e-4));
  CHECK(grown.c_root == Approx(1.3).margin(1e-4));
}

TEST_CASE("fitter on oscillating data uses local maxima", "[harness]") {
  const auto rows = synthetic(20.0, 300.0, 600, 0.75, 1.0, 0.5, true);
  const auto fit = fit_decay(rows, FitBranch::asymptotic);
  CHECK(fit.p_exponent == Approx(0.75).margin(0.02));
  CHECK(fit.c_root == Approx(1.0).margin(0.01));
  CHECK(fit.n_points >= 10);
  // the numeric column is identical here
  const auto same = fit_decay(rows, FitBranch::numeric);
  CHECK(same.p_exponent == fit.p_exponent);
}

TEST_CASE("fitter needs ten envelope points", "[harness]") {
  const auto rows = synthetic(20.0, 30.0, 30, 0.75, 1.0, 0.5, true);
  CHECK_THROWS_AS(fit_decay(rows, FitBranch::asymptotic), std::runtime_error);
  FitOptions late;
  late.k_min = 1e6;
  CHECK_THROWS_AS(fit_decay(synthetic(20.0, 300.0, 600, 0.75, 1.0, 0.5, true), FitBranch::asymptotic, late),
                  std::runtime_error);
}

TEST_CASE("normalization", "[harness]") {
  const auto canon = BumpParams::canonical();
  const double n = normalization(canon);
  CHECK(n == Approx(0.2219969).margin(1e-7));
  CHECK(2 * n == Approx(0.443993816168079).margin(1e-13));
  const auto ft0 = fourier_transform_numeric(canon, 0.0, 1e-13);
  CHECK(std::abs(2 * n - ft0.value) < 1e-12);
  const double collapsed = normalization(BumpParams::make(2.0, 20.0));
  CHECK(collapsed > 0.0);
  CHECK(collapsed < 1e-9);
  CHECK_THROWS_AS(normalization(canon, 0.0), std::invalid_argument);
}
