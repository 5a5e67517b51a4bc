#pragma once

// Adaptive quadrature on finite intervals.
//
// integrate_cos / integrate_sin: panel-based Filon-Clenshaw-Curtis. On each
// panel the smooth factor is interpolated at 25 Chebyshev-Lobatto points and
// the interpolant is integrated exactly against cos/sin(omega x) using modified
// Chebyshev moments, so the cost per panel does not grow with omega.
//
// integrate_adaptive: globally adaptive Gauss-Kronrod (7, 15), used for
// non-oscillatory integrals and as an independent cross-check.

#include <bumpft/bump.hpp>
#include <bumpft/complex.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bumpft {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t n_evals = 0;
  std::size_t n_panels = 0;
  bool converged = false;

  friend bool operator==(const QuadratureResult&, const QuadratureResult&) = default;
};

struct QuadratureOptions {
  std::size_t max_panels = 10000;
};

template <typename F>
concept RealIntegrand = std::invocable<const F&, double> &&
                        std::convertible_to<std::invoke_result_t<const F&, double>, double>;

/// Degree of the Chebyshev interpolant on each Filon-Clenshaw-Curtis panel.
inline constexpr int kChebDegree = 24;
/// Below this panel frequency the moments come from a power series.
inline constexpr double kMomentSeriesThreshold = 4.0;

using ChebMoments = std::array<ComplexScalar, kChebDegree + 1>;

namespace detail {

// mu[n][m] = int_{-1}^{1} T_n(x) x^m dx, from x T_n = (T_{n+1} + T_{|n-1|}) / 2.
inline constexpr int kSeriesTerms = 48;

inline const auto& power_moment_table() {
  using Row = std::array<double, kSeriesTerms + 1>;
  static const std::vector<Row> table = [] {
    const int n_max = kChebDegree + kSeriesTerms + 1;
    std::vector<Row> mu(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      mu[n][0] = n % 2 == 0 ? 2.0 / (1.0 - double(n) * n) : 0.0;
    }
    for (int m = 0; m < kSeriesTerms; ++m) {
      for (int n = 0; n <= n_max - m - 1; ++n) {
        mu[n][m + 1] = 0.5 * (mu[n + 1][m] + mu[std::abs(n - 1)][m]);
      }
    }
    return mu;
  }();
  return table;
}

inline ChebMoments moments_series(double theta) {
  const auto& mu = power_moment_table();
  ChebMoments out{};
  for (int n = 0; n <= kChebDegree; ++n) {
    ComplexScalar sum{};
    ComplexScalar term{1.0, 0.0};  // (i theta)^m / m!
    for (int m = 0; m <= kSeriesTerms; ++m) {
      if (m > 0) term *= kI * theta / double(m);
      sum += term * mu[n][m];
    }
    out[n] = sum;
  }
  return out;
}

// Solves a tridiagonal system by Gaussian elimination with partial pivoting.
// sub[i] = A(i, i-1), diag[i] = A(i, i), sup[i] = A(i, i+1). Overwrites inputs.
inline std::vector<ComplexScalar> solve_tridiagonal(std::vector<ComplexScalar> sub,
                                                    std::vector<ComplexScalar> diag,
                                                    std::vector<ComplexScalar> sup,
                                                    std::vector<ComplexScalar> rhs) {
  const std::size_t m = diag.size();
  std::vector<ComplexScalar> sup2(m, ComplexScalar{});
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (std::abs(sub[k + 1]) > std::abs(diag[k])) {
      std::swap(diag[k], sub[k + 1]);
      std::swap(sup[k], diag[k + 1]);
      std::swap(sup2[k], sup[k + 1]);
      std::swap(rhs[k], rhs[k + 1]);
    }
    const ComplexScalar factor = sub[k + 1] / diag[k];
    diag[k + 1] -= factor * sup[k];
    sup[k + 1] -= factor * sup2[k];
    rhs[k + 1] -= factor * rhs[k];
    sub[k + 1] = 0.0;
  }
  std::vector<ComplexScalar> x(m);
  for (std::size_t i = m; i-- > 0;) {
    ComplexScalar acc = rhs[i];
    if (i + 1 < m) acc -= sup[i] * x[i + 1];
    if (i + 2 < m) acc -= sup2[i] * x[i + 2];
    x[i] = acc / diag[i];
  }
  return x;
}

// Integrating 2 T_n = T'_{n+1}/(n+1) - T'_{n-1}/(n-1) by parts against
// exp(i theta x) gives, for n >= 2,
//   (i theta/(n+1)) I_{n+1} + 2 I_n - (i theta/(n-1)) I_{n-1} = -2 E_n / (n^2 - 1),
//   E_n = e^{i theta} + (-1)^n e^{-i theta}.
inline ComplexScalar moment_rhs(int n, double theta) {
  const ComplexScalar e_n = std::polar(1.0, theta) + (n % 2 == 0 ? 1.0 : -1.0) * std::polar(1.0, -theta);
  return -2.0 * e_n / (double(n) * n - 1.0);
}

inline ChebMoments moments_recurrence(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  std::vector<ComplexScalar> moments;
  const ComplexScalar i0 = 2.0 * s / theta;
  const ComplexScalar i1 = kI * (2.0 * (s - theta * c) / (theta * theta));

  if (theta > kChebDegree) {
    // every n <= 24 is below theta: upward recurrence is stable
    const double t2 = theta * theta;
    const ComplexScalar i2 = 4.0 * (s / theta + 2.0 * c / t2 - 2.0 * s / (t2 * theta)) - i0;
    moments = {i0, i1, i2};
    for (int n = 2; n < kChebDegree; ++n) {
      const ComplexScalar lower = moments[n - 1] * (kI * theta / double(n - 1));
      moments.push_back((double(n + 1) / (kI * theta)) * (moment_rhs(n, theta) - 2.0 * moments[n] + lower));
    }
  } else {
    // Boundary-value form (Olver): I_1 exact at the bottom, the leading
    // endpoint asymptotic at a top index far above theta. The top error is
    // damped by the growing homogeneous solution on the way down.
    const int top = kChebDegree + 2 * static_cast<int>(std::ceil(theta)) + 40;
    const ComplexScalar i_top = moment_rhs(top, theta);
    const std::size_t m = static_cast<std::size_t>(top - 2);  // unknowns I_2 .. I_{top-1}
    std::vector<ComplexScalar> sub(m), diag(m, ComplexScalar{2.0, 0.0}), sup(m), rhs(m);
    for (std::size_t row = 0; row < m; ++row) {
      const int n = static_cast<int>(row) + 2;
      sub[row] = -kI * theta / double(n - 1);
      sup[row] = kI * theta / double(n + 1);
      rhs[row] = moment_rhs(n, theta);
    }
    rhs.front() -= sub.front() * i1;
    rhs.back() -= sup.back() * i_top;
    sub.front() = 0.0;
    sup.back() = 0.0;
    const auto solved = solve_tridiagonal(std::move(sub), std::move(diag), std::move(sup), std::move(rhs));
    moments = {i0, i1};
    moments.insert(moments.end(), solved.begin(), solved.begin() + (kChebDegree - 1));
  }

  ChebMoments out{};
  std::copy_n(moments.begin(), kChebDegree + 1, out.begin());
  return out;
}

}  // namespace detail

/// Modified Chebyshev moments I_n(theta) = int_{-1}^{1} T_n(x) exp(i theta x) dx,
/// n = 0..24, for theta >= 0. Real parts are the cosine moments (zero for odd
/// n), imaginary parts the sine moments (zero for even n).
inline ChebMoments chebyshev_moments(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::domain_error("chebyshev_moments: theta must be finite and >= 0");
  }
  if (theta < kMomentSeriesThreshold) return detail::moments_series(theta);
  return detail::moments_recurrence(theta);
}

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct PanelWorse {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

// Drives worst-panel-first bisection for any single-panel rule with signature
// Panel rule(double a, double b). Each rule call costs `evals_per_panel`.
template <typename Rule>
QuadratureResult adapt(const Rule& rule, double a, double b, std::size_t initial_panels,
                       std::size_t evals_per_panel, double tol, const QuadratureOptions& options) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("quadrature: requires finite a < b");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tol must be > 0");
  if (options.max_panels == 0) throw std::invalid_argument("quadrature: max_panels must be >= 1");

  initial_panels = std::clamp<std::size_t>(initial_panels, 1, options.max_panels);
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  std::vector<Panel> frozen;  // too narrow to split further
  std::size_t n_evals = 0;
  double running_error = 0.0;

  const double width = (b - a) / double(initial_panels);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double lo = a + width * double(i);
    const double hi = i + 1 == initial_panels ? b : a + width * double(i + 1);
    Panel p = rule(lo, hi);
    n_evals += evals_per_panel;
    running_error += p.error;
    heap.push(p);
  }

  auto panel_count = [&] { return heap.size() + frozen.size(); };
  auto exact_error = [&] {
    double sum = 0.0;
    for (const auto& p : frozen) sum += p.error;
    auto copy = heap;
    while (!copy.empty()) {
      sum += copy.top().error;
      copy.pop();
    }
    return sum;
  };

  while (!heap.empty() && panel_count() < options.max_panels) {
    if (running_error <= tol) {
      // resync the incremental sum before trusting it
      running_error = exact_error();
      if (running_error <= tol) break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b) ||
        (worst.b - worst.a) <= 8.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    Panel left = rule(worst.a, mid);
    Panel right = rule(mid, worst.b);
    n_evals += 2 * evals_per_panel;
    running_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  std::vector<Panel> panels = std::move(frozen);
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });

  QuadratureResult result;
  for (const auto& p : panels) {
    result.value += p.value;
    result.abs_error += p.error;
  }
  result.n_evals = n_evals;
  result.n_panels = panels.size();
  result.converged = result.abs_error <= tol;
  return result;
}

enum class Weight { cosine, sine };

// Filon-Clenshaw-Curtis on one panel. Error estimate: |R24 - R12| plus the
// contribution of the last third of the degree-24 Chebyshev coefficients.
template <typename F>
Panel filon_cc_panel(const F& fn, double a, double b, double omega, Weight weight) {
  constexpr int n = kChebDegree;
  constexpr int half = n / 2;
  static const auto cosines = [] {
    std::array<double, 2 * n> c{};
    for (int j = 0; j < 2 * n; ++j) c[j] = std::cos(std::numbers::pi * j / n);
    return c;
  }();

  const double center = 0.5 * (a + b);
  const double half_width = 0.5 * (b - a);
  std::array<double, n + 1> values{};
  for (int j = 0; j <= n; ++j) {
    // symmetric node placement keeps x_j and x_{n-j} mirror images
    const double node = j < half ? cosines[j] : (j == half ? 0.0 : -cosines[n - j]);
    values[j] = static_cast<double>(fn(center + half_width * node));
  }

  // Chebyshev coefficients of the interpolant, sum'' c_k T_k (end terms halved).
  auto coefficients = [&](int degree, int stride) {
    std::array<double, n + 1> coeff{};
    for (int k = 0; k <= degree; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= degree; ++j) {
        const double w = (j == 0 || j == degree) ? 0.5 : 1.0;
        acc += w * values[j * stride] * cosines[(j * k) % (2 * degree) * stride];
      }
      coeff[k] = 2.0 * acc / degree;
    }
    coeff[0] *= 0.5;
    coeff[degree] *= 0.5;
    return coeff;
  };
  const auto c24 = coefficients(n, 1);
  const auto c12 = coefficients(half, 2);

  const double theta = omega * half_width;
  const ChebMoments moments = chebyshev_moments(theta);
  const ComplexScalar shift = std::polar(1.0, omega * center);
  auto project = [&](ComplexScalar z) {
    const ComplexScalar w = shift * z * half_width;
    return weight == Weight::cosine ? w.real() : w.imag();
  };

  ComplexScalar sum24{}, sum12{};
  double tail = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum24 += c24[k] * moments[k];
    if (k <= half) sum12 += c12[k] * moments[k];
    if (k > n - n / 3) tail += std::abs(c24[k]) * std::abs(moments[k]);
  }
  const double r24 = project(sum24);
  const double r12 = project(sum12);
  return Panel{a, b, r24, std::abs(r24 - r12) + half_width * tail};
}

// Gauss-Kronrod (7, 15) abscissae and weights.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
Panel gauss_kronrod_panel(const F& fn, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half_width = 0.5 * (b - a);
  std::array<double, 15> f{};
  f[7] = static_cast<double>(fn(center));
  for (int j = 0; j < 7; ++j) {
    const double dx = half_width * kKronrodNodes[j];
    f[j] = static_cast<double>(fn(center - dx));
    f[14 - j] = static_cast<double>(fn(center + dx));
  }
  double kronrod = kKronrodWeights[7] * f[7];
  double gauss = kGaussWeights[3] * f[7];
  double abs_sum = kKronrodWeights[7] * std::abs(f[7]);
  for (int j = 0; j < 7; ++j) {
    const double pair = f[j] + f[14 - j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f[j]) + std::abs(f[14 - j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(f[7] - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::abs(f[j] - mean) + std::abs(f[14 - j] - mean));
  }

  const double result = kronrod * half_width;
  const double res_abs = abs_sum * std::abs(half_width);
  const double res_asc = asc * std::abs(half_width);
  double err = std::abs((kronrod - gauss) * half_width);
  // QUADPACK's scaling of the raw Kronrod-Gauss difference
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return Panel{a, b, result, err};
}

template <typename F>
QuadratureResult integrate_weighted(const F& fn, double a, double b, double omega, double tol,
                                    const QuadratureOptions& options, Weight weight) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("integrate_cos: omega must be finite and >= 0");
  }
  // initial panels no wider than one period of the weight
  std::size_t initial = 1;
  if (omega > 0.0 && std::isfinite(a) && std::isfinite(b) && b > a) {
    const double periods = (b - a) * omega / (2.0 * std::numbers::pi);
    initial = static_cast<std::size_t>(std::min(std::ceil(periods), double(options.max_panels)));
  }
  auto rule = [&](double lo, double hi) { return filon_cc_panel(fn, lo, hi, omega, weight); };
  return adapt(rule, a, b, initial, kChebDegree + 1, tol, options);
}

}  // namespace detail

/// int_a^b fn(x) cos(omega x) dx to absolute tolerance tol.
template <RealIntegrand F>
QuadratureResult integrate_cos(const F& fn, double a, double b, double omega, double tol,
                               const QuadratureOptions& options = {}) {
  return detail::integrate_weighted(fn, a, b, omega, tol, options, detail::Weight::cosine);
}

/// int_a^b fn(x) sin(omega x) dx to absolute tolerance tol.
template <RealIntegrand F>
QuadratureResult integrate_sin(const F& fn, double a, double b, double omega, double tol,
                               const QuadratureOptions& options = {}) {
  return detail::integrate_weighted(fn, a, b, omega, tol, options, detail::Weight::sine);
}

/// int_a^b fn(x) dx to absolute tolerance tol, adaptive Gauss-Kronrod (7, 15).
template <RealIntegrand F>
QuadratureResult integrate_adaptive(const F& fn, double a, double b, double tol,
                                    const QuadratureOptions& options = {}) {
  auto rule = [&](double lo, double hi) { return detail::gauss_kronrod_panel(fn, lo, hi); };
  return detail::adapt(rule, a, b, 1, 15, tol, options);
}

/// F(k) = 2 int_0^1 f(x) cos(kx) dx, real by evenness of f. The half-range
/// integral is requested to tol/2 so the doubled error still meets tol.
inline QuadratureResult fourier_transform_numeric(const BumpParams& params, double k, double tol,
                                                  const QuadratureOptions& options = {}) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw std::domain_error("fourier_transform_numeric: k must be finite and >= 0");
  }
  auto f = [&params](double x) { return eval_bump(params, x); };
  QuadratureResult half = integrate_cos(f, 0.0, 1.0, k, 0.5 * tol, options);
  half.value *= 2.0;
  half.abs_error *= 2.0;
  return half;
}

}  // namespace bumpft
