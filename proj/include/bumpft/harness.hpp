#pragma once

// Numeric-versus-asymptotic comparison: k sweeps, envelope extraction, decay-law
// fits and the normalization integral.

#include <bumpft/bump.hpp>
#include <bumpft/oscquad.hpp>
#include <bumpft/saddle.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bumpft {

/// One k of a sweep: numeric quadrature against the saddle-point formula.
struct SweepRecord {
  double k = 0.0;
  double f_numeric = 0.0;
  double f_asymptotic = 0.0;
  double abs_err = 0.0;  ///< |f_numeric - f_asymptotic|
  double rel_err = 0.0;  ///< abs_err / max(|f_numeric|, kRelErrFloor)
  double quad_abs_error = 0.0;
  std::size_t n_evals = 0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

inline constexpr double kRelErrFloor = 1e-300;

enum class Spacing { linear, log };
enum class FitBranch { numeric, asymptotic };

struct SweepOptions {
  Spacing spacing = Spacing::linear;
  double tol = 1e-12;
  ExponentRule rule = ExponentRule::nonvanishing;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  QuadratureOptions quadrature{};
};

/// Fitted log|F| ~ log_amplitude - p_exponent log k - c_root k^growth_power.
struct DecayFit {
  double p_exponent = 0.0;
  double c_root = 0.0;
  double log_amplitude = 0.0;
  double residual_rms = 0.0;
  double growth_power = 0.5;
  std::size_t n_points = 0;
};

/// Which samples of |F| count as envelope samples.
enum class EnvelopeMode {
  /// |F| is the largest value in a centered 5-point window.
  local_maxima,
  /// Every sample; for data that is already an envelope.
  all_points,
};

struct FitOptions {
  double k_min = 20.0;
  double growth_power = 0.5;
  EnvelopeMode envelope = EnvelopeMode::local_maxima;
};

inline constexpr std::size_t kMinEnvelopePoints = 10;

inline std::vector<double> sweep_grid(double k_min, double k_max, std::size_t n_points, Spacing spacing) {
  // k_min == k_max is allowed and repeats one frequency
  if (!(k_min > 0.0) || !(k_max >= k_min) || !std::isfinite(k_max)) {
    throw std::invalid_argument("sweep: requires 0 < k_min <= k_max");
  }
  if (n_points < 2) throw std::invalid_argument("sweep: requires at least 2 points");
  std::vector<double> ks(n_points);
  const double last = double(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double s = double(i) / last;
    ks[i] = spacing == Spacing::linear ? k_min + (k_max - k_min) * s
                                       : std::exp(std::log(k_min) + (std::log(k_max) - std::log(k_min)) * s);
  }
  ks.front() = k_min;
  ks.back() = k_max;
  return ks;
}

inline SweepRecord compare_at(const BumpParams& params, double k, const SweepOptions& options) {
  const QuadratureResult q = fourier_transform_numeric(params, k, options.tol, options.quadrature);
  if (!q.converged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature did not converge at k = " << k << " (alpha = " << params.alpha()
        << ", beta = " << params.beta() << "): abs_error " << q.abs_error << " > tol " << options.tol
        << " after " << q.n_panels << " panels";
    throw std::runtime_error(msg.str());
  }
  SweepRecord r;
  r.k = k;
  r.f_numeric = q.value;
  r.f_asymptotic = asymptotic_ft(params, k, options.rule);
  r.abs_err = std::abs(r.f_numeric - r.f_asymptotic);
  r.rel_err = r.abs_err / std::max(std::abs(r.f_numeric), kRelErrFloor);
  r.quad_abs_error = q.abs_error;
  r.n_evals = q.n_evals;
  return r;
}

/// Numeric and asymptotic F(k) over a k grid, ascending. Rows are computed
/// concurrently; any non-converged row aborts the sweep with a diagnostic.
inline std::vector<SweepRecord> run_sweep(const BumpParams& params, double k_min, double k_max,
                                          std::size_t n_points, const SweepOptions& options = {}) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("sweep: tol must be > 0");
  const std::vector<double> ks = sweep_grid(k_min, k_max, n_points, options.spacing);
  std::vector<SweepRecord> rows(ks.size());

  unsigned n_threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, ks.size()));

  std::exception_ptr failure;
  std::size_t failed_index = ks.size();
  std::mutex failure_mutex;
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < ks.size(); i += n_threads) {
      try {
        rows[i] = compare_at(params, ks[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        // report the lowest failing k regardless of thread timing
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (n_threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

/// Indices whose |value| is the maximum of the centered 5-point window.
inline std::vector<std::size_t> envelope_indices(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 2; i + 2 < values.size(); ++i) {
    const double v = std::abs(values[i]);
    if (!(v > 0.0)) continue;
    bool is_max = true;
    for (std::size_t j = i - 2; j <= i + 2; ++j) {
      if (j != i && std::abs(values[j]) > v) {
        is_max = false;
        break;
      }
    }
    if (is_max) out.push_back(i);
  }
  return out;
}

inline double branch_value(const SweepRecord& r, FitBranch use) {
  return use == FitBranch::numeric ? r.f_numeric : r.f_asymptotic;
}

inline std::vector<std::size_t> envelope_indices(const std::vector<SweepRecord>& records, FitBranch use) {
  std::vector<double> values(records.size());
  std::transform(records.begin(), records.end(), values.begin(),
                 [use](const SweepRecord& r) { return branch_value(r, use); });
  return envelope_indices(values);
}

namespace detail {

// Least squares for y ~ b0 + b1 x1 + b2 x2 through the 3x3 normal equations,
// with columns centered first to keep them well conditioned.
struct ThreeTermFit {
  double b0, b1, b2, rms;
};

inline ThreeTermFit least_squares_3(const std::vector<double>& x1, const std::vector<double>& x2,
                                    const std::vector<double>& y) {
  const double n = double(y.size());
  const double m1 = std::accumulate(x1.begin(), x1.end(), 0.0) / n;
  const double m2 = std::accumulate(x2.begin(), x2.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double u = x1[i] - m1, v = x2[i] - m2, w = y[i] - my;
    s11 += u * u;
    s12 += u * v;
    s22 += v * v;
    s1y += u * w;
    s2y += v * w;
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(std::abs(det) > 0.0)) throw std::runtime_error("fit_decay: degenerate design matrix");
  const double b1 = (s1y * s22 - s2y * s12) / det;
  const double b2 = (s2y * s11 - s1y * s12) / det;
  const double b0 = my - b1 * m1 - b2 * m2;
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - (b0 + b1 * x1[i] + b2 * x2[i]);
    ss += r * r;
  }
  return {b0, b1, b2, std::sqrt(ss / n)};
}

struct EnvelopeSamples {
  std::vector<double> log_k, power_k, log_f;
};

inline EnvelopeSamples collect_envelope(const std::vector<SweepRecord>& records, FitBranch use,
                                        const FitOptions& options) {
  std::vector<std::size_t> idx;
  if (options.envelope == EnvelopeMode::local_maxima) {
    idx = envelope_indices(records, use);
  } else {
    idx.resize(records.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
  }
  EnvelopeSamples s;
  for (std::size_t i : idx) {
    const double k = records[i].k;
    const double f = std::abs(branch_value(records[i], use));
    if (k < options.k_min || !(f > 0.0) || !std::isfinite(f)) continue;
    s.log_k.push_back(std::log(k));
    s.log_f.push_back(std::log(f));
  }
  if (s.log_k.size() < kMinEnvelopePoints) {
    throw std::runtime_error("fit_decay: need at least 10 envelope points with k >= k_min, found " +
                             std::to_string(s.log_k.size()));
  }
  return s;
}

inline DecayFit fit_with_power(const EnvelopeSamples& s, double power) {
  std::vector<double> kp(s.log_k.size());
  std::transform(s.log_k.begin(), s.log_k.end(), kp.begin(), [power](double lk) { return std::exp(power * lk); });
  const ThreeTermFit f = least_squares_3(s.log_k, kp, s.log_f);
  return DecayFit{.p_exponent = -f.b1,
                  .c_root = -f.b2,
                  .log_amplitude = f.b0,
                  .residual_rms = f.rms,
                  .growth_power = power,
                  .n_points = s.log_k.size()};
}

}  // namespace detail

/// Fits log|F| ~ log C - p log k - c k^growth_power on envelope samples with
/// k >= k_min. growth_power = 1/2 is the canonical e^(-sqrt k) law.
inline DecayFit fit_decay(const std::vector<SweepRecord>& records, FitBranch use, const FitOptions& options = {}) {
  const auto samples = detail::collect_envelope(records, use, options);
  return detail::fit_with_power(samples, options.growth_power);
}

/// Like fit_decay but also fits the growth power, by golden-section search on
/// the least-squares residual over (lo, hi). options.growth_power is ignored.
inline DecayFit fit_decay_growth(const std::vector<SweepRecord>& records, FitBranch use,
                                 const FitOptions& options = {}, double lo = 0.05, double hi = 0.95) {
  const auto samples = detail::collect_envelope(records, use, options);
  auto rms = [&](double power) { return detail::fit_with_power(samples, power).residual_rms; };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = rms(c), fd = rms(d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-10; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = rms(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = rms(d);
    }
  }
  return detail::fit_with_power(samples, 0.5 * (a + b));
}

/// Spearman rank correlation with average ranks for ties.
inline double rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("rank_correlation: need two equally sized samples of size >= 2");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * double(i + j) + 1.0;
      for (std::size_t m = i; m <= j; ++m) r[order[m]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = double(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

/// int_0^1 f(x) dx, the size of the bump used to compare spectra across (alpha, beta).
inline double normalization(const BumpParams& params, double tol = 1e-12) {
  auto f = [&params](double x) { return eval_bump(params, x); };
  const QuadratureResult q = integrate_adaptive(f, 0.0, 1.0, tol);
  if (!q.converged) {
    throw std::runtime_error("normalization: quadrature did not converge (abs_error " +
                             std::to_string(q.abs_error) + ")");
  }
  return q.value;
}

}  // namespace bumpft
