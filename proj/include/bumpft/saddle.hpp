#pragma once

// Saddle-point asymptotics of the bump Fourier transform
//
//   F(k) = 2 Re int_0^1 exp(g(t)) dt,   g(t) = ik - ikt - beta/((2-t)t)^(alpha-1).
//
// The saddle of the small-t exponent sits at t0 = [2^(1-alpha) beta (alpha-1) / (ik)]^(1/alpha)
// and the integral is replaced by a Gaussian along the ray t = u / i^(1/alpha).

#include <bumpft/bump.hpp>
#include <bumpft/complex.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bumpft {

/// Everything the Gaussian approximation needs at one (params, k).
struct SaddleData {
  ComplexScalar t0;        ///< saddle location, Re t0 > 0
  ComplexScalar g_at_t0;   ///< exponent_exact(t0)
  ComplexScalar g2_at_t0;  ///< g''(t0) of the small-t exponent
  double a_coeff;          ///< alpha [2 beta (alpha-1)]^(-1/alpha)
  double k;
};

/// Which exponent value multiplies the Gaussian amplitude.
enum class ExponentRule {
  /// exponent_nonvanishing(t0): every term that survives t0 -> 0. Reduces to
  /// the classic ik - 1/4 - sqrt(2ik) for the canonical bump.
  nonvanishing,
  /// exponent_exact(t0).
  exact,
};

namespace detail {
inline void require_positive_k(double k, const char* who) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error(std::string(who) + ": k must be finite and > 0 (use F(-k) = F(k))");
  }
}

// 2^(1-alpha) beta (alpha - 1)
inline double saddle_scale(const BumpParams& p) {
  return std::exp2(1.0 - p.alpha()) * p.beta() * (p.alpha() - 1.0);
}
}  // namespace detail

/// Principal root of the small-t saddle equation; arg t0 = -pi/(2 alpha).
/// The other roots of t^alpha = c/(ik) lie at or beyond |arg t| >= 3pi/(2 alpha)
/// and for alpha <= 3 in Re t < 0, where the integrand diverges.
inline ComplexScalar saddle_point(const BumpParams& params, double k) {
  detail::require_positive_k(k, "saddle_point");
  const ComplexScalar ratio = detail::saddle_scale(params) / (kI * k);
  return principal_pow(ratio, 1.0 / params.alpha());
}

/// alpha [2 beta (alpha - 1)]^(-1/alpha)
inline double amplitude_coefficient(const BumpParams& params) {
  const double a = params.alpha();
  return a * std::pow(2.0 * params.beta() * (a - 1.0), -1.0 / a);
}

/// g''(t0) = -2^(1-alpha) beta alpha (alpha-1) / t0^(alpha+1).
inline ComplexScalar curvature(const BumpParams& params, double k, ComplexScalar t0) {
  detail::require_positive_k(k, "curvature");
  detail::require_nonzero(t0, "curvature");
  return -detail::saddle_scale(params) * params.alpha() / principal_pow(t0, params.alpha() + 1.0);
}

/// The same curvature written as -i^((alpha+1)/alpha) 2A k^((alpha+1)/alpha).
inline ComplexScalar curvature_scaled_form(const BumpParams& params, double k) {
  detail::require_positive_k(k, "curvature_scaled_form");
  const double q = (params.alpha() + 1.0) / params.alpha();
  return -i_pow(q) * 2.0 * amplitude_coefficient(params) * std::pow(k, q);
}

/// Residual of the small-t saddle equation, |-ik + c / t^alpha| / k.
inline double saddle_residual(const BumpParams& params, double k, ComplexScalar t) {
  detail::require_positive_k(k, "saddle_residual");
  const ComplexScalar d = -kI * k + detail::saddle_scale(params) / principal_pow(t, params.alpha());
  return std::abs(d) / k;
}

inline SaddleData analyze_saddle(const BumpParams& params, double k) {
  const ComplexScalar t0 = saddle_point(params, k);
  return SaddleData{
      .t0 = t0,
      .g_at_t0 = exponent_exact(params, k, t0),
      .g2_at_t0 = curvature(params, k, t0),
      .a_coeff = amplitude_coefficient(params),
      .k = k,
  };
}

namespace detail {
// The complex saddle contribution is exp(ik) * exp(log_saddle_amplitude). The
// ik phase is split off because exp(ik) is exact for the real k while folding
// it into the logarithm costs ~k * eps of phase.
// log_saddle_amplitude = log sqrt(pi / ((ik)^((alpha+1)/alpha) A)) + g(t0) - ik.
inline ComplexScalar log_saddle_amplitude(const BumpParams& params, double k, ExponentRule rule) {
  require_positive_k(k, "asymptotic_ft");
  const ComplexScalar t0 = saddle_point(params, k);
  const double q = (params.alpha() + 1.0) / params.alpha();
  // log of pi / ((ik)^q A), expanded so (ik)^q cannot overflow for huge k
  const ComplexScalar log_radicand{std::log(std::numbers::pi / amplitude_coefficient(params)) - q * std::log(k),
                                   -q * std::numbers::pi / 2.0};
  const ComplexScalar offset = rule == ExponentRule::exact ? exact_offset(params, k, t0)
                                                           : nonvanishing_offset(params, k, t0);
  return 0.5 * log_radicand + offset;
}
}  // namespace detail

/// Saddle-point approximation of F(k) for any alpha > 1, beta > 0, k > 0.
/// Oscillates in sign; underflows gracefully to 0 for very large k.
inline double asymptotic_ft(const BumpParams& params, double k,
                            ExponentRule rule = ExponentRule::nonvanishing) {
  return 2.0 * (std::polar(1.0, k) * std::exp(detail::log_saddle_amplitude(params, k, rule))).real();
}

/// Modulus of the complex saddle contribution times two: the smooth envelope
/// that asymptotic_ft oscillates inside.
inline double asymptotic_envelope(const BumpParams& params, double k,
                                  ExponentRule rule = ExponentRule::nonvanishing) {
  return 2.0 * std::exp(detail::log_saddle_amplitude(params, k, rule).real());
}

/// Closed form for the canonical bump,
///   2 Re[ sqrt(-i pi / (sqrt(2i) k^(3/2))) exp(ik - 1/4 - sqrt(2ik)) ].
inline double asymptotic_ft_canonical(double k) {
  detail::require_positive_k(k, "asymptotic_ft_canonical");
  const ComplexScalar sqrt_2i = principal_sqrt(ComplexScalar{0.0, 2.0});
  const ComplexScalar amplitude =
      principal_sqrt(-kI * std::numbers::pi / (sqrt_2i * std::pow(k, 1.5)));
  const ComplexScalar rest = -0.25 - principal_sqrt(2.0 * kI * k);
  return 2.0 * (std::polar(1.0, k) * amplitude * std::exp(rest)).real();
}

/// 2 sqrt(pi) 2^(-1/4) e^(-1/4): the canonical transform is
/// C k^(-3/4) e^(-sqrt k) cos(k - sqrt k - 3pi/8).
inline const double kCanonicalEnvelopeConstant =
    2.0 * std::sqrt(std::numbers::pi) * std::pow(2.0, -0.25) * std::exp(-0.25);

/// True iff Re g drops below Re g(t0) at 64 points t0 + s e^(-i pi/(2 alpha)),
/// s in +-(0, s_max], with g the small-t exponent whose saddle t0 is.
/// A false result means the contour is not descending.
inline bool descent_check(const BumpParams& params, double k, double s_max) {
  const ComplexScalar t0 = saddle_point(params, k);
  if (!(s_max > 0.0) || s_max > 0.5 * std::abs(t0)) {
    throw std::invalid_argument("descent_check: s_max must lie in (0, |t0|/2]");
  }
  const ComplexScalar direction = std::polar(1.0, -0.5 * std::numbers::pi / params.alpha());
  const double g0 = exponent_truncated(params, k, t0).real();
  constexpr int kSamplesPerSide = 32;
  for (int j = 1; j <= kSamplesPerSide; ++j) {
    const double s = s_max * j / kSamplesPerSide;
    for (const double sign : {-1.0, 1.0}) {
      const ComplexScalar t = t0 + sign * s * direction;
      if (!(exponent_truncated(params, k, t).real() - g0 < 0.0)) return false;
    }
  }
  return true;
}

}  // namespace bumpft
