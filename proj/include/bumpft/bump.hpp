#pragma once

// The generalized bump family
//
//   f(x) = exp(-beta / (1 - x^2)^(alpha - 1))   for |x| < 1,   0 otherwise,
//
// and the complex exponent g(t) of its one-sided Fourier integrand after the
// substitution x = 1 - t, so that exp(g(t)) = f(1 - t) exp(ik(1 - t)).

#include <bumpft/complex.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace bumpft {

/// Shape parameters (alpha, beta) of a bump. alpha > 1 sets the order of the
/// essential singularity at x = +-1, beta > 0 its strength.
class BumpParams {
 public:
  static BumpParams make(double alpha, double beta) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("BumpParams: alpha must be a finite value > 1, got " +
                                  std::to_string(alpha));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw std::invalid_argument("BumpParams: beta must be a finite value > 0, got " +
                                  std::to_string(beta));
    }
    return BumpParams{alpha, beta};
  }

  /// exp(-1/(1-x^2)), the classic bump.
  static BumpParams canonical() noexcept { return BumpParams{2.0, 1.0}; }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  bool is_canonical() const noexcept { return alpha_ == 2.0 && beta_ == 1.0; }

  friend bool operator==(const BumpParams&, const BumpParams&) = default;

 private:
  BumpParams(double alpha, double beta) noexcept : alpha_{alpha}, beta_{beta} {}

  double alpha_;
  double beta_;
};

namespace detail {
// exp(-x) is exactly zero in double precision for x beyond this.
inline constexpr double kExpUnderflow = 745.0;

inline void require_nonzero(ComplexScalar t, const char* who) {
  if (t == ComplexScalar{}) {
    throw std::domain_error(std::string(who) + ": t = 0 is the essential singularity");
  }
}

// g(t) - ik for the exact exponent. Splitting off ik keeps its rounding out of
// the remaining terms; callers multiply by exp(ik) separately.
inline ComplexScalar exact_offset(const BumpParams& params, double k, ComplexScalar t) {
  return -kI * k * t - params.beta() / principal_pow((2.0 - t) * t, params.alpha() - 1.0);
}

// g(t) - ik keeping the terms of beta (2t)^(1-alpha) (1 - t/2)^(1-alpha) that
// do not vanish as t -> 0:
//   beta (2t)^(1-alpha) sum_{j <= alpha-1} c_j (t/2)^j,
//   c_j = (alpha-1)(alpha)...(alpha+j-2) / j!
inline ComplexScalar nonvanishing_offset(const BumpParams& params, double k, ComplexScalar t) {
  const double alpha = params.alpha();
  ComplexScalar singular{};
  double coeff = 1.0;
  for (int j = 0; j <= alpha - 1.0; ++j) {
    if (j > 0) coeff *= (alpha - 2.0 + j) / j;
    singular += coeff * std::exp2(1.0 - alpha - j) * principal_pow(t, j + 1.0 - alpha);
  }
  return -kI * k * t - params.beta() * singular;
}
}  // namespace detail

/// f_{alpha,beta}(x). Exactly zero on |x| >= 1 and wherever the exponent
/// exceeds the exp underflow threshold; no division by zero is ever performed.
inline double eval_bump(const BumpParams& params, double x) {
  const double ax = std::abs(x);
  if (!(ax < 1.0)) return 0.0;
  const double s = (1.0 - ax) * (1.0 + ax);
  const double order = params.alpha() - 1.0;
  // ln(beta / s^order) compared in log space so tiny s never reaches a divide
  const double log_exponent = std::log(params.beta()) - order * std::log(s);
  if (log_exponent > std::log(detail::kExpUnderflow)) return 0.0;
  return std::exp(-params.beta() / std::pow(s, order));
}

/// g(t) = ik - ikt - beta / ((2 - t) t)^(alpha - 1), the exact exponent.
/// Valid on Re t > 0 with t != 2; the mirror half-plane is where the integrand
/// blows up and no contour may go there.
inline ComplexScalar exponent_exact(const BumpParams& params, double k, ComplexScalar t) {
  if (!(t.real() > 0.0)) {
    throw std::domain_error("exponent_exact: requires Re t > 0");
  }
  if (t == ComplexScalar{2.0, 0.0}) {
    throw std::domain_error("exponent_exact: t = 2 is the far essential singularity");
  }
  return kI * k + detail::exact_offset(params, k, t);
}

/// Small-t form ik - ikt - beta / (2t)^(alpha - 1). Drops every term of the
/// expansion of (1 - t/2)^(1-alpha) beyond the first.
inline ComplexScalar exponent_truncated(const BumpParams& params, double k, ComplexScalar t) {
  detail::require_nonzero(t, "exponent_truncated");
  const ComplexScalar ik = kI * k;
  return ik - ik * t - params.beta() / principal_pow(2.0 * t, params.alpha() - 1.0);
}

/// Canonical-bump small-t form including the constant: ik - ikt - 1/(2t) - 1/4.
inline ComplexScalar exponent_truncated_canonical(double k, ComplexScalar t) {
  detail::require_nonzero(t, "exponent_truncated_canonical");
  const ComplexScalar ik = kI * k;
  return ik - ik * t - 1.0 / (2.0 * t) - 0.25;
}

/// Keeps exactly the terms of the small-t expansion that do not vanish as
/// t -> 0:
///
///   ik - ikt - beta (2t)^(1-alpha) sum_{j <= alpha-1} c_j (t/2)^j,
///   c_j = (alpha-1)(alpha)...(alpha+j-2) / j!
///
/// For alpha = 2, beta = 1 this is ik - ikt - 1/(2t) - 1/4. It differs from
/// exponent_exact by O(t^(floor(alpha-1)+2-alpha)), which vanishes at the
/// saddle as k grows.
inline ComplexScalar exponent_nonvanishing(const BumpParams& params, double k, ComplexScalar t) {
  detail::require_nonzero(t, "exponent_nonvanishing");
  return kI * k + detail::nonvanishing_offset(params, k, t);
}

}  // namespace bumpft
