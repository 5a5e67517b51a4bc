#pragma once

// Principal-branch complex arithmetic. Every fractional power, root and
// logarithm in the library goes through these functions so that all saddle
// roots, contour rotations and amplitude square roots agree on one branch.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace bumpft {

using ComplexScalar = std::complex<double>;

inline constexpr ComplexScalar kI{0.0, 1.0};

/// Principal argument in (-pi, pi]. A negative real axis with a signed-zero
/// imaginary part maps to +pi, never -pi.
inline double principal_arg(ComplexScalar z) {
  if (z.imag() == 0.0) {
    return z.real() < 0.0 ? std::numbers::pi : 0.0;
  }
  return std::atan2(z.imag(), z.real());
}

inline ComplexScalar principal_log(ComplexScalar z) {
  if (z == ComplexScalar{}) {
    throw std::domain_error("principal_log: logarithm of zero");
  }
  return {std::log(std::abs(z)), principal_arg(z)};
}

/// z^p = exp(p (ln|z| + i Arg z)). Evaluated in polar form so the modulus
/// keeps full relative accuracy.
inline ComplexScalar principal_pow(ComplexScalar z, double p) {
  if (z == ComplexScalar{}) {
    if (p > 0.0) return {};
    throw std::domain_error("principal_pow: zero raised to a non-positive power");
  }
  return std::polar(std::pow(std::abs(z), p), p * principal_arg(z));
}

inline ComplexScalar principal_sqrt(ComplexScalar z) {
  if (z == ComplexScalar{}) return {};
  return std::polar(std::sqrt(std::abs(z)), 0.5 * principal_arg(z));
}

/// i^p on the principal branch, i.e. exp(i p pi / 2).
inline ComplexScalar i_pow(double p) {
  return std::polar(1.0, 0.5 * p * std::numbers::pi);
}

}  // namespace bumpft
