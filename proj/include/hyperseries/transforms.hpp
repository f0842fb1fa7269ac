#pragma once

#include <cmath>
#include <complex>

#include "hyperseries/core.hpp"
#include "hyperseries/special_functions.hpp"

namespace hyperseries {

inline constexpr double kSqrtPi = 1.7724538509055160272981674833411452;

/// Integral over the real line of exp(-theta^2 x^2) exp(i k x):
/// sqrt(pi)/|theta| * exp(-k^2 / (4 theta^2)).
inline double fourier_gaussian(double theta, double k) {
  if (theta == 0.0 || !std::isfinite(theta) || !std::isfinite(k)) {
    throw NumericError(ErrorCode::InvalidArgument, "fourier_gaussian: theta must be finite and nonzero");
  }
  return kSqrtPi / std::abs(theta) * std::exp(-k * k / (4.0 * theta * theta));
}

namespace detail {

// 1F1(a; b; z) for real z <= 0 through Kummer's transformation
// e^z 1F1(b - a; b; -z), whose terms do not alternate.
inline double kummer_1f1(double a, double b, double z, const TruncationPolicy& policy) {
  const SeriesEvaluation s = pfq(PFqParams{{b - a}, {b}}, -z, policy);
  return std::exp(z) * s.value.real();
}

}  // namespace detail

/// Integral over the real line of x^alpha exp(-theta^2 x^2) exp(i k x) for
/// integer alpha:
///   even alpha >= 0:  Gamma((alpha+1)/2)/|theta|^(alpha+1) 1F1((alpha+1)/2; 1/2; -k^2/(4 theta^2))
///   odd alpha >= -1:  i k Gamma(alpha/2+1)/|theta|^(alpha+2) 1F1(alpha/2+1; 3/2; -k^2/(4 theta^2))
/// Even results have an exactly zero imaginary part, odd results an exactly
/// zero real part.
inline ComplexScalar fourier_moment_gaussian(double alpha, double theta, double k, const TruncationPolicy& policy = {}) {
  if (theta == 0.0 || !std::isfinite(theta) || !std::isfinite(k)) {
    throw NumericError(ErrorCode::InvalidArgument, "fourier_moment_gaussian: theta must be finite and nonzero");
  }
  if (!std::isfinite(alpha) || alpha != std::floor(alpha) || alpha <= -2.0) {
    throw NumericError(ErrorCode::ParityDomainViolation,
                       "fourier_moment_gaussian: alpha must be an even integer >= 0 or an odd integer >= -1");
  }
  const double abs_theta = std::abs(theta);
  const double z = -k * k / (4.0 * theta * theta);
  const bool even = std::fmod(alpha, 2.0) == 0.0;
  if (even) {
    if (alpha < 0.0) {
      throw NumericError(ErrorCode::ParityDomainViolation, "fourier_moment_gaussian: even alpha must be >= 0");
    }
    const double a = (alpha + 1.0) / 2.0;
    const double scale = std::exp(log_gamma(a).real() - (alpha + 1.0) * std::log(abs_theta));
    return {scale * detail::kummer_1f1(a, 0.5, z, policy), 0.0};
  }
  const double a = alpha / 2.0 + 1.0;
  const double scale = std::exp(log_gamma(a).real() - (alpha + 2.0) * std::log(abs_theta));
  return {0.0, k * scale * detail::kummer_1f1(a, 1.5, z, policy)};
}

/// Integral over [0, inf) of x^alpha exp(-theta^2 x^2) exp(-u x):
///   Gamma(alpha+1)/u^(alpha+1) 2F0((alpha+1)/2, alpha/2+1; ; -4 theta^2/u^2)
/// with the 2F0 optimally truncated. error_estimate is the first omitted term
/// scaled by the prefactor, plus rounding of the series and the prefactor.
inline SeriesEvaluation laplace_moment_gaussian(double alpha, double theta, ComplexScalar u,
                                                const TruncationPolicy& policy = {}) {
  if (!(alpha > -1.0) || !std::isfinite(alpha) || !std::isfinite(theta) || !is_finite(u)) {
    throw NumericError(ErrorCode::InvalidArgument, "laplace_moment_gaussian: need finite alpha > -1");
  }
  if (!(u.real() > 0.0)) throw NumericError(ErrorCode::InvalidArgument, "laplace_moment_gaussian: need Re(u) > 0");
  const ComplexScalar log_prefactor = log_gamma(alpha + 1.0) - (alpha + 1.0) * std::log(u);
  const ComplexScalar prefactor = std::exp(log_prefactor);
  const ComplexScalar z = -4.0 * theta * theta / (u * u);
  SeriesEvaluation s = two_f_zero_asymptotic((alpha + 1.0) / 2.0, alpha / 2.0 + 1.0, z, policy);
  s.value *= prefactor;
  const double prefactor_rounding = (4.0 + std::abs(log_prefactor)) * kEpsilon * std::abs(s.value);
  s.error_estimate = s.error_estimate * std::abs(prefactor) + prefactor_rounding;
  return s;
}

/// Integral over [0, inf) of erf(x) exp(-u x), with erf(x) = int_0^x exp(-v^2) dv
/// (no 2/sqrt(pi) factor). Equals laplace_moment_gaussian(0, 1, u) / u.
inline SeriesEvaluation laplace_erf(ComplexScalar u, const TruncationPolicy& policy = {}) {
  SeriesEvaluation s = laplace_moment_gaussian(0.0, 1.0, u, policy);
  s.value /= u;
  s.error_estimate /= std::abs(u);
  return s;
}

}  // namespace hyperseries
