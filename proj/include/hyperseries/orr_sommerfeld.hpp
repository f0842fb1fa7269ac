#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseries/core.hpp"
#include "hyperseries/oracle.hpp"
#include "hyperseries/special_functions.hpp"

namespace hyperseries {

/// Orr-Sommerfeld parameters for plane Couette flow U(y) = y.
struct OSParams {
  double k = 1.0;
  double r = 10.0;
  double Re = 100.0;
  ComplexScalar omega{0.0, 0.1};

  /// lambda = i Re omega - r^2 k^2.
  ComplexScalar lambda_os() const { return ComplexScalar(0.0, Re) * omega - r * r * k * k; }

  /// c = (i Re k)^(1/3), principal branch.
  ComplexScalar airy_scale() const { return std::pow(ComplexScalar(0.0, Re * k), 1.0 / 3.0); }

  /// Shift s with Ai(c (y - s)) solving chi'' = (r^2 k^2 + i Re k (y - omega/k)) chi;
  /// s = lambda / (i Re k) = omega/k + i r^2 k / Re.
  ComplexScalar airy_shift() const { return lambda_os() / ComplexScalar(0.0, Re * k); }

  void validate() const {
    if (!(k > 0.0) || !(r >= 1.0) || !(Re > 0.0) || !std::isfinite(k) || !std::isfinite(r) || !std::isfinite(Re) ||
        !is_finite(omega)) {
      throw NumericError(ErrorCode::InvalidArgument, "OSParams: need k > 0, r >= 1, Re > 0 and finite omega");
    }
  }
};

enum class OSMethod { quadrature, series };

constexpr std::string_view to_string(OSMethod m) { return m == OSMethod::quadrature ? "quadrature" : "series"; }

struct OSSolution {
  double y = 0.0;
  ComplexScalar phi{};
  OSMethod method = OSMethod::quadrature;
  double error_estimate = 0.0;
  std::int64_t terms_used = 0;
  bool converged = true;
  std::vector<std::string> warnings;
};

/// Series validity cap for airy_ai.
inline constexpr double kAiryCap = 12.0;

/// Ai(z) = 3^(-2/3)/Gamma(2/3) 0F1(;2/3;z^3/9) - 3^(-1/3) z/Gamma(1/3) 0F1(;4/3;z^3/9).
/// error_estimate includes the cancellation between the two branches.
inline SeriesEvaluation airy_ai(ComplexScalar z, const TruncationPolicy& policy = {}) {
  if (!is_finite(z)) throw NumericError(ErrorCode::InvalidArgument, "airy_ai: non-finite argument");
  if (std::abs(z) > kAiryCap) throw NumericError(ErrorCode::ArgumentTooLarge, "airy_ai: |z| exceeds 12");
  const ComplexScalar w = z * z * z / 9.0;
  const double c1 = std::pow(3.0, -2.0 / 3.0) / gamma(2.0 / 3.0).real();
  const double c2 = std::pow(3.0, -1.0 / 3.0) / gamma(1.0 / 3.0).real();
  const SeriesEvaluation f1 = pfq(PFqParams{{}, {2.0 / 3.0}}, w, policy);
  const SeriesEvaluation f2 = pfq(PFqParams{{}, {4.0 / 3.0}}, w, policy);
  const ComplexScalar a = c1 * f1.value;
  const ComplexScalar b = c2 * z * f2.value;

  SeriesEvaluation result;
  result.value = a - b;
  result.terms_used = std::max(f1.terms_used, f2.terms_used);
  result.error_estimate = c1 * f1.error_estimate + c2 * std::abs(z) * f2.error_estimate +
                          kEpsilon * (std::abs(a) + std::abs(b));
  result.mode = SeriesMode::convergent;
  result.converged = f1.converged && f2.converged;
  return result;
}

namespace detail {

// Ai from the series when its own error bound meets tol, otherwise from the
// contour-integral representation.
inline ComplexScalar airy_ai_accurate(ComplexScalar z, double tol, double* error = nullptr) {
  if (std::abs(z) <= kAiryCap) {
    const SeriesEvaluation s = airy_ai(z);
    if (s.error_estimate <= tol * std::abs(s.value)) {
      if (error != nullptr) *error = s.error_estimate;
      return s.value;
    }
  }
  const auto q = oracle::airy_ai_integral<double>(z, tol);
  if (error != nullptr) *error = q.error_estimate;
  return q.value;
}

}  // namespace detail

/// Green's-function solution
///   phi(y) = e^{-rky}/(rk) int_0^y cosh(rk xi) Ai(c(xi - s)) dxi
///          + cosh(rky)/(rk) int_y^inf e^{-rk xi} Ai(c(xi - s)) dxi
/// with c = (i Re k)^(1/3) and s = OSParams::airy_shift().
inline OSSolution phi_quadrature(double y, const OSParams& params, double tol = 1e-10) {
  params.validate();
  if (!(y >= 0.0) || !std::isfinite(y)) throw NumericError(ErrorCode::InvalidArgument, "phi_quadrature: need y >= 0");
  if (!(tol > 0.0)) throw NumericError(ErrorCode::InvalidArgument, "phi_quadrature: tolerance must be positive");
  const double rk = params.r * params.k;
  const ComplexScalar c = params.airy_scale();
  const ComplexScalar s = params.airy_shift();
  const double airy_tol = std::max(tol * 1e-2, 1e-14);
  auto ai = [&](double xi) { return detail::airy_ai_accurate(c * (xi - s), airy_tol); };

  // e^{-rky} cosh(rk xi) = (e^{rk(xi-y)} + e^{-rk(xi+y)}) / 2
  auto inner = [&](double xi) {
    return 0.5 * (std::exp(rk * (xi - y)) + std::exp(-rk * (xi + y))) * ai(xi);
  };
  // cosh(rky) e^{-rk(y+t)} = (1 + e^{-2rky}) e^{-rk t} / 2
  auto outer = [&](double t) { return 0.5 * (1.0 + std::exp(-2.0 * rk * y)) * std::exp(-rk * t) * ai(y + t); };

  const auto near = oracle::quad_finite<double>(inner, 0.0, y, tol);
  const auto far = oracle::quad_semi_infinite<double>(outer, tol);

  OSSolution sol;
  sol.y = y;
  sol.method = OSMethod::quadrature;
  sol.phi = (near.value + far.value) / rk;
  sol.error_estimate = (near.error_estimate + far.error_estimate) / rk;
  sol.terms_used = near.evaluations + far.evaluations;
  sol.converged = near.converged && far.converged;
  return sol;
}

/// Which bracket of the printed series a coefficient belongs to. A and C use
/// the argument lambda, B and D the argument y - lambda; E and F form the
/// second brace.
enum class SeriesBlock { A, B, C, D, E, F };

namespace detail {

struct SeriesConstants {
  ComplexScalar lam;   // the shift s, standing in for the printed lambda
  ComplexScalar d;     // y - lam
  double rk;
  ComplexScalar ch_l, sh_l;    // cosh, sinh of rk*lam
  ComplexScalar ch_d, sh_d;    // cosh, sinh of rk*d
  double g13, g23;             // Gamma(1/3), Gamma(2/3)
  double cbrt3;                // 3^(1/3)
};

inline SeriesConstants series_constants(double y, const OSParams& params) {
  SeriesConstants k;
  k.lam = params.airy_shift();
  k.d = y - k.lam;
  k.rk = params.r * params.k;
  k.ch_l = std::cosh(k.rk * k.lam);
  k.sh_l = std::sinh(k.rk * k.lam);
  k.ch_d = std::cosh(k.rk * k.d);
  k.sh_d = std::sinh(k.rk * k.d);
  k.g13 = gamma(1.0 / 3.0).real();
  k.g23 = gamma(2.0 / 3.0).real();
  k.cbrt3 = std::cbrt(3.0);
  return k;
}

inline double inv_gamma_int(std::int64_t n) { return std::exp(-std::lgamma(static_cast<double>(n))); }

inline ComplexScalar block_coefficient(SeriesBlock block, std::int64_t j, const SeriesConstants& k) {
  const ComplexScalar wl = std::pow(k.rk * k.lam, 2.0 * static_cast<double>(j));
  const ComplexScalar wd = std::pow(k.rk * k.d, 2.0 * static_cast<double>(j));
  const ComplexScalar hyp = k.ch_l * k.ch_l + k.sh_l * k.sh_l;
  const ComplexScalar cross = 2.0 * k.rk * k.lam * k.ch_l * k.sh_l;
  switch (block) {
    case SeriesBlock::A:
      return k.lam / k.g23 * (hyp * wl * inv_gamma_int(2 * j + 2) - cross * wl * inv_gamma_int(2 * j + 3));
    case SeriesBlock::B: {
      const ComplexScalar first = k.ch_l / k.g23 *
                                  (k.d * k.ch_d * wd * inv_gamma_int(2 * j + 2) -
                                   k.rk * k.d * k.d * k.sh_d * wd * inv_gamma_int(2 * j + 3));
      const ComplexScalar second = k.sh_l / k.g23 *
                                   (k.d * k.sh_d * wd * inv_gamma_int(2 * j + 2) -
                                    k.rk * k.d * k.d * k.ch_d * wd * inv_gamma_int(2 * j + 3));
      return first - second;
    }
    case SeriesBlock::C:
      return k.lam * k.lam / k.g23 * (hyp * wl * inv_gamma_int(2 * j + 3) - cross * wl * inv_gamma_int(2 * j + 4));
    case SeriesBlock::D: {
      const ComplexScalar d2 = k.d * k.d;
      const ComplexScalar d3 = d2 * k.d;
      const ComplexScalar first = k.cbrt3 * k.ch_l / k.g13 *
                                  (d2 * k.ch_d * wd * inv_gamma_int(2 * j + 3) -
                                   k.rk * d3 * k.sh_d * wd * inv_gamma_int(2 * j + 4));
      const ComplexScalar second = k.cbrt3 * k.sh_l / k.g13 *
                                   (d2 * k.sh_d * wd * inv_gamma_int(2 * j + 3) -
                                    k.rk * d3 * k.ch_d * wd * inv_gamma_int(2 * j + 4));
      return first - second;
    }
    case SeriesBlock::E:
      return k.d / k.g23 * std::pow(k.rk * k.d, static_cast<double>(j)) * inv_gamma_int(j + 2);
    case SeriesBlock::F:
      return k.cbrt3 * k.d * k.d / k.g13 * std::pow(k.rk * k.d, static_cast<double>(j)) * inv_gamma_int(j + 3);
  }
  return {};
}

// 2F3(first, 1; (j+shift)/3, (j+shift+1)/3, (j+shift+2)/3; z)
inline SeriesEvaluation block_hypergeometric(double first, std::int64_t j, int shift, ComplexScalar z,
                                             const TruncationPolicy& policy) {
  const double base = static_cast<double>(j + shift);
  return pfq(PFqParams{{first, 1.0}, {base / 3.0, (base + 1.0) / 3.0, (base + 2.0) / 3.0}}, z, policy);
}

}  // namespace detail

/// j-th coefficient of a bracket of the series form, without its 2F3 factor.
/// The printed lambda is taken to be OSParams::airy_shift().
inline ComplexScalar phi_series_block_coefficient(SeriesBlock block, std::int64_t j, double y, const OSParams& params) {
  params.validate();
  if (j < 0) throw NumericError(ErrorCode::InvalidArgument, "phi_series_block_coefficient: j must be >= 0");
  return detail::block_coefficient(block, j, detail::series_constants(y, params));
}

inline constexpr std::string_view kSeriesInterpretationFlag =
    "InterpretationFlag: brackets juxtaposed without an operator are summed; each 2F3 sits inside its j-sum; "
    "Ai prefactor 3^(-2/3)/(rk) taken as printed (standard Ai would carry 3^(-2/3) itself and a factor c on "
    "the argument); lambda in the series is the Airy shift s = lambda/(i Re k)";

/// Series form of phi(y) summed as printed:
///   e^{-rky}/(3^{2/3} rk) { A + B - C + D } + cosh(rky) e^{-rky}/(3^{2/3} rk) { E + F }
/// where every block is a j-sum of its coefficient times a 2F3 factor. The
/// result always carries the interpretation flag as a warning.
inline OSSolution phi_series(double y, const OSParams& params, const TruncationPolicy& policy = {}) {
  params.validate();
  policy.validate();
  if (!(y >= 0.0) || !std::isfinite(y)) throw NumericError(ErrorCode::InvalidArgument, "phi_series: need y >= 0");
  const detail::SeriesConstants k = detail::series_constants(y, params);
  const ComplexScalar ire(0.0, params.Re * params.k);
  const ComplexScalar z_lam = -ire * k.lam * k.lam * k.lam / 9.0;
  const ComplexScalar z_d = ire * k.d * k.d * k.d / 9.0;
  const std::int64_t budget = std::max<std::int64_t>(1, policy.max_terms / 10);

  CompensatedSum first;
  CompensatedSum second;
  double inner_error = 0.0;
  double last = 0.0;
  int small_run = 0;
  std::int64_t j = 0;
  bool converged = false;
  for (; j < budget; ++j) {
    using detail::block_coefficient;
    using detail::block_hypergeometric;
    const auto fa = block_hypergeometric(1.0 / 3.0, j, 1, z_lam, policy);
    const auto fb = block_hypergeometric(1.0 / 3.0, j, 1, z_d, policy);
    const auto fc = block_hypergeometric(1.0 / 3.0, j, 2, z_lam, policy);
    const auto fd = block_hypergeometric(2.0 / 3.0, j, 2, z_d, policy);
    const ComplexScalar ca = block_coefficient(SeriesBlock::A, j, k);
    const ComplexScalar cb = block_coefficient(SeriesBlock::B, j, k);
    const ComplexScalar cc = block_coefficient(SeriesBlock::C, j, k);
    const ComplexScalar cd = block_coefficient(SeriesBlock::D, j, k);
    const ComplexScalar ce = block_coefficient(SeriesBlock::E, j, k);
    const ComplexScalar cf = block_coefficient(SeriesBlock::F, j, k);

    const ComplexScalar t1 = ca * fa.value + cb * fb.value - cc * fc.value + cd * fd.value;
    const ComplexScalar t2 = ce * fb.value + cf * fd.value;
    first += t1;
    second += t2;
    inner_error += std::abs(ca) * fa.error_estimate + std::abs(cb) * fb.error_estimate +
                   std::abs(cc) * fc.error_estimate + std::abs(cd) * fd.error_estimate +
                   std::abs(ce) * fb.error_estimate + std::abs(cf) * fd.error_estimate;
    last = std::abs(t1) + std::abs(t2);
    const double scale = std::abs(first.value()) + std::abs(second.value());
    if (last < policy.rel_tol * scale + policy.abs_tol && j > 0) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= policy.consecutive_small) {
      converged = true;
      ++j;
      break;
    }
  }

  const double rk = k.rk;
  const ComplexScalar pre = 1.0 / (std::pow(3.0, 2.0 / 3.0) * rk);
  const ComplexScalar decay = std::exp(-rk * y);
  OSSolution sol;
  sol.y = y;
  sol.method = OSMethod::series;
  sol.phi = pre * decay * (first.value() + std::cosh(rk * y) * second.value());
  sol.error_estimate = std::abs(pre) * (last + inner_error + first.rounding_bound() + second.rounding_bound()) *
                       std::max(1.0, std::abs(decay) * std::cosh(rk * y));
  sol.terms_used = j;
  sol.converged = converged;
  sol.warnings.emplace_back(kSeriesInterpretationFlag);
  if (!converged) {
    throw NotConverged("phi_series: outer series budget exhausted",
                       PartialResult{sol.phi, sol.error_estimate, sol.terms_used});
  }
  return sol;
}

/// Normalized residual of
///   phi'''' - [2 r^2 k^2 + i Re k (y - omega/k)] phi'' + [r^4 k^4 + i r^2 Re k^3 (y - omega/k)] phi
/// divided by max(|phi|, 1) r^4 k^4, with derivatives from extrapolated
/// central differences. Raises NoiseFloor when the differences do not settle.
template <class Phi>
double os_residual(double y, const OSParams& params, Phi phi_fn, double fd_tol = 1e-6) {
  params.validate();
  const double rk = params.r * params.k;
  // Stencils stay inside y > 0 where phi is defined.
  double h2 = 0.5 / rk;
  double h4 = 1.0 / rk;
  if (y > 0.0) {
    h2 = std::min(h2, 0.8 * y);
    h4 = std::min(h4, 0.4 * y);
  }
  auto f = [&phi_fn](double t) { return ComplexScalar(phi_fn(t)); };
  const ComplexScalar phi = f(y);
  const ComplexScalar d2 = oracle::fd_derivative(f, y, fd_tol, 2, h2);
  const ComplexScalar d4 = oracle::fd_derivative(f, y, fd_tol, 4, h4);
  const ComplexScalar shear = y - params.omega / params.k;
  const ComplexScalar ire(0.0, params.Re * params.k);
  const double r2k2 = rk * rk;
  const ComplexScalar residual = d4 - (2.0 * r2k2 + ire * shear) * d2 + (r2k2 * r2k2 + r2k2 * ire * shear) * phi;
  return std::abs(residual) / (std::max(std::abs(phi), 1.0) * r2k2 * r2k2);
}

}  // namespace hyperseries
