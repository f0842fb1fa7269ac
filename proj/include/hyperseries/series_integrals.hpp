#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseries/core.hpp"
#include "hyperseries/special_functions.hpp"

namespace hyperseries {

enum class Kernel { exp, cosh, sinh, cos, sin };

constexpr std::string_view to_string(Kernel kernel) {
  switch (kernel) {
    case Kernel::exp: return "exp";
    case Kernel::cosh: return "cosh";
    case Kernel::sinh: return "sinh";
    case Kernel::cos: return "cos";
    case Kernel::sin: return "sin";
  }
  return "exp";
}

inline Kernel parse_kernel(std::string_view name) {
  for (Kernel k : {Kernel::exp, Kernel::cosh, Kernel::sinh, Kernel::cos, Kernel::sin}) {
    if (name == to_string(k)) return k;
  }
  throw NumericError(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

/// Integrand x^alpha * kernel(eta x^beta) * pFq(a; b; lambda x^gamma).
struct IntegrandSpec {
  Kernel kernel = Kernel::exp;
  ComplexScalar alpha{0.0};
  ComplexScalar beta{1.0};
  ComplexScalar eta{1.0};
  ComplexScalar lambda{0.0};
  ComplexScalar gamma{1.0};
  PFqParams pfq;

  void validate() const {
    for (auto v : {alpha, beta, eta, lambda, gamma}) {
      if (!is_finite(v)) throw NumericError(ErrorCode::InvalidArgument, "IntegrandSpec: non-finite constant");
    }
    if (gamma == ComplexScalar(0.0, 0.0)) {
      throw NumericError(ErrorCode::InvalidArgument, "IntegrandSpec: gamma must be nonzero");
    }
  }
};

struct AntiderivativeValue {
  ComplexScalar value{};
  std::int64_t outer_terms_used = 0;
  SeriesEvaluation inner_diagnostics;  // inner pFq call with the largest error estimate
  double error_estimate = 0.0;
  std::vector<std::string> warnings;
  bool converged = true;
};

/// Parameters of the lifted p+j+1 F q+j+1: the upper list gains
/// (alpha + m*step*beta + 1)/gamma and the lower list
/// (alpha + gamma + m*step*beta + 1)/gamma for m = 0..j.
inline PFqParams lifted_params(const IntegrandSpec& spec, std::int64_t j, std::int64_t step = 1) {
  spec.validate();
  if (j < 0 || step < 1) throw NumericError(ErrorCode::InvalidArgument, "lifted_params: need j >= 0 and step >= 1");
  PFqParams lifted = spec.pfq;
  lifted.upper.reserve(lifted.upper.size() + static_cast<std::size_t>(j) + 1);
  lifted.lower.reserve(lifted.lower.size() + static_cast<std::size_t>(j) + 1);
  for (std::int64_t m = 0; m <= j; ++m) {
    const ComplexScalar shift = spec.alpha + static_cast<double>(m * step) * spec.beta + 1.0;
    const ComplexScalar lower = (shift + spec.gamma) / spec.gamma;
    if (near_nonpositive_integer(lower, 1e-12)) {
      throw NumericError(ErrorCode::LiftedLowerPole, "lifted_params: lifted lower parameter is a nonpositive integer");
    }
    lifted.upper.push_back(shift / spec.gamma);
    lifted.lower.push_back(lower);
  }
  return lifted;
}

/// Integrand value x^alpha * kernel(eta x^beta) * pFq(lambda x^gamma) at real x > 0.
inline ComplexScalar integrand(const IntegrandSpec& spec, double x, const TruncationPolicy& policy = {}) {
  spec.validate();
  if (!(x > 0.0)) throw NumericError(ErrorCode::InvalidArgument, "integrand: x must be positive");
  const double log_x = std::log(x);
  const ComplexScalar u = spec.eta * std::exp(spec.beta * log_x);
  ComplexScalar k;
  switch (spec.kernel) {
    case Kernel::exp: k = std::exp(u); break;
    case Kernel::cosh: k = std::cosh(u); break;
    case Kernel::sinh: k = std::sinh(u); break;
    case Kernel::cos: k = std::cos(u); break;
    case Kernel::sin: k = std::sin(u); break;
  }
  ComplexScalar f = 1.0;
  if (spec.lambda != ComplexScalar(0.0, 0.0)) f = pfq(spec.pfq, spec.lambda * std::exp(spec.gamma * log_x), policy).value;
  return std::exp(spec.alpha * log_x) * k * f;
}

namespace detail {

inline constexpr double kProductPoleTol = 1e-12;
inline constexpr double kProductNearPoleTol = 1e-6;

// Outer terms T_j = w^j / prod_{m=0}^{j} (alpha + m beta + 1) * F_j(lambda x^gamma)
// with w = beta * eta * x^beta, accumulated by parity and by the
// alternating sign (-1)^floor(j/2) that the trigonometric kernels need.
struct OuterSums {
  CompensatedSum even;
  CompensatedSum odd;
  CompensatedSum even_alt;  // sum_j (-1)^j T_{2j}
  CompensatedSum odd_alt;   // sum_j (-1)^j T_{2j+1}
  std::int64_t terms = 0;
  double last_term = 0.0;
  double inner_error = 0.0;  // sum over j of |coefficient_j| * error(F_j)
  SeriesEvaluation worst_inner;
  std::vector<std::string> warnings;
  bool converged = true;
};

inline OuterSums outer_sums(const IntegrandSpec& spec, double x, const TruncationPolicy& policy) {
  OuterSums sums;
  sums.worst_inner.converged = true;
  const double log_x = std::log(x);
  const ComplexScalar w = spec.beta * spec.eta * std::exp(spec.beta * log_x);
  const bool has_inner = spec.lambda != ComplexScalar(0.0, 0.0);
  const ComplexScalar inner_arg = has_inner ? spec.lambda * std::exp(spec.gamma * log_x) : ComplexScalar(0.0);
  const std::int64_t budget = std::max<std::int64_t>(1, policy.max_terms / 10);

  ComplexScalar coefficient = 1.0;
  PFqParams lifted = spec.pfq;
  int small_run = 0;
  bool near_pole_warned = false;
  for (std::int64_t j = 0;; ++j) {
    const ComplexScalar factor = spec.alpha + static_cast<double>(j) * spec.beta + 1.0;
    if (std::abs(factor) < kProductPoleTol) {
      throw NumericError(ErrorCode::ProductPole, "antiderivative: alpha + m*beta + 1 vanishes for m = " +
                                                     std::to_string(j));
    }
    if (std::abs(factor) < kProductNearPoleTol && !near_pole_warned) {
      sums.warnings.push_back("near product pole: |alpha + m*beta + 1| < 1e-6 at m = " + std::to_string(j));
      near_pole_warned = true;
    }
    coefficient = j == 0 ? 1.0 / factor : coefficient * w / factor;

    ComplexScalar inner = 1.0;
    if (has_inner) {
      const ComplexScalar lower = (factor + spec.gamma) / spec.gamma;
      if (near_nonpositive_integer(lower, 1e-12)) {
        throw NumericError(ErrorCode::LiftedLowerPole, "antiderivative: lifted lower parameter is a nonpositive integer");
      }
      lifted.upper.push_back(factor / spec.gamma);
      lifted.lower.push_back(lower);
      const SeriesEvaluation eval = pfq(lifted, inner_arg, policy);
      inner = eval.value;
      sums.inner_error += std::abs(coefficient) * eval.error_estimate;
      if (eval.error_estimate >= sums.worst_inner.error_estimate) sums.worst_inner = eval;
    }

    const ComplexScalar term = coefficient * inner;
    const bool even = j % 2 == 0;
    const double sign = (j / 2) % 2 == 0 ? 1.0 : -1.0;
    if (even) {
      sums.even += term;
      sums.even_alt += sign * term;
    } else {
      sums.odd += term;
      sums.odd_alt += sign * term;
    }
    sums.terms = j + 1;
    sums.last_term = std::abs(term);

    const double scale = std::abs(sums.even.value()) + std::abs(sums.odd.value());
    const double ratio = j == 0 ? 0.0 : std::abs(w / (factor + spec.beta));
    if (sums.last_term < policy.rel_tol * scale + policy.abs_tol && ratio < 1.0) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= policy.consecutive_small || term == ComplexScalar(0.0, 0.0) ||
        (w == ComplexScalar(0.0, 0.0))) {
      return sums;
    }
    if (sums.terms >= budget) {
      sums.converged = false;
      return sums;
    }
  }
}

}  // namespace detail

/// The series multiplying x^(alpha+1) in the antiderivative, including the
/// kernel prefactors:
///   exp:  e^u  sum_j (-1)^j T_j
///   cosh: cosh(u) sum T_2j - sinh(u) sum T_2j+1
///   sinh: sinh(u) sum T_2j - cosh(u) sum T_2j+1
///   cos:  cos(u) sum (-1)^j T_2j + sin(u) sum (-1)^j T_2j+1
///   sin:  sin(u) sum (-1)^j T_2j - cos(u) sum (-1)^j T_2j+1
/// where u = eta x^beta and T_j uses w = beta eta x^beta.
inline AntiderivativeValue series_form(const IntegrandSpec& spec, double x, const TruncationPolicy& policy = {}) {
  spec.validate();
  policy.validate();
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw NumericError(ErrorCode::InvalidArgument, "series_form: x must be positive and finite");
  }
  const double log_x = std::log(x);
  const ComplexScalar u = spec.eta * std::exp(spec.beta * log_x);
  const detail::OuterSums sums = detail::outer_sums(spec, x, policy);

  const ComplexScalar e = sums.even.value();
  const ComplexScalar o = sums.odd.value();
  const ComplexScalar ea = sums.even_alt.value();
  const ComplexScalar oa = sums.odd_alt.value();
  ComplexScalar value;
  double prefactor = 1.0;
  switch (spec.kernel) {
    case Kernel::exp:
      value = std::exp(u) * (e - o);
      prefactor = std::abs(std::exp(u));
      break;
    case Kernel::cosh:
      value = std::cosh(u) * e - std::sinh(u) * o;
      prefactor = std::max(std::abs(std::cosh(u)), std::abs(std::sinh(u)));
      break;
    case Kernel::sinh:
      value = std::sinh(u) * e - std::cosh(u) * o;
      prefactor = std::max(std::abs(std::cosh(u)), std::abs(std::sinh(u)));
      break;
    case Kernel::cos:
      value = std::cos(u) * ea + std::sin(u) * oa;
      prefactor = std::max(std::abs(std::cos(u)), std::abs(std::sin(u)));
      break;
    case Kernel::sin:
      value = std::sin(u) * ea - std::cos(u) * oa;
      prefactor = std::max(std::abs(std::cos(u)), std::abs(std::sin(u)));
      break;
  }
  if (!is_finite(value)) throw NumericError(ErrorCode::ArgumentTooLarge, "series_form: value overflowed");

  AntiderivativeValue result;
  result.value = value;
  result.outer_terms_used = sums.terms;
  result.inner_diagnostics = sums.worst_inner;
  const double rounding = 2.0 * kEpsilon * prefactor * (sums.even.magnitude() + sums.odd.magnitude());
  result.error_estimate = std::max(1.0, prefactor) * (sums.last_term + sums.inner_error) + rounding;
  result.warnings = sums.warnings;
  result.converged = sums.converged;
  if (!sums.converged) {
    throw NotConverged("antiderivative: outer series budget exhausted",
                       PartialResult{result.value, result.error_estimate, result.outer_terms_used});
  }
  return result;
}

/// Antiderivative x^(alpha+1) * series_form(spec, x), with integration
/// constant zero. x must be real and nonnegative; x = 0 is accepted when every
/// term vanishes there.
inline AntiderivativeValue antiderivative(const IntegrandSpec& spec, ComplexScalar x,
                                          const TruncationPolicy& policy = {}) {
  spec.validate();
  if (x.imag() != 0.0 || !(x.real() >= 0.0) || !std::isfinite(x.real())) {
    throw NumericError(ErrorCode::InvalidArgument, "antiderivative: x must be real and nonnegative");
  }
  if (x.real() == 0.0) {
    const bool power_vanishes = (spec.alpha + 1.0).real() > 0.0;
    const bool kernel_finite = spec.beta.real() > 0.0 || spec.eta == ComplexScalar(0.0, 0.0);
    const bool inner_finite = spec.gamma.real() > 0.0 || spec.lambda == ComplexScalar(0.0, 0.0);
    if (!(power_vanishes && kernel_finite && inner_finite)) {
      throw NumericError(ErrorCode::InvalidArgument, "antiderivative: series is singular at x = 0");
    }
    AntiderivativeValue zero;
    zero.inner_diagnostics.value = 1.0;
    zero.inner_diagnostics.terms_used = 1;
    zero.inner_diagnostics.converged = true;
    return zero;
  }
  const ComplexScalar power = std::exp((spec.alpha + 1.0) * std::log(x.real()));
  AntiderivativeValue result;
  try {
    result = series_form(spec, x.real(), policy);
  } catch (const NotConverged& e) {
    const auto& p = e.partial();
    throw NotConverged(e.what(), PartialResult{power * p.value, std::abs(power) * p.error_estimate, p.terms_used});
  }
  result.value *= power;
  result.error_estimate *= std::max(1.0, std::abs(power));
  return result;
}

/// antiderivative(b) - antiderivative(a) for real endpoints.
inline AntiderivativeValue definite_integral(const IntegrandSpec& spec, double a, double b,
                                             const TruncationPolicy& policy = {}) {
  spec.validate();
  policy.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw NumericError(ErrorCode::InvalidArgument, "definite_integral: endpoints must be finite");
  }
  if (a == b) {
    AntiderivativeValue zero;
    zero.inner_diagnostics.value = 1.0;
    zero.inner_diagnostics.converged = true;
    return zero;
  }
  const AntiderivativeValue upper = antiderivative(spec, b, policy);
  const AntiderivativeValue lower = antiderivative(spec, a, policy);
  AntiderivativeValue result;
  result.value = upper.value - lower.value;
  result.error_estimate = upper.error_estimate + lower.error_estimate;
  result.outer_terms_used = std::max(upper.outer_terms_used, lower.outer_terms_used);
  result.inner_diagnostics = upper.inner_diagnostics.error_estimate >= lower.inner_diagnostics.error_estimate
                                 ? upper.inner_diagnostics
                                 : lower.inner_diagnostics;
  result.warnings = upper.warnings;
  for (const auto& w : lower.warnings) {
    if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end()) {
      result.warnings.push_back(w);
    }
  }
  return result;
}

}  // namespace hyperseries
