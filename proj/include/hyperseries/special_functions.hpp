#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperseries/core.hpp"

namespace hyperseries {

/// Upper parameters a_1..a_p and lower parameters b_1..b_q of a pFq.
struct PFqParams {
  std::vector<ComplexScalar> upper;
  std::vector<ComplexScalar> lower;

  std::size_t p() const { return upper.size(); }
  std::size_t q() const { return lower.size(); }
};

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

inline constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
inline constexpr double kLogPi = 1.1447298858494001741434273513530587;

// Valid for Re(z) >= 0.5.
inline ComplexScalar log_gamma_lanczos(ComplexScalar z) {
  z -= 1.0;
  ComplexScalar series = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  const ComplexScalar t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// Recurrence shifts below this bound; reflection is used further left.
inline constexpr double kRecurrenceFloor = -63.5;

inline bool is_exact_nonpositive_integer(ComplexScalar z, std::int64_t* n_out = nullptr) {
  if (z.imag() != 0.0 || z.real() > 0.0 || z.real() != std::floor(z.real())) return false;
  if (n_out != nullptr) *n_out = static_cast<std::int64_t>(-z.real());
  return true;
}

}  // namespace detail

/// Principal branch of ln Gamma(z).
///
/// For Re(z) >= -63.5 the imaginary part is the continuous principal branch
/// (upward recurrence with principal logarithms). Further left the reflection
/// formula is used and the imaginary part is only defined modulo 2*pi, which
/// leaves exp(log_gamma(z)) unaffected.
inline ComplexScalar log_gamma(ComplexScalar z) {
  if (!is_finite(z)) throw NumericError(ErrorCode::InvalidArgument, "log_gamma: non-finite argument");
  if (near_nonpositive_integer(z, 1e-12)) {
    throw NumericError(ErrorCode::PoleAtNonpositiveInteger, "log_gamma: pole at nonpositive integer");
  }
  if (z.real() >= 0.5) return detail::log_gamma_lanczos(z);

  if (z.real() >= detail::kRecurrenceFloor) {
    const auto shift = static_cast<int>(std::ceil(0.5 - z.real()));
    CompensatedSum logs;
    for (int k = 0; k < shift; ++k) logs += std::log(z + static_cast<double>(k));
    return detail::log_gamma_lanczos(z + static_cast<double>(shift)) - logs.value();
  }
  return detail::kLogPi - std::log(std::sin(kPi * z)) - detail::log_gamma_lanczos(1.0 - z);
}

inline ComplexScalar gamma(ComplexScalar z) { return std::exp(log_gamma(z)); }

/// 1/Gamma(z); exactly zero at the poles of Gamma.
inline ComplexScalar reciprocal_gamma(ComplexScalar z) {
  if (near_nonpositive_integer(z, 1e-12)) return 0.0;
  return std::exp(-log_gamma(z));
}

/// Rising factorial (theta)_n.
inline ComplexScalar pochhammer(ComplexScalar theta, std::int64_t n) {
  if (n < 0) throw NumericError(ErrorCode::InvalidArgument, "pochhammer: negative order");
  if (n == 0) return 1.0;
  std::int64_t m = 0;
  if (detail::is_exact_nonpositive_integer(theta, &m)) {
    if (m < n) return 0.0;
    // (-m)_n = (-1)^n m! / (m-n)!, still a finite product.
    ComplexScalar product = 1.0;
    for (std::int64_t k = 0; k < n; ++k) product *= theta + static_cast<double>(k);
    return product;
  }
  if (n <= 64) {
    ComplexScalar product = 1.0;
    for (std::int64_t k = 0; k < n; ++k) product *= theta + static_cast<double>(k);
    return product;
  }
  return std::exp(log_gamma(theta + static_cast<double>(n)) - log_gamma(theta));
}

/// Removes upper/lower pairs that agree to a few ulps; they contribute a factor
/// of one to every term.
inline PFqParams cancel_matching(const PFqParams& params) {
  PFqParams reduced;
  std::vector<bool> lower_used(params.lower.size(), false);
  for (const auto& a : params.upper) {
    bool cancelled = false;
    for (std::size_t j = 0; j < params.lower.size(); ++j) {
      if (lower_used[j]) continue;
      const auto& b = params.lower[j];
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      if (std::abs(a - b) <= 8.0 * kEpsilon * scale) {
        lower_used[j] = true;
        cancelled = true;
        break;
      }
    }
    if (!cancelled) reduced.upper.push_back(a);
  }
  for (std::size_t j = 0; j < params.lower.size(); ++j) {
    if (!lower_used[j]) reduced.lower.push_back(params.lower[j]);
  }
  return reduced;
}

namespace detail {

// Index of the last nonzero term when some upper parameter is a nonpositive
// integer (within 1e-12), or nullopt.
inline std::optional<std::int64_t> terminating_index(std::vector<ComplexScalar>& upper) {
  std::optional<std::int64_t> last;
  for (auto& a : upper) {
    std::int64_t m = 0;
    if (near_nonpositive_integer(a, 1e-12, &m)) {
      a = ComplexScalar(-static_cast<double>(m), 0.0);
      if (!last || m < *last) last = m;
    }
  }
  return last;
}

inline void validate_params(const PFqParams& params) {
  for (const auto& a : params.upper) {
    if (!is_finite(a)) throw NumericError(ErrorCode::InvalidArgument, "pfq: non-finite upper parameter");
  }
  for (const auto& b : params.lower) {
    if (!is_finite(b)) throw NumericError(ErrorCode::InvalidArgument, "pfq: non-finite lower parameter");
    if (near_nonpositive_integer(b, 1e-12)) {
      throw NumericError(ErrorCode::LowerParameterPole, "pfq: lower parameter is a nonpositive integer");
    }
  }
}

}  // namespace detail

namespace detail {

// Term-ratio summation of an already validated parameter set.
inline SeriesEvaluation sum_series(const PFqParams& reduced, ComplexScalar z,
                                   const std::optional<std::int64_t>& last_index, const TruncationPolicy& policy) {
  SeriesEvaluation result;
  result.mode = SeriesMode::convergent;
  CompensatedSum sum;
  ComplexScalar term = 1.0;
  int small_run = 0;
  std::int64_t n = 0;
  for (;;) {
    sum += term;
    ++result.terms_used;
    if (!is_finite(sum.value())) {
      throw NumericError(ErrorCode::ArgumentTooLarge, "pfq: partial sum overflowed");
    }
    if (last_index && n == *last_index) {
      result.value = sum.value();
      result.error_estimate = sum.rounding_bound();
      result.converged = true;
      return result;
    }

    ComplexScalar ratio = z / static_cast<double>(n + 1);
    const double dn = static_cast<double>(n);
    for (const auto& a : reduced.upper) ratio *= a + dn;
    for (const auto& b : reduced.lower) ratio /= b + dn;

    const double magnitude = std::abs(term);
    const double threshold = policy.rel_tol * std::abs(sum.value()) + policy.abs_tol;
    if (magnitude < threshold && std::abs(ratio) < 1.0) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= policy.consecutive_small || term == ComplexScalar(0.0, 0.0)) {
      result.value = sum.value();
      result.error_estimate = magnitude + sum.rounding_bound();
      result.converged = true;
      return result;
    }
    if (result.terms_used >= policy.max_terms) {
      throw NotConverged("pfq: max_terms exhausted",
                         PartialResult{sum.value(), magnitude + sum.rounding_bound(), result.terms_used});
    }
    term *= ratio;
    ++n;
  }
}

}  // namespace detail

/// Generalized hypergeometric series
///
///   pFq(a; b; z) = sum_n (a_1)_n...(a_p)_n / ((b_1)_n...(b_q)_n) z^n / n!
///
/// summed by the term-ratio recurrence with compensated accumulation. The
/// series stops once `consecutive_small` successive terms fall below
/// rel_tol*|partial| + abs_tol while the term ratio is below one. Terminating
/// (polynomial) series are summed exactly to their last term.
///
/// For 0F0 and 1F1 with Re z < 0 the alternating series is replaced by
/// Kummer's transformation, 1F1(a; b; z) = e^z 1F1(b - a; b; -z) and
/// 0F0(z) = 1 / 0F0(-z), which avoids the cancellation.
///
/// Throws DivergentSeries for p > q+1, and for p = q+1 with |z| >= 1, unless
/// the series terminates. Throws NotConverged when max_terms is exhausted.
inline SeriesEvaluation pfq(const PFqParams& params, ComplexScalar z, const TruncationPolicy& policy = {}) {
  policy.validate();
  if (!is_finite(z)) throw NumericError(ErrorCode::InvalidArgument, "pfq: non-finite argument");

  PFqParams reduced = cancel_matching(params);
  detail::validate_params(reduced);
  const auto last_index = detail::terminating_index(reduced.upper);

  if (z == ComplexScalar(0.0, 0.0) || (last_index && *last_index == 0)) {
    SeriesEvaluation one;
    one.value = 1.0;
    one.terms_used = 1;
    one.converged = true;
    return one;
  }

  const std::size_t p = reduced.p();
  const std::size_t q = reduced.q();
  if (!last_index) {
    if (p > q + 1) {
      throw NumericError(ErrorCode::DivergentSeries, "pfq: p > q+1 series diverges for z != 0");
    }
    if (p == q + 1 && std::abs(z) >= 1.0) {
      throw NumericError(ErrorCode::DivergentSeries, "pfq: p = q+1 requires |z| < 1");
    }
  }

  if (!last_index && z.real() < 0.0 && p == q && p <= 1) {
    if (p == 0) {
      SeriesEvaluation r = detail::sum_series(reduced, -z, std::nullopt, policy);
      const double magnitude = std::abs(r.value);
      r.value = 1.0 / r.value;
      r.error_estimate = r.error_estimate / (magnitude * magnitude) + kEpsilon * std::abs(r.value);
      return r;
    }
    const ComplexScalar a = reduced.upper[0];
    const ComplexScalar b = reduced.lower[0];
    PFqParams kummer{{b - a}, {b}};
    kummer = cancel_matching(kummer);
    const auto kummer_last = detail::terminating_index(kummer.upper);
    if (kummer_last && *kummer_last == 0) {
      SeriesEvaluation r;
      r.value = std::exp(z);
      r.terms_used = 1;
      r.error_estimate = kEpsilon * std::abs(r.value);
      r.converged = true;
      return r;
    }
    SeriesEvaluation r = detail::sum_series(kummer, -z, kummer_last, policy);
    const ComplexScalar factor = std::exp(z);
    r.value *= factor;
    r.error_estimate = std::abs(factor) * r.error_estimate + kEpsilon * std::abs(r.value);
    return r;
  }
  return detail::sum_series(reduced, z, last_index, policy);
}

/// Validity floor of the leading-order 1F1 asymptotic form.
inline constexpr double kAsymptotic1F1Floor = 30.0;

/// Leading-order large-|z| behaviour of 1F1(a; b; z):
///   Re z >= 0:  Gamma(b)/Gamma(a) e^z z^(a-b)
///   Re z <  0:  Gamma(b)/Gamma(b-a) (-z)^(-a)
/// error_estimate is the magnitude of the first omitted term of the
/// corresponding asymptotic series plus a rounding allowance.
/// 1F1(a; a; z) = e^z is returned exactly.
inline SeriesEvaluation pfq_1f1_asymptotic(ComplexScalar a, ComplexScalar b, ComplexScalar z) {
  if (!is_finite(a) || !is_finite(b) || !is_finite(z)) {
    throw NumericError(ErrorCode::InvalidArgument, "pfq_1f1_asymptotic: non-finite input");
  }
  SeriesEvaluation result;
  result.mode = SeriesMode::asymptotic;
  result.terms_used = 1;
  result.converged = true;
  if (a == b) {
    result.value = std::exp(z);
    result.error_estimate = 0.0;
    return result;
  }
  if (std::abs(z) < kAsymptotic1F1Floor) {
    throw NumericError(ErrorCode::ArgumentTooSmall, "pfq_1f1_asymptotic: |z| below validity floor 30");
  }
  if (near_nonpositive_integer(b, 1e-12)) {
    throw NumericError(ErrorCode::LowerParameterPole, "pfq_1f1_asymptotic: b is a nonpositive integer");
  }

  const bool a_pole = near_nonpositive_integer(a, 1e-12);
  const bool ba_pole = near_nonpositive_integer(b - a, 1e-12);
  // The exponential branch dominates for Re z >= 0 unless 1/Gamma(a) vanishes.
  const bool exponential_branch = (z.real() >= 0.0 && !a_pole) || ba_pole;

  ComplexScalar log_lead;
  ComplexScalar next_ratio;
  if (exponential_branch) {
    log_lead = log_gamma(b) - log_gamma(a) + z + (a - b) * std::log(z);
    next_ratio = (1.0 - a) * (b - a) / z;
  } else {
    log_lead = log_gamma(b) - log_gamma(b - a) - a * std::log(-z);
    next_ratio = a * (a - b + 1.0) / (-z);
  }
  result.value = std::exp(log_lead);
  if (!is_finite(result.value)) {
    throw NumericError(ErrorCode::ArgumentTooLarge, "pfq_1f1_asymptotic: leading term overflows");
  }
  result.error_estimate = std::abs(result.value * next_ratio) + 4.0 * kEpsilon * std::abs(result.value);
  return result;
}

/// Optimally truncated 2F0(a1, a2; ; z).
///
/// Terms are summed while their magnitude strictly decreases; the smallest
/// term is the first omitted one. Summation also stops once a term drops below
/// rel_tol*|partial| + abs_tol. error_estimate is the first omitted term's
/// magnitude plus the rounding bound of the accumulated sum.
inline SeriesEvaluation two_f_zero_asymptotic(ComplexScalar a1, ComplexScalar a2, ComplexScalar z,
                                              const TruncationPolicy& policy = {}) {
  policy.validate();
  if (!is_finite(a1) || !is_finite(a2) || !is_finite(z)) {
    throw NumericError(ErrorCode::InvalidArgument, "two_f_zero_asymptotic: non-finite input");
  }
  SeriesEvaluation result;
  result.mode = SeriesMode::asymptotic;
  if (z == ComplexScalar(0.0, 0.0)) {
    result.value = 1.0;
    result.terms_used = 1;
    result.converged = true;
    return result;
  }

  std::vector<ComplexScalar> upper{a1, a2};
  const auto last_index = detail::terminating_index(upper);
  auto ratio_at = [&](std::int64_t n) {
    const double dn = static_cast<double>(n);
    return (upper[0] + dn) * (upper[1] + dn) * z / (dn + 1.0);
  };

  CompensatedSum sum;
  if (last_index) {
    ComplexScalar term = 1.0;
    for (std::int64_t n = 0; n <= *last_index; ++n) {
      sum += term;
      term *= ratio_at(n);
    }
    result.value = sum.value();
    result.terms_used = *last_index + 1;
    result.error_estimate = sum.rounding_bound();
    result.converged = true;
    return result;
  }

  if (std::abs(ratio_at(0)) >= 1.0) {
    throw NumericError(ErrorCode::NoDecreasingRegime, "two_f_zero_asymptotic: first term ratio >= 1");
  }

  ComplexScalar current = 1.0;
  std::int64_t n = 0;
  for (;;) {
    const ComplexScalar next = current * ratio_at(n);
    const bool negligible = std::abs(current) < policy.rel_tol * std::abs(sum.value()) + policy.abs_tol;
    if (negligible || std::abs(next) >= std::abs(current)) break;
    sum += current;
    current = next;
    ++n;
    if (n >= policy.max_terms) {
      throw NotConverged("two_f_zero_asymptotic: max_terms exhausted",
                         PartialResult{sum.value(), std::abs(current) + sum.rounding_bound(), n});
    }
  }
  result.value = sum.value();
  result.terms_used = n;
  result.error_estimate = std::abs(current) + sum.rounding_bound();
  result.converged = true;
  return result;
}

}  // namespace hyperseries
