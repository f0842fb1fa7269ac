#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperseries {

/// Universal numeric carrier. Every parameter of the library may be complex.
using ComplexScalar = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

enum class ErrorCode {
  InvalidArgument,
  PoleAtNonpositiveInteger,
  LowerParameterPole,
  DivergentSeries,
  NotConverged,
  ArgumentTooSmall,
  ArgumentTooLarge,
  NoDecreasingRegime,
  LiftedLowerPole,
  ProductPole,
  PochhammerPole,
  ParityDomainViolation,
  MaxSubdivisions,
  SingularInterior,
  DecayTooSlow,
  NoiseFloor,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorCode::LowerParameterPole: return "LowerParameterPole";
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ArgumentTooSmall: return "ArgumentTooSmall";
    case ErrorCode::ArgumentTooLarge: return "ArgumentTooLarge";
    case ErrorCode::NoDecreasingRegime: return "NoDecreasingRegime";
    case ErrorCode::LiftedLowerPole: return "LiftedLowerPole";
    case ErrorCode::ProductPole: return "ProductPole";
    case ErrorCode::PochhammerPole: return "PochhammerPole";
    case ErrorCode::ParityDomainViolation: return "ParityDomainViolation";
    case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorCode::SingularInterior: return "SingularInterior";
    case ErrorCode::DecayTooSlow: return "DecayTooSlow";
    case ErrorCode::NoiseFloor: return "NoiseFloor";
  }
  return "Unknown";
}

/// Base class of every error raised by the library.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Best-effort value carried by a NotConverged error.
struct PartialResult {
  ComplexScalar value{};
  double error_estimate = 0.0;
  std::int64_t terms_used = 0;
};

/// Raised when an iteration budget is exhausted. The partial result is still
/// available to the caller.
class NotConverged : public NumericError {
 public:
  NotConverged(const std::string& what, PartialResult partial)
      : NumericError(ErrorCode::NotConverged, what), partial_(partial) {}

  const PartialResult& partial() const noexcept { return partial_; }

 private:
  PartialResult partial_;
};

inline bool is_finite(ComplexScalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Nonnegative integer n with |z - (-n)| <= tol, if any.
inline bool near_nonpositive_integer(ComplexScalar z, double tol, std::int64_t* n_out = nullptr) {
  if (z.real() > tol) return false;
  const double nearest = std::round(z.real());
  if (std::abs(z - ComplexScalar(nearest, 0.0)) > tol) return false;
  if (n_out != nullptr) *n_out = static_cast<std::int64_t>(-nearest);
  return true;
}

/// Neumaier's variant of compensated summation, applied independently to the
/// real and imaginary parts. Also tracks the sum of magnitudes so callers can
/// bound the rounding error of the result.
class CompensatedSum {
 public:
  void add(ComplexScalar term) {
    add_component(sum_re_, comp_re_, term.real());
    add_component(sum_im_, comp_im_, term.imag());
    magnitude_ += std::abs(term);
  }

  CompensatedSum& operator+=(ComplexScalar term) {
    add(term);
    return *this;
  }

  ComplexScalar value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

  /// Sum of |term| over everything added so far.
  double magnitude() const { return magnitude_; }

  /// Conservative bound on the accumulated rounding error.
  double rounding_bound() const { return 2.0 * kEpsilon * magnitude_; }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double sum_re_ = 0.0;
  double comp_re_ = 0.0;
  double sum_im_ = 0.0;
  double comp_im_ = 0.0;
  double magnitude_ = 0.0;
};

/// Stopping rule for truncated series.
struct TruncationPolicy {
  double rel_tol = 1e-14;
  double abs_tol = 1e-300;
  std::int64_t max_terms = 10'000;
  int consecutive_small = 3;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw NumericError(ErrorCode::InvalidArgument, "tolerances must be positive");
    }
    if (max_terms < 1 || consecutive_small < 1) {
      throw NumericError(ErrorCode::InvalidArgument, "max_terms and consecutive_small must be >= 1");
    }
  }
};

enum class SeriesMode { convergent, asymptotic };

constexpr std::string_view to_string(SeriesMode mode) {
  return mode == SeriesMode::convergent ? "convergent" : "asymptotic";
}

struct SeriesEvaluation {
  ComplexScalar value{};
  std::int64_t terms_used = 0;
  double error_estimate = 0.0;
  SeriesMode mode = SeriesMode::convergent;
  bool converged = false;
};

}  // namespace hyperseries
