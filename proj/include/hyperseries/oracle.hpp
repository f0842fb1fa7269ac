#pragma once

// Reference quadrature and differentiation. Nothing in here calls the series
// machinery; every routine is templated on the working precision so tests can
// run it in long double.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "hyperseries/core.hpp"

namespace hyperseries::oracle {

template <class Real>
struct BasicQuadratureResult {
  std::complex<Real> value{};
  Real error_estimate = 0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

using QuadratureResult = BasicQuadratureResult<double>;

namespace detail {

template <class Real>
bool finite(const std::complex<Real>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Calls f and widens the result to std::complex<Real>.
template <class Real, class F>
std::complex<Real> call(F& f, Real x) {
  return std::complex<Real>(f(x));
}

template <class Real>
Real pi() {
  return Real(3.141592653589793238462643383279502884L);
}

// Kronrod 15-point abscissae and weights with the embedded 7-point Gauss rule.
template <class Real>
struct GaussKronrod15 {
  static constexpr std::array<long double, 8> xgk = {
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr std::array<long double, 8> wgk = {
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  static constexpr std::array<long double, 4> wg = {
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};
};

template <class Real>
struct Segment {
  Real a;
  Real b;
  std::complex<Real> value;
  Real error;
  Real magnitude;  // integral of |f|
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class Real, class F>
Segment<Real> gk15(F& f, Real a, Real b, std::int64_t& evaluations) {
  using Rule = GaussKronrod15<Real>;
  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;
  std::array<std::complex<Real>, 15> fv{};
  for (int i = 0; i < 7; ++i) {
    const Real dx = half * Real(Rule::xgk[i]);
    fv[2 * i] = call<Real>(f, center - dx);
    fv[2 * i + 1] = call<Real>(f, center + dx);
  }
  fv[14] = call<Real>(f, center);
  evaluations += 15;
  for (const auto& v : fv) {
    if (!finite(v)) {
      throw NumericError(ErrorCode::SingularInterior, "quadrature: non-finite integrand inside the interval");
    }
  }

  std::complex<Real> kronrod = fv[14] * Real(Rule::wgk[7]);
  std::complex<Real> gauss = fv[14] * Real(Rule::wg[3]);
  Real abs_sum = std::abs(fv[14]) * Real(Rule::wgk[7]);
  for (int i = 0; i < 7; ++i) {
    const std::complex<Real> pair = fv[2 * i] + fv[2 * i + 1];
    kronrod += pair * Real(Rule::wgk[i]);
    abs_sum += (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1])) * Real(Rule::wgk[i]);
    if (i % 2 == 1) gauss += pair * Real(Rule::wg[i / 2]);
  }
  const std::complex<Real> mean = kronrod / Real(2);
  Real asc = std::abs(fv[14] - mean) * Real(Rule::wgk[7]);
  for (int i = 0; i < 7; ++i) {
    asc += (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean)) * Real(Rule::wgk[i]);
  }

  const Real scale = std::abs(half);
  Segment<Real> seg{a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * scale};
  const Real resasc = asc * scale;
  if (resasc != 0 && seg.error != 0) {
    seg.error = resasc * std::min(Real(1), std::pow(Real(200) * seg.error / resasc, Real(1.5)));
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  seg.error = std::max(seg.error, Real(50) * eps * seg.magnitude);
  return seg;
}

template <class Real>
Real rounding_floor(Real magnitude) {
  return Real(50) * std::numeric_limits<Real>::epsilon() * magnitude;
}

// Segment errors are floored at rounding_floor, so their sum can only match
// the global floor up to summation rounding.
template <class Real>
Real accepted_error(Real tol, const std::complex<Real>& value, Real magnitude) {
  return std::max(tol * std::abs(value), Real(1.01) * rounding_floor(magnitude));
}

template <class Real, class F>
BasicQuadratureResult<Real> gauss_kronrod_adaptive(F& f, Real a, Real b, Real tol, int max_subdivisions) {
  BasicQuadratureResult<Real> result;
  std::priority_queue<Segment<Real>> queue;
  std::vector<Segment<Real>> finished;
  queue.push(gk15<Real>(f, a, b, result.evaluations));

  auto totals = [&]() {
    std::complex<Real> value{};
    Real error = 0;
    Real magnitude = 0;
    auto visit = [&](const Segment<Real>& s) {
      value += s.value;
      error += s.error;
      magnitude += s.magnitude;
    };
    auto copy = queue;
    while (!copy.empty()) {
      visit(copy.top());
      copy.pop();
    }
    for (const auto& s : finished) visit(s);
    return std::make_tuple(value, error, magnitude);
  };

  std::complex<Real> value = queue.top().value;
  Real error = queue.top().error;
  Real magnitude = queue.top().magnitude;
  int subdivisions = 1;
  const Real eps = std::numeric_limits<Real>::epsilon();
  while (error > accepted_error(tol, value, magnitude)) {
    if (queue.empty()) break;
    if (subdivisions >= max_subdivisions) {
      throw NumericError(ErrorCode::MaxSubdivisions, "quadrature: subdivision cap reached");
    }
    Segment<Real> worst = queue.top();
    queue.pop();
    const Real mid = (worst.a + worst.b) / 2;
    const bool at_floor = worst.error <= Real(1.01) * rounding_floor(worst.magnitude);
    if (at_floor || std::abs(worst.b - worst.a) <= Real(100) * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      finished.push_back(worst);
      continue;
    }
    Segment<Real> left = gk15<Real>(f, worst.a, mid, result.evaluations);
    Segment<Real> right = gk15<Real>(f, mid, worst.b, result.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += left.magnitude + right.magnitude - worst.magnitude;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
    if (subdivisions % 64 == 0) std::tie(value, error, magnitude) = totals();
  }
  std::tie(value, error, magnitude) = totals();
  result.value = value;
  result.error_estimate = error;
  result.converged = error <= accepted_error(tol, value, magnitude);
  return result;
}

// Tanh-sinh rule on [a, b]. Abscissae are generated as offsets from the
// nearer endpoint so singular endpoints are approached without cancellation.
template <class Real, class F>
BasicQuadratureResult<Real> tanh_sinh(F& f, Real a, Real b, Real tol) {
  BasicQuadratureResult<Real> result;
  const Real width = b - a;
  const Real half_pi = pi<Real>() / 2;
  constexpr Real s_max = 6;
  constexpr int max_level = 12;
  const Real edge = Real(1e-6) * std::abs(width);

  Real magnitude = 0;
  auto sample = [&](Real s) -> std::complex<Real> {
    const Real w = half_pi * std::sinh(s);
    const Real e = std::exp(-2 * std::abs(w));
    const Real offset = width * e / (1 + e);  // distance from the nearer endpoint
    const Real weight = width * e / ((1 + e) * (1 + e)) * pi<Real>() * std::cosh(s);
    if (weight == 0 || offset == 0) return {};
    const Real x = s < 0 ? a + offset : b - offset;
    if (x == a || x == b) return {};
    const std::complex<Real> v = call<Real>(f, x);
    ++result.evaluations;
    if (!finite(v)) {
      if (std::abs(offset) < edge) return {};
      throw NumericError(ErrorCode::SingularInterior, "quadrature: non-finite integrand inside the interval");
    }
    magnitude += std::abs(v) * weight;
    return v * weight;
  };

  Real h = Real(0.5);
  std::complex<Real> sum = sample(Real(0));
  for (Real s = h; s <= s_max; s += h) sum += sample(s) + sample(-s);
  std::complex<Real> estimate = sum * h;
  Real level_magnitude = magnitude * h;
  Real error = std::numeric_limits<Real>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    magnitude = 0;
    for (Real s = h; s <= s_max; s += 2 * h) sum += sample(s) + sample(-s);
    const std::complex<Real> refined = sum * h;
    level_magnitude = level_magnitude / 2 + magnitude * h;
    error = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 3 && error <= std::max(tol * std::abs(estimate), rounding_floor(level_magnitude))) {
      result.value = estimate;
      result.error_estimate = std::max(error, rounding_floor(level_magnitude));
      result.converged = true;
      return result;
    }
  }
  result.value = estimate;
  result.error_estimate = error;
  result.converged = false;
  return result;
}

}  // namespace detail

/// Adaptive 15/7-point Gauss-Kronrod quadrature of f over [a, b] with relative
/// tolerance tol. If f is not finite at an endpoint the interval is handled by
/// a tanh-sinh change of variables instead.
template <class Real = double, class F>
BasicQuadratureResult<Real> quad_finite(F f, Real a, Real b, Real tol, int max_subdivisions = 10'000) {
  if (!(tol > 0)) throw NumericError(ErrorCode::InvalidArgument, "quad_finite: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw NumericError(ErrorCode::InvalidArgument, "quad_finite: endpoints must be finite");
  }
  if (a == b) return {std::complex<Real>{}, Real(0), 0, true};
  if (a > b) {
    auto flipped = quad_finite<Real>(std::move(f), b, a, tol, max_subdivisions);
    flipped.value = -flipped.value;
    return flipped;
  }
  const bool singular_a = !detail::finite(detail::call<Real>(f, a));
  const bool singular_b = !detail::finite(detail::call<Real>(f, b));
  BasicQuadratureResult<Real> result;
  if (singular_a || singular_b) {
    result = detail::tanh_sinh<Real>(f, a, b, tol);
  } else {
    result = detail::gauss_kronrod_adaptive<Real>(f, a, b, tol, max_subdivisions);
  }
  result.evaluations += 2;
  return result;
}

/// Integral of f over [0, inf) via x = -ln t. Raises DecayTooSlow when
/// |x f(x)| at x = 700 (the edge of the mapped range) exceeds tol*|result|.
template <class Real = double, class F>
BasicQuadratureResult<Real> quad_semi_infinite(F f, Real tol) {
  constexpr Real far = 700;
  const Real tail = far * std::abs(detail::call<Real>(f, far));
  auto mapped = [&f](Real t) -> std::complex<Real> {
    if (t <= 0) return {std::numeric_limits<Real>::quiet_NaN(), 0};
    return detail::call<Real>(f, -std::log(t)) / t;
  };
  auto result = quad_finite<Real>(mapped, Real(0), Real(1), tol);
  result.evaluations += 1;
  if (!std::isfinite(tail) || tail > tol * std::max(std::abs(result.value), std::numeric_limits<Real>::min())) {
    throw NumericError(ErrorCode::DecayTooSlow, "quad_semi_infinite: integrand does not decay fast enough");
  }
  result.error_estimate += tail;
  return result;
}

/// Integral over the real line of envelope(x) * exp(i k x). The range is cut
/// where the envelope falls below tol/10 of its sampled peak, and the
/// remainder is integrated panel by panel on half-periods of exp(i k x).
template <class Real = double, class F>
BasicQuadratureResult<Real> quad_oscillatory_fourier(F envelope, Real k, Real tol) {
  BasicQuadratureResult<Real> result;
  auto env = [&envelope](Real x) { return std::abs(detail::call<Real>(envelope, x)); };
  Real peak = 0;
  for (int i = -40; i <= 40; ++i) peak = std::max(peak, env(Real(i) / 4));
  Real length = 1;
  for (;;) {
    const Real edge = std::max(env(length), env(-length));
    peak = std::max(peak, edge);
    if (edge < tol / 10 * peak && std::max(env(length * Real(1.5)), env(-length * Real(1.5))) < tol / 10 * peak) break;
    length *= Real(1.25);
    if (length > Real(1e4)) {
      throw NumericError(ErrorCode::DecayTooSlow, "quad_oscillatory_fourier: envelope does not decay");
    }
  }
  if (peak == 0) {
    result.converged = true;
    return result;
  }

  auto integrand = [&envelope, k](Real x) {
    return detail::call<Real>(envelope, x) * std::complex<Real>(std::cos(k * x), std::sin(k * x));
  };
  std::int64_t panels = 1;
  if (k != 0) panels = static_cast<std::int64_t>(std::ceil(2 * length * std::abs(k) / detail::pi<Real>()));
  const Real width = 2 * length / static_cast<Real>(panels);
  std::complex<Real> total{};
  std::complex<Real> compensation{};
  Real error = 0;
  bool converged = true;
  for (std::int64_t i = 0; i < panels; ++i) {
    const Real lo = -length + static_cast<Real>(i) * width;
    const Real hi = i + 1 == panels ? length : lo + width;
    const auto piece = quad_finite<Real>(integrand, lo, hi, tol);
    const std::complex<Real> y = piece.value - compensation;
    const std::complex<Real> t = total + y;
    compensation = (t - total) - y;
    total = t;
    error += piece.error_estimate;
    result.evaluations += piece.evaluations;
    converged = converged && piece.converged;
  }
  result.value = total;
  result.error_estimate = error;
  result.converged = converged;
  return result;
}

/// Derivative estimate with its extrapolation error.
struct DerivativeEstimate {
  ComplexScalar value{};
  double error = 0.0;
};

/// Central-difference derivative of order 1, 2 or 4 with Ridders' Richardson
/// extrapolation over a geometric step ladder starting at h0 (chosen from the
/// order when h0 <= 0).
template <class F>
DerivativeEstimate fd_derivative_estimate(F f, double x, int order = 1, double h0 = 0.0) {
  if (order != 1 && order != 2 && order != 4) {
    throw NumericError(ErrorCode::InvalidArgument, "fd_derivative: order must be 1, 2 or 4");
  }
  if (h0 <= 0.0) h0 = (order == 1 ? 0.1 : order == 2 ? 0.2 : 0.5) * std::max(1.0, std::abs(x));
  auto value = [&f](double t) { return ComplexScalar(f(t)); };
  auto difference = [&](double h) -> ComplexScalar {
    switch (order) {
      case 1: return (value(x + h) - value(x - h)) / (2.0 * h);
      case 2: return (value(x + h) - 2.0 * value(x) + value(x - h)) / (h * h);
      default:
        return (value(x + 2 * h) - 4.0 * value(x + h) + 6.0 * value(x) - 4.0 * value(x - h) + value(x - 2 * h)) /
               (h * h * h * h);
    }
  };

  constexpr int ntab = 12;
  constexpr double con = 1.4;
  constexpr double con2 = con * con;
  std::array<std::array<ComplexScalar, ntab>, ntab> table{};
  double h = h0;
  table[0][0] = difference(h);
  DerivativeEstimate best{table[0][0], std::numeric_limits<double>::max()};
  for (int i = 1; i < ntab; ++i) {
    h /= con;
    table[0][i] = difference(h);
    double factor = con2;
    for (int j = 1; j <= i; ++j) {
      table[j][i] = (table[j - 1][i] * factor - table[j - 1][i - 1]) / (factor - 1.0);
      factor *= con2;
      const double err = std::max(std::abs(table[j][i] - table[j - 1][i]), std::abs(table[j][i] - table[j - 1][i - 1]));
      if (err <= best.error) {
        best.error = err;
        best.value = table[j][i];
      }
    }
    if (std::abs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * best.error) break;
  }
  return best;
}

/// Extrapolated derivative; raises NoiseFloor when the extrapolation error
/// exceeds tol * max(|derivative|, 1).
template <class F>
ComplexScalar fd_derivative(F f, double x, double tol = 1e-8, int order = 1, double h0 = 0.0) {
  const auto estimate = fd_derivative_estimate(std::move(f), x, order, h0);
  if (!(estimate.error <= tol * std::max(std::abs(estimate.value), 1.0))) {
    throw NumericError(ErrorCode::NoiseFloor, "fd_derivative: extrapolants do not settle");
  }
  return estimate.value;
}

/// Airy function Ai(z) from contour integrals of exp(t^3/3 - z t).
///
/// |z| <= 3: the contour runs along the rays arg t = +-pi/3.
/// |arg z| <= 2pi/3: steepest-descent form
///     Ai(z) = exp(-zeta)/pi * int_0^inf exp(-sqrt(z) t^2) cos(t^3/3) dt,
///     zeta = 2/3 z^(3/2).
/// Otherwise Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z), w = exp(2 pi i / 3).
template <class Real = double>
BasicQuadratureResult<Real> airy_ai_integral(std::complex<Real> z, Real tol) {
  using C = std::complex<Real>;
  const Real pi = detail::pi<Real>();
  if (!detail::finite(z)) throw NumericError(ErrorCode::InvalidArgument, "airy_ai_integral: non-finite argument");

  if (std::abs(z) <= 3) {
    const C up = std::polar(Real(1), pi / 3);
    const C down = std::conj(up);
    const C scale = Real(1) / (C(0, 2) * pi);
    auto f = [=](Real r) -> C {
      const Real cubic = -r * r * r / 3;
      return scale * (std::exp(cubic - z * r * up) * up - std::exp(cubic - z * r * down) * down);
    };
    return quad_semi_infinite<Real>(f, tol);
  }

  if (std::abs(std::arg(z)) <= 2 * pi / 3) {
    const C root = std::sqrt(z);
    const C zeta = Real(2) / 3 * z * root;
    auto f = [=](Real t) -> C { return std::exp(-root * t * t) * std::cos(t * t * t / 3); };
    auto result = quad_semi_infinite<Real>(f, tol);
    const C factor = std::exp(-zeta) / pi;
    result.value *= factor;
    result.error_estimate *= std::abs(factor);
    return result;
  }

  const C w = std::polar(Real(1), 2 * pi / 3);
  const auto first = airy_ai_integral<Real>(w * z, tol);
  const auto second = airy_ai_integral<Real>(w * w * z, tol);
  BasicQuadratureResult<Real> result;
  result.value = -w * first.value - w * w * second.value;
  result.error_estimate = first.error_estimate + second.error_estimate;
  result.evaluations = first.evaluations + second.evaluations;
  result.converged = first.converged && second.converged;
  return result;
}

}  // namespace hyperseries::oracle
