#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "hyperseries/core.hpp"
#include "hyperseries/series_integrals.hpp"
#include "hyperseries/special_functions.hpp"

namespace hyperseries {

enum class IdentityId { Lemma1, T1, T2, T3, T4, T5, T6 };

constexpr std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::Lemma1: return "lemma1";
    case IdentityId::T1: return "t1";
    case IdentityId::T2: return "t2";
    case IdentityId::T3: return "t3";
    case IdentityId::T4: return "t4";
    case IdentityId::T5: return "t5";
    case IdentityId::T6: return "t6";
  }
  return "lemma1";
}

inline IdentityId parse_identity(std::string_view name) {
  for (IdentityId id : {IdentityId::Lemma1, IdentityId::T1, IdentityId::T2, IdentityId::T3, IdentityId::T4,
                        IdentityId::T5, IdentityId::T6}) {
    if (name == to_string(id)) return id;
  }
  throw NumericError(ErrorCode::InvalidArgument, "unknown identity '" + std::string(name) + "'");
}

struct IdentityCase {
  IdentityId identity_id = IdentityId::T1;
  IntegrandSpec spec;  // kernel is ignored
  ComplexScalar x{1.0};
  std::int64_t n = 0;  // Lemma1 only
  std::int64_t j = 0;  // Lemma1 only
};

/// Both sides of an identity, as assembled for the residual.
struct IdentitySides {
  ComplexScalar lhs{};
  ComplexScalar rhs{};
};

/// Sides of the product identity
///   prod_{m=0}^{j} (n gamma + alpha + m beta + 1)
///     = prod (alpha + m beta + 1) * prod ((alpha+gamma+m beta+1)/gamma)_n
///                                 / prod ((alpha+m beta+1)/gamma)_n.
inline IdentitySides lemma1_sides(ComplexScalar alpha, ComplexScalar beta, ComplexScalar gamma, std::int64_t n,
                                  std::int64_t j) {
  if (n < 0 || j < 0) throw NumericError(ErrorCode::InvalidArgument, "lemma1: n and j must be nonnegative");
  if (gamma == ComplexScalar(0.0, 0.0)) throw NumericError(ErrorCode::InvalidArgument, "lemma1: gamma must be nonzero");
  IdentitySides sides{1.0, 1.0};
  for (std::int64_t m = 0; m <= j; ++m) {
    const ComplexScalar shift = alpha + static_cast<double>(m) * beta + 1.0;
    sides.lhs *= static_cast<double>(n) * gamma + shift;
    const ComplexScalar theta = shift / gamma;
    std::int64_t pole = 0;
    if (n > 0 && near_nonpositive_integer(theta, 1e-12, &pole) && pole < n) {
      throw NumericError(ErrorCode::PochhammerPole, "lemma1: denominator Pochhammer symbol vanishes");
    }
    sides.rhs *= shift * (pochhammer((shift + gamma) / gamma, n) / pochhammer(theta, n));
  }
  return sides;
}

/// |LHS - RHS| / max(|LHS|, 1) for the product identity.
inline double lemma1_residual(ComplexScalar alpha, ComplexScalar beta, ComplexScalar gamma, std::int64_t n,
                              std::int64_t j) {
  const IdentitySides s = lemma1_sides(alpha, beta, gamma, n, j);
  return std::abs(s.lhs - s.rhs) / std::max(std::abs(s.lhs), 1.0);
}

namespace detail {

inline ComplexScalar form(IntegrandSpec spec, Kernel kernel, ComplexScalar eta, double x,
                          const TruncationPolicy& policy) {
  spec.kernel = kernel;
  spec.eta = eta;
  return series_form(spec, x, policy).value;
}

}  // namespace detail

/// Sides of the kernel identities, with P(e) the exp-kernel series form at
/// eta = e and C, S, Co, Si the cosh, sinh, cos and sin forms:
///   T1: C = [P(eta) + P(-eta)]/2        T4: Co = [P(i eta) + P(-i eta)]/2
///   T2: S = [P(eta) - P(-eta)]/2        T5: Si = [P(i eta) - P(-i eta)]/(2i)
///   T3: P(eta) = C + S                  T6: P(i eta) = Co + i Si
/// Lemma1 dispatches to lemma1_sides.
inline IdentitySides theorem_sides(const IdentityCase& c, const TruncationPolicy& policy = {}) {
  const IntegrandSpec& spec = c.spec;
  if (c.identity_id == IdentityId::Lemma1) return lemma1_sides(spec.alpha, spec.beta, spec.gamma, c.n, c.j);
  if (c.x.imag() != 0.0 || !(c.x.real() > 0.0)) {
    throw NumericError(ErrorCode::InvalidArgument, "theorem_residual: x must be real and positive");
  }
  const double x = c.x.real();
  const ComplexScalar eta = spec.eta;
  const ComplexScalar i(0.0, 1.0);
  auto form = [&](Kernel k, ComplexScalar e) { return detail::form(spec, k, e, x, policy); };

  switch (c.identity_id) {
    case IdentityId::T1:
      return {form(Kernel::cosh, eta), 0.5 * (form(Kernel::exp, eta) + form(Kernel::exp, -eta))};
    case IdentityId::T2:
      return {form(Kernel::sinh, eta), 0.5 * (form(Kernel::exp, eta) - form(Kernel::exp, -eta))};
    case IdentityId::T3:
      return {form(Kernel::exp, eta), form(Kernel::cosh, eta) + form(Kernel::sinh, eta)};
    case IdentityId::T4:
      return {form(Kernel::cos, eta), 0.5 * (form(Kernel::exp, i * eta) + form(Kernel::exp, -i * eta))};
    case IdentityId::T5:
      return {form(Kernel::sin, eta), (form(Kernel::exp, i * eta) - form(Kernel::exp, -i * eta)) / (2.0 * i)};
    case IdentityId::T6:
      return {form(Kernel::exp, i * eta), form(Kernel::cos, eta) + i * form(Kernel::sin, eta)};
    case IdentityId::Lemma1: break;
  }
  return {};
}

/// |LHS - RHS| / max(|LHS|, |RHS|, 1).
inline double theorem_residual(const IdentityCase& c, const TruncationPolicy& policy = {}) {
  const IdentitySides s = theorem_sides(c, policy);
  if (c.identity_id == IdentityId::Lemma1) return std::abs(s.lhs - s.rhs) / std::max(std::abs(s.lhs), 1.0);
  return std::abs(s.lhs - s.rhs) / std::max({std::abs(s.lhs), std::abs(s.rhs), 1.0});
}

}  // namespace hyperseries
