#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hyperseries/oracle.hpp"
#include "hyperseries/series_integrals.hpp"
#include "reference.hpp"

using namespace hyperseries;
using reference::rel_err;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const NumericError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a NumericError";
  return ErrorCode::InvalidArgument;
}

IntegrandSpec make(Kernel kernel, ComplexScalar alpha, ComplexScalar beta, ComplexScalar eta, ComplexScalar lambda,
                   ComplexScalar gamma, PFqParams pfq = {}) {
  IntegrandSpec s;
  s.kernel = kernel;
  s.alpha = alpha;
  s.beta = beta;
  s.eta = eta;
  s.lambda = lambda;
  s.gamma = gamma;
  s.pfq = std::move(pfq);
  return s;
}

// 5 kernels x 4 alphas x 3 shapes = 60 specs.
std::vector<IntegrandSpec> corpus() {
  std::vector<IntegrandSpec> specs;
  const std::vector<ComplexScalar> alphas = {0.0, 0.5, -0.5, {1.3, 0.2}};
  for (Kernel kernel : {Kernel::exp, Kernel::cosh, Kernel::sinh, Kernel::cos, Kernel::sin}) {
    for (ComplexScalar alpha : alphas) {
      specs.push_back(make(kernel, alpha, 1.0, 1.0, 0.0, 1.0));
      specs.push_back(make(kernel, alpha, 2.0, -0.7, -0.25, 2.0, {{}, {0.5}}));
      specs.push_back(make(kernel, alpha, 0.5, {0.3, 0.4}, 0.6, 1.0, {{0.5}, {1.5}}));
    }
  }
  return specs;
}

// Integrand with the pFq factor summed in long double by the reference loop.
ComplexScalar reference_integrand(const IntegrandSpec& s, double x) {
  const long double lx = std::log(static_cast<long double>(x));
  using Cl = reference::Cl;
  auto power = [&](ComplexScalar e) { return std::exp(Cl(e) * lx); };
  const Cl u = Cl(s.eta) * power(s.beta);
  Cl k;
  switch (s.kernel) {
    case Kernel::exp: k = std::exp(u); break;
    case Kernel::cosh: k = std::cosh(u); break;
    case Kernel::sinh: k = std::sinh(u); break;
    case Kernel::cos: k = std::cos(u); break;
    case Kernel::sin: k = std::sin(u); break;
  }
  std::vector<Cl> up(s.pfq.upper.begin(), s.pfq.upper.end());
  std::vector<Cl> lo(s.pfq.lower.begin(), s.pfq.lower.end());
  const Cl f = reference::naive_pfq(up, lo, Cl(s.lambda) * power(s.gamma));
  const Cl v = power(s.alpha) * k * f;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace

TEST(LiftedParams, Examples) {
  const auto a = lifted_params(make(Kernel::exp, 0.0, 1.0, 1.0, 1.0, 2.0), 0);
  ASSERT_EQ(a.upper.size(), 1u);
  ASSERT_EQ(a.lower.size(), 1u);
  EXPECT_EQ(a.upper[0], ComplexScalar(0.5));
  EXPECT_EQ(a.lower[0], ComplexScalar(1.5));

  const auto b = lifted_params(make(Kernel::exp, 0.0, 2.0, 1.0, 1.0, 2.0, {{}, {0.5}}), 0);
  ASSERT_EQ(b.upper.size(), 1u);
  ASSERT_EQ(b.lower.size(), 2u);
  EXPECT_EQ(b.upper[0], ComplexScalar(0.5));
  EXPECT_EQ(b.lower[0], ComplexScalar(0.5));
  EXPECT_EQ(b.lower[1], ComplexScalar(1.5));
}

TEST(LiftedParams, LengthGrowsByOnePerIndex) {
  const IntegrandSpec s = make(Kernel::exp, {0.3, 0.1}, 1.7, 1.0, 1.0, {0.5, 0.5}, {{1.0, 2.0}, {3.0}});
  for (std::int64_t j = 0; j < 20; ++j) {
    const auto p = lifted_params(s, j);
    EXPECT_EQ(p.upper.size(), s.pfq.upper.size() + static_cast<std::size_t>(j) + 1);
    EXPECT_EQ(p.lower.size(), s.pfq.lower.size() + static_cast<std::size_t>(j) + 1);
  }
}

TEST(LiftedParams, StepSpacing) {
  const auto p = lifted_params(make(Kernel::exp, 0.0, 1.0, 1.0, 1.0, 1.0), 2, 2);
  EXPECT_EQ(p.upper[0], ComplexScalar(1.0));
  EXPECT_EQ(p.upper[1], ComplexScalar(3.0));
  EXPECT_EQ(p.upper[2], ComplexScalar(5.0));
}

TEST(LiftedParams, LowerPoleRaised) {
  // (alpha + gamma + 1)/gamma = 0 for alpha = -2, gamma = 1.
  EXPECT_EQ(code_of([] { lifted_params(make(Kernel::exp, -2.0, 1.0, 1.0, 1.0, 1.0), 0); }),
            ErrorCode::LiftedLowerPole);
}

TEST(Antiderivative, CosineKernelGivesSine) {
  const auto r = antiderivative(make(Kernel::cos, 0.0, 1.0, 1.0, 0.0, 1.0), kPi / 2);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-14);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-15);
  EXPECT_TRUE(r.converged);
}

TEST(Antiderivative, IntegrationByPartsShape) {
  // int_0^x t^2 e^t dt = e^x (x^2 - 2x + 2) - 2
  for (double x : {0.3, 1.5, 3.0}) {
    const auto r = antiderivative(make(Kernel::exp, 2.0, 1.0, 1.0, 0.0, 1.0), x);
    EXPECT_LT(rel_err(r.value, std::exp(x) * (x * x - 2 * x + 2) - 2), 1e-13) << x;
  }
}

TEST(Antiderivative, ZeroEndpointRules) {
  EXPECT_EQ(antiderivative(make(Kernel::exp, 0.5, 1.0, 1.0, 0.0, 1.0), 0.0).value, ComplexScalar(0.0));
  EXPECT_EQ(code_of([] { antiderivative(make(Kernel::exp, -1.5, 1.0, 1.0, 0.0, 1.0), 0.0); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { antiderivative(make(Kernel::exp, 0.0, 1.0, 1.0, 0.0, 1.0), ComplexScalar(1.0, 1.0)); }),
            ErrorCode::InvalidArgument);
}

TEST(Antiderivative, ProductPole) {
  EXPECT_EQ(code_of([] { antiderivative(make(Kernel::exp, -1.0, 1.0, 1.0, 0.0, 1.0), 1.0); }), ErrorCode::ProductPole);
  EXPECT_EQ(code_of([] { antiderivative(make(Kernel::exp, -3.0, 1.0, 1.0, 0.0, 1.0), 1.0); }), ErrorCode::ProductPole);
}

TEST(Antiderivative, NearProductPoleWarns) {
  const auto r = antiderivative(make(Kernel::exp, -3.0 + 1e-8, 1.0, 1.0, 0.0, 1.0), 1.0);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("near product pole"), std::string::npos);
}

TEST(Antiderivative, BudgetExhaustionCarriesPartial) {
  TruncationPolicy policy;
  policy.max_terms = 30;  // three outer terms
  try {
    antiderivative(make(Kernel::exp, 0.0, 1.0, 1.0, 0.0, 1.0), 5.0, policy);
    FAIL() << "expected NotConverged";
  } catch (const NotConverged& e) {
    EXPECT_EQ(e.partial().terms_used, 3);
    EXPECT_GT(e.partial().error_estimate, 0.0);
  }
}

TEST(Antiderivative, ErrorEstimateFiniteOnCorpus) {
  for (const auto& spec : corpus()) {
    const auto s = series_form(spec, 1.2);
    EXPECT_GE(s.error_estimate, 0.0);
    EXPECT_TRUE(std::isfinite(s.error_estimate));
    EXPECT_GT(s.outer_terms_used, 0);
  }
}

TEST(Antiderivative, LambdaZeroIgnoresParameterLists) {
  for (Kernel k : {Kernel::exp, Kernel::cosh, Kernel::sinh, Kernel::cos, Kernel::sin}) {
    const auto bare = antiderivative(make(k, 0.4, 1.5, 0.8, 0.0, 2.0), 1.3);
    const auto busy = antiderivative(make(k, 0.4, 1.5, 0.8, 0.0, 2.0, {{1.0, 2.0, 3.0, 4.0}, {-1.0, 0.5}}), 1.3);
    EXPECT_EQ(bare.value, busy.value) << to_string(k);
  }
}

TEST(Antiderivative, CoshPlusSinhIsExp) {
  for (auto spec : corpus()) {
    if (spec.kernel != Kernel::exp) continue;
    for (double x : {0.3, 1.0, 1.9}) {
      spec.kernel = Kernel::exp;
      const ComplexScalar e = antiderivative(spec, x).value;
      spec.kernel = Kernel::cosh;
      const ComplexScalar c = antiderivative(spec, x).value;
      spec.kernel = Kernel::sinh;
      const ComplexScalar s = antiderivative(spec, x).value;
      EXPECT_LT(std::abs(c + s - e) / std::max(std::abs(e), 1e-300), 1e-10) << x;
    }
  }
}

TEST(Antiderivative, FundamentalTheoremOnCorpus) {
  const auto specs = corpus();
  ASSERT_GE(specs.size(), 50u);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    for (double x : {0.4, 1.0, 1.7}) {
      auto big_f = [&](double t) { return antiderivative(spec, t).value; };
      const ComplexScalar derivative = oracle::fd_derivative(big_f, x, 1e-8, 1, 0.1 * x);
      const ComplexScalar want = integrand(spec, x);
      EXPECT_LT(rel_err(derivative, want), 1e-6) << "spec " << i << " x " << x;
    }
  }
}

TEST(Antiderivative, IntegrandMatchesReferenceSummation) {
  for (const auto& spec : corpus()) {
    for (double x : {0.1, 0.9, 2.0}) EXPECT_LT(rel_err(integrand(spec, x), reference_integrand(spec, x)), 1e-13);
  }
}

TEST(DefiniteIntegral, MatchesOracleOnCorpus) {
  for (const auto& spec : corpus()) {
    const auto series = definite_integral(spec, 0.1, 2.0);
    const auto quad = oracle::quad_finite([&](double x) { return reference_integrand(spec, x); }, 0.1, 2.0, 1e-12);
    ASSERT_TRUE(series.converged);
    ASSERT_TRUE(quad.converged);
    EXPECT_LT(rel_err(series.value, quad.value), 1e-8);
  }
}

TEST(DefiniteIntegral, SpecExamples) {
  const auto e = definite_integral(make(Kernel::exp, 0.0, 1.0, 1.0, 0.0, 1.0), 0.0, 1.0);
  const auto e_quad = oracle::quad_finite([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-14);
  EXPECT_LT(rel_err(e.value, e_quad.value), 1e-13);

  const auto cosine = definite_integral(make(Kernel::exp, 0.0, 1.0, 0.0, -0.25, 2.0, {{}, {0.5}}), 0.0, 1.0);
  const auto cos_quad = oracle::quad_finite([](double x) { return std::cos(x); }, 0.0, 1.0, 1e-14);
  EXPECT_LT(rel_err(cosine.value, cos_quad.value), 1e-13);

  const auto xcosh = definite_integral(make(Kernel::cosh, 1.0, 1.0, 1.0, 0.0, 1.0), 0.0, 1.0);
  EXPECT_LT(rel_err(xcosh.value, reference::kXCoshUnit), 1e-13);
}

TEST(DefiniteIntegral, DegenerateIntervalIsZero) {
  for (const auto& spec : corpus()) EXPECT_EQ(definite_integral(spec, 0.7, 0.7).value, ComplexScalar(0.0));
}

TEST(DefiniteIntegral, ErrorEstimateIsSumOfEndpoints) {
  const IntegrandSpec spec = make(Kernel::sin, 0.5, 1.0, 2.0, 0.3, 1.0, {{1.0}, {2.0}});
  const auto d = definite_integral(spec, 0.2, 1.8);
  EXPECT_DOUBLE_EQ(d.error_estimate, antiderivative(spec, 0.2).error_estimate + antiderivative(spec, 1.8).error_estimate);
}

TEST(IntegrandSpec, Validation) {
  EXPECT_EQ(code_of([] { make(Kernel::exp, 0.0, 1.0, 1.0, 1.0, 0.0).validate(); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(parse_kernel("sinh"), Kernel::sinh);
  EXPECT_EQ(code_of([] { parse_kernel("tan"); }), ErrorCode::InvalidArgument);
}
