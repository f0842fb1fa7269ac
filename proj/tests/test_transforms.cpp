#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "hyperseries/oracle.hpp"
#include "hyperseries/transforms.hpp"
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

oracle::QuadratureResult fourier_oracle(int alpha, double theta, double k) {
  return oracle::quad_oscillatory_fourier(
      [=](double x) { return std::pow(x, alpha) * std::exp(-theta * theta * x * x); }, k, 1e-11);
}

// Integral of x^alpha exp(-theta^2 x^2 - u x) over [0, inf) in long double.
std::complex<double> laplace_oracle(double alpha, double theta, ComplexScalar u) {
  using Cl = std::complex<long double>;
  const Cl ul(u);
  const long double t2 = static_cast<long double>(theta) * theta;
  const auto r = oracle::quad_semi_infinite<long double>(
      [=](long double x) { return std::pow(x, static_cast<long double>(alpha)) * std::exp(-t2 * x * x - ul * x); },
      1e-17L);
  return {static_cast<double>(r.value.real()), static_cast<double>(r.value.imag())};
}

}  // namespace

TEST(FourierGaussian, Examples) {
  EXPECT_NEAR(fourier_gaussian(1.0, 0.0), kSqrtPi, 1e-15);
  EXPECT_NEAR(fourier_gaussian(1.0, 2.0), reference::kFourierTheta1K2, 1e-15);
  EXPECT_NEAR(fourier_gaussian(2.0, 2.0), reference::kFourierTheta2K2, 1e-15);
  EXPECT_NEAR(fourier_gaussian(-2.0, 2.0), reference::kFourierTheta2K2, 1e-15);
}

TEST(FourierGaussian, MatchesOracle) {
  for (double theta : {1.0, 2.0}) {
    for (double k : {0.0, 1.0, 2.0, 4.0}) {
      EXPECT_LT(rel_err(fourier_gaussian(theta, k), fourier_oracle(0, theta, k).value), 1e-8) << theta << "," << k;
    }
  }
}

TEST(FourierGaussian, ScalingLaw) {
  for (double theta : {0.3, 1.7, -2.5, 4.0}) {
    for (double k : {-3.0, 0.0, 0.5, 2.0}) {
      const double lhs = fourier_gaussian(theta, k);
      const double rhs = fourier_gaussian(1.0, k / theta) / std::abs(theta);
      EXPECT_LE(std::abs(lhs - rhs), 1e-13 * std::abs(lhs));
    }
  }
}

TEST(FourierGaussian, ZeroThetaRejected) {
  EXPECT_EQ(code_of([] { fourier_gaussian(0.0, 1.0); }), ErrorCode::InvalidArgument);
}

TEST(FourierMoment, ZeroMomentIsGaussian) {
  for (double theta : {0.5, 1.0, 2.0, -1.5}) {
    for (double k : {0.0, 1.0, 2.0, 5.0}) {
      EXPECT_LT(rel_err(fourier_moment_gaussian(0, theta, k), fourier_gaussian(theta, k)), 1e-14);
    }
  }
}

TEST(FourierMoment, FirstMomentRelation) {
  for (double theta : {0.5, 1.0, 2.0}) {
    for (double k : {0.5, 1.0, 2.0, 5.0}) {
      const ComplexScalar want = ComplexScalar(0.0, k / (2 * theta * theta)) * fourier_gaussian(theta, k);
      EXPECT_LT(rel_err(fourier_moment_gaussian(1, theta, k), want), 1e-12);
    }
  }
}

TEST(FourierMoment, ExactParity) {
  for (int alpha : {-1, 0, 1, 2, 3, 4, 7}) {
    for (double k : {0.0, 0.7, 3.0}) {
      const ComplexScalar v = fourier_moment_gaussian(alpha, 1.3, k);
      if (alpha % 2 == 0) {
        EXPECT_EQ(v.imag(), 0.0);
      } else {
        EXPECT_EQ(v.real(), 0.0);
      }
    }
  }
}

TEST(FourierMoment, MatchesOracle) {
  for (int alpha : {0, 1, 2, 3}) {
    for (double theta : {1.0, 2.0}) {
      for (double k : {0.0, 1.0, 2.0}) {
        const ComplexScalar closed = fourier_moment_gaussian(alpha, theta, k);
        const auto quad = fourier_oracle(alpha, theta, k);
        // Odd moments vanish at k = 0; there the comparison is absolute.
        const double scale = std::max(std::abs(closed), alpha % 2 == 1 && k == 0.0 ? 1.0 : 0.0);
        EXPECT_LE(std::abs(closed - quad.value), 1e-7 * scale) << alpha << "," << theta << "," << k;
      }
    }
  }
}

TEST(FourierMoment, SecondMomentReference) {
  EXPECT_LT(rel_err(fourier_moment_gaussian(2, 1.0, 1.0), reference::kFourierX2), 1e-14);
}

TEST(FourierMoment, MinusOneIsSineIntegral) {
  // x^{-1} moment: i * int sin(kx)/x exp(-theta^2 x^2) over the line.
  const double theta = 1.2;
  const double k = 1.5;
  const auto quad = oracle::quad_finite(
      [=](double x) { return 2.0 * (x == 0.0 ? k : std::sin(k * x) / x) * std::exp(-theta * theta * x * x); }, 0.0,
      12.0, 1e-13);
  EXPECT_LT(rel_err(fourier_moment_gaussian(-1, theta, k), ComplexScalar(0.0, quad.value.real())), 1e-12);
}

TEST(FourierMoment, LargeWavenumberStaysAccurate) {
  const double theta = 1.0;
  const double k = 12.0;
  // Second moment: (1/2 - k^2/4) sqrt(pi) exp(-k^2/4) in closed form.
  const double want = (0.5 - k * k / 4.0) * kSqrtPi * std::exp(-k * k / 4.0);
  EXPECT_LT(rel_err(fourier_moment_gaussian(2, theta, k), want), 1e-12);
}

TEST(FourierMoment, ParityDomain) {
  EXPECT_EQ(code_of([] { fourier_moment_gaussian(0.5, 1.0, 1.0); }), ErrorCode::ParityDomainViolation);
  EXPECT_EQ(code_of([] { fourier_moment_gaussian(-2, 1.0, 1.0); }), ErrorCode::ParityDomainViolation);
  EXPECT_EQ(code_of([] { fourier_moment_gaussian(-3, 1.0, 1.0); }), ErrorCode::ParityDomainViolation);
  EXPECT_EQ(code_of([] { fourier_moment_gaussian(1, 0.0, 1.0); }), ErrorCode::InvalidArgument);
}

TEST(Laplace, AsymptoticHonestyOnGrid) {
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    for (double theta : {0.5, 1.0, 2.0}) {
      for (ComplexScalar ratio : {ComplexScalar(8.0), ComplexScalar(10.0), ComplexScalar(16.0), ComplexScalar(40.0),
                                  ComplexScalar(9.0, 4.0), ComplexScalar(12.0, -6.0)}) {
        const ComplexScalar u = theta * ratio;
        const auto r = laplace_moment_gaussian(alpha, theta, u);
        const auto want = laplace_oracle(alpha, theta, u);
        EXPECT_EQ(r.mode, SeriesMode::asymptotic);
        EXPECT_LE(std::abs(r.value - want), r.error_estimate) << alpha << "," << theta << "," << u;
        EXPECT_LE(r.error_estimate, 1e-4 * std::abs(r.value));
      }
    }
  }
}

TEST(Laplace, GaussianAtTenReference) {
  const auto r = laplace_moment_gaussian(0.0, 1.0, 10.0);
  EXPECT_LE(std::abs(r.value.real() - reference::kGaussLaplaceU10), r.error_estimate);
  EXPECT_EQ(r.value.imag(), 0.0);
}

TEST(Laplace, ZeroWidthLimitIsMonomial) {
  for (double alpha : {0.0, 1.5, 3.0}) {
    const ComplexScalar u(2.0, 1.0);
    const auto r = laplace_moment_gaussian(alpha, 0.0, u);
    EXPECT_LT(rel_err(r.value, std::tgamma(alpha + 1) / std::pow(u, alpha + 1)), 1e-14);
    const auto small = laplace_moment_gaussian(alpha, 1e-9, u);
    EXPECT_LT(rel_err(small.value, r.value), 1e-15);
  }
}

TEST(Laplace, DomainErrors) {
  EXPECT_EQ(code_of([] { laplace_moment_gaussian(0.0, 1.0, 1.0); }), ErrorCode::NoDecreasingRegime);
  EXPECT_EQ(code_of([] { laplace_moment_gaussian(-1.0, 1.0, 10.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { laplace_moment_gaussian(0.0, 1.0, ComplexScalar(0.0, 10.0)); }), ErrorCode::InvalidArgument);
}

TEST(LaplaceErf, SharesGaussianPath) {
  for (ComplexScalar u : {ComplexScalar(10.0), ComplexScalar(20.0, 5.0), ComplexScalar(300.0)}) {
    const auto e = laplace_erf(u);
    const auto g = laplace_moment_gaussian(0.0, 1.0, u);
    EXPECT_LE(std::abs(e.value * u - g.value), 2 * kEpsilon * std::abs(g.value));
  }
}

TEST(LaplaceErf, AgainstNestedQuadrature) {
  // E(x) = int_0^x exp(-v^2) dv by quadrature inside the outer integral.
  const long double u = 20.0L;
  auto erf_integrand = [u](long double x) {
    const auto inner =
        oracle::quad_finite<long double>([](long double v) { return std::exp(-v * v); }, 0.0L, x, 1e-18L);
    return inner.value * std::exp(-u * x);
  };
  const auto q = oracle::quad_semi_infinite<long double>(erf_integrand, 1e-15L);
  EXPECT_NEAR(static_cast<double>(q.value.real()), reference::kErfLaplaceU20, 1e-17);
  const auto r = laplace_erf(20.0);
  EXPECT_LE(std::abs(r.value.real() - static_cast<double>(q.value.real())), r.error_estimate + 1e-18);
}

TEST(LaplaceErf, LeadingBehaviour) {
  for (double u : {100.0, 1000.0}) {
    const double scaled = laplace_erf(u).value.real() * u * u;
    EXPECT_LT(std::abs(scaled - 1.0), 4.0 / (u * u) * 1.01) << u;
  }
  EXPECT_LT(std::abs(laplace_erf(1000.0).value.real() * 1e6 - 1.0), 1e-4);
}
