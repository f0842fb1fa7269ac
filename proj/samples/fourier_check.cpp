// Gaussian Fourier moments in closed form against direct quadrature.

#include <cmath>
#include <cstdio>

#include "hyperseries/hyperseries.hpp"

int main() {
  using namespace hyperseries;
  std::printf("%5s %6s %5s %24s %24s %10s\n", "alpha", "theta", "k", "closed", "quadrature", "rel err");
  for (int alpha : {0, 1, 2, 3}) {
    for (double theta : {1.0, 2.0}) {
      for (double k : {0.5, 2.0, 4.0}) {
        const ComplexScalar closed = fourier_moment_gaussian(alpha, theta, k);
        const auto quad = oracle::quad_oscillatory_fourier(
            [=](double x) { return std::pow(x, alpha) * std::exp(-theta * theta * x * x); }, k, 1e-11);
        const ComplexScalar c = closed.imag() != 0.0 ? ComplexScalar(closed.imag(), 0.0) : closed;
        const ComplexScalar q = closed.imag() != 0.0 ? ComplexScalar(quad.value.imag(), 0.0) : quad.value;
        std::printf("%5d %6g %5g %24.16e %24.16e %10.2e\n", alpha, theta, k, c.real(), q.real(),
                    std::abs(closed - quad.value) / std::abs(closed));
      }
    }
  }
}
