// Orr-Sommerfeld profile at the default parameters: Green's function
// quadrature, its ODE residual, and the experimental series for comparison.

#include <cstdio>

#include "hyperseries/hyperseries.hpp"

int main() {
  using namespace hyperseries;
  const OSParams p;
  const ComplexScalar s = p.airy_shift();
  std::printf("lambda = %g%+gi, airy shift = %g%+gi\n", p.lambda_os().real(), p.lambda_os().imag(), s.real(), s.imag());
  std::printf("%5s %26s %10s %26s\n", "y", "phi (quadrature)", "residual", "phi (series)");
  for (double y : {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
    const auto q = phi_quadrature(y, p);
    const double res = os_residual(y, p, [&](double t) { return phi_quadrature(t, p).phi; });
    std::printf("%5g %12.5e%+12.5ei %10.2e ", y, q.phi.real(), q.phi.imag(), res);
    try {
      const auto ser = phi_series(y, p);
      std::printf("%12.5e%+12.5ei\n", ser.phi.real(), ser.phi.imag());
    } catch (const NumericError& e) {
      std::printf("%s\n", e.what());
    }
  }
}
