// Ai(z) on [-4, 4] from the Maclaurin series and from the integral representation.

#include <cstdio>

#include "hyperseries/hyperseries.hpp"

int main() {
  using namespace hyperseries;
  std::printf("%6s %24s %10s %24s %10s\n", "z", "series", "terms", "integral", "rel diff");
  for (int i = 0; i <= 16; ++i) {
    const double z = -4.0 + 0.5 * i;
    const auto s = airy_ai(z);
    const auto q = oracle::airy_ai_integral<double>(z, 1e-12);
    std::printf("%6g %24.16e %10lld %24.16e %10.2e\n", z, s.value.real(), static_cast<long long>(s.terms_used),
                q.value.real(), std::abs(s.value - q.value) / std::abs(q.value));
  }
}
