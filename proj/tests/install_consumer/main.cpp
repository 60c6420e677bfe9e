#include <cmath>
#include <cstdio>

#include <rwl/saturation.hpp>

int main() {
  const auto sums = rwl::realized_sums({0.4, 0.3, 0.2, 0.1});
  std::printf("%zu realized sums\n", sums.size());
  return sums.size() == 11 && std::abs(sums.back() - 1.0) < 1e-12 ? 0 : 1;
}
