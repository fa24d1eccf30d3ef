#include "nsmqa/angular.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace nsmqa {

namespace {

constexpr int kMaxFactorial = 64;

const std::array<long double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> f{};
    f[0] = 1.0L;
    for (int n = 1; n <= kMaxFactorial; ++n) f[n] = f[n - 1] * n;
    return f;
  }();
  return table;
}

long double fact(int n) { return factorials().at(static_cast<std::size_t>(n)); }

}  // namespace

bool triangle(int two_j1, int two_j2, int two_J) {
  if (two_j1 < 0 || two_j2 < 0 || two_J < 0) return false;
  if ((two_j1 + two_j2 + two_J) % 2 != 0) return false;
  return two_J >= std::abs(two_j1 - two_j2) && two_J <= two_j1 + two_j2;
}

double clebsch_gordan(const CGKey& k) {
  if (k.two_m1 + k.two_m2 != k.two_M) return 0.0;
  if (!triangle(k.two_j1, k.two_j2, k.two_J)) return 0.0;
  if (std::abs(k.two_m1) > k.two_j1 || std::abs(k.two_m2) > k.two_j2 ||
      std::abs(k.two_M) > k.two_J)
    return 0.0;
  if ((k.two_j1 + k.two_m1) % 2 != 0 || (k.two_j2 + k.two_m2) % 2 != 0 ||
      (k.two_J + k.two_M) % 2 != 0)
    return 0.0;

  // All combinations below are integers once the parity checks above pass.
  const int j1pj2mJ = (k.two_j1 + k.two_j2 - k.two_J) / 2;
  const int j1mj2pJ = (k.two_j1 - k.two_j2 + k.two_J) / 2;
  const int mj1pj2pJ = (-k.two_j1 + k.two_j2 + k.two_J) / 2;
  const int j1pj2pJp1 = (k.two_j1 + k.two_j2 + k.two_J) / 2 + 1;
  const int j1pm1 = (k.two_j1 + k.two_m1) / 2;
  const int j1mm1 = (k.two_j1 - k.two_m1) / 2;
  const int j2pm2 = (k.two_j2 + k.two_m2) / 2;
  const int j2mm2 = (k.two_j2 - k.two_m2) / 2;
  const int JpM = (k.two_J + k.two_M) / 2;
  const int JmM = (k.two_J - k.two_M) / 2;
  const int Jmj2pm1 = (k.two_J - k.two_j2 + k.two_m1) / 2;
  const int Jmj1mm2 = (k.two_J - k.two_j1 - k.two_m2) / 2;

  const long double pre =
      std::sqrt((k.two_J + 1) * fact(j1pj2mJ) * fact(j1mj2pJ) * fact(mj1pj2pJ) / fact(j1pj2pJp1)) *
      std::sqrt(fact(j1pm1) * fact(j1mm1) * fact(j2pm2) * fact(j2mm2) * fact(JpM) * fact(JmM));

  long double sum = 0.0L;
  for (int s = 0; s <= j1pj2mJ; ++s) {
    const int d1 = j1pj2mJ - s;
    const int d2 = j1mm1 - s;
    const int d3 = j2pm2 - s;
    const int d4 = Jmj2pm1 + s;
    const int d5 = Jmj1mm2 + s;
    if (d1 < 0 || d2 < 0 || d3 < 0 || d4 < 0 || d5 < 0) continue;
    const long double term = 1.0L / (fact(s) * fact(d1) * fact(d2) * fact(d3) * fact(d4) * fact(d5));
    sum += (s % 2 == 0) ? term : -term;
  }
  return static_cast<double>(pre * sum);
}

}  // namespace nsmqa
