#include "molqa/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace molqa {

namespace {

// factorials as doubles; exact up to 22!, adequate relative accuracy beyond
const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

double fact(int n) { return factorial_table().at(static_cast<size_t>(n)); }

bool is_half_integer(double x) {
  return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

int twice(double x) { return static_cast<int>(std::round(2.0 * x)); }

}  // namespace

double wigner_3j(double j1, double j2, double j3,
                 double m1, double m2, double m3) {
  for (double x : {j1, j2, j3, m1, m2, m3}) {
    if (!is_half_integer(x))
      throw std::invalid_argument("wigner_3j: arguments must be integers or half-integers");
  }
  if (j1 < 0 || j2 < 0 || j3 < 0)
    throw std::invalid_argument("wigner_3j: angular momenta must be non-negative");

  const int tj1 = twice(j1), tj2 = twice(j2), tj3 = twice(j3);
  const int tm1 = twice(m1), tm2 = twice(m2), tm3 = twice(m3);
  // j and m must have the same parity (j - m integer)
  if (((tj1 + tm1) | (tj2 + tm2) | (tj3 + tm3)) & 1)
    throw std::invalid_argument("wigner_3j: j - m must be an integer");

  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  // triangle rule, and integer total j
  if (tj3 < std::abs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;

  // Racah formula; all factorial arguments below are integers.
  const int a1 = (tj1 + tj2 - tj3) / 2;
  const int a2 = (tj1 - tj2 + tj3) / 2;
  const int a3 = (-tj1 + tj2 + tj3) / 2;
  const int jsum = (tj1 + tj2 + tj3) / 2;

  const double delta = std::sqrt(fact(a1) * fact(a2) * fact(a3) / fact(jsum + 1));

  const int j1m1 = (tj1 - tm1) / 2, j1p1 = (tj1 + tm1) / 2;
  const int j2m2 = (tj2 - tm2) / 2, j2p2 = (tj2 + tm2) / 2;
  const int j3m3 = (tj3 - tm3) / 2, j3p3 = (tj3 + tm3) / 2;
  const double norm = std::sqrt(fact(j1m1) * fact(j1p1) * fact(j2m2) *
                                fact(j2p2) * fact(j3m3) * fact(j3p3));

  const int b1 = a1;                       // j1 + j2 - j3
  const int b2 = j1m1;                     // j1 - m1
  const int b3 = j2p2;                     // j2 + m2
  const int c1 = (tj3 - tj2 + tm1) / 2;    // j3 - j2 + m1
  const int c2 = (tj3 - tj1 - tm2) / 2;    // j3 - j1 - m2

  const int k_min = std::max({0, -c1, -c2});
  const int k_max = std::min({b1, b2, b3});

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double term = fact(k) * fact(b1 - k) * fact(b2 - k) * fact(b3 - k) *
                        fact(c1 + k) * fact(c2 + k);
    sum += ((k % 2) ? -1.0 : 1.0) / term;
  }

  const int phase_exp = (tj1 - tj2 - tm3) / 2;
  const double phase = (((phase_exp % 2) + 2) % 2) ? -1.0 : 1.0;
  return phase * delta * norm * sum;
}

}  // namespace molqa
