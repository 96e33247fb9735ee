#pragma once

namespace molqa {

// Wigner 3j coefficient (j1 j2 j3; m1 m2 m3) for integer or half-integer
// arguments. Returns 0 when the triangle rule, m1+m2+m3 = 0, or |m| <= j
// is violated. Throws std::invalid_argument for arguments that are not
// (half-)integers or for negative j.
double wigner_3j(double j1, double j2, double j3,
                 double m1, double m2, double m3);

}  // namespace molqa
