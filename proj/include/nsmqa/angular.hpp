#pragma once

// Angular-momentum coupling in the doubled-integer convention: every j and m
// argument is passed as 2j / 2m so half-integers stay exact.

namespace nsmqa {

struct CGKey {
  int two_j1;
  int two_m1;
  int two_j2;
  int two_m2;
  int two_J;
  int two_M;
};

/// <j1 m1; j2 m2 | J M> with the Condon-Shortley phase (Racah's closed form).
/// Returns 0 for any selection-rule violation.
double clebsch_gordan(const CGKey& key);

inline double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J,
                             int two_M) {
  return clebsch_gordan(CGKey{two_j1, two_m1, two_j2, two_m2, two_J, two_M});
}

/// Triangle rule |j1 - j2| <= J <= j1 + j2 with integer j1 + j2 + J.
bool triangle(int two_j1, int two_j2, int two_J);

}  // namespace nsmqa
