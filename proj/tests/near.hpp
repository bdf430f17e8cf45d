#pragma once

#include <doctest.h>

// doctest's default Approx tolerance is about 1e-5; the library promises 1e-9.
inline doctest::Approx near(double v, double tol = 1e-9) {
  return doctest::Approx(v).epsilon(tol);
}
