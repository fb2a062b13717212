#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "dhlab/clifford.hpp"
#include "dhlab/grid.hpp"

namespace dhlab {

inline std::ostream& operator<<(std::ostream& os, const Spinor& s) {
  return os << "(" << s.c1 << ", " << s.c2 << ")";
}

}  // namespace dhlab

namespace dhlab::testing {

constexpr double kPi = std::numbers::pi;

inline double gap(const Spinor& a, const Spinor& b) {
  return std::max(std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2));
}

inline double gap(const Mat2& a, const Mat2& b) {
  double g = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g = std::max(g, std::abs(a[r][c] - b[r][c]));
  return g;
}

template <class T>
double gap(const Field<T>& a, const Field<T>& b) {
  double g = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if constexpr (std::is_same_v<T, Spinor>)
      g = std::max(g, gap(a[k], b[k]));
    else
      g = std::max(g, std::abs(a[k] - b[k]));
  }
  return g;
}

inline Spinor random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {cplx(n(rng), n(rng)), cplx(n(rng), n(rng))};
}

}  // namespace dhlab::testing
