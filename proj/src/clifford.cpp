#include "dhlab/clifford.hpp"

namespace dhlab {

Mat2 matmul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 2; ++col)
      c[r][col] = a[r][0] * b[0][col] + a[r][1] * b[1][col];
  return c;
}

Spinor apply(const Mat2& m, const Spinor& s) {
  return {m[0][0] * s.c1 + m[0][1] * s.c2, m[1][0] * s.c1 + m[1][1] * s.c2};
}

CliffordRep clifford_rep() {
  const cplx i{0.0, 1.0};
  CliffordRep rep;
  rep.gamma_x = {{{0.0, 1.0}, {-1.0, 0.0}}};
  rep.gamma_y = {{{0.0, i}, {i, 0.0}}};
  rep.omega = matmul(rep.gamma_x, rep.gamma_y);
  for (auto& row : rep.omega)
    for (auto& v : row) v *= i;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const cplx id = r == c ? 1.0 : 0.0;
      rep.p_plus[r][c] = 0.5 * (id + rep.omega[r][c]);
      rep.p_minus[r][c] = 0.5 * (id - rep.omega[r][c]);
    }
  }
  return rep;
}

}  // namespace dhlab
