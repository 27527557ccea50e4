#include "qsos/resolvent.hpp"

namespace qsos {

namespace {

RPoly dehom(const RForm& f) { return f.dehomogenize(); }

}  // namespace

Poly<RPoly> pencil_member(const Rational& t, const RForm& f2, const RForm& f3, const RForm& f4) {
  return Poly<RPoly>({RPoly::constant(t * t), RPoly(), dehom(f2), dehom(f3), dehom(f4)});
}

Poly<RPoly> g_t_poly(const Rational& t, const RForm& f2, const RForm& f3, const RForm& f4) {
  std::vector<RPoly> c;
  for (const auto& f : g_t(t, f2, f3, f4)) c.push_back(dehom(f));
  return Poly<RPoly>(c);
}

IdealCertificate dt_cofactors(const Rational& t, const RForm& f2, const RForm& f3, const RForm& f4) {
  if (sgn(t) == 0) throw std::invalid_argument("cofactors need t != 0");
  const Poly<RPoly> g = g_t_poly(t, f2, f3, f4);
  const Poly<RPoly> h = g.derivative();
  // Row r of Sylvester(g, h, 3, 2) is z^k g or z^k h; column j holds z^(4-j).
  // Res = sum_r C_r * row_poly_r, with C_r the cofactor of entry (r, 4).
  Matrix<RPoly> s = sylvester(g, h, 3, 2);
  const int n = 5;
  Poly<RPoly> u = Poly<RPoly>::zero(1), v = Poly<RPoly>::zero(2);
  for (int r = 0; r < n; ++r) {
    Matrix<RPoly> minor(n - 1, n - 1);
    for (int i = 0, mi = 0; i < n; ++i) {
      if (i == r) continue;
      for (int j = 0; j < n - 1; ++j) minor(mi, j) = s(i, j);
      ++mi;
    }
    RPoly c = determinant(minor);
    if ((r + n - 1) % 2) c = -c;
    // Rows 0, 1: z^1 g, z^0 g; rows 2, 3, 4: z^2 h, z^1 h, z^0 h.
    if (r < 2) {
      u.coeff_ref(1 - r) = u.coeff(1 - r) + c;
    } else {
      v.coeff_ref(4 - r) = v.coeff(4 - r) + c;
    }
  }
  // Res_{3,2}(g, g') = -t disc(g), so D_t = -(u g + v h) / t.
  const RPoly scale = RPoly::constant(Rational(-1) / t);
  u *= scale;
  v *= scale;
  return {u, v, dehom(D_t(t, f2, f3, f4))};
}

}  // namespace qsos
