#include "qsos/realzero.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "qsos/normforms.hpp"

namespace qsos {

namespace {

using cd = std::complex<double>;

double form_norm(const DForm& f) { return coeff_norm(f.dehomogenize()); }

TernaryQuadratic quadratic_from(const DForm& linear_in_z, const DForm& constant_in_z) {
  TernaryQuadratic p = TernaryQuadratic::from_slice(constant_in_z, 0);
  if (linear_in_z.degree() == 1) p += TernaryQuadratic::from_slice(linear_in_z, 1);
  return p;
}

SosTriple triple_of(const std::array<TernaryQuadratic, 3>& p) {
  SosTriple t;
  t.p = p;
  return t;
}

// |eta + i f3| at the projective root of l1 + i l2, relative to the sizes involved.
double divisibility_defect(const DForm& l1, const DForm& l2, const DForm& eta, const DForm& f3) {
  const cd a(l1[0], l2[0]), b(l1[1], l2[1]);
  cd x0 = 1.0, y0 = 1.0;
  if (std::abs(a) >= std::abs(b)) {
    x0 = -b / a;
  } else {
    y0 = -a / b;
  }
  const cd v = eta.eval(x0, y0) + cd(0, 1) * f3.eval(x0, y0);
  return std::abs(v) / (1.0 + std::abs(x0) * std::abs(x0) * std::abs(x0) + std::abs(y0 * y0 * y0));
}

bool same_up_to_sign(const DForm& a, const DForm& b, double tol) {
  const DPoly pa = a.dehomogenize(), pb = b.dehomogenize();
  return coeff_norm(pa - pb) <= tol || coeff_norm(pa + pb) <= tol;
}

}  // namespace

void check_psd(const RealZeroForm& f) {
  if (f.f2.degree() != 2 || f.f3.degree() != 3 || f.f4.degree() != 4)
    throw std::invalid_argument("real-zero form needs degrees 2, 3, 4");
  if (!psd_binary(f.f2)) throw NotPsdError("f2 is not psd");
  if (!psd_binary(f.f4)) throw NotPsdError("f4 is not psd");
  if (!psd_binary(f.f6())) throw NotPsdError("4 f2 f4 - f3^2 is not psd");
}

void check_psd(const RRealZeroForm& f) {
  if (f.f2.degree() != 2 || f.f3.degree() != 3 || f.f4.degree() != 4)
    throw std::invalid_argument("real-zero form needs degrees 2, 3, 4");
  if (!psd_binary(f.f2)) throw NotPsdError("f2 is not psd");
  if (!psd_binary(f.f4)) throw NotPsdError("f4 is not psd");
  if (!psd_binary(f.f6())) throw NotPsdError("4 f2 f4 - f3^2 is not psd");
}

TernaryQuartic to_ternary(const RealZeroForm& f) { return z_quartic(0.0, f.f2, f.f3, f.f4); }

RealZeroForm to_double(const RRealZeroForm& f) {
  return {qsos::to_double(f.f2), qsos::to_double(f.f3), qsos::to_double(f.f4)};
}

std::pair<DForm, DForm> split_quadratic(const DForm& f2) {
  const double a = f2[0], b = f2[1], c = f2[2];
  if (a > 0) {
    const double r = std::sqrt(a);
    return {DForm{r, b / (2 * r)}, DForm{0.0, std::sqrt(std::max(0.0, c - b * b / (4 * a)))}};
  }
  // a = 0 forces b = 0 for a psd form.
  return {DForm{0.0, std::sqrt(std::max(0.0, c))}, DForm{0.0, 0.0}};
}

std::pair<DForm, DForm> two_squares(const DForm& f, double tau_root) {
  if (f.degree() % 2 != 0) throw std::invalid_argument("two squares needs an even degree");
  const int d = f.degree() / 2;
  const double scale = form_norm(f);
  if (scale == 0.0) return {DForm::zero(d), DForm::zero(d)};
  std::vector<double> a = f.dehomogenize().ascending();
  while (a.size() > 1 && std::abs(a.back()) <= 1e-14 * scale) a.pop_back();
  const int at_infinity = f.degree() - static_cast<int>(a.size() - 1);
  if (at_infinity % 2 != 0) throw NotPsdError("form is not psd");
  auto fac = factor_psd(DPoly::from_ascending(a), tau_root);
  std::vector<cd> g{cd(std::sqrt(fac.lead))};  // ascending
  for (const auto& p : fac.factors)
    for (int m = 0; m < p.mult; ++m) {
      // times (x + a + i b)
      std::vector<cd> h(g.size() + 1, 0.0);
      for (std::size_t k = 0; k < g.size(); ++k) {
        h[k] += g[k] * cd(p.a, p.b);
        h[k + 1] += g[k];
      }
      g = std::move(h);
    }
  std::vector<double> re, im;
  for (cd c : g) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {DForm::homogenize(DPoly::from_ascending(re), d), DForm::homogenize(DPoly::from_ascending(im), d)};
}

std::pair<DForm, double> divide_forms(const DForm& a, const DForm& b) {
  const int na = a.degree(), nb = b.degree(), nq = na - nb;
  if (nq < 0) throw std::invalid_argument("divisor degree exceeds dividend degree");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(na + 1, nq + 1);
  Eigen::VectorXd rhs(na + 1);
  for (int k = 0; k <= na; ++k) rhs[k] = a[k];
  for (int j = 0; j <= nq; ++j)
    for (int i = 0; i <= nb; ++i) m(i + j, j) = b[i];
  Eigen::VectorXd q = m.colPivHouseholderQr().solve(rhs);
  std::vector<double> qc(q.data(), q.data() + q.size());
  DForm qf(qc);
  return {qf, form_norm(a - b * qf)};
}

SosTriple triple_from_pair(const RealZeroForm& f, const DForm& xi, const DForm& eta) {
  auto [l1, l2] = split_quadratic(f.f2);
  if (divisibility_defect(l1, -l2, eta, f.f3) < divisibility_defect(l1, l2, eta, f.f3)) l2 = -l2;
  const DForm twice_f2 = 2.0 * f.f2;
  auto [h1, r1] = divide_forms(f.f3 * l1 - eta * l2, twice_f2);
  auto [h2, r2] = divide_forms(eta * l1 + f.f3 * l2, twice_f2);
  const double scale = 1.0 + form_norm(f.f3) + form_norm(eta);
  if (std::max(r1, r2) > 1e-6 * scale) throw NumericalError("inexact division by 2 f2");
  SosTriple t = triple_of({quadratic_from(DForm::zero(1), 0.5 * xi), quadratic_from(l1, h1), quadratic_from(l2, h2)});
  t.witness = std::make_pair(xi, eta);
  return t;
}

namespace {

SosTriple zero_f2_case(const RealZeroForm& f) {
  auto [w1, w2] = two_squares(f.f4);
  return triple_of({TernaryQuadratic::from_slice(w1, 0), TernaryQuadratic::from_slice(w2, 0), TernaryQuadratic(2)});
}

SosTriple square_f2_case(const RealZeroForm& f) {
  const DForm l = split_quadratic(f.f2).first;
  auto [g2, r] = divide_forms(f.f3, 2.0 * l);
  if (r > 1e-6 * (1.0 + form_norm(f.f3))) throw NumericalError("f3 is not divisible by 2 l");
  auto [w1, w2] = two_squares(f.f4 - g2 * g2);
  return triple_of({quadratic_from(l, g2), TernaryQuadratic::from_slice(w1, 0), TernaryQuadratic::from_slice(w2, 0)});
}

}  // namespace

SosTriple decompose(const RRealZeroForm& f) {
  check_psd(f);
  const RealZeroForm fd = to_double(f);
  if (f.f2.is_zero()) return zero_f2_case(fd);
  if (sgn(disc(f.f2)) == 0) return square_f2_case(fd);
  auto reps = represent_binary(f.f6(), f.f2);
  return triple_from_pair(fd, reps.front().xi, reps.front().eta);
}

SosTriple decompose(const RealZeroForm& f) {
  check_psd(f);
  const double n2 = form_norm(f.f2);
  const double scale = std::max({n2, form_norm(f.f3), form_norm(f.f4)});
  if (n2 <= 1e-12 * scale) return zero_f2_case(f);
  if (std::abs(disc(f.f2)) <= 1e-10 * n2 * n2) return square_f2_case(f);
  auto reps = represent_binary(f.f6(), f.f2);
  return triple_from_pair(f, reps.front().xi, reps.front().eta);
}

namespace {

std::vector<SosTriple> group_classes(const RealZeroForm& fd, const std::vector<BinaryNormRep>& reps) {
  double scale = 0;
  for (const auto& r : reps) scale = std::max({scale, form_norm(r.xi), form_norm(r.eta)});
  const double tol = 1e-6 * (1.0 + scale);
  std::vector<SosTriple> out;
  std::vector<const BinaryNormRep*> seen;
  for (const auto& r : reps) {
    bool dup = false;
    for (const auto* s : seen)
      if (same_up_to_sign(r.xi, s->xi, tol) && same_up_to_sign(r.eta, s->eta, tol)) {
        dup = true;
        break;
      }
    if (dup) continue;
    seen.push_back(&r);
    out.push_back(triple_from_pair(fd, r.xi, r.eta));
  }
  return out;
}

}  // namespace

std::vector<SosTriple> classes(const RRealZeroForm& f) {
  check_psd(f);
  if (sgn(disc(f.f2)) == 0) throw GenericityError("E1", "f2 is a square");
  if (divides(f.f2, f.f3)) throw GenericityError("E2", "f2 divides f3");
  if (sgn(disc(f.f6())) == 0) throw GenericityError("E3", "4 f2 f4 - f3^2 is not square-free");
  return group_classes(to_double(f), represent_binary(f.f6(), f.f2));
}

std::vector<SosTriple> classes(const RealZeroForm& f) {
  check_psd(f);
  const double n2 = form_norm(f.f2);
  if (std::abs(disc(f.f2)) <= 1e-10 * n2 * n2) throw GenericityError("E1", "f2 is a square");
  if (divide_forms(f.f3, f.f2).second <= 1e-9 * (1.0 + form_norm(f.f3))) throw GenericityError("E2", "f2 divides f3");
  const DForm f6 = f.f6();
  const DPoly p6 = f6.dehomogenize();
  const double n6 = form_norm(f6);
  const bool double_at_infinity = std::abs(p6[0]) <= 1e-12 * n6 && std::abs(p6[1]) <= 1e-12 * n6;
  std::vector<double> a = p6.ascending();
  while (a.size() > 1 && std::abs(a.back()) <= 1e-12 * n6) a.pop_back();
  if (double_at_infinity || !square_free(DPoly::from_ascending(a)))
    throw GenericityError("E3", "4 f2 f4 - f3^2 is not square-free");
  return group_classes(f, represent_binary(f6, f.f2));
}

std::pair<DForm, DForm> invariant_of_representation(const SosTriple& t, const RealZeroForm& f, double tol) {
  const TernaryQuartic target = to_ternary(f);
  if (residual(target, t) > tol * (1.0 + max_norm(target))) throw std::invalid_argument("triple does not sum to f");
  Eigen::Matrix<double, 3, 2> v;
  for (int i = 0; i < 3; ++i) {
    v(i, 0) = t.p[i].coeff(1, 0, 1);
    v(i, 1) = t.p[i].coeff(0, 1, 1);
  }
  Eigen::Vector3d n = v.col(0).cross(v.col(1));
  if (n.norm() <= 1e-12 * (1.0 + v.squaredNorm())) throw GenericityError("E1", "f2 is a square");
  n.normalize();
  // Householder reflection with H n = e1 (or -e1); the sign is irrelevant for squares.
  Eigen::Vector3d u = n - Eigen::Vector3d::UnitX();
  if (u.norm() < 1e-8) u = n + Eigen::Vector3d::UnitX();
  const Eigen::Matrix3d h = Eigen::Matrix3d::Identity() - 2.0 * u * u.transpose() / u.squaredNorm();
  std::array<std::array<double, 3>, 3> s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = h(j, i);
  const SosTriple r = mix(t, s);
  auto lin = [&](int i) { return DForm{r.p[i].coeff(1, 0, 1), r.p[i].coeff(0, 1, 1)}; };
  const DForm xi = 2.0 * r.p[0].z_slice(0);
  const DForm eta = 2.0 * (lin(1) * r.p[2].z_slice(0) - lin(2) * r.p[1].z_slice(0));
  return {xi * xi, eta * eta};
}

}  // namespace qsos
