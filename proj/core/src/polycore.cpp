#include "qsos/polycore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsos {

namespace {

RPoly monic(const RPoly& p) {
  if (p.is_zero()) return RPoly();
  RPoly t = p.trimmed();
  Rational lc = t.true_lead();
  return t * Rational(1 / lc);
}

int sign_at_infinity(const RPoly& p, bool positive) {
  int d = p.degree();
  if (d < 0) return 0;
  int s = sgn(p.true_lead());
  if (!positive && d % 2 == 1) s = -s;
  return s;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

RPoly gcd(const RPoly& a, const RPoly& b) {
  RPoly u = a.trimmed(), v = b.trimmed();
  while (!v.is_zero()) {
    RPoly r = divrem(u, v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return monic(u);
}

std::vector<std::pair<RPoly, int>> square_free_decomposition(const RPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("square-free decomposition of zero");
  std::vector<std::pair<RPoly, int>> out;
  RPoly a = monic(f);
  RPoly d = a.derivative();
  RPoly g = gcd(a, d);
  RPoly b = divrem(a, g).first;
  RPoly c = divrem(d, g).first;
  RPoly dd = c - b.derivative();
  int k = 1;
  while (b.degree() > 0) {
    RPoly s = gcd(b, dd);
    if (s.degree() > 0) out.emplace_back(s, k);
    b = divrem(b, s).first;
    c = divrem(dd, s).first;
    dd = c - b.derivative();
    ++k;
  }
  return out;
}

bool square_free(const RPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("square_free of the zero polynomial");
  return gcd(f, f.derivative()).degree() <= 0;
}

bool square_free(const DPoly& f, double threshold) {
  if (f.is_zero()) throw std::invalid_argument("square_free of the zero polynomial");
  if (f.degree() <= 1) return true;
  DPoly t = f.trimmed();
  return approx_gcd_degree(t, t.derivative(), threshold) == 0;
}

std::vector<RPoly> sturm_sequence(const RPoly& f) {
  std::vector<RPoly> seq{f.trimmed(), f.derivative().trimmed()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    RPoly r = divrem(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int count_real_roots(const RPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("real roots of the zero polynomial");
  if (f.degree() == 0) return 0;
  // Distinct roots of f are the roots of its square-free part.
  RPoly g = gcd(f, f.derivative());
  RPoly sf = divrem(f.trimmed(), g).first;
  auto seq = sturm_sequence(sf);
  std::vector<int> neg, pos;
  for (const auto& p : seq) {
    neg.push_back(sign_at_infinity(p, false));
    pos.push_back(sign_at_infinity(p, true));
  }
  return sign_changes(neg) - sign_changes(pos);
}

bool psd_binary(const RForm& f) {
  if (f.degree() % 2 != 0) throw std::invalid_argument("psd test needs an even degree");
  if (f.is_zero()) return true;
  const RPoly& p = f.dehomogenize();
  int at_infinity = f.degree() - p.degree();
  if (at_infinity % 2 != 0) return false;
  if (p.degree() == 0) return sgn(p.true_lead()) > 0;
  for (const auto& [s, k] : square_free_decomposition(p))
    if (k % 2 == 1 && count_real_roots(s) > 0) return false;
  // No sign change on the real line, so the sign is that of the leading term.
  return sgn(p.true_lead()) > 0;
}

std::vector<std::complex<double>> complex_roots(const DPoly& f) {
  DPoly p = f.trimmed();
  int n = p.degree();
  if (n < 0) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<std::complex<double>> roots;
  if (n == 0) return roots;
  double lc = p.coeff(n);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lc;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  auto ev = es.eigenvalues();
  roots.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::complex<long double> z(ev[i].real(), ev[i].imag());
    for (int it = 0; it < 4; ++it) {
      std::complex<long double> v = 0, dv = 0;
      for (int k = n; k >= 0; --k) {
        dv = dv * z + v;
        v = v * z + static_cast<long double>(p.coeff(k));
      }
      if (std::abs(dv) == 0.0L) break;
      std::complex<long double> step = v / dv;
      // Near multiple roots Newton wanders; keep the eigenvalue estimate then.
      if (std::abs(step) > 1e-3L * (1.0L + std::abs(z))) break;
      z -= step;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

std::pair<double, std::pair<double, double>> min_on_circle(const DForm& f) {
  const int d = f.degree();
  auto value_at = [&](double ux, double uy) { return f.eval(ux, uy); };
  // Critical directions of f on the circle: x f_y - y f_x = 0, a form of degree d.
  std::vector<double> crit(d + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    // x * f_y contributes k c_k x^(d-k+1) y^(k-1) -> index k-1 ; y * f_x -> index k+1.
    if (k >= 1) crit[k - 1] += k * f[k];
    if (k + 1 <= d) crit[k + 1] -= (d - k) * f[k];
  }
  std::vector<std::pair<double, double>> dirs{{1.0, 0.0}, {0.0, 1.0}};
  const int samples = 64;
  for (int i = 0; i < samples; ++i) {
    double a = std::numbers::pi * i / samples;
    dirs.emplace_back(std::cos(a), std::sin(a));
  }
  DPoly g(crit);
  if (g.degree() > 0) {
    for (auto z : complex_roots(g)) {
      if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
      double r = z.real(), nrm = std::hypot(r, 1.0);
      dirs.emplace_back(r / nrm, 1.0 / nrm);
    }
  }
  double best = value_at(dirs[0].first, dirs[0].second);
  std::pair<double, double> arg = dirs[0];
  for (const auto& [ux, uy] : dirs) {
    double v = value_at(ux, uy);
    if (v < best) {
      best = v;
      arg = {ux, uy};
    }
  }
  return {best, arg};
}

bool psd_binary(const DForm& f, const PsdTolerance& tol) {
  if (f.degree() % 2 != 0) throw std::invalid_argument("psd test needs an even degree");
  double scale = coeff_norm(f.dehomogenize());
  if (scale == 0.0) return true;
  return min_on_circle(f).first >= -tol.psd * scale;
}

int approx_gcd_degree(const DPoly& a, const DPoly& b, double threshold) {
  DPoly at = a.trimmed(), bt = b.trimmed();
  int m = at.degree(), n = bt.degree();
  if (m < 0 || n < 0) throw std::invalid_argument("gcd with the zero polynomial");
  if (m == 0 || n == 0) return 0;
  at = at * (1.0 / coeff_norm(at));
  bt = bt * (1.0 / coeff_norm(bt));
  Matrix<double> s = sylvester(at, bt, m, n);
  Eigen::MatrixXd e(m + n, m + n);
  for (int r = 0; r < m + n; ++r)
    for (int c = 0; c < m + n; ++c) e(r, c) = s(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] <= threshold * sv[0]) ++k;
  return k;
}

std::optional<RForm> divide_exact(const RForm& a, const RForm& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero form");
  const int da = a.degree(), db = b.degree();
  if (a.is_zero()) return RForm::zero(std::max(da - db, 0));
  if (da < db) return std::nullopt;
  int s = 0;
  while (sgn(b[s]) == 0) ++s;
  const int dc = da - db;
  std::vector<Rational> c(dc + 1);
  // a_k = sum_i b_i c_{k-i}; equation k = s + j determines c_j.
  for (int j = 0; j <= dc; ++j) {
    Rational acc = a[s + j];
    for (int i = s + 1; i <= db && j - (i - s) >= 0; ++i) acc -= b[i] * c[j - (i - s)];
    c[j] = acc / b[s];
  }
  RForm q(c);
  if (b * q != a) return std::nullopt;
  return q;
}

}  // namespace qsos
