#include "qsos/normforms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qsos {

namespace {

using cd = std::complex<double>;

// Roots of a psd polynomial: upper half-plane roots and real roots, each with
// multiplicity, plus the leading coefficient.
struct RootSet {
  double lead = 0.0;
  std::vector<std::pair<cd, int>> upper;
  std::vector<std::pair<double, int>> real;
};

RootSet roots_exact(const RPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("norm form representation of the zero polynomial");
  if (f.degree() % 2 != 0 || !psd_binary(RForm::homogenize(f, f.degree())))
    throw std::invalid_argument("polynomial is not psd");
  RootSet rs;
  rs.lead = f.true_lead().get_d();
  if (f.degree() == 0) return rs;
  for (const auto& [s, k] : square_free_decomposition(f)) {
    const int nreal = count_real_roots(s);
    auto z = complex_roots(to_double(s));
    std::sort(z.begin(), z.end(), [](cd u, cd v) { return std::abs(u.imag()) < std::abs(v.imag()); });
    for (int i = 0; i < nreal; ++i) rs.real.emplace_back(z[i].real(), k);
    std::vector<cd> rest(z.begin() + nreal, z.end());
    std::sort(rest.begin(), rest.end(), [](cd u, cd v) { return u.imag() > v.imag(); });
    for (std::size_t i = 0; i < rest.size() / 2; ++i) rs.upper.emplace_back(rest[i], k);
  }
  return rs;
}

RootSet roots_float(const DPoly& f, double tau) {
  DPoly p = f.trimmed();
  if (p.is_zero()) throw std::invalid_argument("norm form representation of the zero polynomial");
  if (p.degree() % 2 != 0) throw std::invalid_argument("polynomial is not psd");
  RootSet rs;
  rs.lead = p.true_lead();
  if (rs.lead <= 0.0) throw std::invalid_argument("polynomial is not psd");
  if (p.degree() == 0) return rs;
  auto z = complex_roots(p);
  const std::size_t n = z.size();
  // Single-linkage clustering.
  std::vector<int> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<int>(i);
  auto near = [&](cd u, cd v) { return std::abs(u - v) <= tau * std::max(1.0, std::abs(u)); };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (label[j] < label[i] && near(z[i], z[j])) {
          label[i] = label[j];
          changed = true;
        }
  }
  std::vector<std::pair<cd, int>> lower;
  for (std::size_t c = 0; c < n; ++c) {
    cd sum = 0;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == static_cast<int>(c)) {
        sum += z[i];
        ++size;
      }
    if (size == 0) continue;
    cd center = sum / double(size);
    if (std::abs(center.imag()) <= tau * std::max(1.0, std::abs(center))) {
      if (size % 2 != 0) throw std::invalid_argument("polynomial is not psd (real root of odd multiplicity)");
      rs.real.emplace_back(center.real(), size);
    } else if (center.imag() > 0) {
      rs.upper.emplace_back(center, size);
    } else {
      lower.emplace_back(center, size);
    }
  }
  if (lower.size() != rs.upper.size()) throw std::runtime_error("ambiguous root clustering");
  for (auto& [u, m] : rs.upper) {
    auto it = std::min_element(lower.begin(), lower.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.first - std::conj(u)) < std::abs(b.first - std::conj(u));
    });
    if (it->second != m) throw std::runtime_error("ambiguous root clustering");
    u = 0.5 * (u + std::conj(it->first));
  }
  return rs;
}

// q = alpha ((x + beta)^2 + gamma^2).
struct QShape {
  double alpha, beta, gamma;
};

QShape shape_of(const DPoly& q) {
  if (q.degree() != 2) throw std::invalid_argument("q must be a quadratic");
  const double q0 = q.coeff(2), q1 = q.coeff(1), q2 = q.coeff(0);
  const double beta = q1 / (2 * q0), g2 = q2 / q0 - beta * beta;
  if (!(q0 > 0) || !(g2 > 0)) throw std::invalid_argument("q is not positive definite");
  return {q0, beta, std::sqrt(g2)};
}

std::vector<PsdFactor> to_factors(const RootSet& rs, const QShape& s) {
  std::vector<PsdFactor> out;
  // Roots move by z' = (z + beta) / gamma.
  for (const auto& [z, m] : rs.upper) {
    cd w = (z + s.beta) / s.gamma;
    out.push_back({-w.real(), std::abs(w.imag()), m});
  }
  for (const auto& [r, m] : rs.real) {
    if (m % 2 != 0) throw std::invalid_argument("polynomial is not psd (real root of odd multiplicity)");
    out.push_back({-(r + s.beta) / s.gamma, 0.0, m / 2});
  }
  return out;
}

int total_degree(const RootSet& rs) {
  int d = 0;
  for (const auto& u : rs.upper) d += 2 * u.second;
  for (const auto& r : rs.real) d += r.second;
  return d;
}

// Elements eta + zeta w of R[x, w] with w^2 = -(x^2 + 1).
struct Elem {
  DPoly eta, zeta;
};

Elem mul(const Elem& u, const Elem& v) {
  static const DPoly q{1.0, 0.0, 1.0};
  return {u.eta * v.eta - q * u.zeta * v.zeta, u.eta * v.zeta + u.zeta * v.eta};
}

double max_abs_diff(const DPoly& a, const DPoly& b) {
  double m = 0.0;
  for (int k = 0; k <= std::max(a.nominal_degree(), b.nominal_degree()); ++k)
    m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

void polish(const DPoly& f, const DPoly& q, NormRep& r) {
  DPoly eta = r.eta.trimmed(), xi = r.xi.trimmed();
  const int ne = eta.nominal_degree() + 1, nx = xi.nominal_degree() + 1;
  const int rows = std::max({f.nominal_degree(), 2 * ne - 2, 2 + 2 * nx - 2}) + 1;
  auto res_of = [&](const DPoly& e, const DPoly& x) { return e * e + q * x * x - f; };
  DPoly res = res_of(eta, xi);
  double best = coeff_norm(res);
  for (int it = 0; it < 3 && best > 0.0; ++it) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(rows, ne + nx);
    Eigen::VectorXd rhs(rows);
    for (int k = 0; k < rows; ++k) rhs[k] = -res.coeff(k);
    DPoly te = eta * 2.0, tx = q * xi * 2.0;
    for (int c = 0; c < ne; ++c)
      for (int k = 0; k <= te.nominal_degree(); ++k) j(k + c, c) += te.coeff(k);
    for (int c = 0; c < nx; ++c)
      for (int k = 0; k <= tx.nominal_degree(); ++k)
        if (k + c < rows) j(k + c, ne + c) += tx.coeff(k);
    Eigen::VectorXd step = j.completeOrthogonalDecomposition().solve(rhs);
    std::vector<double> ea = eta.ascending(), xa = xi.ascending();
    for (int c = 0; c < ne; ++c) ea[c] += step[c];
    for (int c = 0; c < nx; ++c) xa[c] += step[ne + c];
    DPoly e2 = DPoly::from_ascending(ea), x2 = DPoly::from_ascending(xa);
    DPoly r2 = res_of(e2, x2);
    double n2 = coeff_norm(r2);
    if (!(n2 < best)) break;
    eta = e2;
    xi = x2;
    res = r2;
    best = n2;
  }
  r.eta = eta;
  r.xi = xi;
}

// 1 - lambda without cancellation: (1 - l1)(1 - l2) = -a^2 for the two roots.
double one_minus_lambda(double a, double b, double lam) {
  const double s = 1.0 + a * a + b * b;
  const double big = 0.5 * (s + std::sqrt(std::max(0.0, (s - 2 * b) * (s + 2 * b))));
  return big - 1.0 > 0.25 ? a * a / (big - 1.0) : 1.0 - lam;
}

std::vector<NormRep> enumerate(const DPoly& f, const DPoly& q, const RootSet& rs) {
  const QShape s = shape_of(q);
  const int n = total_degree(rs);
  const auto factors = to_factors(rs, s);
  // f(gamma x' - beta) = lead gamma^n prod (x' - z').
  const double c = rs.lead * std::pow(s.gamma, n);
  if (!(c > 0)) throw std::invalid_argument("polynomial is not psd");

  std::vector<Elem> acc{{DPoly{std::sqrt(c)}, DPoly{0.0}}};
  for (const auto& p : factors) {
    const double lam = quadratic_lambda(p.a, p.b);
    Elem pi;
    const double om = one_minus_lambda(p.a, p.b, lam);
    if (om > 0.0) {
      const double r = std::sqrt(om);
      pi.eta = DPoly{r, p.a / r};
    } else {
      pi.eta = DPoly{std::sqrt(std::max(0.0, p.b * p.b - 1.0))};
    }
    pi.zeta = DPoly{std::sqrt(lam)};
    Elem bar{pi.eta, -pi.zeta};
    std::vector<Elem> next;
    for (const auto& e : acc) {
      for (int i = 0; i <= p.mult; ++i) {
        Elem v = e;
        for (int k = 0; k < i; ++k) v = mul(v, pi);
        for (int k = i; k < p.mult; ++k) v = mul(v, bar);
        next.push_back(std::move(v));
      }
    }
    acc = std::move(next);
  }

  const double scale = std::max(1.0, std::sqrt(coeff_norm(f)));
  std::vector<NormRep> out;
  const DPoly back{1.0 / s.gamma, s.beta / s.gamma};  // x' as a function of x
  const double xi_scale = 1.0 / (s.gamma * std::sqrt(s.alpha));
  for (const auto& e0 : acc) {
    for (double sign : {1.0, -1.0}) {
      NormRep r{(e0.zeta * (sign * xi_scale)).compose(back).trimmed(), (e0.eta * sign).compose(back).trimmed()};
      bool dup = false;
      for (const auto& o : out)
        if (max_abs_diff(o.eta, r.eta) <= 1e-7 * scale && max_abs_diff(o.xi, r.xi) <= 1e-7 * scale) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(std::move(r));
    }
  }
  for (auto& r : out) polish(f, q, r);
  return out;
}

bool is_q_factor(const PsdFactor& p) { return std::abs(p.a) < 1e-6 && std::abs(p.b - 1.0) < 1e-6; }

}  // namespace

double quadratic_lambda(double a, double b) {
  // Smaller root of lambda^2 - (1 + a^2 + b^2) lambda + b^2 = 0, in stable form.
  const double s = 1.0 + a * a + b * b;
  const double disc = std::max(0.0, (s - 2 * b) * (s + 2 * b));
  const double den = s + std::sqrt(disc);
  return 2 * b * b / den;
}

PsdFactorization factor_psd(const RPoly& f) {
  RootSet rs = roots_exact(f);
  PsdFactorization out{rs.lead, {}};
  for (const auto& [z, m] : rs.upper) out.factors.push_back({-z.real(), z.imag(), m});
  for (const auto& [r, m] : rs.real) out.factors.push_back({-r, 0.0, m / 2});
  return out;
}

PsdFactorization factor_psd(const DPoly& f, double tau_root) {
  RootSet rs = roots_float(f, tau_root);
  PsdFactorization out{rs.lead, {}};
  for (const auto& [z, m] : rs.upper) out.factors.push_back({-z.real(), z.imag(), m});
  for (const auto& [r, m] : rs.real) out.factors.push_back({-r, 0.0, m / 2});
  return out;
}

std::vector<NormRep> represent(const RPoly& f, const RPoly& q) {
  if (q.degree() != 2 || sgn(q.coeff(2)) <= 0 || sgn(disc(q, 2)) >= 0)
    throw std::invalid_argument("q is not positive definite");
  return enumerate(to_double(f), to_double(q), roots_exact(f));
}

std::vector<NormRep> represent(const DPoly& f, const DPoly& q, double tau_root) {
  return enumerate(f, q, roots_float(f, tau_root));
}

int count(const RPoly& f, const RPoly& q) {
  if (q.degree() != 2 || sgn(q.coeff(2)) <= 0 || sgn(disc(q, 2)) >= 0)
    throw std::invalid_argument("q is not positive definite");
  roots_exact(f);  // validates psd
  if (f.degree() == 0) return 2;
  int total = 2;
  for (const auto& [s, k] : square_free_decomposition(f)) {
    int pairs = (s.degree() - count_real_roots(s)) / 2;
    if (divrem(s, q).second.is_zero()) --pairs;
    for (int i = 0; i < pairs; ++i) total *= 1 + k;
  }
  return total;
}

int count(const DPoly& f, const DPoly& q, double tau_root) {
  const QShape s = shape_of(q);
  int total = 2;
  for (const auto& p : to_factors(roots_float(f, tau_root), s))
    if (p.b > 0.0 && !is_q_factor(p)) total *= 1 + p.mult;
  return total;
}

namespace {

std::vector<BinaryNormRep> homogenize_all(const std::vector<NormRep>& reps, int d) {
  std::vector<BinaryNormRep> out;
  out.reserve(reps.size());
  for (const auto& r : reps)
    out.push_back({DForm::homogenize(r.xi.trimmed(), d - 1), DForm::homogenize(r.eta.trimmed(), d)});
  return out;
}

}  // namespace

std::vector<BinaryNormRep> represent_binary(const RForm& f, const RForm& q) {
  if (f.is_zero()) throw std::invalid_argument("norm form representation of the zero form");
  if (f.degree() % 2 != 0 || q.degree() != 2) throw std::invalid_argument("need deg f even and deg q = 2");
  if (!psd_binary(f)) throw std::invalid_argument("form is not psd");
  return homogenize_all(represent(f.dehomogenize().trimmed(), q.dehomogenize()), f.degree() / 2);
}

std::vector<BinaryNormRep> represent_binary(const DForm& f, const DForm& q, double tau_root) {
  if (f.is_zero()) throw std::invalid_argument("norm form representation of the zero form");
  if (f.degree() % 2 != 0 || q.degree() != 2) throw std::invalid_argument("need deg f even and deg q = 2");
  // Drop tiny leading coefficients: they are roots at infinity.
  DPoly p = f.dehomogenize();
  const double scale = coeff_norm(p);
  std::vector<double> a = p.ascending();
  while (a.size() > 1 && std::abs(a.back()) <= 1e-14 * scale) a.pop_back();
  if ((f.degree() - static_cast<int>(a.size()) + 1) % 2 != 0) throw std::invalid_argument("form is not psd");
  return homogenize_all(represent(DPoly::from_ascending(a), q.dehomogenize(), tau_root), f.degree() / 2);
}

double norm_residual(const DPoly& f, const DPoly& q, const NormRep& r) {
  return coeff_norm(r.eta * r.eta + q * r.xi * r.xi - f);
}

}  // namespace qsos
