#include "qsos/normalize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsos/errors.hpp"

namespace qsos {

namespace {

struct Local {
  double f = 0;
  Vec3 g{};
  Mat3 h{};
};

double powi(double b, int e) {
  if (e < 0) return 0.0;
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

// Value, gradient and Hessian at v.
Local local(const TernaryQuartic& F, const Vec3& v) {
  Local out;
  const int d = F.degree();
  for (int idx = 0; idx < F.size(); ++idx) {
    const double c = F.at(idx);
    if (c == 0.0) continue;
    const auto e = TernaryQuartic::exponent(d, idx);
    const std::array<int, 3> ex{e.i, e.j, e.k};
    auto mono = [&](std::array<int, 3> p, double factor) {
      double r = c * factor;
      for (int a = 0; a < 3; ++a) r *= powi(v[a], p[a]);
      return r;
    };
    out.f += mono(ex, 1.0);
    for (int a = 0; a < 3; ++a) {
      if (ex[a] == 0) continue;
      auto p = ex;
      --p[a];
      out.g[a] += mono(p, ex[a]);
      for (int b = 0; b < 3; ++b) {
        if (p[b] == 0) continue;
        auto q = p;
        --q[b];
        out.h[a][b] += mono(q, static_cast<double>(ex[a]) * p[b]);
      }
    }
  }
  return out;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(Vec3 a) {
  const double n = norm(a);
  for (auto& x : a) x /= n;
  return a;
}
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 canonical_sign(Vec3 v) {
  int big = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(v[a]) > std::abs(v[big]) + 1e-12) big = a;
  if (v[big] < 0)
    for (auto& x : v) x = -x;
  return v;
}

Vec3 descend(const TernaryQuartic& F, Vec3 v, double scale) {
  double alpha = 0.1 / scale;
  for (int it = 0; it < 400; ++it) {
    const Local l = local(F, v);
    Vec3 rg = l.g;
    const double gv = dot(l.g, v);
    for (int a = 0; a < 3; ++a) rg[a] -= gv * v[a];
    const double g2 = dot(rg, rg);
    if (std::sqrt(g2) <= 1e-10 * scale) break;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      Vec3 w;
      for (int a = 0; a < 3; ++a) w[a] = v[a] - alpha * rg[a];
      w = normalized(w);
      if (F.eval(w[0], w[1], w[2]) <= l.f - 1e-4 * alpha * g2) {
        v = w;
        alpha *= 2.0;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return v;
}

struct Polished {
  Vec3 v;
  double kkt;
};

Polished newton(const TernaryQuartic& F, Vec3 v, int iterations, double tol) {
  double mu = dot(local(F, v).g, v);
  double kkt = INFINITY, prev = INFINITY;
  for (int it = 0; it <= iterations; ++it) {
    const Local l = local(F, v);
    Eigen::Vector4d r;
    for (int a = 0; a < 3; ++a) r[a] = l.g[a] - mu * v[a];
    r[3] = 0.5 * (dot(v, v) - 1.0);
    kkt = r.cwiseAbs().maxCoeff();
    // Past the tolerance, keep going while Newton still contracts.
    if ((kkt <= tol && kkt > 0.5 * prev) || kkt == 0.0 || it == iterations) break;
    prev = kkt;
    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) j(a, b) = l.h[a][b];
      j(a, a) -= mu;
      j(a, 3) = -v[a];
      j(3, a) = v[a];
    }
    const Eigen::Vector4d step = j.completeOrthogonalDecomposition().solve(r);
    for (int a = 0; a < 3; ++a) v[a] -= step[a];
    mu -= step[3];
  }
  return {normalized(v), kkt};
}

}  // namespace

SphereMin min_on_sphere(const TernaryQuartic& F, const SphereMinOptions& opt) {
  if (F.degree() != 4) throw std::invalid_argument("min_on_sphere needs a quartic");
  const double scale = std::max(max_norm(F), 1e-300);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  struct Cand {
    double c;
    Vec3 v;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < opt.starts; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / opt.starts, r = std::sqrt(1.0 - z * z);
    Vec3 v = descend(F, {r * std::cos(golden * i), r * std::sin(golden * i), z}, scale);
    const double before = F.eval(v[0], v[1], v[2]);
    const Polished p = newton(F, v, opt.newton_iterations, opt.kkt_tolerance * scale);
    // Degenerate minima (whole circles of minimizers) converge only linearly.
    if (p.kkt > 1e-7 * scale) continue;
    const double after = F.eval(p.v[0], p.v[1], p.v[2]);
    if (after > before + 1e-9 * scale) continue;  // Newton left the basin
    cands.push_back({after, canonical_sign(p.v)});
  }
  if (cands.empty()) throw NumericalError("min_on_sphere: no start polished");
  double best = INFINITY;
  for (const auto& c : cands) best = std::min(best, c.c);
  const Cand* pick = nullptr;
  for (const auto& c : cands)
    if (c.c <= best + 1e-10 * scale && (!pick || c.v < pick->v)) pick = &c;
  // Minima on a curve converge only linearly; give the chosen one a longer run.
  const Polished fin = newton(F, pick->v, 10 * opt.newton_iterations, opt.kkt_tolerance * scale);
  const double c = F.eval(fin.v[0], fin.v[1], fin.v[2]);
  if (fin.kkt <= 1e-7 * scale && c <= pick->c + 1e-12 * scale) return {c, canonical_sign(fin.v), static_cast<int>(cands.size())};
  return {pick->c, pick->v, static_cast<int>(cands.size())};
}

Mat3 frame_for(const Vec3& v0) {
  const Vec3 v = normalized(v0);
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(v[a]) < std::abs(v[axis]) - 1e-15) axis = a;
  Vec3 e{};
  e[axis] = 1.0;
  const double p = dot(e, v);
  for (int a = 0; a < 3; ++a) e[a] -= p * v[a];
  const Vec3 e1 = normalized(e), e2 = cross(v, e1);
  Mat3 r;
  for (int a = 0; a < 3; ++a) r[a] = {e1[a], e2[a], v[a]};
  return r;
}

Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[a][b] = m[b][a];
  return t;
}

TernaryQuartic rotate(const TernaryQuartic& F, const Mat3& m) { return F.compose(m); }

TernaryQuartic NormalForm::original() const { return rotate(form(), transpose(rotation)) * (1.0 / scale); }

NormalForm normal_form(const TernaryQuartic& F, const NormalizeOptions& opt) {
  return normal_form(F, min_on_sphere(F, opt.sphere), opt);
}

NormalForm normal_form(const TernaryQuartic& F, const SphereMin& m, const NormalizeOptions& opt) {
  const double nf = max_norm(F);
  if (m.c < -opt.tau_pos * nf) throw NotPsdError("form is negative on the sphere");
  if (m.c <= opt.tau_pos * nf) throw HasRealZeroError(m.c, m.v);
  NormalForm out;
  out.rotation = frame_for(m.v);
  out.scale = 1.0 / m.c;
  const TernaryQuartic g = rotate(F, out.rotation) * out.scale;
  out.residual_z3 = std::max(std::abs(g.coeff(1, 0, 3)), std::abs(g.coeff(0, 1, 3)));
  out.f2 = g.z_slice(2);
  out.f3 = g.z_slice(1);
  out.f4 = g.z_slice(0);
  const PsdTolerance tol;
  if (!psd_binary(out.f2, tol) || !psd_binary(out.f4, tol) || !psd_binary(4.0 * out.f2 * out.f4 - out.f3 * out.f3, tol))
    throw NumericalError("normal form: f - z^4 is not psd, the sphere minimum was not global");
  return out;
}

RealZeroFrame real_zero_frame(const TernaryQuartic& F, const Vec3& v) {
  RealZeroFrame out;
  out.rotation = frame_for(v);
  const TernaryQuartic g = rotate(F, out.rotation);
  out.dropped = std::max({std::abs(g.coeff(0, 0, 4)), std::abs(g.coeff(1, 0, 3)), std::abs(g.coeff(0, 1, 3))});
  out.form = {g.z_slice(2), g.z_slice(1), g.z_slice(0)};
  return out;
}

SosTriple pull_back(const SosTriple& t, const Mat3& rotation, double scale) {
  if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
  SosTriple out = t;
  const Mat3 rt = transpose(rotation);
  const double s = 1.0 / std::sqrt(scale);
  for (auto& p : out.p) p = rotate(p, rt) * s;
  return out;
}

SosTriple pull_back(const SosTriple& t, const NormalForm& nf, double tau_res) {
  SosTriple out = pull_back(t, nf.rotation, nf.scale);
  const TernaryQuartic F = nf.original();
  if (residual(F, out) > tau_res * max_norm(F)) throw NumericalError("pull_back: residual exceeds tolerance");
  return out;
}

}  // namespace qsos
