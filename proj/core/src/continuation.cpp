#include "qsos/continuation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>

#include "qsos/normforms.hpp"
#include "qsos/phi.hpp"
#include "qsos/resolvent.hpp"

namespace qsos {

namespace {

double form_norm(const DForm& f) { return coeff_norm(f.dehomogenize()); }

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

Vec7 pack(const DForm& xi, const DForm& eta) {
  Vec7 u;
  for (int k = 0; k < 3; ++k) u[k] = xi[k];
  for (int k = 0; k < 4; ++k) u[3 + k] = eta[k];
  return u;
}

std::pair<DForm, DForm> unpack(const Vec7& u) { return {DForm{u[0], u[1], u[2]}, DForm{u[3], u[4], u[5], u[6]}}; }

Vec7 to_vec(const DForm& sextic) {
  Vec7 v;
  for (int k = 0; k < 7; ++k) v[k] = sextic[k];
  return v;
}

Mat7 to_eigen(const Matrix<double>& m) {
  Mat7 e;
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) e(r, c) = m(r, c);
  return e;
}

double condition(const Mat7& j) {
  Eigen::JacobiSVD<Mat7> svd(j);
  const auto& s = svd.singularValues();
  return s[6] == 0.0 ? INFINITY : s[0] / s[6];
}

DForm dfdt(const PencilTriple& f, const DForm& xi) { return xi * (4.0 * f.f4 - xi * xi); }

XiEtaState make_state(const PencilTriple& f, double t, const DForm& xi, const DForm& eta) {
  XiEtaState s;
  s.t = t;
  s.xi = xi;
  s.eta = eta;
  s.residual = form_norm(residual_form(f, t, xi, eta));
  s.jac_condition = condition(to_eigen(jacobian(f, s)));
  return s;
}

bool side_conditions(const PencilTriple& f, double t, const DForm& xi) {
  const PsdTolerance tol{1e-7, 1e-7};
  return psd_binary(f.f2 - t * xi, tol) && psd_binary(4.0 * f.f4 - xi * xi, tol);
}

}  // namespace

double PencilTriple::norm() const { return std::max({1.0, form_norm(f2), form_norm(f3), form_norm(f4)}); }

DForm residual_form(const PencilTriple& f, double t, const DForm& xi, const DForm& eta) {
  return eta * eta + f.f3 * f.f3 - (f.f2 - t * xi) * (4.0 * f.f4 - xi * xi);
}

std::vector<XiEtaState> seeds(const PencilTriple& f) {
  const auto g = genericity_advisory(f.f2, f.f3, f.f4);
  for (int k = 0; k < 3; ++k)
    if (g.flags[k]) throw GenericityError("E" + std::to_string(k + 1), "no regular seeds (" + g.witness[k] + ")");
  std::vector<XiEtaState> out;
  for (const auto& r : represent_binary(4.0 * f.f2 * f.f4 - f.f3 * f.f3, f.f2)) {
    if (!psd_binary(4.0 * f.f4 - r.xi * r.xi, PsdTolerance{1e-7, 1e-7}))
      throw NumericalError("seed violates 4 f4 - xi^2 >= 0");
    out.push_back(make_state(f, 0.0, r.xi, r.eta));
  }
  return out;
}

std::vector<XiEtaState> seeds(const RForm& f2, const RForm& f3, const RForm& f4) {
  if (sgn(disc(f2)) == 0) throw GenericityError("E1", "f2 is a square");
  if (divides(f2, f3)) throw GenericityError("E2", "f2 divides f3");
  const RForm f6 = Rational(4) * f2 * f4 - f3 * f3;
  if (sgn(disc(f6)) == 0) throw GenericityError("E3", "4 f2 f4 - f3^2 is not square-free");
  const PencilTriple fd{to_double(f2), to_double(f3), to_double(f4)};
  std::vector<XiEtaState> out;
  for (const auto& r : represent_binary(f6, f2)) out.push_back(make_state(fd, 0.0, r.xi, r.eta));
  return out;
}

Matrix<double> jacobian(const PencilTriple& f, const XiEtaState& s) {
  const double t = s.t;
  const DForm h = 3.0 * t * (s.xi * s.xi) - 2.0 * f.f2 * s.xi - 4.0 * t * f.f4;
  Matrix<double> j(7, 7);
  for (int c = 0; c < 3; ++c) {
    DForm e = DForm::zero(2);
    e[c] = 1.0;
    const DForm col = -(h * e);
    for (int r = 0; r < 7; ++r) j(r, c) = col[r];
  }
  for (int c = 0; c < 4; ++c) {
    DForm e = DForm::zero(3);
    e[c] = 1.0;
    const DForm col = 2.0 * s.eta * e;
    for (int r = 0; r < 7; ++r) j(r, 3 + c) = col[r];
  }
  return j;
}

XiEtaState track(const XiEtaState& seed, const PencilTriple& f, double t_target, const TrackOptions& opt,
                 PathTrace* trace) {
  const double tol = opt.tau_track * (1.0 + f.norm());
  auto res = [&](double t, const Vec7& u) {
    auto [xi, eta] = unpack(u);
    return to_vec(residual_form(f, t, xi, eta));
  };
  auto jac = [&](double t, const Vec7& u) {
    XiEtaState s;
    s.t = t;
    std::tie(s.xi, s.eta) = unpack(u);
    return to_eigen(jacobian(f, s));
  };
  // Newton at fixed t; empty on divergence or missing contraction.
  auto correct = [&](double t, Vec7 u) -> std::optional<Vec7> {
    double last = INFINITY;
    for (int k = 0; k <= opt.corrector_iterations; ++k) {
      const Vec7 r = res(t, u);
      if (r.lpNorm<Eigen::Infinity>() <= tol) return u;
      if (k == opt.corrector_iterations) break;
      const Vec7 d = jac(t, u).partialPivLu().solve(-r);
      const double dn = d.lpNorm<Eigen::Infinity>();
      if (!std::isfinite(dn)) return std::nullopt;
      if (k == 0 && dn > 0.1 * (1.0 + u.lpNorm<Eigen::Infinity>())) return std::nullopt;
      if (k > 0 && dn > 0.5 * last) return std::nullopt;
      last = dn;
      u += d;
    }
    return std::nullopt;
  };

  double t = seed.t;
  Vec7 u = pack(seed.xi, seed.eta);
  if (res(t, u).lpNorm<Eigen::Infinity>() > tol) {
    auto c = correct(t, u);
    if (!c) throw PathError("seed residual exceeds the tracking tolerance", t);
    u = *c;
  }
  PathTrace local;
  PathTrace& tr = trace ? *trace : local;
  if (opt.keep_states) tr.states.push_back(make_state(f, t, unpack(u).first, unpack(u).second));

  double h = std::min(opt.max_step, 0.2 * opt.max_step + 1e-3);
  int successes = 0, halvings = 0;
  bool side_failure = false;
  while (t < t_target) {
    const double step = std::min(h, t_target - t);
    const Mat7 j = jac(t, u);
    const Vec7 du = j.partialPivLu().solve(-to_vec(dfdt(f, unpack(u).first)));
    const double t1 = (step == t_target - t) ? t_target : t + step;
    auto next = correct(t1, u + step * du);
    bool ok = next.has_value();
    if (ok) {
      const Mat7 j1 = jac(t1, *next);
      const double cond = condition(j1);
      if (cond > opt.max_condition) throw PathError("near-singular Jacobian (condition " + std::to_string(cond) + ")", t1);
      if (!side_conditions(f, t1, unpack(*next).first)) {
        ok = false;
        side_failure = true;
      }
    }
    if (ok) {
      t = t1;
      u = *next;
      ++tr.accepted;
      halvings = 0;
      side_failure = false;
      if (opt.keep_states) tr.states.push_back(make_state(f, t, unpack(u).first, unpack(u).second));
      if (++successes >= 3) {
        h = std::min(1.5 * h, opt.max_step);
        successes = 0;
      }
    } else {
      ++tr.rejected;
      successes = 0;
      h *= 0.5;
      if (++halvings > opt.max_halvings || h < opt.min_step)
        throw PathError(side_failure ? "side condition violated" : "step size underflow", t);
    }
  }
  auto [xi, eta] = unpack(u);
  return make_state(f, t, xi, eta);
}

std::vector<TrackedPath> track_all(const std::vector<XiEtaState>& seeds, const PencilTriple& f,
                                   const TrackOptions& opt, bool parallel) {
  auto run = [&f, opt](const XiEtaState& s) {
    TrackedPath p;
    try {
      p.end = track(s, f, 1.0, opt, &p.trace);
      p.ok = true;
    } catch (const PathError& e) {
      p.failure = e.what();
      p.end = s;
      p.end.t = e.t();
    }
    return p;
  };
  std::vector<TrackedPath> out;
  if (!parallel) {
    for (const auto& s : seeds) out.push_back(run(s));
    return out;
  }
  std::vector<std::future<TrackedPath>> jobs;
  for (const auto& s : seeds) jobs.push_back(std::async(std::launch::async, run, s));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

SosTriple reconstruct(const XiEtaState& s, const PencilTriple& f, double tau_res) {
  if (std::abs(s.t - 1.0) > 1e-12) throw std::invalid_argument("reconstruct needs a state at t = 1");
  const TernaryQuartic target = z_quartic(1.0, f.f2, f.f3, f.f4);
  TernaryQuadratic lead(2);
  lead.set(0, 0, 2, 1.0);
  SosTriple out;
  const DForm d = f.f2 - s.xi;
  if (form_norm(d) <= 1e-9 * (1.0 + form_norm(f.f2))) {
    // xi = f2 forces f3 = 0: f = (z^2 + f2/2)^2 + w2^2 + w3^2.
    if (form_norm(f.f3) > 1e-6 * f.norm()) throw NumericalError("xi = f2 but f3 does not vanish");
    auto [w2, w3] = two_squares(f.f4 - 0.25 * (f.f2 * f.f2));
    out.p = {lead + TernaryQuadratic::from_slice(0.5 * f.f2, 0), TernaryQuadratic::from_slice(w2, 0),
             TernaryQuadratic::from_slice(w3, 0)};
  } else {
    // f2 - xi = v2^2 + v3^2 and (eta, 0) represents the remaining real-zero form.
    const RealZeroForm g{d, f.f3, f.f4 - 0.25 * (s.xi * s.xi)};
    const SosTriple rest = triple_from_pair(g, DForm::zero(2), s.eta);
    out.p = {lead + TernaryQuadratic::from_slice(0.5 * s.xi, 0), rest.p[1], rest.p[2]};
  }
  out.witness = std::make_pair(s.xi, s.eta);
  if (residual(target, out) > tau_res * max_norm(target))
    throw NumericalError("reconstruct: residual exceeds tolerance");
  return out;
}

std::vector<XiEtaState> class_representatives(const std::vector<XiEtaState>& endpoints, double tau_cluster) {
  std::vector<XiEtaState> reps;
  for (const auto& e : endpoints) {
    bool found = false;
    for (const auto& r : reps) {
      const double scale = 1.0 + std::max(form_norm(e.xi), form_norm(r.xi));
      const double dist = form_norm(e.xi - r.xi) / scale;
      if (dist <= tau_cluster) {
        found = true;
        break;
      }
      if (dist <= 10.0 * tau_cluster) throw NumericalError("ambiguous clustering of xi");
    }
    if (!found) reps.push_back(e);
  }
  return reps;
}

int count_classes(const std::vector<XiEtaState>& endpoints, double tau_cluster) {
  return static_cast<int>(class_representatives(endpoints, tau_cluster).size());
}

}  // namespace qsos
