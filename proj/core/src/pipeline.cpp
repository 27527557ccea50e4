#include "qsos/pipeline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "qsos/errors.hpp"

namespace qsos {

namespace {

bool generic_through(const GenericityReport& r, int last) {
  for (int k = 0; k < last; ++k)
    if (r.flags[k]) return false;
  return true;
}

std::string first_flag(const GenericityReport& r, int last) {
  for (int k = 0; k < last; ++k)
    if (r.flags[k]) return "E" + std::to_string(k + 1);
  return {};
}

NormalForm identity_frame(const PencilTriple& p, double scale) {
  NormalForm nf;
  nf.rotation = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  nf.scale = scale;
  nf.f2 = p.f2;
  nf.f3 = p.f3;
  nf.f4 = p.f4;
  return nf;
}

PencilTriple pencil_of(const NormalForm& nf) { return {nf.f2, nf.f3, nf.f4}; }

struct Tracked {
  std::vector<XiEtaState> ends;
};

Tracked run_paths(const std::vector<XiEtaState>& seeds, const PencilTriple& p, const PipelineOptions& opt,
                  PathStats& stats) {
  TrackOptions topt = opt.track;
  topt.keep_states = opt.trace;
  const auto paths = track_all(seeds, p, topt);
  stats = PathStats{};
  stats.seeds = static_cast<int>(seeds.size());
  Tracked out;
  for (const auto& path : paths) {
    stats.accepted_steps += path.trace.accepted;
    stats.rejected_steps += path.trace.rejected;
    if (opt.trace) stats.traces.push_back(path.trace);
    if (path.ok) {
      out.ends.push_back(path.end);
    } else {
      stats.failures.push_back(path.failure);
    }
  }
  stats.tracked = static_cast<int>(out.ends.size());
  if (out.ends.empty())
    throw GenericityError("tracking", "no path reached t = 1" + (stats.failures.empty() ? "" : ": " + stats.failures[0]));
  return out;
}

// Best reconstructed triple in normalized coordinates.
SosTriple best_triple(const std::vector<XiEtaState>& reps, const PencilTriple& p) {
  const TernaryQuartic target = z_quartic(1.0, p.f2, p.f3, p.f4);
  std::optional<SosTriple> best;
  double best_res = INFINITY;
  for (const auto& e : reps) {
    try {
      SosTriple t = reconstruct(e, p);
      const double r = residual(target, t);
      if (r < best_res) {
        best_res = r;
        best = std::move(t);
      }
    } catch (const NumericalError&) {
    }
  }
  if (!best) throw NumericalError("no endpoint reconstructs within tolerance");
  return *best;
}

// The normal-form route on a given frame; seeds may come from exact arithmetic.
SosTriple normal_route(const NormalForm& nf, const std::vector<XiEtaState>& seed_states, const PipelineOptions& opt,
                       DecomposeResult& out) {
  const PencilTriple p = pencil_of(nf);
  const Tracked tr = run_paths(seed_states, p, opt, out.paths);
  std::vector<XiEtaState> reps;
  try {
    reps = class_representatives(tr.ends);
    out.paths.classes = static_cast<int>(reps.size());
  } catch (const NumericalError& e) {
    out.notes.emplace_back(std::string("class count unavailable: ") + e.what());
    reps = tr.ends;
  }
  return pull_back(best_triple(reps, p), nf.rotation, nf.scale);
}

SosTriple real_zero_route(const TernaryQuartic& G, const Vec3& v) {
  const RealZeroFrame frame = real_zero_frame(G, v);
  return pull_back(decompose(frame.form), frame.rotation, 1.0);
}

// One attempt on G (F or a perturbation of it); throws GenericityError when G is not generic.
SosTriple attempt(const TernaryQuartic& G, const SphereMin& m, const PipelineOptions& opt, DecomposeResult& out) {
  const double ng = max_norm(G);
  if (m.c <= opt.normalize.tau_pos * ng) {
    out.route = Route::real_zero;
    out.normal_form.reset();
    out.genericity.reset();
    return real_zero_route(G, m.v);
  }
  out.route = Route::normal_form;
  NormalForm nf;
  if (auto shape = normal_shape(G)) {
    nf = identity_frame(*shape, 1.0 / G.coeff(0, 0, 4));
  } else {
    nf = normal_form(G, m, opt.normalize);
  }
  out.normal_form = nf;
  out.genericity = genericity_advisory(nf.f2, nf.f3, nf.f4);
  // Seeds need E1-E3. A float flag among E4-E10 only says the pencil is close to
  // the exceptional locus; the path conditioning decides, and E11 only matters
  // for counting classes.
  if (!generic_through(*out.genericity, 3))
    throw GenericityError(first_flag(*out.genericity, 3), "no regular seeds");
  if (!generic_through(*out.genericity, 10))
    out.notes.push_back("advisory flag " + first_flag(*out.genericity, 10) + "; tracking anyway");
  return normal_route(nf, seeds(pencil_of(nf)), opt, out);
}

DecomposeResult finish(const TernaryQuartic& F, SosTriple t, DecomposeResult out, const PipelineOptions& opt) {
  out.triple = polish(F, std::move(t));
  out.residual = residual(F, out.triple);
  if (out.residual > opt.tol * max_norm(F))
    throw NumericalError("residual " + std::to_string(out.residual) + " exceeds tolerance");
  return out;
}

}  // namespace

TernaryQuartic random_psd_form(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  TernaryQuartic s(4);
  for (int k = 0; k < 3; ++k) {
    TernaryQuadratic q(2);
    for (int i = 0; i < q.size(); ++i) q.at(i) = n(rng);
    s += q * q;
  }
  return s * (1.0 / max_norm(s));
}

std::optional<PencilTriple> normal_shape(const TernaryQuartic& F) {
  const double a = F.coeff(0, 0, 4);
  if (!(a > 0) || F.coeff(1, 0, 3) != 0.0 || F.coeff(0, 1, 3) != 0.0) return std::nullopt;
  PencilTriple p{F.z_slice(2) * (1.0 / a), F.z_slice(1) * (1.0 / a), F.z_slice(0) * (1.0 / a)};
  const PsdTolerance tol;
  if (!psd_binary(p.f2, tol) || !psd_binary(p.f4, tol) || !psd_binary(4.0 * p.f2 * p.f4 - p.f3 * p.f3, tol))
    return std::nullopt;
  return p;
}

SosTriple polish(const TernaryQuartic& F, SosTriple t, int iterations) {
  double current = residual(F, t);
  for (int it = 0; it < iterations && current > 0.0; ++it) {
    const TernaryQuartic r = t.sum_of_squares() - F;
    Eigen::VectorXd rv(15);
    for (int k = 0; k < 15; ++k) rv[k] = r.at(k);
    Eigen::MatrixXd j(15, 18);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 6; ++k) {
        TernaryQuadratic e(2);
        e.at(k) = 2.0;
        const TernaryQuartic col = t.p[i] * e;
        for (int row = 0; row < 15; ++row) j(row, 6 * i + k) = col.at(row);
      }
    const Eigen::VectorXd step = j.completeOrthogonalDecomposition().solve(-rv);
    SosTriple cand = t;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 6; ++k) cand.p[i].at(k) += step[6 * i + k];
    const double next = residual(F, cand);
    if (!(next < current)) break;
    t = std::move(cand);
    current = next;
  }
  return t;
}

DecomposeResult decompose(const TernaryQuartic& F, const PipelineOptions& opt) {
  if (F.degree() != 4) throw std::invalid_argument("decompose needs a quartic");
  DecomposeResult out;
  const double nf = max_norm(F);
  if (nf == 0.0) {
    out.route = Route::real_zero;
    return out;
  }
  const SphereMin m = min_on_sphere(F, opt.normalize.sphere);
  out.sphere_min = m.c;
  if (m.c < -opt.normalize.tau_pos * nf) throw NotPsdError("form is negative on the sphere (min " + std::to_string(m.c) + ")");
  std::string condition, reason;
  for (int k = 0; k <= opt.max_retries; ++k) {
    TernaryQuartic G = F;
    SphereMin mg = m;
    if (k > 0) {
      Perturbation p;
      p.attempt = k;
      p.epsilon = opt.eps_pert * nf;
      p.added = random_psd_form(opt.seed + static_cast<std::uint64_t>(k)) * p.epsilon;
      G = F + p.added;
      mg = min_on_sphere(G, opt.normalize.sphere);
      out.perturbations.push_back(p);
    }
    try {
      SosTriple t = attempt(G, mg, opt, out);
      return finish(F, std::move(t), out, opt);
    } catch (const GenericityError& e) {
      condition = e.condition();
      reason = e.what();
      out.notes.push_back(std::string("attempt ") + std::to_string(k) + ": " + e.what());
    } catch (const NumericalError& e) {
      // Treated like a genericity failure: the pencil sits too close to the exceptional locus.
      condition = out.genericity && !out.genericity->generic() ? out.genericity->first_violation() : "numerical";
      reason = e.what();
      out.notes.push_back(std::string("attempt ") + std::to_string(k) + ": " + e.what());
    }
  }
  // Only report exhaustion as a genericity problem when a condition explains it.
  if (condition == "numerical") throw NumericalError("retries exhausted; last: " + reason);
  throw GenericityError(condition, "retries exhausted; last: " + reason);
}

DecomposeResult decompose(const RTernary& F, const PipelineOptions& opt) {
  if (F.degree() != 4) throw std::invalid_argument("decompose needs a quartic");
  const TernaryQuartic Fd = to_double(F);
  const Rational a = F.coeff(0, 0, 4);
  const bool no_z3 = sgn(F.coeff(1, 0, 3)) == 0 && sgn(F.coeff(0, 1, 3)) == 0;
  if (no_z3 && sgn(a) == 0) {
    // Real-zero shape: exact psd test and the exact construction.
    const RRealZeroForm rz{F.z_slice(2), F.z_slice(1), F.z_slice(0)};
    DecomposeResult out;
    out.route = Route::real_zero;
    out.sphere_min = 0.0;
    return finish(Fd, decompose(rz), out, opt);
  }
  if (no_z3 && sgn(a) > 0) {
    const Rational inv = 1 / a;
    const RForm f2 = F.z_slice(2) * inv, f3 = F.z_slice(1) * inv, f4 = F.z_slice(0) * inv;
    if (psd_binary(f2) && psd_binary(f4) && psd_binary(Rational(4) * f2 * f4 - f3 * f3)) {
      DecomposeResult out;
      GenericityOptions gopt;
      gopt.include_e10 = opt.exact_e10;
      out.genericity = genericity(f2, f3, f4, gopt);
      if (generic_through(*out.genericity, 10)) {
        const NormalForm nf = identity_frame({to_double(f2), to_double(f3), to_double(f4)}, inv.get_d());
        out.normal_form = nf;
        out.sphere_min = min_on_sphere(Fd, opt.normalize.sphere).c;
        SosTriple t = normal_route(nf, seeds(f2, f3, f4), opt, out);
        return finish(Fd, std::move(t), out, opt);
      }
      DecomposeResult fl = decompose(Fd, opt);
      fl.notes.insert(fl.notes.begin(), "exact genericity check failed at " + first_flag(*out.genericity, 10));
      return fl;
    }
  }
  DecomposeResult fl = decompose(Fd, opt);
  fl.notes.insert(fl.notes.begin(), "input is not in normal or real-zero shape; normalized in floating point");
  return fl;
}

namespace {

ClassesResult classes_normal(const NormalForm& nf, const std::vector<XiEtaState>& seed_states,
                             const TernaryQuartic& F, const PipelineOptions& opt) {
  ClassesResult out;
  DecomposeResult scratch;
  const PencilTriple p = pencil_of(nf);
  const Tracked tr = run_paths(seed_states, p, opt, scratch.paths);
  const auto reps = class_representatives(tr.ends);
  scratch.paths.classes = static_cast<int>(reps.size());
  for (const auto& e : reps) out.triples.push_back(polish(F, pull_back(reconstruct(e, p), nf.rotation, nf.scale)));
  out.paths = std::move(scratch.paths);
  return out;
}

}  // namespace

ClassesResult classes(const TernaryQuartic& F, const PipelineOptions& opt) {
  const double nf = max_norm(F);
  const SphereMin m = min_on_sphere(F, opt.normalize.sphere);
  if (m.c < -opt.normalize.tau_pos * nf) throw NotPsdError("form is negative on the sphere");
  if (m.c <= opt.normalize.tau_pos * nf) {
    ClassesResult out;
    out.route = Route::real_zero;
    const RealZeroFrame frame = real_zero_frame(F, m.v);
    for (const auto& t : classes(frame.form)) out.triples.push_back(polish(F, pull_back(t, frame.rotation, 1.0)));
    return out;
  }
  NormalForm form;
  if (auto shape = normal_shape(F)) {
    form = identity_frame(*shape, 1.0 / F.coeff(0, 0, 4));
  } else {
    form = normal_form(F, m, opt.normalize);
  }
  const GenericityReport g = genericity_advisory(form.f2, form.f3, form.f4);
  if (!g.generic()) throw GenericityError(g.first_violation(), "class count needs E1-E11 avoided");
  ClassesResult out = classes_normal(form, seeds(pencil_of(form)), F, opt);
  out.genericity = g;
  return out;
}

ClassesResult classes(const RTernary& F, const PipelineOptions& opt) {
  const TernaryQuartic Fd = to_double(F);
  const Rational a = F.coeff(0, 0, 4);
  const bool no_z3 = sgn(F.coeff(1, 0, 3)) == 0 && sgn(F.coeff(0, 1, 3)) == 0;
  if (no_z3 && sgn(a) == 0) {
    ClassesResult out;
    out.route = Route::real_zero;
    for (const auto& t : classes(RRealZeroForm{F.z_slice(2), F.z_slice(1), F.z_slice(0)}))
      out.triples.push_back(polish(Fd, t));
    return out;
  }
  if (no_z3 && sgn(a) > 0) {
    const Rational inv = 1 / a;
    const RForm f2 = F.z_slice(2) * inv, f3 = F.z_slice(1) * inv, f4 = F.z_slice(0) * inv;
    if (psd_binary(f2) && psd_binary(f4) && psd_binary(Rational(4) * f2 * f4 - f3 * f3)) {
      GenericityOptions gopt;
      gopt.include_e10 = opt.exact_e10;
      const GenericityReport g = genericity(f2, f3, f4, gopt);
      if (!g.generic()) throw GenericityError(g.first_violation(), "class count needs E1-E11 avoided");
      const NormalForm nf = identity_frame({to_double(f2), to_double(f3), to_double(f4)}, inv.get_d());
      ClassesResult out = classes_normal(nf, seeds(f2, f3, f4), Fd, opt);
      out.genericity = g;
      return out;
    }
  }
  return classes(Fd, opt);
}

VerifyReport verify(const TernaryQuartic& F, const SosTriple& t) {
  VerifyReport r;
  const TernaryQuartic d = F - t.sum_of_squares();
  for (int k = 0; k < d.size(); ++k) {
    r.differences.emplace_back(TernaryQuartic::exponent(4, k), d.at(k));
    r.residual = std::max(r.residual, std::abs(d.at(k)));
  }
  return r;
}

ExactVerifyReport verify(const RTernary& F, const std::array<RTernary, 3>& p) {
  for (const auto& q : p)
    if (q.degree() != 2) throw std::invalid_argument("triple entries must be quadratic forms");
  ExactVerifyReport r;
  r.residual = 0;
  const RTernary d = F - (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  for (int k = 0; k < d.size(); ++k) {
    r.differences.emplace_back(RTernary::exponent(4, k), d.at(k));
    const Rational v = abs(d.at(k));
    if (v > r.residual) r.residual = v;
  }
  return r;
}

}  // namespace qsos
