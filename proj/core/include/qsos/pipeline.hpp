#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsos/continuation.hpp"
#include "qsos/normalize.hpp"
#include "qsos/phi.hpp"

namespace qsos {

struct PipelineOptions {
  double tol = 1e-6;            // accepted residual, relative to |F|
  int max_retries = 3;          // perturbed attempts after the first one
  double eps_pert = 1e-6;       // perturbation size, relative to |F|
  std::uint64_t seed = 0;       // perturbation stream
  bool trace = false;           // keep per-path states
  bool exact_e10 = true;        // evaluate E10 in exact genericity reports
  TrackOptions track;
  NormalizeOptions normalize;
};

struct Perturbation {
  int attempt = 0;
  double epsilon = 0.0;  // absolute size: eps_pert * |F|
  TernaryQuartic added{4};
};

struct PathStats {
  int seeds = 0;
  int tracked = 0;   // paths that reached t = 1
  int classes = 0;   // distinct xi among the endpoints
  int accepted_steps = 0;
  int rejected_steps = 0;
  std::vector<std::string> failures;
  std::vector<PathTrace> traces;  // filled when PipelineOptions::trace is set
};

enum class Route { normal_form, real_zero };

struct DecomposeResult {
  SosTriple triple;
  double residual = 0.0;  // |F - sum p_i^2|_inf
  Route route = Route::normal_form;
  double sphere_min = 0.0;
  std::optional<NormalForm> normal_form;
  std::optional<GenericityReport> genericity;
  std::vector<Perturbation> perturbations;
  PathStats paths;
  std::vector<std::string> notes;
};

/// normalize -> genericity -> seeds -> track -> reconstruct -> pull back, or the
/// real-zero construction when F vanishes somewhere on the sphere. Non-generic
/// inputs are perturbed by a random psd form and the result polished back to F.
/// Throws NotPsdError, GenericityError (retries exhausted) or NumericalError.
DecomposeResult decompose(const TernaryQuartic& F, const PipelineOptions& opt = {});

/// Exact-mode entry: exact psd and genericity checks whenever F is already in
/// normal or real-zero shape; otherwise the floating pipeline on F.
DecomposeResult decompose(const RTernary& F, const PipelineOptions& opt = {});

struct ClassesResult {
  std::vector<SosTriple> triples;  // one per orthogonal equivalence class
  Route route = Route::normal_form;
  std::optional<GenericityReport> genericity;
  PathStats paths;
};

/// All inequivalent representations (8 generically, 4 with a real zero). No perturbation.
ClassesResult classes(const TernaryQuartic& F, const PipelineOptions& opt = {});
ClassesResult classes(const RTernary& F, const PipelineOptions& opt = {});

/// Gauss-Newton on the 18 coefficients of the triple; keeps only improvements.
SosTriple polish(const TernaryQuartic& F, SosTriple t, int iterations = 10);

/// Random psd form q1^2 + q2^2 + q3^2 with |.|_inf = 1.
TernaryQuartic random_psd_form(std::uint64_t seed);

/// (f2, f3, f4) when F = a z^4 + f2 z^2 + f3 z + f4 exactly (no z^3 terms), with a > 0
/// and the slices divided by a.
std::optional<PencilTriple> normal_shape(const TernaryQuartic& F);

struct VerifyReport {
  double residual = 0.0;
  std::vector<std::pair<Exponent, double>> differences;  // F - sum p_i^2, all 15 monomials
};
VerifyReport verify(const TernaryQuartic& F, const SosTriple& t);

struct ExactVerifyReport {
  Rational residual;
  std::vector<std::pair<Exponent, Rational>> differences;
};
ExactVerifyReport verify(const RTernary& F, const std::array<RTernary, 3>& p);

}  // namespace qsos
