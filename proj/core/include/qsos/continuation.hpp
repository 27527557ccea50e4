#pragma once

#include <string>
#include <vector>

#include "qsos/errors.hpp"
#include "qsos/matrix.hpp"
#include "qsos/realzero.hpp"
#include "qsos/ternary.hpp"

namespace qsos {

/// The pencil data z^4 + f2 z^2 + f3 z + f4 (degrees 2, 3, 4).
struct PencilTriple {
  DForm f2, f3, f4;
  double norm() const;
};

/// A solution of eta^2 + f3^2 = (f2 - t xi)(4 f4 - xi^2).
struct XiEtaState {
  double t = 0.0;
  DForm xi{0.0, 0.0, 0.0};
  DForm eta{0.0, 0.0, 0.0, 0.0};
  double residual = 0.0;
  double jac_condition = 0.0;
};

struct PathTrace {
  std::vector<XiEtaState> states;
  int accepted = 0;
  int rejected = 0;
};

struct TrackOptions {
  double min_step = 1e-6;
  double max_step = 0.05;
  int corrector_iterations = 8;
  int max_halvings = 40;
  double max_condition = 1e12;
  double tau_track = 1e-9;  // times (1 + |f|)
  bool keep_states = true;
};

/// A path stopped: near-singular Jacobian, side condition violated or step underflow.
class PathError : public NumericalError {
 public:
  PathError(const std::string& what, double t) : NumericalError(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// The seven coefficients of eta^2 + f3^2 - (f2 - t xi)(4 f4 - xi^2).
DForm residual_form(const PencilTriple& f, double t, const DForm& xi, const DForm& eta);

/// All t = 0 solutions: the representations of 4 f2 f4 - f3^2 by the norm form <1, f2>.
/// Throws GenericityError for E1, E2 or E3 (exact checks for the rational overload).
std::vector<XiEtaState> seeds(const PencilTriple& f);
std::vector<XiEtaState> seeds(const RForm& f2, const RForm& f3, const RForm& f4);

/// d/d(xi, eta) of the residual: columns are the 3 xi then the 4 eta
/// coefficients, rows the 7 coefficients of a sextic, all descending in x.
/// The map is (dxi, deta) -> 2 eta deta - h_t(xi) dxi.
Matrix<double> jacobian(const PencilTriple& f, const XiEtaState& s);

/// det jacobian = kJacobianResultantConstant * Res_{3,4}(2 eta, h_t(xi)).
inline constexpr double kJacobianResultantConstant = -1.0;

/// Predictor-corrector tracking from the seed to t_target. Throws PathError.
XiEtaState track(const XiEtaState& seed, const PencilTriple& f, double t_target = 1.0, const TrackOptions& opt = {},
                 PathTrace* trace = nullptr);

struct TrackedPath {
  XiEtaState end;
  PathTrace trace;
  bool ok = false;
  std::string failure;  // PathError message when !ok
};

/// Tracks every seed concurrently; results are in seed order.
std::vector<TrackedPath> track_all(const std::vector<XiEtaState>& seeds, const PencilTriple& f,
                                   const TrackOptions& opt = {}, bool parallel = true);

/// The triple (z^2 + xi/2, v2 z + w2, v3 z + w3) for z^4 + f2 z^2 + f3 z + f4 at t = 1.
SosTriple reconstruct(const XiEtaState& s, const PencilTriple& f, double tau_res = 1e-6);

/// Number of distinct xi among the endpoints, clustered with tolerance
/// tau_cluster (1 + |xi|). Throws NumericalError when two xi are ambiguously close.
int count_classes(const std::vector<XiEtaState>& endpoints, double tau_cluster = 1e-5);

/// One endpoint per distinct xi, in endpoint order.
std::vector<XiEtaState> class_representatives(const std::vector<XiEtaState>& endpoints, double tau_cluster = 1e-5);

}  // namespace qsos
