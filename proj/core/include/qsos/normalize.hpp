#pragma once

#include <array>

#include "qsos/realzero.hpp"
#include "qsos/ternary.hpp"

namespace qsos {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct SphereMin {
  double c;  // min of F on the unit sphere
  Vec3 v;    // a minimizer; sign chosen so the largest component is positive
  int polished = 0;  // starts whose Lagrange system converged
};

struct SphereMinOptions {
  int starts = 64;
  int newton_iterations = 20;
  double kkt_tolerance = 1e-13;
};

/// Multistart Riemannian descent over a Fibonacci grid, then Newton on
/// grad F = mu v, |v| = 1. Throws NumericalError when no start polishes.
SphereMin min_on_sphere(const TernaryQuartic& F, const SphereMinOptions& opt = {});

/// Orthogonal R (det 1) with R e3 = v; the identity for v = e3.
Mat3 frame_for(const Vec3& v);

/// scale * F(R w) = z^4 + f2 z^2 + f3 z + f4, with f - z^4 psd.
struct NormalForm {
  Mat3 rotation;
  double scale = 1.0;
  DForm f2{0.0, 0.0, 0.0}, f3{0.0, 0.0, 0.0, 0.0}, f4{0.0, 0.0, 0.0, 0.0, 0.0};
  double residual_z3 = 0.0;  // largest z^3 coefficient before it was zeroed

  TernaryQuartic form() const { return z_quartic(1.0, f2, f3, f4); }
  /// The input form reconstructed from the normal form.
  TernaryQuartic original() const;
};

struct NormalizeOptions {
  double tau_pos = 1e-8;  // relative to |F|
  SphereMinOptions sphere;
};

/// Throws HasRealZeroError when min F on the sphere is <= tau_pos |F| (and
/// NotPsdError when it is clearly negative).
NormalForm normal_form(const TernaryQuartic& F, const NormalizeOptions& opt = {});
NormalForm normal_form(const TernaryQuartic& F, const SphereMin& m, const NormalizeOptions& opt = {});

/// F(R w) with the z^4 and z^3 terms dropped, for F vanishing at v = R e3.
struct RealZeroFrame {
  Mat3 rotation;
  RealZeroForm form;
  double dropped = 0.0;  // largest dropped coefficient
};
RealZeroFrame real_zero_frame(const TernaryQuartic& F, const Vec3& v);

/// p_i(R^T u) / sqrt(scale): a triple for F from one for scale * F(R w).
SosTriple pull_back(const SosTriple& t, const Mat3& rotation, double scale);

/// As above; throws NumericalError when |F - sum p_i^2| exceeds tau_res |F|.
SosTriple pull_back(const SosTriple& t, const NormalForm& nf, double tau_res = 1e-6);

/// F(M u).
TernaryQuartic rotate(const TernaryQuartic& F, const Mat3& m);
Mat3 transpose(const Mat3& m);

}  // namespace qsos
