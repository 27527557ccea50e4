#pragma once

#include <utility>
#include <vector>

#include "qsos/polycore.hpp"

namespace qsos {

/// f = eta^2 + q xi^2.
struct NormRep {
  DPoly xi;
  DPoly eta;
};

/// Smallest lambda >= 0 with (x+a)^2 + b^2 - lambda (x^2+1) a perfect square.
double quadratic_lambda(double a, double b);

/// A psd factor (x+a)^2 + b^2 of multiplicity `mult`; b = 0 for real roots.
struct PsdFactor {
  double a = 0.0;
  double b = 0.0;
  int mult = 1;
};

/// f = lead * prod factor^mult. Real roots must have even multiplicity.
struct PsdFactorization {
  double lead = 0.0;
  std::vector<PsdFactor> factors;
};

/// Exact multiplicities (Yun), numeric roots of each square-free part.
PsdFactorization factor_psd(const RPoly& f);
/// Roots clustered with relative width tau_root.
PsdFactorization factor_psd(const DPoly& f, double tau_root = 1e-7);

/// All (xi, eta) with eta^2 + q xi^2 = f, deduplicated. Coefficients are
/// floating point on both paths; the exact path only fixes the factor structure.
std::vector<NormRep> represent(const RPoly& f, const RPoly& q);
std::vector<NormRep> represent(const DPoly& f, const DPoly& q, double tau_root = 1e-7);

/// 2 prod_p (1 + v_p(f)) over the irreducible quadratics p != q dividing f.
int count(const RPoly& f, const RPoly& q);
int count(const DPoly& f, const DPoly& q, double tau_root = 1e-7);

struct BinaryNormRep {
  DForm xi;   // degree d - 1
  DForm eta;  // degree d
};

/// Homogeneous version for f of degree 2d and a positive definite q of degree 2.
std::vector<BinaryNormRep> represent_binary(const RForm& f, const RForm& q);
std::vector<BinaryNormRep> represent_binary(const DForm& f, const DForm& q, double tau_root = 1e-7);

/// max |eta^2 + q xi^2 - f|.
double norm_residual(const DPoly& f, const DPoly& q, const NormRep& r);

}  // namespace qsos
