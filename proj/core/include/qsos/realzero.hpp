#pragma once

#include <utility>
#include <vector>

#include "qsos/errors.hpp"
#include "qsos/ternary.hpp"

namespace qsos {

/// f = f2 z^2 + f3 z + f4; a psd quartic vanishing at (0, 0, 1).
template <class T>
struct BasicRealZeroForm {
  BinaryForm<T> f2, f3, f4;

  /// 4 f2 f4 - f3^2.
  BinaryForm<T> f6() const { return T(4) * f2 * f4 - f3 * f3; }
};

using RealZeroForm = BasicRealZeroForm<double>;
using RRealZeroForm = BasicRealZeroForm<Rational>;

/// Checks f2, f4 and 4 f2 f4 - f3^2 are psd; throws NotPsdError otherwise.
void check_psd(const RealZeroForm& f);
void check_psd(const RRealZeroForm& f);

TernaryQuartic to_ternary(const RealZeroForm& f);
RealZeroForm to_double(const RRealZeroForm& f);

/// f2 = l1^2 + l2^2 for a psd binary quadratic.
std::pair<DForm, DForm> split_quadratic(const DForm& f2);

/// A psd binary form of degree 2d as w1^2 + w2^2 with deg wi = d.
std::pair<DForm, DForm> two_squares(const DForm& f, double tau_root = 1e-7);

/// (q, residual) with q minimizing |a - b q| in the coefficient 2-norm.
std::pair<DForm, double> divide_forms(const DForm& a, const DForm& b);

/// Builds (xi/2, h1 + l1 z, h2 + l2 z) from eta^2 + f2 xi^2 = 4 f2 f4 - f3^2 with
/// f2 positive definite.
SosTriple triple_from_pair(const RealZeroForm& f, const DForm& xi, const DForm& eta);

/// A sum of three squares for f. Cases: f2 = 0, f2 a square, f2 positive definite.
SosTriple decompose(const RRealZeroForm& f);
SosTriple decompose(const RealZeroForm& f);

/// One triple per orthogonal equivalence class (4 in the generic case).
/// Requires f2 not a square, f2 not dividing f3, 4 f2 f4 - f3^2 square-free.
std::vector<SosTriple> classes(const RRealZeroForm& f);
std::vector<SosTriple> classes(const RealZeroForm& f);

/// (xi^2, eta^2) of a triple summing to f2 z^2 + f3 z + f4; constant on classes.
std::pair<DForm, DForm> invariant_of_representation(const SosTriple& t, const RealZeroForm& f, double tol = 1e-8);

}  // namespace qsos
