#pragma once

#include <array>
#include <optional>
#include <string>

#include "qsos/polycore.hpp"

namespace qsos {

using ZPoly = Poly<Integer>;

struct PhiOptions {
  /// Compare the certified value against the exact square route when available.
  bool cross_check = true;
  /// Upper limit for the working precision in bits.
  long max_precision = 1 << 16;
};

struct PhiStats {
  long precision = 0;       // bits used by the last certified evaluation
  int samples = 0;          // interpolation samples (0 for a direct evaluation)
  bool cross_checked = false;
};

/// Phi_{m,n}(f, g, h) = a0^((m-1)(n-1)) prod_{i<j} (g(ai) h(aj) - g(aj) h(ai)) / (ai - aj)
/// over the roots ai of f taken with nominal degree m. Exact for rational inputs.
Rational phi(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n, const PhiOptions& opt = {},
             PhiStats* stats = nullptr);

/// Psi_{m,n} = disc_m(f) Phi_{m,n}(f, g, h).
Rational psi(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n, const PhiOptions& opt = {});

/// Phi^2 = a0^(2(m-1)(n-1)) N_{A (x) A}(B) / N_A(W) over A = Q[x]/(f), where
/// B(x, y) = (g(x) h(y) - g(y) h(x)) / (x - y) and W = g' h - g h'.
/// Needs deg f = m; nothing is returned when N_A(W) = 0.
std::optional<Rational> phi_squared_exact(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n);

/// The square route alone: sqrt of phi_squared_exact with the sign taken from a
/// double-precision evaluation of the root product.
std::optional<Rational> phi_via_square(const RPoly& f, const RPoly& g, const RPoly& h, int m, int n);

/// Floating approximation of Phi for double inputs (deg f = m, simple roots).
double phi_approx(const DPoly& f, const DPoly& g, const DPoly& h, int m, int n);

/// Smallest |g(ai) h(aj) - g(aj) h(ai)| / (|g(ai) h(aj)| + |g(aj) h(ai)|) over root pairs;
/// roots at infinity use the leading coefficients of g, h. Zero iff Phi vanishes
/// (for separable f with no common root of g and h).
double phi_min_pair_ratio(const DPoly& f, const DPoly& g, const DPoly& h, int m, int n);

/// g_ij = i fi fj' - j fj fi', nominal degree i + j - 2.
template <class T>
Poly<T> g_ij(const Poly<T>& fi, const Poly<T>& fj, int i, int j) {
  Poly<T> r = fi * fj.derivative() * RingTraits<T>::from_int(i) - fj * fi.derivative() * RingTraits<T>::from_int(j);
  std::vector<T> a = r.ascending();
  a.resize(i + j - 1, RingTraits<T>::zero());  // the x^(i+j-1) terms cancel
  return Poly<T>::from_ascending(std::move(a));
}

template <class T>
struct PQR {
  Poly<T> P, Q, R;
};

/// P = g23 g34 - g24^2, Q = f4^2 g23 (2 f4 g23 - f3 g24), R = (8 f2 f4 - 3 f3^2) g23 + 2 f2 f3 g24.
template <class T>
PQR<T> build_PQR(const Poly<T>& f2, const Poly<T>& f3, const Poly<T>& f4) {
  auto c = [](long v) { return RingTraits<T>::from_int(v); };
  const Poly<T> a2 = f2.with_nominal_degree(2), a3 = f3.with_nominal_degree(3), a4 = f4.with_nominal_degree(4);
  const Poly<T> g23 = g_ij(a2, a3, 2, 3), g24 = g_ij(a2, a4, 2, 4), g34 = g_ij(a3, a4, 3, 4);
  PQR<T> out;
  out.P = (g23 * g34 - g24 * g24).with_nominal_degree(8);
  out.Q = (a4 * a4 * g23 * (c(2) * a4 * g23 - a3 * g24)).with_nominal_degree(18);
  out.R = ((c(8) * a2 * a4 - c(3) * a3 * a3) * g23 + c(2) * a2 * a3 * g24).with_nominal_degree(9);
  return out;
}

/// Exceptional conditions E1..E11; flags[k] is true when E(k+1) holds.
struct GenericityReport {
  std::array<bool, 11> flags{};
  std::array<std::string, 11> witness;  // exact value (exact report) or relative measure (advisory)
  bool exact = true;

  bool generic() const {
    for (bool f : flags)
      if (f) return false;
    return true;
  }
  /// Name of the first condition that holds, e.g. "E3"; empty when generic.
  std::string first_violation() const;
};

struct GenericityOptions {
  /// Evaluate E10 (Phi_{8,18}), the most expensive entry.
  bool include_e10 = true;
  PhiOptions phi;
};

GenericityReport genericity(const RForm& f2, const RForm& f3, const RForm& f4, const GenericityOptions& opt = {});

/// Thresholded report for floating inputs; scale-free measures compared with `threshold`.
GenericityReport genericity_advisory(const DForm& f2, const DForm& f3, const DForm& f4, double threshold = 1e-8);

}  // namespace qsos
