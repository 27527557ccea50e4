#pragma once

#include <array>
#include <stdexcept>

#include "qsos/polycore.hpp"

namespace qsos {

/// t^2 z^4 + f2 z^2 + f3 z + f4 with a0 = t^2 in the pencil.
template <class T>
struct ZQuartic {
  T a0;
  BinaryForm<T> f2, f3, f4;
};

/// r_f(z) = a0^3 z^3 - a0^2 a2 z^2 + a0 (a1 a3 - 4 a0 a4) z + (4 a0 a2 a4 - a0 a3^2 - a1^2 a4).
template <class T>
Poly<T> cubic_resolvent(const Poly<T>& f) {
  if (f.nominal_degree() != 4) throw std::invalid_argument("cubic resolvent needs a quartic");
  const T a0 = f[0], a1 = f[1], a2 = f[2], a3 = f[3], a4 = f[4];
  if (RingTraits<T>::is_zero(a0)) throw std::invalid_argument("cubic resolvent needs a0 != 0");
  const T four = RingTraits<T>::from_int(4);
  return Poly<T>({a0 * a0 * a0, -(a0 * a0 * a2), a0 * (a1 * a3 - four * a0 * a4),
                  four * a0 * a2 * a4 - a0 * a3 * a3 - a1 * a1 * a4});
}

/// Polynomial in xi with binary-form coefficients, descending in xi.
template <class T>
using XiPoly = std::vector<BinaryForm<T>>;

/// g_t(xi) = t xi^3 - f2 xi^2 - 4 t f4 xi + (4 f2 f4 - f3^2).
template <class T>
XiPoly<T> g_t(const T& t, const BinaryForm<T>& f2, const BinaryForm<T>& f3, const BinaryForm<T>& f4) {
  const T four = RingTraits<T>::from_int(4);
  return {BinaryForm<T>{t}, -f2, -(four * t) * f4, four * f2 * f4 - f3 * f3};
}

/// h_t = d g_t / d xi = 3 t xi^2 - 2 f2 xi - 4 t f4.
template <class T>
XiPoly<T> h_t(const T& t, const BinaryForm<T>& f2, const BinaryForm<T>& f4) {
  const T two = RingTraits<T>::from_int(2), three = RingTraits<T>::from_int(3), four = RingTraits<T>::from_int(4);
  return {BinaryForm<T>{three * t}, -(two * f2), -(four * t) * f4};
}

/// Substitutes a quadratic form xi; the result has degree 2 * (len - 1) + (degree of the constant term's slot).
template <class T>
BinaryForm<T> eval_xi(const XiPoly<T>& p, const BinaryForm<T>& xi) {
  BinaryForm<T> acc = p.front();
  for (std::size_t k = 1; k < p.size(); ++k) acc = acc * xi + p[k];
  return acc;
}

/// D_t = disc g_t, a form of degree 12.
template <class T>
BinaryForm<T> D_t(const T& t, const BinaryForm<T>& f2, const BinaryForm<T>& f3, const BinaryForm<T>& f4) {
  auto c = [](long v) { return RingTraits<T>::from_int(v); };
  const T t2 = t * t;
  const BinaryForm<T> f2s = f2 * f2, f3s = f3 * f3, f4s = f4 * f4;
  return c(-4) * f2s * f2 * f3s - (c(27) * t2) * f3s * f3s + c(16) * f2s * f2s * f4 - (c(128) * t2) * f2s * f4s +
         (c(144) * t2) * f2 * f3s * f4 + (c(256) * t2 * t2) * f4s * f4;
}

/// Second expansion: 16 f4 (4 t^2 f4 - f2^2)^2 + 4 f2 f3^2 (36 t^2 f4 - f2^2) - 27 t^2 f3^4.
template <class T>
BinaryForm<T> D_t_alt(const T& t, const BinaryForm<T>& f2, const BinaryForm<T>& f3, const BinaryForm<T>& f4) {
  auto c = [](long v) { return RingTraits<T>::from_int(v); };
  const T t2 = t * t;
  const BinaryForm<T> u = (c(4) * t2) * f4 - f2 * f2;
  const BinaryForm<T> f3s = f3 * f3;
  return c(16) * f4 * u * u + c(4) * f2 * f3s * ((c(36) * t2) * f4 - f2 * f2) - (c(27) * t2) * f3s * f3s;
}

/// f^(t) in z with coefficients in Q[x] (forms dehomogenized at y = 1).
Poly<RPoly> pencil_member(const Rational& t, const RForm& f2, const RForm& f3, const RForm& f4);

/// g_t and h_t as polynomials in xi over Q[x].
Poly<RPoly> g_t_poly(const Rational& t, const RForm& f2, const RForm& f3, const RForm& f4);

/// Cofactors with D_t(x, 1) = u g_t + v h_t, read off the Sylvester matrix of
/// (g_t, h_t) after folding every column into the last one (t != 0).
struct IdealCertificate {
  Poly<RPoly> u, v;
  RPoly d;  // D_t(x, 1)
};
IdealCertificate dt_cofactors(const Rational& t, const RForm& f2, const RForm& f3, const RForm& f4);

}  // namespace qsos
