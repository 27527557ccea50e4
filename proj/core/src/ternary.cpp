#include "qsos/ternary.hpp"

#include <algorithm>
#include <cmath>

namespace qsos {

std::string monomial_key(const Exponent& e) {
  return std::to_string(e.i) + std::to_string(e.j) + std::to_string(e.k);
}

Exponent parse_monomial_key(const std::string& key, int degree) {
  if (key.size() != 3 || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("monomial key must be three digits: " + key);
  Exponent e{key[0] - '0', key[1] - '0', key[2] - '0'};
  if (e.i + e.j + e.k != degree) throw std::invalid_argument("monomial " + key + " has the wrong degree");
  return e;
}

double max_norm(const TernaryForm<double>& f) {
  double m = 0.0;
  for (double v : f.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

double residual(const TernaryQuartic& f, const SosTriple& t) { return max_norm(f - t.sum_of_squares()); }

SosTriple mix(const SosTriple& t, const std::array<std::array<double, 3>, 3>& s) {
  SosTriple out;
  out.witness = t.witness;
  for (int j = 0; j < 3; ++j) {
    TernaryQuadratic q(2);
    for (int i = 0; i < 3; ++i) q += t.p[i] * s[i][j];
    out.p[j] = q;
  }
  return out;
}

}  // namespace qsos
