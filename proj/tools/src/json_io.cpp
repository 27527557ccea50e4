#include "qsos/cli/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qsos::cli {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const json& monomials_of(const json& j) {
  const json& m = field(j, "monomials");
  if (!m.is_object()) throw SchemaError("\"monomials\" must be an object");
  return m;
}

template <class T, class Parse>
TernaryForm<T> parse_ternary(const json& j, int degree, Parse&& parse) {
  TernaryForm<T> f(degree);
  for (const auto& [key, value] : monomials_of(j).items()) {
    Exponent e;
    try {
      e = parse_monomial_key(key, degree);
    } catch (const std::invalid_argument& ex) {
      throw SchemaError(ex.what());
    }
    f.set(e.i, e.j, e.k, parse(value));
  }
  return f;
}

template <class T, class Parse>
BinaryForm<T> parse_binary(const json& j, int degree, Parse&& parse) {
  if (!j.is_array()) throw SchemaError("binary form must be a coefficient array");
  if (static_cast<int>(j.size()) != degree + 1)
    throw SchemaError("binary form of degree " + std::to_string(degree) + " needs " + std::to_string(degree + 1) +
                      " coefficients");
  std::vector<T> c;
  for (const auto& v : j) c.push_back(parse(v));
  return BinaryForm<T>(std::move(c));
}

json number(double v) {
  // -0.0 would otherwise print as "-0.0".
  return v == 0.0 ? json(0.0) : json(v);
}

std::string monomial_text(const Exponent& e) {
  std::string s;
  auto put = [&s](const char* v, int p) {
    if (p == 0) return;
    if (!s.empty()) s += '*';
    s += v;
    if (p > 1) s += '^' + std::to_string(p);
  };
  put("x", e.i);
  put("y", e.j);
  put("z", e.k);
  return s;
}

template <class T, class Abs, class Text>
std::string format_terms(const TernaryForm<T>& f, Abs&& negative, Text&& text) {
  std::string out;
  for (int n = 0; n < f.size(); ++n) {
    const T& c = f.at(n);
    if (RingTraits<T>::is_zero(c)) continue;
    const bool neg = negative(c);
    std::string mag = text(c, neg);
    const std::string mono = monomial_text(TernaryForm<T>::exponent(f.degree(), n));
    if (out.empty())
      out = neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mono.empty())
      out += mag;
    else if (mag == "1")
      out += mono;
    else
      out += mag + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Rational parse_exact_scalar(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                                           : Rational(std::to_string(j.get<std::int64_t>()));
  if (!j.is_string()) throw SchemaError("exact mode requires rational strings such as \"3/4\", got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(ex.what());
  }
}

double parse_float_scalar(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>()).get_d();
    } catch (const std::invalid_argument& ex) {
      throw SchemaError(ex.what());
    }
  }
  throw SchemaError("expected a number, got " + j.dump());
}

RTernary parse_exact_ternary(const json& j, int degree) {
  return parse_ternary<Rational>(j, degree, parse_exact_scalar);
}

TernaryForm<double> parse_float_ternary(const json& j, int degree) {
  return parse_ternary<double>(j, degree, parse_float_scalar);
}

json to_json(const RTernary& f) {
  json m = json::object();
  for (int n = 0; n < f.size(); ++n)
    if (sgn(f.at(n)) != 0) m[monomial_key(RTernary::exponent(f.degree(), n))] = to_string(f.at(n));
  return {{"monomials", m}};
}

json to_json(const TernaryForm<double>& f) {
  json m = json::object();
  for (int n = 0; n < f.size(); ++n)
    if (f.at(n) != 0.0) m[monomial_key(TernaryForm<double>::exponent(f.degree(), n))] = f.at(n);
  return {{"monomials", m}};
}

RForm parse_exact_binary(const json& j, int degree) { return parse_binary<Rational>(j, degree, parse_exact_scalar); }
DForm parse_float_binary(const json& j, int degree) { return parse_binary<double>(j, degree, parse_float_scalar); }

json to_json(const RForm& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(to_string(c));
  return a;
}

json to_json(const DForm& f) {
  json a = json::array();
  for (double c : f.coeffs()) a.push_back(number(c));
  return a;
}

PencilTriple parse_pencil(const json& j) {
  return {parse_float_binary(field(j, "f2"), 2), parse_float_binary(field(j, "f3"), 3),
          parse_float_binary(field(j, "f4"), 4)};
}

json to_json(const PencilTriple& f) { return {{"f2", to_json(f.f2)}, {"f3", to_json(f.f3)}, {"f4", to_json(f.f4)}}; }

std::array<RTernary, 3> parse_exact_triple(const json& j) {
  if (!j.is_array() || j.size() != 3) throw SchemaError("triple must be an array of three quadratic forms");
  return {parse_exact_ternary(j[0], 2), parse_exact_ternary(j[1], 2), parse_exact_ternary(j[2], 2)};
}

SosTriple parse_float_triple(const json& j) {
  if (!j.is_array() || j.size() != 3) throw SchemaError("triple must be an array of three quadratic forms");
  SosTriple t;
  for (int i = 0; i < 3; ++i) t.p[i] = parse_float_ternary(j[i], 2);
  return t;
}

json to_json(const SosTriple& t) {
  json a = json::array();
  for (const auto& p : t.p) a.push_back(to_json(p));
  return a;
}

json to_json(const GenericityReport& r) {
  json conditions = json::object();
  for (int k = 0; k < 11; ++k)
    conditions["E" + std::to_string(k + 1)] = {{"holds", r.flags[k]}, {"witness", r.witness[k]}};
  return {{"exact", r.exact},
          {"generic", r.generic()},
          {"first_violation", r.first_violation()},
          {"conditions", conditions}};
}

json to_json(const NormalForm& nf) {
  json rot = json::array();
  for (const auto& row : nf.rotation) rot.push_back({number(row[0]), number(row[1]), number(row[2])});
  return {{"rotation", rot},
          {"scale", nf.scale},
          {"f2", to_json(nf.f2)},
          {"f3", to_json(nf.f3)},
          {"f4", to_json(nf.f4)},
          {"residual_z3", nf.residual_z3},
          {"form", to_json(nf.form())}};
}

json to_json(const PathTrace& trace) {
  json states = json::array();
  for (const auto& s : trace.states)
    states.push_back({{"t", s.t},
                      {"xi", to_json(s.xi)},
                      {"eta", to_json(s.eta)},
                      {"residual", s.residual},
                      {"jac_condition", s.jac_condition}});
  return {{"accepted", trace.accepted}, {"rejected", trace.rejected}, {"states", states}};
}

json to_json(const PathStats& stats, bool trace) {
  json out = {{"seeds", stats.seeds},
              {"tracked", stats.tracked},
              {"classes", stats.classes},
              {"accepted_steps", stats.accepted_steps},
              {"rejected_steps", stats.rejected_steps},
              {"failures", stats.failures}};
  if (trace) {
    json traces = json::array();
    for (const auto& t : stats.traces) traces.push_back(to_json(t));
    out["traces"] = traces;
  }
  return out;
}

std::string route_name(Route r) { return r == Route::normal_form ? "normal_form" : "real_zero"; }

json to_json(const DecomposeResult& r, bool trace) {
  json perturbations = json::array();
  for (const auto& p : r.perturbations)
    perturbations.push_back({{"attempt", p.attempt}, {"epsilon", p.epsilon}, {"added", to_json(p.added)}});
  json out = {{"triple", to_json(r.triple)},
              {"residual", r.residual},
              {"route", route_name(r.route)},
              {"sphere_min", r.sphere_min},
              {"perturbations", perturbations},
              {"paths", to_json(r.paths, trace)},
              {"notes", r.notes}};
  out["normal_form"] = r.normal_form ? to_json(*r.normal_form) : json(nullptr);
  out["genericity"] = r.genericity ? to_json(*r.genericity) : json(nullptr);
  return out;
}

json to_json(const ClassesResult& r, bool trace) {
  json triples = json::array();
  for (const auto& t : r.triples) triples.push_back(to_json(t));
  json out = {{"classes", r.triples.size()},
              {"triples", triples},
              {"route", route_name(r.route)},
              {"paths", to_json(r.paths, trace)}};
  out["genericity"] = r.genericity ? to_json(*r.genericity) : json(nullptr);
  return out;
}

std::string format_form(const TernaryForm<double>& f) {
  return format_terms(
      f, [](double c) { return c < 0.0; },
      [](double c, bool) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", std::abs(c));
        return std::string(buf);
      });
}

std::string format_form(const RTernary& f) {
  return format_terms(
      f, [](const Rational& c) { return sgn(c) < 0; },
      [](const Rational& c, bool) { return to_string(Rational(abs(c))); });
}

}  // namespace qsos::cli
