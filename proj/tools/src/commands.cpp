#include "qsos/cli/commands.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "qsos/errors.hpp"

namespace qsos::cli {

namespace {

struct Outcome {
  json result;
  std::string text;
  int code = kSuccess;
};

const json& form_payload(const json& in) { return in.is_object() && in.contains("form") ? in.at("form") : in; }

PipelineOptions pipeline_options(const JobSpec& job) {
  PipelineOptions opt;
  opt.tol = job.tol;
  opt.max_retries = job.max_retries;
  opt.seed = job.seed;
  opt.trace = job.trace;
  return opt;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string triple_text(const SosTriple& t) {
  std::string s;
  for (int i = 0; i < 3; ++i) s += "p" + std::to_string(i + 1) + " = " + format_form(t.p[i]) + "\n";
  return s;
}

Outcome run_decompose(const JobSpec& job) {
  const json& payload = form_payload(job.input);
  const PipelineOptions opt = pipeline_options(job);
  DecomposeResult r = job.mode == Mode::exact ? decompose(parse_exact_ternary(payload, 4), opt)
                                              : decompose(parse_float_ternary(payload, 4), opt);
  Outcome o{to_json(r, job.trace), {}, kSuccess};
  std::ostringstream s;
  s << "route: " << route_name(r.route) << "\n"
    << "residual: " << num(r.residual) << "\n"
    << triple_text(r.triple);
  if (!r.perturbations.empty()) s << "perturbed attempts: " << r.perturbations.size() << "\n";
  for (const auto& n : r.notes) s << "note: " << n << "\n";
  o.text = s.str();
  return o;
}

Outcome run_classes(const JobSpec& job) {
  const json& payload = form_payload(job.input);
  const PipelineOptions opt = pipeline_options(job);
  ClassesResult r = job.mode == Mode::exact ? classes(parse_exact_ternary(payload, 4), opt)
                                            : classes(parse_float_ternary(payload, 4), opt);
  Outcome o{to_json(r, job.trace), {}, kSuccess};
  std::ostringstream s;
  s << "route: " << route_name(r.route) << "\n"
    << "classes: " << r.triples.size() << "\n";
  for (std::size_t i = 0; i < r.triples.size(); ++i) s << "[" << i + 1 << "]\n" << triple_text(r.triples[i]);
  o.text = s.str();
  return o;
}

// A pencil triple, or a quartic a z^4 + f2 z^2 + f3 z + f4 whose slices are divided by a.
template <class T, class ParseTernary, class ParseBinary>
std::array<BinaryForm<T>, 3> slices(const json& in, ParseTernary&& ternary, ParseBinary&& binary) {
  if (in.is_object() && in.contains("f2"))
    return {binary(in.at("f2"), 2), binary(in.at("f3"), 3), binary(in.at("f4"), 4)};
  auto F = ternary(form_payload(in), 4);
  const T a = F.coeff(0, 0, 4);
  if (!(a > T(0)) || !F.z_slice(3).is_zero())
    throw SchemaError("genericity needs a pencil triple or a quartic with positive z^4 and no z^3 terms");
  const T inv = T(1) / a;
  return {F.z_slice(2) * inv, F.z_slice(1) * inv, F.z_slice(0) * inv};
}

Outcome run_genericity(const JobSpec& job) {
  GenericityReport r;
  if (job.mode == Mode::exact) {
    auto f = slices<Rational>(job.input, parse_exact_ternary, parse_exact_binary);
    r = genericity(f[0], f[1], f[2]);
  } else {
    auto f = slices<double>(job.input, parse_float_ternary, parse_float_binary);
    r = genericity_advisory(f[0], f[1], f[2]);
  }
  Outcome o{to_json(r), {}, kSuccess};
  std::ostringstream s;
  s << "generic: " << (r.generic() ? "yes" : "no") << (r.exact ? "" : " (advisory)") << "\n";
  for (int k = 0; k < 11; ++k)
    s << "E" << k + 1 << (k < 9 ? "  " : " ") << (r.flags[k] ? "holds  " : "avoided") << "  " << r.witness[k] << "\n";
  o.text = s.str();
  return o;
}

int degree_field(const json& in, const char* key) {
  if (!in.contains(key) || !in.at(key).is_number_integer()) throw SchemaError(std::string("missing integer \"") + key + "\"");
  const int v = in.at(key).get<int>();
  if (v < 0) throw SchemaError(std::string("\"") + key + "\" must be nonnegative");
  return v;
}

template <class T, class Parse>
Poly<T> poly_field(const json& in, const char* key, int nominal, Parse&& parse) {
  if (!in.contains(key) || !in.at(key).is_array() || in.at(key).empty())
    throw SchemaError(std::string("\"") + key + "\" must be a nonempty coefficient array");
  const json& a = in.at(key);
  if (static_cast<int>(a.size()) > nominal + 1)
    throw SchemaError(std::string("\"") + key + "\" has more than " + std::to_string(nominal + 1) + " coefficients");
  std::vector<T> c;
  for (const auto& v : a) c.push_back(parse(v));
  return Poly<T>(std::move(c));
}

Outcome run_phi(const JobSpec& job) {
  const json& in = job.input;
  const int m = degree_field(in, "m"), n = degree_field(in, "n");
  Outcome o;
  if (job.mode == Mode::exact) {
    PhiStats stats;
    Rational v = phi(poly_field<Rational>(in, "f", m, parse_exact_scalar), poly_field<Rational>(in, "g", n, parse_exact_scalar),
                     poly_field<Rational>(in, "h", n, parse_exact_scalar), m, n, {}, &stats);
    o.result = {{"phi", to_string(v)},
                {"precision", stats.precision},
                {"samples", stats.samples},
                {"cross_checked", stats.cross_checked}};
    o.text = "phi = " + to_string(v) + "\n";
  } else {
    double v = phi_approx(poly_field<double>(in, "f", m, parse_float_scalar), poly_field<double>(in, "g", n, parse_float_scalar),
                          poly_field<double>(in, "h", n, parse_float_scalar), m, n);
    o.result = {{"phi", v}};
    o.text = "phi ~ " + num(v) + "\n";
  }
  return o;
}

json vec_json(const Vec3& v) { return {v[0], v[1], v[2]}; }

json mat_json(const Mat3& m) { return {vec_json(m[0]), vec_json(m[1]), vec_json(m[2])}; }

Outcome run_normform(const JobSpec& job) {
  const json& payload = form_payload(job.input);
  const TernaryQuartic F =
      job.mode == Mode::exact ? to_double(parse_exact_ternary(payload, 4)) : parse_float_ternary(payload, 4);
  const SphereMin m = min_on_sphere(F);
  Outcome o;
  std::ostringstream s;
  try {
    NormalForm nf = normal_form(F, m);
    o.result = to_json(nf);
    o.result["real_zero"] = false;
    s << "scale: " << num(nf.scale) << "\n"
      << "form: " << format_form(nf.form()) << "\n";
  } catch (const HasRealZeroError& ex) {
    RealZeroFrame fr = real_zero_frame(F, ex.argmin());
    const TernaryQuartic form = z_quartic(0.0, fr.form.f2, fr.form.f3, fr.form.f4);
    o.result = {{"real_zero", true},
                {"rotation", mat_json(fr.rotation)},
                {"f2", to_json(fr.form.f2)},
                {"f3", to_json(fr.form.f3)},
                {"f4", to_json(fr.form.f4)},
                {"form", to_json(form)},
                {"dropped", fr.dropped}};
    s << "real zero at (" << num(ex.argmin()[0]) << ", " << num(ex.argmin()[1]) << ", " << num(ex.argmin()[2])
      << ")\n"
      << "form: " << format_form(form) << "\n";
  }
  o.result["sphere_min"] = m.c;
  o.result["argmin"] = vec_json(m.v);
  o.text = "sphere min: " + num(m.c) + "\n" + s.str();
  return o;
}

Outcome run_verify(const JobSpec& job) {
  const json& in = job.input;
  if (!in.is_object() || !in.contains("form") || !in.contains("triple"))
    throw SchemaError("verify needs {\"form\": ..., \"triple\": [...]}");
  Outcome o;
  json diffs = json::object();
  bool ok;
  if (job.mode == Mode::exact) {
    ExactVerifyReport r = verify(parse_exact_ternary(in.at("form"), 4), parse_exact_triple(in.at("triple")));
    for (const auto& [e, d] : r.differences) diffs[monomial_key(e)] = to_string(d);
    ok = r.residual <= exact_rational(job.tol);
    o.result = {{"residual", to_string(r.residual)}};
    o.text = "residual: " + to_string(r.residual) + "\n";
  } else {
    VerifyReport r = verify(parse_float_ternary(in.at("form"), 4), parse_float_triple(in.at("triple")));
    for (const auto& [e, d] : r.differences) diffs[monomial_key(e)] = d;
    ok = r.residual <= job.tol;
    o.result = {{"residual", r.residual}};
    o.text = "residual: " + num(r.residual) + "\n";
  }
  o.result["differences"] = diffs;
  o.result["tol"] = job.tol;
  o.result["ok"] = ok;
  o.text += ok ? "ok\n" : "residual above tolerance\n";
  o.code = ok ? kSuccess : kFailure;
  return o;
}

Outcome dispatch(const JobSpec& job) {
  if (job.command == "decompose") return run_decompose(job);
  if (job.command == "classes") return run_classes(job);
  if (job.command == "genericity") return run_genericity(job);
  if (job.command == "phi") return run_phi(job);
  if (job.command == "normform") return run_normform(job);
  if (job.command == "verify") return run_verify(job);
  throw SchemaError("unknown command: " + job.command);
}

int fail(const JobSpec& job, std::ostream& out, std::ostream& err, int code, const char* kind, const std::string& what,
         const std::string& condition = {}) {
  err << "error: " << what << "\n";
  if (job.json_output) {
    json e = {{"kind", kind}, {"message", what}};
    if (!condition.empty()) e["condition"] = condition;
    out << json{{"command", job.command}, {"error", e}}.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    Outcome o = dispatch(job);
    if (job.json_output) {
      o.result["command"] = job.command;
      o.result["mode"] = job.mode == Mode::exact ? "exact" : "float";
      out << o.result.dump(2) << "\n";
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const NotPsdError& ex) {
    return fail(job, out, err, kNotPsd, "not_psd", ex.what());
  } catch (const GenericityError& ex) {
    return fail(job, out, err, kGenericityExhausted, "genericity", ex.what(), ex.condition());
  } catch (const NumericalError& ex) {
    return fail(job, out, err, kNumericalFailure, "numerical", ex.what());
  } catch (const HasRealZeroError& ex) {
    return fail(job, out, err, kNumericalFailure, "numerical", ex.what());
  } catch (const json::exception& ex) {
    return fail(job, out, err, kFailure, "schema", ex.what());
  } catch (const std::invalid_argument& ex) {
    return fail(job, out, err, kFailure, "schema", ex.what());
  } catch (const std::exception& ex) {
    return fail(job, out, err, kFailure, "error", ex.what());
  }
}

}  // namespace qsos::cli
