#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qsos/pipeline.hpp"

namespace qsos::cli {

using nlohmann::json;

enum class Mode { exact, floating };

/// Malformed or ill-typed JSON payload.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scalars: exact mode takes "p/q" strings or JSON integers and writes strings;
// float mode takes numbers (or rational strings) and writes numbers.
Rational parse_exact_scalar(const json& j);
double parse_float_scalar(const json& j);

// Ternary forms: {"monomials": {"ijk": c, ...}}. Only nonzero terms are written.
RTernary parse_exact_ternary(const json& j, int degree);
TernaryForm<double> parse_float_ternary(const json& j, int degree);
json to_json(const RTernary& f);
json to_json(const TernaryForm<double>& f);

// Binary forms: coefficient arrays descending in x; the length fixes the degree.
RForm parse_exact_binary(const json& j, int degree);
DForm parse_float_binary(const json& j, int degree);
json to_json(const RForm& f);
json to_json(const DForm& f);

/// {"f2": [...], "f3": [...], "f4": [...]}.
PencilTriple parse_pencil(const json& j);
json to_json(const PencilTriple& f);

/// [{"monomials": ...}, x3].
std::array<RTernary, 3> parse_exact_triple(const json& j);
SosTriple parse_float_triple(const json& j);
json to_json(const SosTriple& t);

json to_json(const GenericityReport& r);
json to_json(const NormalForm& nf);
json to_json(const PathTrace& trace);
json to_json(const PathStats& stats, bool trace);
json to_json(const DecomposeResult& r, bool trace);
json to_json(const ClassesResult& r, bool trace);

std::string route_name(Route r);

/// The form as text, e.g. "x^2 - 2*x*y + 0.5*z^2".
std::string format_form(const TernaryForm<double>& f);
std::string format_form(const RTernary& f);

}  // namespace qsos::cli
