#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "tautres/genfun.hpp"
#include "tautres/oracle.hpp"
#include "tautres/tautint.hpp"

namespace tautres {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

inline constexpr int kSchemaVersion = 1;

struct JsonOptions {
  bool decimal = false;  // add labeled decimal approximations next to exact values
};

Json rational_to_json(const Rational& q);
// Term list [{"coeff": "p/q", "monomial": {"name": exp}}], sorted by monomial name.
Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);  // term list or expression string
Json rational_function_to_json(const RationalFunction& f);

// Symbols accepted in user expressions: lambda<i> (shared torus), z<i> (block 1).
MultiPoly parse_weight_expression(const std::string& src);

struct ParsedProblem {
  ProblemSpec spec;
  EvalOptions options;
  std::shared_ptr<QTable> qtable;
  std::optional<IntersectionTable> table;  // "surface" or "table" entry
  std::string surface_name;
};

// Validates the whole document before returning; throws SpecError.
ParsedProblem problem_from_json(const Json& j);

IntersectionTable surface_table_from_json(const Json& j, int n, int r);

Json universal_to_json(const UniversalIntegral& u, const JsonOptions& o = {});
Json residue_term_to_json(const RationalTerm& t);
RationalTerm residue_term_from_json(const Json& j);
Json series_to_json(const SeriesReport& s, const JsonOptions& o = {});
Json oracle_to_json(const OracleResult& r, const JsonOptions& o = {});

// Parse text, mapping parse errors to SpecError.
Json parse_json_text(const std::string& text);
std::string dump_json(const Json& j);

}  // namespace tautres
