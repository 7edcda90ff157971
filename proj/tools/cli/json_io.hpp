#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "symcalc/error.hpp"
#include "symcalc/lie_algebra.hpp"
#include "symcalc/loop_geometry.hpp"
#include "symcalc/symbol.hpp"
#include "symcalc/traces.hpp"

namespace symcalc::cli {

using nlohmann::json;

/// Unreadable file, malformed JSON, or a document that does not match a schema.
/// A DomainError, so it maps to the usage/schema exit code.
class SchemaError : public DomainError {
 public:
  using DomainError::DomainError;
};

json read_json_file(const std::filesystem::path& path);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& where);
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j, int dim, const std::string& where);

/// Symbol document. Either the explicit form
///   { "order": m, "fiber_dim": d, "components": [ { "degree": m - j,
///       "plus": [[mode, d x d matrix of [re, im]], ...], "minus": [...] } ] }
/// (a component listing only "plus" uses it on both sheets; missing degrees are zero),
/// or a shorthand with "kind":
///   { "kind": "identity", "fiber_dim": d, "depth": J }
///   { "kind": "weight_power", "s": s, "fiber_dim": d, "depth": J, "kernel_rule": 1 }
///   { "kind": "multiplication", "fiber_dim": d, "depth": J, "function": [[mode, matrix], ...] }
ClassicalSymbol symbol_from_json(const json& j);
json symbol_to_json(const ClassicalSymbol& a);

/// { "dim": n, "structure_constants": [[[c^k_ij for k] for j] for i] }, or { "name": "su2" | "su3" }.
LieAlgebra algebra_from_json(const json& j);

/// { "modes": [ { "k": int, "vector": [[re, im], ...] }, ... ] }.
LoopElement loop_from_json(const json& j, int algebra_dim);
json loop_to_json(const LoopElement& u);

/// Parses "uniform+", "uniform-", "uniform", "delta:x0:+", "mode:k:-" and "d(...)".
CosphereDistribution distribution_from_name(const std::string& name);

}  // namespace symcalc::cli
