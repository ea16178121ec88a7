#pragma once

// JSON documents read and written by the CLI. Every document carries
// "schema": "orbitcheck.<kind>/1". Rationals are "p/q" strings, floats are numbers.

#include <string>

#include <json.hpp>

#include "orbitcheck/catalog.hpp"
#include "orbitcheck/natred.hpp"

namespace orbitcheck {

using Json = nlohmann::ordered_json;

std::string schema_name(const std::string& kind);

/// Reads and parses a file; InputError names the file (and line/column for syntax errors).
Json read_json_file(const std::string& path);

// ---- inputs ---------------------------------------------------------------

/// {dim, structure: [[i,j,k,value],...]}; values as "p/q" strings, integers or floats.
StructureTensor tensor_from_json(const Json& j, const std::string& where = "algebra");

/// Either a zoo name ("so(3)", "su(2)", "g2", ...) or
/// {dim, structure: [[i,j,k,value],...], inner_product?, name?}.
AlgebraPtr algebra_from_json(const Json& j, const std::string& where = "algebra");

/// {domain, codomain?, matrix: rows of the codomain.dim x domain.dim map, name?, params?}.
/// A missing codomain defaults to `codomain`.
Embedding embedding_from_json(const Json& j, const AlgebraPtr& codomain, const std::string& where = "embedding");

/// {chain, params?} naming a registry entry, or {g, h_embedding, k_embedding?}.
Chain chain_from_json(const Json& j, const std::string& where = "space");

/// A coordinate vector in g: a plain array or {coords: [...]}. Exact when every entry is a string or integer.
struct VectorInput {
  Vector v;
  std::optional<QVector> exact;
};
VectorInput vector_from_json(const Json& j, int dim, const std::string& where = "vector");

// ---- outputs --------------------------------------------------------------

Json to_json(const LieAlgebra& g);
Json to_json(const Embedding& e);
Json to_json(const ValidationReport& r);
Json to_json(const EmbeddingReport& r);
Json space_summary(const ReductiveSpace& s);
Json to_json(const StructureReport& r);
Json to_json(const PrincipalDim& p);
Json to_json(const FilterReport& r);
Json to_json(const ConsequenceReport& r);
Json to_json(const GoWitness& w);
Json to_json(const GoVerdict& v);
Json to_json(const MetricOperator& a);
Json to_json(const Case4Result& r);
Json to_json(const Case4Exact& r);
Json to_json(const LedgerObataSolution& s);
Json to_json(const LedgerObataExact& s);
Json to_json(const CatalogEntry& e);
Json to_json(const EntryReport& r);
Json to_json(const CatalogReport& r);

/// Plain-text rendering of any output document: scalars as "key: value", arrays of
/// flat objects as aligned columns.
std::string render_table(const Json& j);

}  // namespace orbitcheck
