#pragma once

// JSON, CSV and DOT encodings of lattice objects and reports. Big integers
// are written as decimal strings; every report type reads back to an equal
// value.

#include "flatband/bounds.hpp"
#include "flatband/decomp.hpp"
#include "flatband/exactalg.hpp"
#include "flatband/lattice.hpp"
#include "flatband/manybody.hpp"

#include <json.hpp>

#include <string>

namespace flatband {

using nlohmann::json;

json big_to_json(const BigInt& v);
BigInt big_from_json(const json& j);  // accepts a decimal string or an integer

void to_json(json& j, const TorusSpec& s);  // [L1, L2, L3]
void to_json(json& j, const LatticeSummary& s);
void from_json(const json& j, LatticeSummary& s);
void to_json(json& j, const CountResult& r);
void from_json(const json& j, CountResult& r);
void to_json(json& j, const VerifyReport& r);
void from_json(const json& j, VerifyReport& r);
void to_json(json& j, const PackingClass& c);
void from_json(const json& j, PackingClass& c);
void to_json(json& j, const Packing2D& p);
void from_json(const json& j, Packing2D& p);
void to_json(json& j, const ColumnGramReport& r);
void from_json(const json& j, ColumnGramReport& r);
void to_json(json& j, const FamilyRankReport& r);
void from_json(const json& j, FamilyRankReport& r);
void to_json(json& j, const SpanRankReport& r);
void from_json(const json& j, SpanRankReport& r);
void to_json(json& j, const ZeroModeReport& r);
void from_json(const json& j, ZeroModeReport& r);
void to_json(json& j, const EntropyReport& r);
void from_json(const json& j, EntropyReport& r);
void to_json(json& j, const BoundsReport& r);
void from_json(const json& j, BoundsReport& r);

TorusSpec spec_from_json(const json& j);

json gram_to_json(const BigMatrix& g);
BigMatrix gram_from_json(const json& j);

// {"size": [...], "faces": [{"id", "anchor": [x,y,z], "plane"}...]}
json decomposition_to_json(const CubicTorus& torus, const Decomposition& d);
Decomposition decomposition_from_json(const json& j);

// Vertices with coordinates, edges with endpoints and axis.
json lattice_to_json(const CubicTorus& torus);

// Undirected DOT graphs of G (nodes = vertices) and L(G) (nodes = edges).
std::string graph_dot(const CubicTorus& torus);
std::string line_graph_dot(const CubicTorus& torus);

std::string count_csv_header();
std::string count_csv_row(const TorusSpec& spec, const CountResult& r);
std::string bounds_csv_header();
std::string bounds_csv_row(const BoundsReport& r);
std::string entropy_csv_header();
std::string entropy_csv_row(const EntropyReport& r);

}  // namespace flatband

namespace nlohmann {
template <>
struct adl_serializer<flatband::TorusSpec> {
  static flatband::TorusSpec from_json(const json& j) { return flatband::spec_from_json(j); }
  static void to_json(json& j, const flatband::TorusSpec& s) { flatband::to_json(j, s); }
};
}  // namespace nlohmann
