#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "bodygraphs/contact_witness.hpp"
#include "bodygraphs/intersection_witness.hpp"

namespace bodygraphs::io {

// std::map backed, so keys come out sorted
using Json = nlohmann::json;

Json parse(const std::string& text);
std::string dump(const Json& j);

Json to_json(Vec2 v);
Json to_json(const LinearMap2& m);
Json to_json(const std::vector<Vec2>& pts);
Vec2 vec_from(const Json& j);
LinearMap2 map_from(const Json& j);
std::vector<Vec2> points_from(const Json& j);

/// {"type":"polygon"|"disk"|"regular"|"ellipse", ..., "map", "tolerance", "symmetrize"}
BodySpec body_spec_from(const Json& j);
Json to_json(const BodySpec& spec);
/// Polygon spec of an already discretized body.
Json to_json(const SymmetricBody& body);

Json to_json(const UrtcReport& r);
Json to_json(const EmbeddedGraph& g);
EmbeddedGraph graph_from(const Json& j);
GraphKind kind_from(const std::string& name);

Json to_json(const SeparationCertificate& c);
SeparationCertificate certificate_from(const Json& j);

Json to_json(const ContactWitness& w);
Json to_json(const RigidityReport& r);

Json to_json(const NestedCycleGadget& g);
/// Base points plus ray data; ray vertices are s0 + 2 j unit_i.
Json to_json(const RadialGadget& q);
Json to_json(const AlphaReport& r);
Json to_json(const PerturbationReport& r);
Json to_json(const CrossEdgeScan& s);
Json to_json(const CentreBoundsReport& r);
Json to_json(const AssemblyPerturbationReport& r);
Json to_json(const OverlapRealization& r);
Json to_json(const RefinementReport& r);

}  // namespace bodygraphs::io
