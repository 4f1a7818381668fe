#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "chromhopf/csf.hpp"
#include "chromhopf/graph.hpp"
#include "chromhopf/kromatic.hpp"
#include "chromhopf/morphism.hpp"
#include "chromhopf/phase_scalar.hpp"
#include "chromhopf/series.hpp"

namespace chromhopf {

using Json = nlohmann::ordered_json;

// Encoders. Partitions are descending arrays, Rationals "p/q" strings.
Json to_json(const Partition& lambda);
Json to_json(const Rational& r);
Json to_json(const PhaseScalar& x);
Json to_json(const WeightedGraph& g);
Json to_json(const Series& f);
Json to_json(const TensorSeries& f);
Json to_json(const KSeries& f);
Json to_json(const GraphSum& s);
Json to_json(const ClassConfig& cfg);
Json to_json(const MapEquation& eq);
Json to_json(const SolveResult& r);
Json to_json(const MapReport& r);
Json to_json(const HeapWord& h, const WeightedGraph& g);

// Decoders. Each throws InvalidInput naming the offending field; `where` prefixes the message.
Partition partition_from_json(const Json& j, const std::string& where = "partition");
Rational rational_from_json(const Json& j, const std::string& where = "rational");
PhaseScalar phase_scalar_from_json(const Json& j, const std::string& where = "scalar");
WeightedGraph graph_from_json(const Json& j, const std::string& where = "graph");
Series series_from_json(const Json& j, const std::string& where = "series");
KSeries kseries_from_json(const Json& j, const std::string& where = "kseries");
GraphSum graph_sum_from_json(const Json& j, const std::string& where = "graphsum");
ClassConfig class_config_from_json(const Json& j, const std::string& where = "classes");

/// Reads and parses a JSON file; syntax errors report line and column.
Json read_json_file(const std::string& path);

/// Graph file: {"vertices":[{"id":"a","weight":2},...],"edges":[["a","b"],...]}. Vertex order is
/// file order, and that order is the one used for source components and heaps.
WeightedGraph parse_graph_file(const std::string& path);
ClassConfig parse_class_config_file(const std::string& path);

} // namespace chromhopf
