#pragma once

#include "ecohen/hetgraph.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace ecohen {

// A graph plus the mapping between dense internal ids and the original
// string identifiers. Original names appear in every output artifact; dense
// ids never leak outside the library.
struct NamedGraph {
    HetGraph graph;
    std::vector<std::string> node_names; // dense node id -> original id
    std::vector<std::string> type_names; // dense type id -> original label
    std::unordered_map<std::string, NodeId> node_index;
};

// Reads `id,type` and `src,dst` CSV files. Types are numbered densely in
// first-appearance order; duplicate edge rows become multi-edges and
// src == dst becomes a self-loop. Malformed rows, dangling endpoints,
// duplicate node ids and an empty node file raise std::runtime_error with
// the offending file and line number.
NamedGraph ingest(const std::string& nodes_path, const std::string& edges_path);

// Writes the graph back out in the same CSV dialect, nodes in id order and
// edges in canonical (min, max) sorted order, so ingest(emit(g)) == g.
void emit(const NamedGraph& g, const std::string& nodes_path, const std::string& edges_path);

// Wraps a typed graph in generated names: node names are decimal ids, type
// names are 1-based decimal labels.
NamedGraph with_default_names(HetGraph graph);

// 64-bit FNV-1a over the file bytes, as fixed-width hex — enough to pin
// inputs in a run manifest. Throws std::runtime_error if unreadable.
std::string digest_file(const std::string& path);

} // namespace ecohen
