#include "ecohen/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ecohen {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

// One CSV record of exactly two unquoted fields.
bool split2(const std::string& line, std::string& a, std::string& b) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) return false;
    if (line.find(',', comma + 1) != std::string::npos) return false;
    a = line.substr(0, comma);
    b = line.substr(comma + 1);
    return !a.empty() && !b.empty();
}

std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

NamedGraph ingest(const std::string& nodes_path, const std::string& edges_path) {
    std::vector<std::string> node_names;
    std::vector<std::string> type_names;
    std::unordered_map<std::string, NodeId> node_index;
    std::unordered_map<std::string, TypeId> type_index;
    std::vector<TypeId> types;

    {
        std::ifstream in = open_or_throw(nodes_path);
        std::string line;
        std::size_t line_no = 0;
        if (!std::getline(in, line) || chomp(line) != "id,type")
            fail(nodes_path, 1, "expected header 'id,type'");
        ++line_no;
        std::string id, type;
        while (std::getline(in, line)) {
            ++line_no;
            line = chomp(line);
            if (line.empty()) continue;
            if (!split2(line, id, type)) fail(nodes_path, line_no, "malformed row: " + line);
            auto [it, inserted] = node_index.try_emplace(id, static_cast<NodeId>(node_names.size()));
            if (!inserted) fail(nodes_path, line_no, "duplicate node id: " + id);
            node_names.push_back(id);
            auto [tit, tnew] = type_index.try_emplace(type, static_cast<TypeId>(type_names.size()));
            if (tnew) type_names.push_back(type);
            types.push_back(tit->second);
        }
        if (node_names.empty()) fail(nodes_path, line_no + 1, "node file has no rows");
    }

    std::vector<Edge> edges;
    {
        std::ifstream in = open_or_throw(edges_path);
        std::string line;
        std::size_t line_no = 0;
        if (!std::getline(in, line) || chomp(line) != "src,dst")
            fail(edges_path, 1, "expected header 'src,dst'");
        ++line_no;
        std::string src, dst;
        while (std::getline(in, line)) {
            ++line_no;
            line = chomp(line);
            if (line.empty()) continue;
            if (!split2(line, src, dst)) fail(edges_path, line_no, "malformed row: " + line);
            const auto su = node_index.find(src);
            if (su == node_index.end()) fail(edges_path, line_no, "unknown endpoint: " + src);
            const auto sv = node_index.find(dst);
            if (sv == node_index.end()) fail(edges_path, line_no, "unknown endpoint: " + dst);
            edges.push_back({su->second, sv->second});
        }
    }

    return NamedGraph{HetGraph::build(std::move(types), edges), std::move(node_names),
                      std::move(type_names), std::move(node_index)};
}

void emit(const NamedGraph& g, const std::string& nodes_path, const std::string& edges_path) {
    {
        std::ofstream out(nodes_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + nodes_path);
        out << "id,type\n";
        for (NodeId u = 0; u < g.graph.node_count(); ++u)
            out << g.node_names[u] << ',' << g.type_names[g.graph.type_of(u)] << '\n';
        if (!out) throw std::runtime_error("write failed: " + nodes_path);
    }
    {
        std::ofstream out(edges_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + edges_path);
        out << "src,dst\n";
        for (const Edge& e : g.graph.canonical_edges())
            out << g.node_names[e.u] << ',' << g.node_names[e.v] << '\n';
        if (!out) throw std::runtime_error("write failed: " + edges_path);
    }
}

NamedGraph with_default_names(HetGraph graph) {
    std::vector<std::string> node_names;
    std::vector<std::string> type_names;
    std::unordered_map<std::string, NodeId> node_index;
    node_names.reserve(graph.node_count());
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        node_names.push_back(std::to_string(u));
        node_index.emplace(node_names.back(), u);
    }
    for (TypeId k = 0; k < graph.type_count(); ++k)
        type_names.push_back(std::to_string(k + 1));
    return NamedGraph{std::move(graph), std::move(node_names), std::move(type_names),
                      std::move(node_index)};
}

std::string digest_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << h;
    return hex.str();
}

} // namespace ecohen
