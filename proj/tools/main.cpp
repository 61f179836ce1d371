// Command-line surface for the community-extraction library: ingestion,
// extraction, refinement, synthetic-network generation, per-community
// metrics and null-model sampling, with a run manifest for reproducibility.
#include "CLI11.hpp"
#include "json.hpp"

#include "ecohen/extraction.hpp"
#include "ecohen/hetgraph.hpp"
#include "ecohen/hsbm.hpp"
#include "ecohen/io.hpp"
#include "ecohen/metrics.hpp"
#include "ecohen/nullmodel.hpp"
#include "ecohen/refinement.hpp"
#include "ecohen/version.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using ecohen::Community;
using ecohen::CommunitySet;
using ecohen::HetGraph;
using ecohen::NamedGraph;
using ecohen::NodeId;
using ecohen::TypeId;
using json = nlohmann::ordered_json;

constexpr int kOutputFormatVersion = 1;

// --- small utilities --------------------------------------------------------

class StageClock {
  public:
    StageClock() : start_(std::chrono::steady_clock::now()) {}
    double lap_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return ms;
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void write_text(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json file_ref(const std::string& path) {
    return json{{"path", path}, {"digest", ecohen::digest_file(path)}};
}

// Density stats for one community; null when undefined for this graph/size
// (multigraphs, singletons and whole-graph communities have no density ratio).
json stats_json(const NamedGraph& named, const std::vector<NodeId>& members) {
    try {
        const ecohen::CommunityStats s = ecohen::community_stats(named.graph, members);
        json shares = json::object();
        for (TypeId k = 0; k < named.graph.type_count(); ++k)
            shares[named.type_names[k]] = s.type_composition[k];
        json j;
        j["size"] = s.size;
        j["internal_edges"] = s.internal_edges;
        j["boundary_edges"] = s.boundary_edges;
        j["internal_density"] = s.internal_density;
        j["between_density"] = s.between_density;
        j["ratio_of_densities"] = s.ratd_infinite ? json(nullptr) : json(s.ratio_of_densities);
        j["ratio_of_densities_infinite"] = s.ratd_infinite;
        j["type_composition"] = shares;
        return j;
    } catch (const std::exception&) {
        return nullptr;
    }
}

json communities_json(const CommunitySet& cs, const NamedGraph& named) {
    json arr = json::array();
    std::int64_t id = 0;
    for (const Community& c : cs.communities) {
        json members = json::array();
        for (NodeId v : c.members) members.push_back(named.node_names[v]);
        json seed_ids = json::array();
        for (std::int64_t s : c.seed_ids) seed_ids.push_back(named.node_names[s]);
        json jc;
        jc["community_id"] = id++;
        jc["members"] = members;
        jc["seed_id"] = named.node_names[c.seed_ids.front()];
        jc["seed_ids"] = seed_ids;
        jc["iterations"] = c.iterations;
        jc["converged"] = true;
        jc["stats"] = stats_json(named, c.members);
        arr.push_back(std::move(jc));
    }
    return arr;
}

CommunitySet communities_from_json(const std::string& path, const NamedGraph& named) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open communities file: " + path);
    json doc = json::parse(in);
    if (!doc.is_array()) throw std::runtime_error(path + ": expected a top-level array");
    CommunitySet cs;
    for (const json& jc : doc) {
        Community c;
        for (const json& name : jc.at("members")) {
            const auto it = named.node_index.find(name.get<std::string>());
            if (it == named.node_index.end())
                throw std::runtime_error(path + ": member '" + name.get<std::string>() +
                                         "' is not a node of this graph");
            c.members.push_back(it->second);
        }
        std::sort(c.members.begin(), c.members.end());
        c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
        if (jc.contains("seed_ids")) {
            for (const json& name : jc.at("seed_ids")) {
                const auto it = named.node_index.find(name.get<std::string>());
                if (it != named.node_index.end()) c.seed_ids.push_back(it->second);
            }
        }
        if (c.seed_ids.empty()) c.seed_ids.push_back(c.members.empty() ? 0 : c.members.front());
        c.iterations = jc.value("iterations", std::int64_t{0});
        cs.communities.push_back(std::move(c));
    }
    return cs;
}

std::vector<NodeId> truth_from_csv(const std::string& path, const NamedGraph& named) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open truth file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    std::vector<NodeId> truth;
    std::int64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        const std::string id = line.substr(0, line.find(','));
        const auto it = named.node_index.find(id);
        if (it == named.node_index.end())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown node '" +
                                     id + "'");
        truth.push_back(it->second);
    }
    std::sort(truth.begin(), truth.end());
    truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
    return truth;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- subcommand state -------------------------------------------------------

struct ExtractArgs {
    std::string nodes, edges, out = ".";
    double alpha = 0.10, xi = 1.0, phi = 0.99;
    std::int64_t max_iters = 0;
    int threads = 0;
    std::optional<std::uint64_t> seed;
    bool do_refine = false;
    std::int64_t min_size = 1, max_size = 0; // 0 -> unlimited
    double beta = 1.0;
};

struct RefineArgs {
    std::string nodes, edges, communities, out = ".";
    std::int64_t min_size = 1, max_size = 0;
    double beta = 1.0;
    bool exclude_complete = false;
};

struct SimulateArgs {
    std::string model = "two-block";
    double p = 0.0, b = 0.0, r11 = 0.0, r22 = 0.0, r12 = 0.0;
    std::int64_t per_type = 500;
    std::uint64_t seed = 0;
    std::string config; // JSON spec for the general model
    std::string prefix = "sim";
};

struct MetricsArgs {
    std::string nodes, edges, communities, truth, out = "metrics.csv";
};

struct NullSampleArgs {
    std::string nodes, edges, prefix = "null";
    std::int64_t count = 1;
    std::uint64_t seed = 0;
};

json refine_config_json(std::int64_t min_size, std::int64_t max_size, double beta,
                        bool exclude_complete) {
    json j;
    j["min_size"] = min_size;
    j["max_size"] = max_size == 0 ? json(nullptr) : json(max_size);
    j["beta"] = beta;
    j["exclude_complete"] = exclude_complete;
    return j;
}

ecohen::RefinementConfig make_refine_config(std::int64_t min_size, std::int64_t max_size,
                                            double beta, bool exclude_complete) {
    ecohen::RefinementConfig rc;
    rc.min_size = min_size;
    rc.max_size = max_size == 0 ? std::numeric_limits<std::int64_t>::max() : max_size;
    rc.beta = beta;
    rc.exclude_complete = exclude_complete;
    return rc;
}

// --- subcommands ------------------------------------------------------------

int run_extract(const ExtractArgs& a) {
    StageClock clock;
    json timings;
    const NamedGraph named = ecohen::ingest(a.nodes, a.edges);
    timings["ingest_ms"] = clock.lap_ms();

    ecohen::ExtractionConfig cfg;
    cfg.alpha = a.alpha;
    cfg.xi = a.xi;
    cfg.phi = a.phi;
    cfg.max_iters = a.max_iters;
    cfg.threads = a.threads;
    CommunitySet result = ecohen::extract_all(named.graph, cfg);
    timings["extract_ms"] = clock.lap_ms();

    const std::int64_t before_refine = static_cast<std::int64_t>(result.communities.size());
    if (a.do_refine) {
        result = ecohen::refine(
            result, make_refine_config(a.min_size, a.max_size, a.beta, false), named.graph);
        timings["refine_ms"] = clock.lap_ms();
    }

    const std::string communities_path = a.out + "/communities.json";
    write_json(communities_path, communities_json(result, named));
    timings["emit_ms"] = clock.lap_ms();

    json config;
    config["alpha"] = a.alpha;
    config["xi"] = a.xi;
    config["phi"] = a.phi;
    config["max_iters"] = a.max_iters;
    config["threads_requested"] = a.threads;
    config["threads_resolved"] = ecohen::resolve_thread_count(a.threads);
    config["rng_seed"] = a.seed ? json(*a.seed) : json(nullptr);
    config["refine"] =
        a.do_refine ? refine_config_json(a.min_size, a.max_size, a.beta, false) : json(nullptr);

    json manifest;
    manifest["command"] = "extract";
    manifest["library_version"] = ecohen::kVersion;
    manifest["output_format_version"] = kOutputFormatVersion;
    manifest["config"] = config;
    manifest["inputs"] = {{"nodes", file_ref(a.nodes)}, {"edges", file_ref(a.edges)}};
    manifest["outputs"] = {{"communities", file_ref(communities_path)}};
    manifest["result"] = {{"communities", result.communities.size()},
                          {"communities_before_refine", before_refine},
                          {"seeds_run", result.seeds_run},
                          {"seeds_converged", result.seeds_converged},
                          {"phases", result.audit.phases},
                          {"allowance_capped_phases", result.audit.allowance_capped_phases},
                          {"boundary_tie_phases", result.audit.boundary_tie_phases}};
    manifest["timings_ms"] = timings;
    write_json(a.out + "/manifest.json", manifest);

    std::printf("%zu communities -> %s\n", result.communities.size(), communities_path.c_str());
    return 0;
}

int run_refine(const RefineArgs& a) {
    StageClock clock;
    json timings;
    const NamedGraph named = ecohen::ingest(a.nodes, a.edges);
    timings["ingest_ms"] = clock.lap_ms();

    const CommunitySet input = communities_from_json(a.communities, named);
    const CommunitySet result = ecohen::refine(
        input, make_refine_config(a.min_size, a.max_size, a.beta, a.exclude_complete),
        named.graph);
    timings["refine_ms"] = clock.lap_ms();

    const std::string communities_path = a.out + "/communities.json";
    write_json(communities_path, communities_json(result, named));
    timings["emit_ms"] = clock.lap_ms();

    json manifest;
    manifest["command"] = "refine";
    manifest["library_version"] = ecohen::kVersion;
    manifest["output_format_version"] = kOutputFormatVersion;
    manifest["config"] = refine_config_json(a.min_size, a.max_size, a.beta, a.exclude_complete);
    manifest["inputs"] = {{"nodes", file_ref(a.nodes)},
                          {"edges", file_ref(a.edges)},
                          {"communities", file_ref(a.communities)}};
    manifest["outputs"] = {{"communities", file_ref(communities_path)}};
    manifest["result"] = {{"communities", result.communities.size()},
                          {"communities_in", input.communities.size()}};
    manifest["timings_ms"] = timings;
    write_json(a.out + "/manifest.json", manifest);

    std::printf("%zu of %zu communities kept -> %s\n", result.communities.size(),
                input.communities.size(), communities_path.c_str());
    return 0;
}

int run_simulate(const SimulateArgs& a) {
    StageClock clock;
    json config;
    std::optional<NamedGraph> built;
    json truth_info;
    const std::string nodes_path = a.prefix + "_nodes.csv";
    const std::string edges_path = a.prefix + "_edges.csv";
    const std::string truth_path = a.prefix + "_truth.csv";

    if (a.model == "two-block") {
        ecohen::TwoBlockSpec spec;
        spec.p = a.p;
        spec.b = a.b;
        spec.r11 = a.r11;
        spec.r22 = a.r22;
        spec.r12 = a.r12;
        spec.per_type = a.per_type;
        spec.seed = a.seed;
        const ecohen::TwoBlockResult r = ecohen::two_block(spec);
        built.emplace(ecohen::with_default_names(r.graph));
        std::string truth = "id\n";
        for (NodeId v : r.hcb) truth += built->node_names[v] + "\n";
        write_text(truth_path, truth);
        config = {{"model", "two-block"}, {"p", a.p},   {"b", a.b},
                  {"r11", a.r11},         {"r22", a.r22}, {"r12", a.r12},
                  {"per_type", a.per_type}, {"seed", a.seed}};
        truth_info = {{"kind", "planted community"}, {"size", r.hcb.size()}};
    } else if (a.model == "general") {
        if (a.config.empty())
            throw std::runtime_error("--config is required for the general model");
        std::ifstream in(a.config);
        if (!in) throw std::runtime_error("cannot open config: " + a.config);
        const json doc = json::parse(in);
        ecohen::HsbmSpec spec;
        spec.block_sizes = doc.at("block_sizes").get<std::vector<std::vector<std::int64_t>>>();
        spec.baseline = doc.at("baseline").get<std::vector<std::vector<double>>>();
        spec.boost = doc.at("boost").get<std::vector<std::vector<double>>>();
        spec.background_block = doc.value("background_block", std::int64_t{-1});
        spec.seed = doc.value("seed", a.seed);
        const ecohen::HsbmResult r = ecohen::generate_hsbm(spec);
        built.emplace(ecohen::with_default_names(r.graph));
        std::string truth = "id,block\n";
        for (NodeId v = 0; v < r.graph.node_count(); ++v)
            truth += built->node_names[v] + "," + std::to_string(r.block_of[v]) + "\n";
        write_text(truth_path, truth);
        config = {{"model", "general"}, {"spec", doc}, {"seed", spec.seed}};
        truth_info = {{"kind", "block assignment"}};
    } else {
        throw std::runtime_error("unknown model '" + a.model + "' (two-block or general)");
    }

    const NamedGraph& named = *built;
    ecohen::emit(named, nodes_path, edges_path);
    const double gen_ms = clock.lap_ms();

    json manifest;
    manifest["command"] = "simulate";
    manifest["library_version"] = ecohen::kVersion;
    manifest["output_format_version"] = kOutputFormatVersion;
    manifest["config"] = config;
    manifest["outputs"] = {{"nodes", file_ref(nodes_path)},
                           {"edges", file_ref(edges_path)},
                           {"truth", file_ref(truth_path)}};
    manifest["result"] = {{"nodes", named.graph.node_count()},
                          {"edges", named.graph.edge_count()},
                          {"truth", truth_info}};
    manifest["timings_ms"] = {{"generate_ms", gen_ms}};
    write_json(a.prefix + "_manifest.json", manifest);

    std::printf("%lld nodes, %lld edges -> %s, %s, %s\n",
                (long long)named.graph.node_count(), (long long)named.graph.edge_count(),
                nodes_path.c_str(), edges_path.c_str(), truth_path.c_str());
    return 0;
}

int run_metrics(const MetricsArgs& a) {
    const NamedGraph named = ecohen::ingest(a.nodes, a.edges);
    const CommunitySet cs = communities_from_json(a.communities, named);
    std::vector<NodeId> truth;
    if (!a.truth.empty()) truth = truth_from_csv(a.truth, named);

    std::string csv = "community_id,size,internal_edges,boundary_edges,internal_density,"
                      "between_density,ratio_of_densities";
    for (TypeId k = 0; k < named.graph.type_count(); ++k)
        csv += ",share_" + csv_escape(named.type_names[k]);
    if (!truth.empty()) csv += ",jaccard_truth";
    csv += "\n";

    std::int64_t id = 0;
    for (const Community& c : cs.communities) {
        csv += std::to_string(id++) + "," + std::to_string(c.members.size());
        try {
            const ecohen::CommunityStats s = ecohen::community_stats(named.graph, c.members);
            csv += "," + std::to_string(s.internal_edges) + "," +
                   std::to_string(s.boundary_edges) + "," + num(s.internal_density) + "," +
                   num(s.between_density) + "," +
                   (s.ratd_infinite ? std::string("inf") : num(s.ratio_of_densities));
            for (TypeId k = 0; k < named.graph.type_count(); ++k)
                csv += "," + num(s.type_composition[k]);
        } catch (const std::exception&) {
            csv += std::string(5, ',') + std::string(named.graph.type_count(), ',');
        }
        if (!truth.empty()) csv += "," + num(ecohen::jaccard(truth, c.members));
        csv += "\n";
    }
    write_text(a.out, csv);
    std::printf("%lld communities -> %s\n", (long long)id, a.out.c_str());
    return 0;
}

int run_null_sample(const NullSampleArgs& a) {
    const NamedGraph named = ecohen::ingest(a.nodes, a.edges);
    const ecohen::HdcmSampler sampler(named.graph, a.seed);
    for (std::int64_t i = 0; i < a.count; ++i) {
        std::vector<ecohen::Edge> edges = sampler.sample_edges(static_cast<std::uint64_t>(i));
        for (ecohen::Edge& e : edges)
            if (e.u > e.v) std::swap(e.u, e.v);
        std::sort(edges.begin(), edges.end(), [](const ecohen::Edge& x, const ecohen::Edge& y) {
            return x.u != y.u ? x.u < y.u : x.v < y.v;
        });
        std::string csv = "src,dst\n";
        for (const ecohen::Edge& e : edges)
            csv += csv_escape(named.node_names[e.u]) + "," + csv_escape(named.node_names[e.v]) +
                   "\n";
        char name[32];
        std::snprintf(name, sizeof name, "_%04lld.csv", (long long)i);
        write_text(a.prefix + name, csv);
    }
    std::printf("%lld degree-preserving samples -> %s_0000.csv ...\n", (long long)a.count,
                a.prefix.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community extraction for node-typed networks"};
    app.set_version_flag("--version", std::string("ecohen ") + ecohen::kVersion +
                                          " (output format " +
                                          std::to_string(kOutputFormatVersion) + ")");
    app.require_subcommand(1);

    ExtractArgs ex;
    CLI::App* extract = app.add_subcommand("extract", "Extract communities from a network");
    extract->add_option("--nodes", ex.nodes, "node CSV (header id,type)")->required();
    extract->add_option("--edges", ex.edges, "edge CSV (header src,dst)")->required();
    extract->add_option("--alpha", ex.alpha, "false-discovery level per phase");
    extract->add_option("--xi", ex.xi, "allowance learning rate");
    extract->add_option("--phi", ex.phi, "allowance decay rate");
    extract->add_option("--max-iters", ex.max_iters, "iteration cap (0 = node count)");
    extract->add_option("--threads", ex.threads,
                        "worker threads (0 = ECOHEN_THREADS or hardware)");
    extract->add_option("--seed", ex.seed, "RNG seed recorded in the manifest");
    extract->add_flag("--refine", ex.do_refine, "refine the extracted set before writing");
    extract->add_option("--min-size", ex.min_size, "refinement: smallest community kept");
    extract->add_option("--max-size", ex.max_size, "refinement: largest community kept (0 = off)");
    extract->add_option("--beta", ex.beta, "refinement: maximum pairwise overlap");
    extract->add_option("--out", ex.out, "output directory");

    RefineArgs rf;
    CLI::App* refine = app.add_subcommand("refine", "Filter an extracted community set");
    refine->add_option("--nodes", rf.nodes, "node CSV (header id,type)")->required();
    refine->add_option("--edges", rf.edges, "edge CSV (header src,dst)")->required();
    refine->add_option("--communities", rf.communities, "communities.json from extract")
        ->required();
    refine->add_option("--min-size", rf.min_size, "smallest community kept");
    refine->add_option("--max-size", rf.max_size, "largest community kept (0 = off)");
    refine->add_option("--beta", rf.beta, "maximum pairwise overlap");
    refine->add_flag("--exclude-complete", rf.exclude_complete,
                     "drop communities that induce a complete subgraph");
    refine->add_option("--out", rf.out, "output directory");

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic typed network");
    simulate->add_option("--model", sim.model, "two-block (default) or general");
    simulate->add_option("--p", sim.p, "two-block: planted proportion per type");
    simulate->add_option("--b", sim.b, "two-block: background edge rate");
    simulate->add_option("--r11", sim.r11, "two-block: type-1 within-block boost");
    simulate->add_option("--r22", sim.r22, "two-block: type-2 within-block boost");
    simulate->add_option("--r12", sim.r12, "two-block: cross-type within-block boost");
    simulate->add_option("--per-type", sim.per_type, "two-block: nodes per type");
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--config", sim.config, "general: JSON spec file");
    simulate->add_option("--out-prefix", sim.prefix, "output file prefix");

    MetricsArgs me;
    CLI::App* metrics = app.add_subcommand("metrics", "Per-community statistics table");
    metrics->add_option("--nodes", me.nodes, "node CSV (header id,type)")->required();
    metrics->add_option("--edges", me.edges, "edge CSV (header src,dst)")->required();
    metrics->add_option("--communities", me.communities, "communities.json")->required();
    metrics->add_option("--truth", me.truth, "known community CSV (header id) for overlap");
    metrics->add_option("--out", me.out, "output CSV path");

    NullSampleArgs ns;
    CLI::App* nullsample =
        app.add_subcommand("null-sample", "Draw degree-preserving random rewirings");
    nullsample->add_option("--nodes", ns.nodes, "node CSV (header id,type)")->required();
    nullsample->add_option("--edges", ns.edges, "edge CSV (header src,dst)")->required();
    nullsample->add_option("--count", ns.count, "number of samples")
        ->check(CLI::PositiveNumber);
    nullsample->add_option("--seed", ns.seed, "RNG seed");
    nullsample->add_option("--out-prefix", ns.prefix, "output file prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return run_extract(ex);
        if (refine->parsed()) return run_refine(rf);
        if (simulate->parsed()) return run_simulate(sim);
        if (metrics->parsed()) return run_metrics(me);
        if (nullsample->parsed()) return run_null_sample(ns);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
