#include "ecohen/io.hpp"

#include "ecohen/hsbm.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

using ecohen::digest_file;
using ecohen::emit;
using ecohen::HetGraph;
using ecohen::ingest;
using ecohen::NamedGraph;
using ecohen::NodeId;
using ecohen::with_default_names;

#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must point at the fixture directory"
#endif

namespace {

const std::string kDataDir = TEST_DATA_DIR;

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path(std::string("/tmp/ecohen_iotest_") + name) {
        std::ofstream out(path, std::ios::binary);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("the bundled toy fixture parses to its documented shape") {
    const NamedGraph g = ingest(kDataDir + "/toy_nodes.csv", kDataDir + "/toy_edges.csv");
    CHECK(g.graph.node_count() == 11);
    CHECK(g.graph.edge_count() == 15);
    REQUIRE(g.graph.type_count() == 2);
    CHECK(g.graph.nodes_of_type(0).size() == 5);
    CHECK(g.graph.nodes_of_type(1).size() == 6);
    CHECK(g.graph.bucket_size(0, 0) == 4);
    CHECK(g.graph.bucket_size(1, 1) == 5);
    CHECK(g.graph.bucket_size(0, 1) == 6);

    // node "3" carries two same-type and one cross-type edge endpoints
    REQUIRE(g.node_index.count("3") == 1);
    const NodeId three = g.node_index.at("3");
    const ecohen::TypeId first_type = g.graph.type_of(three);
    CHECK(g.type_names[first_type] == "1");
    CHECK(g.graph.typed_degree(three, first_type) == 2);
    CHECK(g.graph.typed_degree(three, 1 - first_type) == 1);
}

TEST_CASE("types are numbered densely by first appearance") {
    const TempFile nodes("types_n.csv", "id,type\na,red\nb,blue\nc,red\n");
    const TempFile edges("types_e.csv", "src,dst\na,b\n");
    const NamedGraph g = ingest(nodes.path, edges.path);
    CHECK(g.type_names == std::vector<std::string>{"red", "blue"});
    CHECK(g.graph.type_of(g.node_index.at("a")) == 0);
    CHECK(g.graph.type_of(g.node_index.at("b")) == 1);
    CHECK(g.graph.type_of(g.node_index.at("c")) == 0);
    CHECK(g.node_names[g.node_index.at("a")] == "a");
}

TEST_CASE("repeated edge rows and src == dst are kept as structure") {
    const TempFile nodes("multi_n.csv", "id,type\nx,t\ny,t\n");
    const TempFile edges("multi_e.csv", "src,dst\nx,y\nx,y\nx,x\n");
    const NamedGraph g = ingest(nodes.path, edges.path);
    CHECK(g.graph.edge_count() == 3);
    const NodeId x = g.node_index.at("x");
    CHECK(g.graph.degree(x) == 4); // two parallel edges + self-loop counting 2
}

TEST_CASE("windows line endings are tolerated") {
    const TempFile nodes("crlf_n.csv", "id,type\r\na,t\r\nb,t\r\n");
    const TempFile edges("crlf_e.csv", "src,dst\r\na,b\r\n");
    const NamedGraph g = ingest(nodes.path, edges.path);
    CHECK(g.graph.node_count() == 2);
    CHECK(g.graph.edge_count() == 1);
}

TEST_CASE("malformed inputs fail with the file and line number") {
    const TempFile good_nodes("ok_n.csv", "id,type\na,t\nb,t\n");
    auto expect_error = [&](const std::string& nodes, const std::string& edges,
                            const std::string& needle) {
        const TempFile nf("err_n.csv", nodes);
        const TempFile ef("err_e.csv", edges);
        try {
            (void)ingest(nf.path, ef.path);
            FAIL_CHECK("expected a parse error containing '" << needle << "'");
        } catch (const std::runtime_error& e) {
            const std::string msg = e.what();
            CHECK(msg.find(needle) != std::string::npos);
        }
    };

    expect_error("id,type\na,t\na,t\n", "src,dst\n", ":3");        // duplicate id
    expect_error("id;type\na,t\n", "src,dst\n", ":1");             // bad header
    expect_error("id,type\na\n", "src,dst\n", ":2");               // missing field
    expect_error("id,type\na,t\n", "src,dst\na,zzz\n", "zzz");     // dangling endpoint
    expect_error("id,type\n", "src,dst\n", "no rows");             // empty node file
    expect_error("id,type\na,t\nb,t\n", "src,dst\na,b,c\n", ":2"); // extra field

    CHECK_THROWS_AS((void)ingest("/nonexistent/nodes.csv", "/nonexistent/edges.csv"),
                    std::runtime_error);
}

TEST_CASE("emit then ingest reproduces the graph and its names") {
    ecohen::TwoBlockSpec spec;
    spec.p = 0.3;
    spec.b = 0.08;
    spec.r11 = 0.2;
    spec.per_type = 40;
    spec.seed = 7;
    NamedGraph named = with_default_names(two_block(spec).graph);

    const std::string nodes_path = "/tmp/ecohen_iotest_rt_nodes.csv";
    const std::string edges_path = "/tmp/ecohen_iotest_rt_edges.csv";
    emit(named, nodes_path, edges_path);
    const NamedGraph back = ingest(nodes_path, edges_path);

    CHECK(back.graph.same_structure(named.graph));
    CHECK(back.node_names == named.node_names);
    CHECK(back.type_names == named.type_names);

    // a second emission of the re-ingested graph is byte-identical
    const std::string nodes2 = "/tmp/ecohen_iotest_rt_nodes2.csv";
    const std::string edges2 = "/tmp/ecohen_iotest_rt_edges2.csv";
    emit(back, nodes2, edges2);
    CHECK(digest_file(nodes_path) == digest_file(nodes2));
    CHECK(digest_file(edges_path) == digest_file(edges2));

    for (const auto& p : {nodes_path, edges_path, nodes2, edges2}) std::remove(p.c_str());
}

TEST_CASE("default names are decimal ids and 1-based type labels") {
    const NamedGraph g = with_default_names(testutil::four_node_graph());
    CHECK(g.node_names == std::vector<std::string>{"0", "1", "2", "3"});
    CHECK(g.type_names == std::vector<std::string>{"1", "2"});
    CHECK(g.node_index.at("2") == 2);
}

TEST_CASE("file digests are stable and content-sensitive") {
    const TempFile a("dig_a.csv", "id,type\na,t\n");
    const TempFile b("dig_b.csv", "id,type\na,t\n");
    const TempFile c("dig_c.csv", "id,type\nb,t\n");
    const std::string da = digest_file(a.path);
    CHECK(da == digest_file(b.path));
    CHECK(da != digest_file(c.path));
    CHECK(da.size() == 16); // fixed-width 64-bit hex
    CHECK_THROWS_AS((void)digest_file("/nonexistent/file"), std::runtime_error);
}
