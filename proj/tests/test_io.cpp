#include <doctest.h>

#include <random>

#include "dimp8/instance_gen.hpp"
#include "dimp8/io.hpp"
#include "test_util.hpp"

using namespace dimp8;
using namespace dimp8::testing;

namespace {

int error_line(const std::string& text) {
    try {
        parse_graph_file(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::string error_reason(const std::string& text) {
    try {
        parse_graph_file(text);
    } catch (const ParseError& e) {
        return e.reason();
    }
    return "";
}

}  // namespace

TEST_CASE("parse graph files") {
    auto k2 = parse_graph_file("p dim 2 1\ne 1 2 5");
    CHECK(k2.num_vertices() == 2);
    CHECK(k2.num_edges() == 1);
    CHECK(k2.weight(Edge(0, 1)) == Weight(5));

    auto c4 = parse_graph_file("p dim 4 4\ne 1 2 1\ne 2 3 1\ne 3 4 1\ne 1 4 1\n");
    CHECK(c4.num_edges() == 4);
    CHECK(c4.adjacent(0, 3));
    CHECK_FALSE(c4.adjacent(0, 2));

    auto inf = parse_graph_file("c header comment\n\np dim 3 2\nc mid\ne 1 2 inf\ne 3 2 0\n");
    CHECK(inf.weight(Edge(0, 1)).is_infinite());
    CHECK(inf.weight(Edge(1, 2)) == Weight(0));

    CHECK(error_line("e 1 2 5") == 1);
    CHECK(error_reason("e 1 2 5") == "missing header");
    CHECK(error_line("p dim 2 1\ne 1 3 5") == 2);
    CHECK(error_line("p dim 3 2\ne 1 2 5\ne 2 1 4") == 3);
    CHECK(error_reason("p dim 3 2\ne 1 2 5\ne 2 1 4") == "duplicate edge");
    CHECK(error_line("p dim 2 1\ne 1 2 -5") == 2);
    CHECK(error_line("p dim 2 1\ne 1 2 five") == 2);
    CHECK(error_line("p dim 2 1\ne 1 2 Inf") == 2);
    CHECK(error_line("p dim x 1\n") == 1);
    CHECK(error_line("p dim 2\n") == 1);
    CHECK(error_line("p dim 2 1\np dim 2 1\n") == 2);
    CHECK(error_line("p dim 2 1\ne 1 1 1") == 2);
    CHECK(error_line("p dim 2 1\nx 1 2 1") == 2);
    CHECK(error_line("p dim 3 1\ne 1 2 1\ne 2 3 1") == 3);
    CHECK(error_line("p dim 3 2\ne 1 2 1") > 0);
    CHECK(error_line("p dim 3 0\n") == 0);
}

TEST_CASE("emit round trip") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
        auto g = random_graph(rng, 1 + static_cast<int>(rng() % 15), 0.3, 20);
        auto back = parse_graph_file(emit_graph_file(g));
        REQUIRE(back.num_edges() == g.num_edges());
        CHECK(back.num_vertices() == g.num_vertices());
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            CHECK(back.edge(e) == g.edge(e));
            CHECK(back.weight(e) == g.weight(e));
        }
    }
    auto inf = WeightedGraph::build(2, {{0, 1, Weight::infinite()}});
    CHECK(emit_graph_file(inf) == "p dim 2 1\ne 1 2 inf\n");
    GenSpec s;
    s.n = 30;
    s.seed = 4;
    auto planted = gen_planted_yes(s, 6);
    CHECK(emit_graph_file(parse_graph_file(emit_graph_file(planted.graph))) == emit_graph_file(planted.graph));
}

TEST_CASE("matching files") {
    CHECK(parse_matching_file("c m\ne 1 2\n\ne 5 4\n", 6) == Matching{{0, 1}, {3, 4}});
    CHECK_THROWS_AS(parse_matching_file("e 1 7\n", 6), ParseError);
    CHECK_THROWS_AS(parse_matching_file("e 1\n", 6), ParseError);
}

TEST_CASE("result records") {
    SolveOutcome found;
    found.status = SolveStatus::DimFound;
    found.matching = {{1, 2}, {4, 5}};
    found.weight = Weight(2);
    found.diagnostics.branches = 3;
    found.diagnostics.xy_tried = 4;
    found.diagnostics.millis = 7;
    CHECK(result_record(found) ==
          R"({"status":"dim_found","edges":[[2,3],[5,6]],"weight":2,"diagnostics":{"branches":3,"xy_tried":4,"millis":7,"incomplete":false,"p8_witness":null}})");
    CHECK(result_record(found, false) ==
          R"({"status":"dim_found","edges":[[2,3],[5,6]],"weight":2,"diagnostics":{"branches":3,"xy_tried":4,"incomplete":false,"p8_witness":null}})");

    SolveOutcome none;
    none.diagnostics.incomplete = true;
    none.diagnostics.p8_witness = std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(result_record(none, false) ==
          R"({"status":"no_dim","weight":null,"diagnostics":{"branches":0,"xy_tried":0,"incomplete":true,"p8_witness":[1,2,3,4,5,6,7,8]}})");

    SolveOutcome inf;
    inf.status = SolveStatus::NoFiniteDim;
    inf.weight = Weight::infinite();
    CHECK(result_record(inf, false) ==
          R"({"status":"no_finite_dim","weight":"inf","diagnostics":{"branches":0,"xy_tried":0,"incomplete":false,"p8_witness":null}})");

    CHECK(status_name(SolveStatus::NoFiniteDim) == "no_finite_dim");
    auto o = from_oracle(oracle_min_dim(cycle(6)));
    CHECK(o.status == SolveStatus::DimFound);
    CHECK(o.weight == Weight(2));
    CHECK(from_oracle(oracle_min_dim(cycle(5))).status == SolveStatus::NoDim);
}
