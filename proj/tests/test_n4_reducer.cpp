#include <doctest.h>

#include "dimp8/dim_check.hpp"
#include "dimp8/n4_reducer.hpp"
#include "dimp8/n4empty.hpp"
#include "dimp8/patterns.hpp"
#include "test_util.hpp"

using namespace dimp8;
using namespace dimp8::testing;

namespace {

struct Prepared {
    SolverState raw;    // xy reduced, no level rules
    SolverState state;  // xy reduced and level rules applied
    LevelDecomposition d;
};

Prepared prepare(const WeightedGraph& g, Edge xy = {0, 1}, VertexId r = 2) {
    auto s = SolverState::fresh(g);
    auto res = decompose(s, xy, r);
    REQUIRE(std::holds_alternative<LevelDecomposition>(res));
    Prepared p{s, s, std::get<LevelDecomposition>(res)};
    p.raw.reduce(xy);
    p.state = p.raw;
    apply_level_rules(p.state, p.d);
    return p;
}

std::vector<Matching> dims_with(const WeightedGraph& g, Edge xy = {0, 1}) {
    std::vector<Matching> out;
    for (auto& m : enumerate_dims(g, 40))
        if (std::binary_search(m.begin(), m.end(), xy)) out.push_back(m);
    return out;
}

std::vector<SolverState> reduce_all(const Prepared& p) {
    ReduceDiagnostics diag;
    auto out = reduce_until_n4_empty(p.state, p.d, 100000, diag);
    CHECK_FALSE(diag.cap_exceeded);
    return out;
}

/// Best finished candidate over the reduced branches, compared with the oracle restricted to xy.
void check_against_oracle(const WeightedGraph& g, const Prepared& p) {
    std::optional<std::pair<Weight, Matching>> best;
    for (const auto& b : reduce_all(p)) {
        auto sol = solve_n4_empty(b, p.d);
        if (!sol) continue;
        CHECK(is_induced_matching(g, sol->matching));
        // Components cut off from the core are finished by the caller; skip partial answers.
        if (!check_dim(g, sol->matching).is_dim) continue;
        Weight w = matching_weight(g, sol->matching);
        if (!best || better_solution(w, sol->matching, best->first, best->second)) best = {w, sol->matching};
    }
    std::optional<std::pair<Weight, Matching>> want;
    for (const auto& m : dims_with(g)) {
        Weight w = matching_weight(g, m);
        if (!want || better_solution(w, m, want->first, want->second)) want = {w, m};
    }
    REQUIRE(best.has_value() == want.has_value());
    if (best) CHECK(best->first == want->first);
}

Matching without_xy(const SolverState& s) {
    Matching m;
    for (const Edge& e : s.m_acc())
        if (e != Edge(0, 1)) m.push_back(e);
    return m;
}

// N3 = {4, 8, 9} below u = 3; each sees one corner of the N4 triangle 5, 6, 7.
const std::vector<std::pair<int, int>> kTriangleBase{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 8}, {3, 9},
                                                     {4, 5}, {8, 6}, {9, 7}, {5, 6}, {6, 7}};

WeightedGraph triangle_instance() {
    auto es = kTriangleBase;
    es.emplace_back(5, 7);
    return make(10, es);
}

}  // namespace

TEST_CASE("classify_n4") {
    auto tg = triangle_instance();
    auto tri = prepare(tg);
    auto comps = classify_n4(tri.raw, tri.d, core_view(tri.raw, tri.d));
    REQUIRE(comps);
    REQUIRE(comps->size() == 1);
    CHECK((*comps)[0].kind == N4Component::Kind::Triangle);
    CHECK((*comps)[0].vertices == std::vector<VertexId>{5, 6, 7});

    // The N4 path 5-6-7 only exists next to an induced P8.
    auto p3 = make(10, kTriangleBase);
    CHECK(find_induced_p8(p3));
    auto pp = prepare(p3);
    CHECK_FALSE(classify_n4(pp.raw, pp.d, core_view(pp.raw, pp.d)));
    CHECK(reduce_all(pp).empty());

    auto ind = make(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 8}, {3, 9}, {4, 5}, {8, 6}, {9, 7}});
    auto pi = prepare(ind);
    auto ci = classify_n4(pi.raw, pi.d, core_view(pi.raw, pi.d));
    REQUIRE(ci);
    CHECK(ci->size() == 3);
    for (const auto& c : *ci) CHECK(c.kind == N4Component::Kind::Singleton);
}

TEST_CASE("branch_n4_triangles") {
    auto g = triangle_instance();
    auto p = prepare(g);
    auto comps = classify_n4(p.state, p.d, core_view(p.state, p.d));
    REQUIRE(comps);
    auto branches = branch_n4_triangles(p.state, p.d, *comps);
    REQUIRE(branches.size() == 3);
    CHECK(without_xy(branches[0]) == Matching{{3, 4}, {6, 7}});
    CHECK(without_xy(branches[1]) == Matching{{3, 8}, {5, 7}});
    CHECK(without_xy(branches[2]) == Matching{{3, 9}, {5, 6}});
    for (const auto& b : branches) {
        int hit = 0;
        for (const Edge& e : {Edge(5, 6), Edge(5, 7), Edge(6, 7)}) hit += b.in_m_acc(e);
        CHECK(hit == 1);
    }
    CHECK(dims_with(g).size() == 3);
    check_against_oracle(g, p);

    // S3 vertex 5 (below u = 3 and u = 4) touches the triangle 6, 7, 8.
    auto s3 = make(11, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {5, 6}, {3, 9}, {9, 7}, {4, 10}, {10, 8},
                        {6, 7}, {6, 8}, {7, 8}});
    auto ps = prepare(s3);
    auto cs = classify_n4(ps.state, ps.d, core_view(ps.state, ps.d));
    REQUIRE(cs);
    CHECK(branch_n4_triangles(ps.state, ps.d, *cs).empty());
    CHECK(dims_with(s3).empty());

    // Two N4 triangles below different S2 vertices.
    auto two = make(17, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {3, 13}, {3, 14}, {4, 6}, {4, 15}, {4, 16},
                         {5, 7}, {13, 8}, {14, 9}, {7, 8}, {7, 9}, {8, 9}, {6, 10}, {15, 11}, {16, 12},
                         {10, 11}, {10, 12}, {11, 12}});
    CHECK(find_induced_p8(two));
    auto pt = prepare(two);
    auto ct = classify_n4(pt.state, pt.d, core_view(pt.state, pt.d));
    REQUIRE(ct);
    CHECK(ct->size() == 2);
    CHECK(branch_n4_triangles(pt.state, pt.d, *ct).empty());
}

TEST_CASE("resolve_n4_edges") {
    auto plain = make(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 7}, {4, 5}, {7, 6}, {5, 6}});
    auto p = prepare(plain);
    auto comps = classify_n4(p.state, p.d, core_view(p.state, p.d));
    REQUIRE(comps);
    REQUIRE(comps->size() == 1);
    CHECK((*comps)[0].kind == N4Component::Kind::EdgeComp);
    auto branches = resolve_n4_edges(p.state, p.d, *comps);
    REQUIRE(branches.size() == 1);
    CHECK(without_xy(branches[0]) == Matching{{5, 6}});

    // N5 vertex 8 sees only one end of the N4 edge 5-6; the instance holds an induced P8.
    auto lopsided = make(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 7}, {4, 5}, {7, 6}, {5, 6}, {6, 8}});
    CHECK(find_induced_p8(lopsided));
    auto pl = prepare(lopsided);
    auto cl = classify_n4(pl.state, pl.d, core_view(pl.state, pl.d));
    REQUIRE(cl);
    CHECK(resolve_n4_edges(pl.state, pl.d, *cl).empty());
    CHECK(n4_stage_step(pl.state, pl.d).empty());

    // N4 edge 7-8 with apex 9; A = {4, 5}, B = {6}, all in T_1.
    auto apexed = make(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {3, 6}, {4, 7}, {5, 7}, {6, 8}, {7, 8}, {7, 9},
                            {8, 9}});
    CHECK_FALSE(find_induced_p8(apexed));
    auto pa = prepare(apexed);
    auto ca = classify_n4(pa.state, pa.d, core_view(pa.state, pa.d));
    REQUIRE(ca);
    auto ba = resolve_n4_edges(pa.state, pa.d, *ca);
    REQUIRE(ba.size() == 4);
    CHECK(without_xy(ba[3]) == Matching{{7, 8}});
    check_against_oracle(apexed, pa);
}

TEST_CASE("resolve_n5") {
    // N4 vertex 5 with the N5 edge 6-7 and a third N5 neighbor 8; w(5,6) = 2 < w(5,7) = 5.
    auto g = WeightedGraph::build(10, {{0, 1, Weight(1)}, {1, 2, Weight(1)}, {2, 3, Weight(1)}, {3, 4, Weight(1)},
                                       {4, 5, Weight(1)}, {5, 6, Weight(2)}, {5, 7, Weight(5)}, {6, 7, Weight(1)},
                                       {5, 8, Weight(1)}, {3, 9, Weight(1)}});
    CHECK_FALSE(find_induced_p8(g));
    auto p = prepare(g);
    auto core = core_view(p.state, p.d);
    auto out = resolve_n5(p.state, p.d, core);
    REQUIRE(out.size() == 1);
    CHECK(without_xy(out[0]) == Matching{{5, 6}});
    CHECK(dims_with(g).size() == 2);
    check_against_oracle(g, p);

    // Lone N5 vertex 8 below the independent N4 pair 6, 7: no edge is forced for it.
    auto lone = make(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 7}, {6, 8}, {7, 8}});
    auto pl = prepare(lone);
    auto tris = n5_edge_triangles(pl.state, pl.d, core_view(pl.state, pl.d));
    CHECK(tris.empty());
    CHECK(pl.state.m_acc() == Matching{{0, 1}});

    // Apex triangles at 6 and 7 joined by the C4 4-7-5-6 through T_1 = {4} and T_2 = {5}.
    auto linked = make(13, {{0, 1}, {1, 2}, {2, 3}, {2, 12}, {3, 4}, {12, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7},
                            {6, 8}, {6, 9}, {8, 9}, {7, 10}, {7, 11}, {10, 11}});
    CHECK_FALSE(find_induced_p8(linked));
    auto pk = prepare(linked);
    auto ck = core_view(pk.state, pk.d);
    auto kt = n5_edge_triangles(pk.state, pk.d, ck);
    REQUIRE(kt.size() == 2);
    CHECK(find_c4_links(pk.state, pk.d, kt).size() == 1);
    auto kb = resolve_n5(pk.state, pk.d, ck);
    REQUIRE(kb.size() == 2);
    CHECK(without_xy(kb[0]) == Matching{{6, 8}, {7, 10}});
    CHECK(without_xy(kb[1]) == Matching{{8, 9}, {10, 11}});
    check_against_oracle(linked, pk);
}

TEST_CASE("reduce_until_n4_empty") {
    auto p5 = path(5);
    auto p = prepare(p5);
    auto same = reduce_all(p);
    REQUIRE(same.size() == 1);
    CHECK(same[0].m_acc() == p.state.m_acc());

    auto g = make(11, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 8}, {3, 9}, {3, 10}, {4, 5}, {8, 6}, {9, 7}, {5, 6},
                       {5, 7}, {6, 7}});
    auto pt = prepare(g);
    auto out = reduce_all(pt);
    CHECK(out.size() <= 3);
    CHECK_FALSE(out.empty());
    for (const auto& s : out) CHECK(core_n4_empty(pt.d, core_view(s, pt.d)));
    check_against_oracle(g, pt);
}
