#include <doctest.h>

#include <random>

#include "dimp8/instance_gen.hpp"
#include "dimp8/levels.hpp"
#include "dimp8/patterns.hpp"
#include "test_util.hpp"

using namespace dimp8;
using namespace dimp8::testing;

namespace {

LevelDecomposition levels_of(const SolverState& s, Edge xy, VertexId r) {
    auto res = decompose(s, xy, r);
    REQUIRE(std::holds_alternative<LevelDecomposition>(res));
    return std::get<LevelDecomposition>(res);
}

using VS = std::vector<VertexId>;

}  // namespace

TEST_CASE("decompose P5 from an end edge") {
    auto p5 = path(5);
    auto s = SolverState::fresh(p5);
    auto d = levels_of(s, Edge(0, 1), 2);
    CHECK(d.N[1] == VS{2});
    CHECK(d.N[2] == VS{3});
    CHECK(d.N[3] == VS{4});
    CHECK(d.s2 == VS{3});
    REQUIRE(d.T.size() == 1);
    CHECK(d.T[0] == VS{4});
    CHECK(d.m2.empty());
    CHECK(d.s3.empty());
}

TEST_CASE("decompose a star") {
    auto star = make(4, {{0, 1}, {0, 2}, {0, 3}});
    auto d = levels_of(SolverState::fresh(star), Edge(0, 1), 2);
    CHECK(d.N[1] == VS{2, 3});
    for (int i = 2; i <= 5; ++i) CHECK(d.N[i].empty());
}

TEST_CASE("decompose rejects adjacent N1 vertices and bad witnesses") {
    auto g = make(4, {{0, 1}, {0, 2}, {0, 3}, {2, 3}});
    auto s = SolverState::fresh(g);
    CHECK(std::holds_alternative<DecomposeInfeasible>(decompose(s, Edge(0, 1), 2)));
    auto tri = make(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK_THROWS_AS(decompose(SolverState::fresh(tri), Edge(0, 1), 2), std::invalid_argument);
}

TEST_CASE("decompose reports vertices beyond level 5") {
    auto p9 = path(9);
    auto res = decompose(SolverState::fresh(p9), Edge(0, 1), 2);
    REQUIRE(std::holds_alternative<DecomposeNotP8Free>(res));
    CHECK(std::get<DecomposeNotP8Free>(res).far_vertex == 7);
}

TEST_CASE("force_m2") {
    auto g = make(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    auto s = SolverState::fresh(g);
    auto d = levels_of(s, Edge(0, 1), 2);
    CHECK(d.m2 == std::vector<Edge>{{3, 4}});
    s.reduce(Edge(0, 1));
    auto t = force_m2(s, d);
    CHECK(t.m_acc() == Matching{{0, 1}, {3, 4}});

    auto g5 = path(5);
    auto p5 = SolverState::fresh(g5);
    auto dp = levels_of(p5, Edge(0, 1), 2);
    p5.reduce(Edge(0, 1));
    CHECK(force_m2(p5, dp).m_acc() == p5.m_acc());

    // M2 edges 3-4 and 5-6 joined by 4-5: the clash already shows as a path inside N2.
    auto clash = make(7, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {4, 5}, {5, 6}});
    auto q = SolverState::fresh(clash);
    CHECK(std::holds_alternative<DecomposeInfeasible>(decompose(q, Edge(0, 1), 2)));
    for (const auto& m : enumerate_dims(clash)) CHECK_FALSE(std::binary_search(m.begin(), m.end(), Edge(0, 1)));

    // An M2 edge that an earlier reduction already excluded.
    auto h = make(7, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}});
    auto hs = SolverState::fresh(h);
    auto dh = levels_of(hs, Edge(0, 1), 2);
    CHECK(dh.m2 == std::vector<Edge>{{3, 4}});
    hs.reduce(Edge(0, 1));
    hs.reduce(Edge(5, 6));
    CHECK_FALSE(force_m2(hs, dh).feasible());
}

TEST_CASE("force_n3n4_triangles") {
    auto g = make(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {5, 6}});
    auto s = SolverState::fresh(g);
    auto d = levels_of(s, Edge(0, 1), 2);
    CHECK(d.N[4] == VS{5, 6});
    s.reduce(Edge(0, 1));
    CHECK(force_n3n4_triangles(s, d).m_acc() == Matching{{0, 1}, {5, 6}});

    auto g5 = path(5);
    auto p5 = SolverState::fresh(g5);
    auto dp = levels_of(p5, Edge(0, 1), 2);
    p5.reduce(Edge(0, 1));
    CHECK(force_n3n4_triangles(p5, dp).m_acc() == p5.m_acc());

    // 4 sees the N4 path 5-6-7 and closes two triangles sharing 6.
    auto two = make(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {4, 7}, {5, 6}, {6, 7}});
    auto t = SolverState::fresh(two);
    auto dt = levels_of(t, Edge(0, 1), 2);
    t.reduce(Edge(0, 1));
    CHECK_FALSE(force_n3n4_triangles(t, dt).feasible());
    for (const auto& m : enumerate_dims(two)) CHECK_FALSE(std::binary_search(m.begin(), m.end(), Edge(0, 1)));
}

TEST_CASE("force_double_tj_contact") {
    // u1 = 3, u2 = 4; t1 = 5 sees both of T_2 = {6, 7}.
    std::vector<std::pair<int, int>> base{{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}};
    auto g = make(8, base);
    auto s = SolverState::fresh(g);
    auto d = levels_of(s, Edge(0, 1), 2);
    CHECK(d.s2 == VS{3, 4});
    s.reduce(Edge(0, 1));
    CHECK(force_double_tj_contact(s, d).m_acc() == Matching{{0, 1}, {3, 5}});

    auto g5 = path(5);
    auto p5 = SolverState::fresh(g5);
    auto dp = levels_of(p5, Edge(0, 1), 2);
    p5.reduce(Edge(0, 1));
    CHECK(force_double_tj_contact(p5, dp).m_acc() == p5.m_acc());

    // A second T_1 vertex 8 with the same contact wants u1 as well.
    auto clash_edges = base;
    clash_edges.insert(clash_edges.end(), {{3, 8}, {8, 6}, {8, 7}});
    auto clash = make(9, clash_edges);
    auto c = SolverState::fresh(clash);
    auto dc = levels_of(c, Edge(0, 1), 2);
    c.reduce(Edge(0, 1));
    CHECK_FALSE(force_double_tj_contact(c, dc).feasible());
    for (const auto& m : enumerate_dims(clash)) CHECK_FALSE(std::binary_search(m.begin(), m.end(), Edge(0, 1)));
}

TEST_CASE("level structure on random P8-free graphs") {
    int checked = 0, s3_checked = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GenSpec spec;
        spec.n = 6 + static_cast<int>(seed % 7);
        spec.p = 0.25 + 0.1 * static_cast<double>(seed % 3);
        spec.seed = seed;
        spec.connected = true;
        auto g = gen_random_p8_free(spec);
        auto s = SolverState::fresh(g);
        bool pattern_free = diamond_mid_edges(g).empty() && butterfly_peripheral_edges(g).empty();
        auto dims = g.num_edges() <= 26 ? enumerate_dims(g) : std::vector<Matching>{};
        for (const Edge& xy : g.edges()) {
            auto r = p3_witness(g, xy);
            if (!r) continue;
            auto res = decompose(s, xy, *r);
            if (!std::holds_alternative<LevelDecomposition>(res)) continue;
            const auto& d = std::get<LevelDecomposition>(res);
            ++checked;
            std::size_t total = 2;
            for (int i = 1; i <= 5; ++i) total += d.N[i].size();
            CHECK(total == static_cast<std::size_t>(g.num_vertices()));
            for (int i = 1; i <= 5; ++i)
                for (VertexId v : d.N[i]) {
                    bool up = false;
                    for (VertexId w : g.neighbors(v)) {
                        up = up || d.level[w] == i - 1;
                        CHECK(d.level[w] >= i - 1);
                    }
                    CHECK(up);
                }
            for (VertexId v : d.s3) {
                int k = 0, m2_side = 0;
                for (VertexId w : g.neighbors(v)) {
                    k += d.s2_index[w] >= 0;
                    m2_side += d.level[w] == 2 && d.s2_index[w] < 0;
                }
                CHECK(k != 1);
                if (k == 0) CHECK(m2_side > 0);
            }
            for (std::size_t i = 0; i < d.T.size(); ++i)
                for (VertexId t : d.T[i]) {
                    int k = 0;
                    for (VertexId w : g.neighbors(t)) k += d.s2_index[w] >= 0;
                    CHECK(k == 1);
                    CHECK(g.adjacent(t, d.s2[i]));
                }

            bool has_xy = false;
            for (const auto& m : dims) has_xy = has_xy || std::binary_search(m.begin(), m.end(), xy);
            if (!pattern_free || !has_xy) continue;
            ++s3_checked;
            for (const auto& Ti : d.T) {
                auto es = induced_edges(g, Ti);
                CHECK(es.size() <= 1);
            }
            std::vector<int> side(g.num_vertices(), -1);
            for (VertexId start : d.N[3]) {
                if (side[start] >= 0) continue;
                side[start] = 0;
                std::vector<VertexId> stack{start};
                while (!stack.empty()) {
                    VertexId v = stack.back();
                    stack.pop_back();
                    for (VertexId w : g.neighbors(v)) {
                        if (d.level[w] != 3) continue;
                        if (side[w] < 0) {
                            side[w] = 1 - side[v];
                            stack.push_back(w);
                        }
                        CHECK(side[w] != side[v]);
                    }
                }
            }
        }
    }
    CHECK(checked > 200);
    CHECK(s3_checked > 20);
}
