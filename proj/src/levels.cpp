#include "dimp8/levels.hpp"

#include <algorithm>
#include <stdexcept>

namespace dimp8 {

DecomposeResult decompose(const SolverState& s, const Edge& xy, VertexId r) {
    const WeightedGraph& g = s.base();
    g.edge_id(xy);
    const bool xy_alive = s.alive(xy.u) && s.alive(xy.v);
    const bool xy_reduced = s.in_m_acc(xy);
    if (!xy_alive && !xy_reduced)
        throw StateError(StateError::Kind::EdgeNotAlive, "xy is neither alive nor reduced");
    if (r < 0 || r >= g.num_vertices() || !s.alive(r) || xy.contains(r) ||
        g.adjacent(r, xy.u) == g.adjacent(r, xy.v))
        throw std::invalid_argument("r is not a P3 witness for xy");

    const int n = g.num_vertices();
    LevelDecomposition d;
    d.xy = xy;
    d.r = r;
    d.level.assign(n, -1);
    d.s2_index.assign(n, -1);
    d.group.assign(n, -1);

    auto usable = [&](VertexId v) { return s.alive(v) || xy.contains(v); };
    std::vector<VertexId> frontier{xy.u, xy.v};
    d.level[xy.u] = d.level[xy.v] = 0;
    d.N[0] = frontier;
    for (int lvl = 1; !frontier.empty(); ++lvl) {
        std::vector<VertexId> next;
        for (VertexId v : frontier)
            for (VertexId w : g.neighbors(v))
                if (usable(w) && d.level[w] < 0) {
                    d.level[w] = lvl;
                    next.push_back(w);
                }
        if (next.empty()) break;
        if (lvl >= 6) return DecomposeNotP8Free{*std::min_element(next.begin(), next.end())};
        std::sort(next.begin(), next.end());
        d.N[lvl] = next;
        frontier = std::move(next);
    }
    for (VertexId v = 0; v < n; ++v)
        if (s.alive(v) && d.level[v] < 0) d.unreached.push_back(v);

    for (VertexId v : d.N[1])
        for (VertexId w : g.neighbors(v))
            if (d.level[w] == 1) return DecomposeInfeasible{"N1 is not independent"};

    for (VertexId v : d.N[2]) {
        int deg = 0;
        for (VertexId w : g.neighbors(v))
            if (d.level[w] == 2) {
                ++deg;
                if (v < w) d.m2.emplace_back(v, w);
            }
        if (deg >= 2) return DecomposeInfeasible{"N2 is not a disjoint union of edges and isolated vertices"};
        if (deg == 0) {
            d.s2_index[v] = static_cast<int>(d.s2.size());
            d.s2.push_back(v);
        }
    }

    d.T.assign(d.s2.size(), {});
    for (VertexId t : d.N[3]) {
        int cnt = 0, which = -1;
        for (VertexId w : g.neighbors(t))
            if (d.level[w] == 2 && d.s2_index[w] >= 0) {
                ++cnt;
                which = d.s2_index[w];
            }
        if (cnt == 1) {
            d.group[t] = which;
            d.T[which].push_back(t);
        } else {
            d.s3.push_back(t);
        }
    }
    return d;
}

bool force_m2_in_place(SolverState& s, const LevelDecomposition& d) {
    for (const Edge& e : d.m2)
        if (!s.force(e)) return true;
    return !d.m2.empty();
}

bool apply_level_rules(SolverState& s, const LevelDecomposition& d) {
    force_m2_in_place(s, d);
    if (s.feasible()) force_n3n4_triangles_in_place(s, d);
    if (s.feasible()) force_double_tj_contact_in_place(s, d);
    return s.feasible();
}

bool force_n3n4_triangles_in_place(SolverState& s, const LevelDecomposition& d) {
    const WeightedGraph& g = s.base();
    Matching forced;
    for (VertexId b : d.N[4])
        for (VertexId c : g.neighbors(b)) {
            if (c <= b || d.level[c] != 4) continue;
            for (VertexId a : g.neighbors(b))
                if (d.level[a] == 3 && g.adjacent(a, c)) {
                    forced.emplace_back(b, c);
                    break;
                }
        }
    for (const Edge& e : forced)
        if (!s.force(e)) return true;
    return !forced.empty();
}

bool force_double_tj_contact_in_place(SolverState& s, const LevelDecomposition& d) {
    const WeightedGraph& g = s.base();
    Matching forced;
    for (std::size_t i = 0; i < d.T.size(); ++i)
        for (VertexId t : d.T[i]) {
            std::vector<int> seen(d.T.size(), 0);
            bool hit = false;
            for (VertexId w : g.neighbors(t)) {
                int j = d.group[w];
                if (j >= 0 && j != static_cast<int>(i) && ++seen[j] >= 2) hit = true;
            }
            if (hit) forced.emplace_back(d.s2[i], t);
        }
    for (const Edge& e : forced)
        if (!s.force(e)) return true;
    return !forced.empty();
}

SolverState force_m2(const SolverState& s, const LevelDecomposition& d) {
    SolverState out = s;
    force_m2_in_place(out, d);
    return out;
}

SolverState force_n3n4_triangles(const SolverState& s, const LevelDecomposition& d) {
    SolverState out = s;
    force_n3n4_triangles_in_place(out, d);
    return out;
}

SolverState force_double_tj_contact(const SolverState& s, const LevelDecomposition& d) {
    SolverState out = s;
    force_double_tj_contact_in_place(out, d);
    return out;
}

}  // namespace dimp8
