#include "dimp8/n4empty.hpp"

#include <algorithm>
#include <tuple>

#include "dimp8/dim_check.hpp"

namespace dimp8 {

namespace {

Edge mate_of(const LevelDecomposition& d, const TOneView& v, VertexId t) { return Edge(d.s2[v.group[t]], t); }

/// Ordering key for choosing a mate: weight first, then the edge itself.
auto mate_key(const SolverState& s, const Edge& e) { return std::make_tuple(s.base().weight(e), e); }

bool mate_blocked(const SolverState& s, const Edge& e) {
    auto id = s.base().find_edge(e.u, e.v);
    return !id || s.overridden(*id) || !s.edge_alive(*id);
}

std::optional<CoreChoice> from_colors(const SolverState& s, const LevelDecomposition& d, const TOneView& v,
                                      const std::vector<signed char>& color) {
    CoreChoice c;
    c.weight = Weight(0);
    for (std::size_t i = 0; i < v.T.size(); ++i) {
        if (!s.alive(d.s2[i])) continue;
        int blacks = 0;
        for (VertexId t : v.T[i])
            if (color[t] == Black) {
                ++blacks;
                c.mates.push_back(mate_of(d, v, t));
                c.weight += s.base().weight(c.mates.back());
            }
        if (blacks != 1) return std::nullopt;
    }
    c.mates = canonical(std::move(c.mates));
    return c;
}

}  // namespace

TOneView t_one_view(const SolverState& s, const LevelDecomposition& d) {
    CoreView core = core_view(s, d);
    TOneView v;
    v.in_core = core.in_core;
    v.group.assign(s.base().num_vertices(), -1);
    v.T.assign(d.s2.size(), {});
    for (VertexId t : d.N[3]) {
        if (!core.in_core[t]) continue;
        int i = d.group[t];
        if (i >= 0 && s.alive(d.s2[i])) {
            v.group[t] = i;
            v.T[i].push_back(t);
        } else {
            v.s3.push_back(t);
        }
    }
    return v;
}

ExtendResult extend_w_in_m(const SolverState& s, const LevelDecomposition& d, const TOneView& v,
                           const std::vector<VertexId>& W, const std::vector<signed char>& initial) {
    const WeightedGraph& g = s.base();
    const int n = g.num_vertices();
    for (VertexId w : W)
        if (w < 0 || w >= n || v.group[w] < 0) throw WNotInTOne("vertex " + std::to_string(w) + " is not in T_one");

    ExtendResult r;
    r.color = initial.empty() ? std::vector<signed char>(n, Uncolored) : initial;
    std::vector<VertexId> queue;
    auto paint = [&](VertexId t, signed char c) {
        if (r.color[t] == c) return;
        if (r.color[t] != Uncolored) {
            r.conflict = true;
            return;
        }
        r.color[t] = c;
        queue.push_back(t);
    };
    for (VertexId w : W) paint(w, Black);
    for (std::size_t k = 0; k < queue.size() && !r.conflict; ++k) {
        VertexId t = queue[k];
        if (r.color[t] == Black) {
            if (mate_blocked(s, mate_of(d, v, t))) {
                r.conflict = true;
                break;
            }
            for (VertexId w : g.neighbors(t))
                if (v.group[w] >= 0) paint(w, White);
            for (VertexId w : v.T[v.group[t]])
                if (w != t) paint(w, White);
        } else {
            for (VertexId w : g.neighbors(t))
                if (v.group[w] >= 0) paint(w, Black);
            // u_i still needs a mate inside T_i
            VertexId last = -1;
            int open = 0;
            for (VertexId w : v.T[v.group[t]])
                if (r.color[w] != White) {
                    ++open;
                    last = w;
                }
            if (open == 0) r.conflict = true;
            else if (open == 1) paint(last, Black);
        }
    }
    if (r.conflict) return r;

    // W': components of G[S2 ∪ T_one] that contain W
    std::vector<char> in_w(n, 0);
    std::vector<VertexId> comp;
    auto member = [&](VertexId x) { return v.group[x] >= 0 || (d.s2_index[x] >= 0 && s.alive(x)); };
    for (VertexId w : W)
        if (!in_w[w]) {
            in_w[w] = 1;
            comp.push_back(w);
        }
    for (std::size_t k = 0; k < comp.size(); ++k)
        for (VertexId w : g.neighbors(comp[k]))
            if (!in_w[w] && member(w)) {
                in_w[w] = 1;
                comp.push_back(w);
            }
    std::sort(comp.begin(), comp.end());
    for (VertexId x : comp) {
        if (v.group[x] < 0) continue;
        if (r.color[x] == Black) {
            r.black.push_back(x);
            r.s2_colored.push_back(d.s2[v.group[x]]);
        } else if (r.color[x] == White) {
            r.white.push_back(x);
        } else {
            r.uncolored.push_back(x);
        }
    }
    std::sort(r.s2_colored.begin(), r.s2_colored.end());
    return r;
}

SolverState force_s3_contacts(const SolverState& s, const LevelDecomposition& d) {
    const WeightedGraph& g = s.base();
    SolverState out = s;
    for (;;) {
        TOneView v = t_one_view(out, d);
        Matching forced;
        for (VertexId x : v.s3)
            for (VertexId w : g.neighbors(x)) {
                if (!out.alive(w) || d.level[w] != 3) continue;
                if (v.group[w] >= 0) {
                    forced.push_back(mate_of(d, v, w));
                } else {
                    out.mark_infeasible("edge inside S3");
                    return out;
                }
            }
        if (forced.empty()) return out;
        for (const Edge& e : canonical(std::move(forced)))
            if (!out.force(e)) return out;
    }
}

std::optional<CoreChoice> solve_disjoint_ts(const SolverState& s, const LevelDecomposition& d, const TOneView& v) {
    std::vector<signed char> color(s.base().num_vertices(), Uncolored);
    for (std::size_t i = 0; i < v.T.size(); ++i) {
        if (!s.alive(d.s2[i])) continue;
        std::optional<VertexId> best;
        for (VertexId t : v.T[i]) {
            if (extend_w_in_m(s, d, v, {t}).conflict) continue;
            if (!best || mate_key(s, mate_of(d, v, t)) < mate_key(s, mate_of(d, v, *best))) best = t;
        }
        if (!best) return std::nullopt;
        color[*best] = Black;
    }
    return from_colors(s, d, v, color);
}

std::optional<ZGraph> build_z_graph(const SolverState& s, const LevelDecomposition& d, const TOneView& v,
                                    VertexId t1, VertexId t2) {
    const WeightedGraph& g = s.base();
    const int a = v.group[t1], b = v.group[t2];
    auto in_g_prime = [&](VertexId t) {
        return t != t1 && t != t2 && !g.adjacent(t, t1) && !g.adjacent(t, t2);
    };
    ZGraph z;
    std::vector<int> node_of(v.T.size(), -1);
    for (std::size_t i = 0; i < v.T.size(); ++i) {
        if (static_cast<int>(i) == a || static_cast<int>(i) == b || !s.alive(d.s2[i])) continue;
        if (std::none_of(v.T[i].begin(), v.T[i].end(), in_g_prime)) continue;
        node_of[i] = static_cast<int>(z.nodes.size());
        z.nodes.push_back(static_cast<int>(i));
    }
    z.adj.assign(z.nodes.size(), {});
    for (std::size_t k = 0; k < z.nodes.size(); ++k) {
        int i = z.nodes[k];
        for (VertexId t : v.T[i]) {
            if (!in_g_prime(t)) continue;
            for (VertexId w : g.neighbors(t)) {
                int j = v.group[w];
                if (j < 0 || j == i || node_of[j] < 0 || !in_g_prime(w)) continue;
                z.adj[k].push_back(j);
            }
        }
        std::sort(z.adj[k].begin(), z.adj[k].end());
        z.adj[k].erase(std::unique(z.adj[k].begin(), z.adj[k].end()), z.adj[k].end());
    }
    std::vector<char> seen(z.nodes.size(), 0);
    for (std::size_t k = 0; k < z.nodes.size(); ++k) {
        if (seen[k]) continue;
        std::vector<int> comp{static_cast<int>(k)};
        seen[k] = 1;
        for (std::size_t q = 0; q < comp.size(); ++q)
            for (int j : z.adj[comp[q]])
                if (!seen[node_of[j]]) {
                    seen[node_of[j]] = 1;
                    comp.push_back(node_of[j]);
                }
        ZGraph::Component c;
        if (comp.size() == 1) {
            c.center = z.nodes[k];
        } else {
            int center = -1;
            for (int x : comp)
                if (z.adj[x].size() == comp.size() - 1) center = x;
            if (center < 0) return std::nullopt;
            for (int x : comp)
                if (x != center && z.adj[x].size() != 1) return std::nullopt;
            c.shape = comp.size() == 2 ? ZGraph::Shape::EdgeType : ZGraph::Shape::StarType;
            if (comp.size() == 2) center = std::min(comp[0], comp[1]);
            c.center = z.nodes[center];
            for (int x : comp)
                if (x != center) c.leaves.push_back(z.nodes[x]);
            std::sort(c.leaves.begin(), c.leaves.end());
        }
        z.components.push_back(std::move(c));
    }
    return z;
}

std::optional<CoreChoice> solve_star_component(const SolverState& s, const LevelDecomposition& d,
                                               const TOneView& v, const std::vector<signed char>& color,
                                               const std::vector<VertexId>& Q, VertexId q) {
    const WeightedGraph& g = s.base();
    ExtendResult r = extend_w_in_m(s, d, v, {q}, color);
    if (r.conflict) return std::nullopt;
    std::vector<signed char> col = std::move(r.color);

    std::vector<int> groups;
    for (VertexId x : Q)
        if (d.s2_index[x] >= 0) groups.push_back(d.s2_index[x]);
    for (int gi : groups) {
        if (std::any_of(v.T[gi].begin(), v.T[gi].end(), [&](VertexId t) { return col[t] == Black; })) continue;
        std::vector<VertexId> open;
        for (VertexId t : v.T[gi])
            if (col[t] == Uncolored) open.push_back(t);
        std::optional<VertexId> pick;
        for (VertexId a : open)
            for (VertexId b : open)
                if (a < b && g.adjacent(a, b)) {
                    Edge ea = mate_of(d, v, a), eb = mate_of(d, v, b);
                    pick = mate_key(s, eb) < mate_key(s, ea) ? b : a;
                }
        if (!pick)
            for (VertexId t : open)
                if (!pick || mate_key(s, mate_of(d, v, t)) < mate_key(s, mate_of(d, v, *pick))) pick = t;
        if (!pick) return std::nullopt;
        ExtendResult step = extend_w_in_m(s, d, v, {*pick}, col);
        if (step.conflict) return std::nullopt;
        col = std::move(step.color);
    }

    CoreChoice c;
    c.weight = Weight(0);
    for (int gi : groups) {
        int blacks = 0;
        for (VertexId t : v.T[gi]) {
            if (col[t] != Black) continue;
            ++blacks;
            c.mates.push_back(mate_of(d, v, t));
            c.weight += g.weight(c.mates.back());
        }
        if (blacks != 1) return std::nullopt;
        for (VertexId t : v.T[gi])
            for (VertexId w : g.neighbors(t))
                if (v.group[w] >= 0 && (col[t] == Black) == (col[w] == Black)) return std::nullopt;
    }
    c.mates = canonical(std::move(c.mates));
    return c;
}

std::optional<CoreChoice> solve_with_t1t2_edge(const SolverState& s, const LevelDecomposition& d, const TOneView& v) {
    const WeightedGraph& g = s.base();
    VertexId t1 = -1, t2 = -1;
    for (VertexId t : d.N[3]) {
        if (v.group[t] < 0) continue;
        for (VertexId w : g.neighbors(t))
            if (w > t && v.group[w] >= 0 && v.group[w] != v.group[t]) {
                t1 = t;
                t2 = w;
                break;
            }
        if (t1 >= 0) break;
    }
    if (t1 < 0) return std::nullopt;
    if (!build_z_graph(s, d, v, t1, t2)) return std::nullopt;

    std::vector<std::vector<VertexId>> anchors;
    for (auto [p, other] : {std::pair{t1, t2}, std::pair{t2, t1}}) {
        bool any = false;
        for (VertexId t : v.T[v.group[other]])
            if (!g.adjacent(p, t)) {
                anchors.push_back({p, t});
                any = true;
            }
        if (!any) anchors.push_back({p});
    }

    std::optional<CoreChoice> best;
    const int n = g.num_vertices();
    for (const auto& W : anchors) {
        ExtendResult r = extend_w_in_m(s, d, v, W);
        if (r.conflict) continue;
        std::vector<signed char> color = r.color;

        // uncolored region: open S2 vertices and uncolored T_one vertices
        std::vector<char> open_vertex(n, 0);
        for (std::size_t i = 0; i < v.T.size(); ++i) {
            if (!s.alive(d.s2[i])) continue;
            bool has_black = false;
            for (VertexId t : v.T[i]) {
                if (color[t] == Black) has_black = true;
                if (color[t] == Uncolored) open_vertex[t] = 1;
            }
            if (!has_black) open_vertex[d.s2[i]] = 1;
        }
        std::vector<char> seen(n, 0);
        bool ok = true;
        for (VertexId x = 0; x < n && ok; ++x) {
            if (!open_vertex[x] || seen[x] || d.s2_index[x] < 0) continue;
            std::vector<VertexId> Q{x};
            seen[x] = 1;
            for (std::size_t k = 0; k < Q.size(); ++k)
                for (VertexId w : g.neighbors(Q[k]))
                    if (open_vertex[w] && !seen[w] && s.alive(w)) {
                        seen[w] = 1;
                        Q.push_back(w);
                    }
            std::sort(Q.begin(), Q.end());
            std::optional<CoreChoice> best_q;
            std::vector<signed char> best_color;
            for (VertexId q : Q) {
                if (v.group[q] < 0) continue;
                auto cq = solve_star_component(s, d, v, color, Q, q);
                if (!cq) continue;
                if (!best_q || better_solution(cq->weight, cq->mates, best_q->weight, best_q->mates)) best_q = cq;
            }
            if (!best_q) {
                ok = false;
                break;
            }
            for (const Edge& e : best_q->mates) color[d.level[e.u] == 3 ? e.u : e.v] = Black;
        }
        if (!ok) continue;
        for (VertexId t = 0; t < n; ++t)
            if (v.group[t] >= 0 && color[t] == Uncolored) color[t] = White;
        auto cand = from_colors(s, d, v, color);
        if (!cand) continue;
        Matching full = s.m_acc();
        full.insert(full.end(), cand->mates.begin(), cand->mates.end());
        if (!is_dim_on(g, canonical(full), v.in_core)) continue;
        if (!best || better_solution(cand->weight, cand->mates, best->weight, best->mates)) best = cand;
    }
    return best;
}

std::optional<CoreSolution> solve_n4_empty(const SolverState& s, const LevelDecomposition& d) {
    SolverState st = force_s3_contacts(s, d);
    if (!st.feasible()) return std::nullopt;
    if (!core_n4_empty(d, core_view(st, d))) return std::nullopt;
    TOneView v = t_one_view(st, d);
    for (std::size_t i = 0; i < v.T.size(); ++i)
        if (st.alive(d.s2[i]) && v.T[i].empty()) return std::nullopt;

    bool cross = false;
    for (VertexId t : d.N[3]) {
        if (v.group[t] < 0) continue;
        for (VertexId w : st.base().neighbors(t))
            if (v.group[w] >= 0 && v.group[w] != v.group[t]) cross = true;
    }
    auto choice = cross ? solve_with_t1t2_edge(st, d, v) : solve_disjoint_ts(st, d, v);
    if (!choice) return std::nullopt;
    Matching full = st.m_acc();
    full.insert(full.end(), choice->mates.begin(), choice->mates.end());
    full = canonical(std::move(full));
    if (!is_dim_on(st.base(), full, v.in_core)) return std::nullopt;
    return CoreSolution{std::move(st), std::move(full)};
}

}  // namespace dimp8
