#include "dimp8/n4_reducer.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace dimp8 {

namespace {

std::vector<VertexId> level_neighbors(const WeightedGraph& g, const LevelDecomposition& d, VertexId v, int lvl) {
    std::vector<VertexId> out;
    for (VertexId w : g.neighbors(v))
        if (d.level[w] == lvl) out.push_back(w);
    return out;
}

std::vector<VertexId> alive_level_neighbors(const SolverState& s, const LevelDecomposition& d, VertexId v,
                                            int lvl) {
    std::vector<VertexId> out;
    for (VertexId w : s.base().neighbors(v))
        if (d.level[w] == lvl && s.alive(w)) out.push_back(w);
    return out;
}

Edge mate_edge(const LevelDecomposition& d, VertexId t) { return Edge(d.s2[d.group[t]], t); }

bool contains(const std::vector<VertexId>& v, VertexId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

/// Components of the alive vertices selected by `pick`, via alive edges among them.
template <class Pick>
std::vector<std::vector<VertexId>> components_of(const SolverState& s, Pick pick) {
    const WeightedGraph& g = s.base();
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<std::vector<VertexId>> out;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (seen[v] || !s.alive(v) || !pick(v)) continue;
        std::vector<VertexId> comp{v};
        seen[v] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (VertexId w : g.neighbors(comp[k]))
                if (!seen[w] && s.alive(w) && pick(w)) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// Common T group of every vertex in `vs`, or -1 when some vertex is outside T_one or two groups occur.
int common_group(const LevelDecomposition& d, const std::vector<VertexId>& vs) {
    int j = -2;
    for (VertexId t : vs) {
        int gt = d.group[t];
        if (gt < 0) return -1;
        if (j == -2) j = gt;
        if (gt != j) return -1;
    }
    return j == -2 ? -1 : j;
}

}  // namespace

CoreView core_view(const SolverState& s, const LevelDecomposition& d) {
    const WeightedGraph& g = s.base();
    CoreView cv;
    cv.in_core.assign(g.num_vertices(), 0);
    std::vector<VertexId> queue;
    for (VertexId u : d.s2)
        if (s.alive(u)) {
            cv.in_core[u] = 1;
            queue.push_back(u);
        }
    for (std::size_t k = 0; k < queue.size(); ++k)
        for (VertexId w : g.neighbors(queue[k]))
            if (s.alive(w) && !cv.in_core[w]) {
                cv.in_core[w] = 1;
                queue.push_back(w);
            }
    auto rest = components_of(s, [&](VertexId v) { return d.level[v] >= 0 && !cv.in_core[v]; });
    for (auto& c : rest)
        if (c.size() >= 2) cv.detached.push_back(std::move(c));
    return cv;
}

bool core_n4_empty(const LevelDecomposition& d, const CoreView& core) {
    for (int lvl : {4, 5})
        for (VertexId v : d.N[lvl])
            if (core.in_core[v]) return false;
    return true;
}

Edge cheaper_edge(const SolverState& s, const Edge& e1, const Edge& e2) {
    const WeightedGraph& g = s.base();
    auto key = [&](const Edge& e) {
        EdgeId id = g.edge_id(e);
        return std::make_tuple(s.overridden(id), g.weight(id), e);
    };
    return key(e2) < key(e1) ? e2 : e1;
}

std::optional<std::vector<N4Component>> classify_n4(const SolverState& s, const LevelDecomposition& d,
                                                    const CoreView& core) {
    const WeightedGraph& g = s.base();
    std::vector<N4Component> out;
    for (auto& vs : components_of(s, [&](VertexId v) { return d.level[v] == 4 && core.in_core[v]; })) {
        if (vs.size() > 3) return std::nullopt;
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (!g.adjacent(vs[i], vs[j])) return std::nullopt;
        N4Component c;
        c.kind = vs.size() == 3   ? N4Component::Kind::Triangle
                 : vs.size() == 2 ? N4Component::Kind::EdgeComp
                                  : N4Component::Kind::Singleton;
        for (VertexId v : vs) {
            c.n3.push_back(level_neighbors(g, d, v, 3));
            for (VertexId w : alive_level_neighbors(s, d, v, 5)) c.n5.push_back(w);
        }
        std::sort(c.n5.begin(), c.n5.end());
        c.n5.erase(std::unique(c.n5.begin(), c.n5.end()), c.n5.end());
        c.vertices = std::move(vs);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<SolverState> branch_n4_triangles(const SolverState& s, const LevelDecomposition& d,
                                             const std::vector<N4Component>& comps) {
    std::vector<const N4Component*> tris;
    std::vector<VertexId> all_n3;
    for (const auto& c : comps) {
        if (c.kind != N4Component::Kind::Triangle) continue;
        if (!c.n5.empty()) return {};
        tris.push_back(&c);
        for (const auto& a : c.n3) all_n3.insert(all_n3.end(), a.begin(), a.end());
    }
    if (tris.empty()) return {};
    int j = common_group(d, all_n3);
    if (j < 0) return {};

    std::vector<SolverState> out;
    const N4Component& first = *tris.front();
    for (int o = 0; o < 3; ++o) {
        if (first.n3[o].size() != 1) continue;
        VertexId t = first.n3[o][0];
        SolverState st = s;
        st.force(Edge(d.s2[j], t));
        for (const N4Component* tri : tris) {
            int hit = -1, hits = 0;
            for (int k = 0; k < 3; ++k)
                if (contains(tri->n3[k], t)) {
                    hit = k;
                    ++hits;
                }
            if (hits != 1) {
                st.mark_infeasible("triangle misses the chosen mate");
                break;
            }
            st.force(Edge(tri->vertices[(hit + 1) % 3], tri->vertices[(hit + 2) % 3]));
        }
        if (st.feasible()) out.push_back(std::move(st));
    }
    return out;
}

std::vector<SolverState> resolve_n4_edges(const SolverState& s, const LevelDecomposition& d,
                                          const std::vector<N4Component>& comps) {
    const WeightedGraph& g = s.base();
    SolverState st = s;
    bool acted = false;
    std::vector<const N4Component*> open;
    for (const auto& c : comps) {
        if (c.kind != N4Component::Kind::EdgeComp) continue;
        Edge ab(c.vertices[0], c.vertices[1]);
        if (c.n5.empty()) {
            st.force(ab);
            acted = true;
            continue;
        }
        for (VertexId apex : c.n5)
            if (!g.adjacent(apex, ab.u) || !g.adjacent(apex, ab.v)) return {};
        if (c.n5.size() > 1) return {};
        bool s3_contact = false;
        for (const auto& a : c.n3)
            for (VertexId t : a)
                if (d.group[t] < 0) s3_contact = true;
        if (s3_contact) {
            st.force(ab);
            acted = true;
            continue;
        }
        open.push_back(&c);
    }
    if (acted) return st.feasible() ? std::vector<SolverState>{std::move(st)} : std::vector<SolverState>{};
    if (open.empty()) return {};

    std::vector<VertexId> cands;
    for (const N4Component* c : open)
        for (const auto& a : c->n3) cands.insert(cands.end(), a.begin(), a.end());
    int j = common_group(d, cands);
    if (j < 0) return {};
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    std::vector<SolverState> out;
    for (VertexId t : cands) {
        SolverState br = s;
        br.force(Edge(d.s2[j], t));
        for (const N4Component* c : open) {
            VertexId a = c->vertices[0], b = c->vertices[1], apex = c->n5[0];
            bool in_a = contains(c->n3[0], t), in_b = contains(c->n3[1], t);
            if (in_a && in_b) br.mark_infeasible("A and B intersect");
            else if (in_a) br.force(Edge(b, apex));
            else if (in_b) br.force(Edge(a, apex));
            else br.force(Edge(a, b));
        }
        if (br.feasible()) out.push_back(std::move(br));
    }
    SolverState none = s;
    for (const N4Component* c : open) none.force(Edge(c->vertices[0], c->vertices[1]));
    if (none.feasible()) out.push_back(std::move(none));
    return out;
}

std::vector<ApexTriangle> n5_edge_triangles(const SolverState& s, const LevelDecomposition& d,
                                            const CoreView& core) {
    const WeightedGraph& g = s.base();
    std::vector<ApexTriangle> out;
    for (auto& h : components_of(s, [&](VertexId v) { return d.level[v] == 5 && core.in_core[v]; })) {
        if (h.size() != 2) continue;
        std::vector<VertexId> apex;
        for (VertexId w : g.neighbors(h[0]))
            if (s.alive(w) && d.level[w] == 4 && g.adjacent(w, h[1])) apex.push_back(w);
        if (apex.size() != 1) continue;
        ApexTriangle t;
        t.a = apex[0];
        Edge cheap = cheaper_edge(s, Edge(t.a, h[0]), Edge(t.a, h[1]));
        t.b = cheap.other(t.a);
        t.c = t.b == h[0] ? h[1] : h[0];
        t.n3 = level_neighbors(g, d, t.a, 3);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const ApexTriangle& x, const ApexTriangle& y) { return x.a < y.a; });
    return out;
}

std::vector<C4Link> find_c4_links(const SolverState& s, const LevelDecomposition& d,
                                  const std::vector<ApexTriangle>& tris) {
    const WeightedGraph& g = s.base();
    std::vector<C4Link> out;
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (std::size_t j = i + 1; j < tris.size(); ++j) {
            VertexId ai = tris[i].a, aj = tris[j].a;
            if (g.adjacent(ai, aj)) continue;
            bool found = false;
            for (VertexId di : tris[i].n3) {
                if (found) break;
                if (!g.adjacent(di, aj)) continue;
                for (VertexId dj : tris[j].n3) {
                    if (dj == di || !g.adjacent(dj, ai) || g.adjacent(di, dj)) continue;
                    if (d.group[di] >= 0 && d.group[di] == d.group[dj]) continue;
                    out.push_back({static_cast<int>(i), static_cast<int>(j), di, dj});
                    found = true;
                    break;
                }
            }
        }
    return out;
}

std::vector<SolverState> resolve_n5(const SolverState& s, const LevelDecomposition& d, const CoreView& core) {
    const WeightedGraph& g = s.base();
    auto comps = components_of(s, [&](VertexId v) { return d.level[v] == 5 && core.in_core[v]; });

    // component shape and the join condition towards N4
    for (const auto& h : comps) {
        if (h.size() > 2) return {};
        for (VertexId v : h)
            for (VertexId c : alive_level_neighbors(s, d, v, 4))
                for (VertexId w : h)
                    if (!g.adjacent(c, w)) return {};
    }

    SolverState st = s;
    bool acted = false;
    for (const auto& h : comps) {
        if (h.size() != 2) continue;
        auto c_list = alive_level_neighbors(s, d, h[0], 4);
        if (c_list.size() != 1) return {};
        VertexId c = c_list[0];
        Edge pick = cheaper_edge(s, Edge(c, h[0]), Edge(c, h[1]));
        bool forced = alive_level_neighbors(s, d, c, 5).size() > 2;
        std::vector<int> per_group(d.s2.size(), 0);
        for (VertexId t : level_neighbors(g, d, c, 3)) {
            if (d.group[t] < 0 || ++per_group[d.group[t]] >= 2) forced = true;
        }
        if (forced) {
            st.force(pick);
            acted = true;
        }
    }
    if (acted) return st.feasible() ? std::vector<SolverState>{std::move(st)} : std::vector<SolverState>{};

    auto tris = n5_edge_triangles(s, d, core);
    if (!tris.empty()) {
        std::vector<SolverState> out;
        auto links = find_c4_links(s, d, tris);
        if (!links.empty()) {
            std::vector<int> parent(tris.size());
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            for (const auto& l : links) parent[find(l.i)] = find(l.j);
            for (std::size_t i = 1; i < tris.size(); ++i)
                if (find(static_cast<int>(i)) != find(0)) return {};
            SolverState in_m = s, in_i = s;
            for (const auto& t : tris) {
                in_m.force(Edge(t.a, t.b));
                in_i.force(Edge(t.b, t.c));
            }
            if (in_m.feasible()) out.push_back(std::move(in_m));
            if (in_i.feasible()) out.push_back(std::move(in_i));
            return out;
        }
        if (tris.size() >= 2) {
            std::vector<VertexId> all;
            for (const auto& t : tris) all.insert(all.end(), t.n3.begin(), t.n3.end());
            if (common_group(d, all) < 0) return {};
        }
        std::set<std::vector<int>> seen_sets;
        std::vector<std::vector<int>> choices{{}};
        for (const auto& t : tris)
            for (VertexId cand : t.n3) {
                std::vector<int> sel;
                for (std::size_t i = 0; i < tris.size(); ++i)
                    if (contains(tris[i].n3, cand)) sel.push_back(static_cast<int>(i));
                if (seen_sets.insert(sel).second) choices.push_back(std::move(sel));
            }
        for (const auto& sel : choices) {
            SolverState br = s;
            for (std::size_t i = 0; i < tris.size(); ++i) {
                const ApexTriangle& t = tris[i];
                if (std::binary_search(sel.begin(), sel.end(), static_cast<int>(i))) {
                    br.force(Edge(t.b, t.c));
                    for (VertexId m : t.n3) {
                        if (d.group[m] < 0) br.mark_infeasible("S3 neighbor of an I vertex");
                        else br.force(mate_edge(d, m));
                    }
                } else {
                    br.force(Edge(t.a, t.b));
                }
            }
            if (br.feasible()) out.push_back(std::move(br));
        }
        return out;
    }

    // isolated N5 vertices with a single N4 neighbor: that neighbor takes its cheapest pendant
    std::set<VertexId> handled;
    for (const auto& h : comps) {
        if (h.size() != 1) continue;
        auto c_list = alive_level_neighbors(s, d, h[0], 4);
        if (c_list.size() != 1 || !handled.insert(c_list[0]).second) continue;
        VertexId v4 = c_list[0];
        std::optional<Edge> best;
        for (VertexId v5 : alive_level_neighbors(s, d, v4, 5)) {
            if (alive_level_neighbors(s, d, v5, 4).size() != 1 || !alive_level_neighbors(s, d, v5, 5).empty())
                continue;
            Edge e(v4, v5);
            best = best ? cheaper_edge(s, *best, e) : e;
        }
        if (!best) return {};
        st.force(*best);
        acted = true;
    }
    if (acted) return st.feasible() ? std::vector<SolverState>{std::move(st)} : std::vector<SolverState>{};

    for (VertexId v : d.N[5])
        if (core.in_core[v]) return {};

    for (VertexId w : d.N[4]) {
        if (!core.in_core[w]) continue;
        for (VertexId t : level_neighbors(g, d, w, 3)) {
            if (d.group[t] < 0) return {};
            st.force(mate_edge(d, t));
        }
    }
    return st.feasible() ? std::vector<SolverState>{std::move(st)} : std::vector<SolverState>{};
}

std::vector<SolverState> n4_stage_step(const SolverState& s, const LevelDecomposition& d) {
    CoreView core = core_view(s, d);
    auto comps = classify_n4(s, d, core);
    if (!comps) return {};
    auto has = [&](N4Component::Kind k) {
        return std::any_of(comps->begin(), comps->end(), [&](const N4Component& c) { return c.kind == k; });
    };
    if (has(N4Component::Kind::Triangle)) return branch_n4_triangles(s, d, *comps);
    if (has(N4Component::Kind::EdgeComp)) return resolve_n4_edges(s, d, *comps);
    return resolve_n5(s, d, core);
}

std::vector<SolverState> reduce_until_n4_empty(const SolverState& s, const LevelDecomposition& d, long cap,
                                               ReduceDiagnostics& diag) {
    std::vector<SolverState> done;
    std::vector<SolverState> stack{s};
    while (!stack.empty()) {
        SolverState cur = std::move(stack.back());
        stack.pop_back();
        if (!cur.feasible()) continue;
        if (core_n4_empty(d, core_view(cur, d))) {
            done.push_back(std::move(cur));
            continue;
        }
        if (++diag.states > cap) {
            diag.cap_exceeded = true;
            break;
        }
        auto next = n4_stage_step(cur, d);
        for (auto it = next.rbegin(); it != next.rend(); ++it) {
            if (it->m_acc().size() <= cur.m_acc().size()) {
                diag.stalled = true;
                continue;
            }
            stack.push_back(std::move(*it));
        }
    }
    return done;
}

}  // namespace dimp8
