#include "dimp8/forced_reduce.hpp"

#include <algorithm>

#include "dimp8/dim_check.hpp"
#include "dimp8/patterns.hpp"

namespace dimp8 {

SolverState SolverState::fresh(const WeightedGraph& g) {
    SolverState s;
    s.base_ = &g;
    s.alive_.assign(g.num_vertices(), 1);
    s.matched_.assign(g.num_vertices(), 0);
    s.overridden_.assign(g.num_edges(), 0);
    return s;
}

bool SolverState::edge_alive(EdgeId e) const {
    const Edge& ed = base_->edge(e);
    return alive_[ed.u] && alive_[ed.v];
}

Weight SolverState::effective_weight(EdgeId e) const {
    return overridden_[e] ? Weight::infinite() : base_->weight(e);
}

std::vector<VertexId> SolverState::alive_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < static_cast<VertexId>(alive_.size()); ++v)
        if (alive_[v]) out.push_back(v);
    return out;
}

bool SolverState::reduce(const Edge& vw) {
    if (!feasible()) return false;
    auto id = base_->find_edge(vw.u, vw.v);
    if (!id) {
        mark_infeasible("forced pair is not an edge");
        return false;
    }
    if (!alive_[vw.u] || !alive_[vw.v]) {
        mark_infeasible("forced edge no longer alive");
        return false;
    }
    if (overridden_[*id]) {
        mark_infeasible("forced edge has infinite override");
        return false;
    }
    for (VertexId z : {vw.u, vw.v})
        for (VertexId q : base_->neighbors(z))
            if (matched_[q]) {
                mark_infeasible("forced edge breaks the induced matching");
                return false;
            }
    // edges at distance exactly 1 from vw in the residual graph, before deletion
    for (VertexId z : {vw.u, vw.v}) {
        const auto& nz = base_->neighbors(z);
        for (VertexId a : nz) {
            if (!alive_[a] || a == vw.u || a == vw.v) continue;
            const auto& na = base_->neighbors(a);
            const auto& ia = base_->incident(a);
            for (std::size_t k = 0; k < na.size(); ++k)
                if (alive_[na[k]] && na[k] != vw.u && na[k] != vw.v) overridden_[ia[k]] = 1;
        }
    }
    alive_[vw.u] = alive_[vw.v] = 0;
    matched_[vw.u] = matched_[vw.v] = 1;
    m_acc_.insert(std::upper_bound(m_acc_.begin(), m_acc_.end(), vw), vw);
    return true;
}

bool SolverState::in_m_acc(const Edge& vw) const { return std::binary_search(m_acc_.begin(), m_acc_.end(), vw); }

bool SolverState::force(const Edge& vw) {
    if (!feasible()) return false;
    if (in_m_acc(vw)) return true;
    return reduce(vw);
}

WeightedGraph residual_graph(const SolverState& s) {
    if (!s.feasible()) throw StateError(StateError::Kind::InfeasibleState, s.infeasible_reason());
    const WeightedGraph& g = s.base();
    std::vector<VertexId> map(g.num_vertices(), -1);
    int n = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (s.alive(v)) map[v] = n++;
    std::vector<WeightedEdge> es;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (s.edge_alive(e)) es.push_back({map[g.edge(e).u], map[g.edge(e).v], s.effective_weight(e)});
    return WeightedGraph::build(n, es);
}

SolverState apply_reduction_step(const SolverState& s, const Edge& vw) {
    if (!s.feasible()) throw StateError(StateError::Kind::InfeasibleState, s.infeasible_reason());
    auto id = s.base().find_edge(vw.u, vw.v);
    if (!id || !s.edge_alive(*id))
        throw StateError(StateError::Kind::EdgeNotAlive,
                         "edge (" + std::to_string(vw.u) + "," + std::to_string(vw.v) + ") is not alive");
    SolverState out = s;
    out.reduce(vw);
    return out;
}

void mark_c4_edges_in(SolverState& s, const std::vector<VertexId>& region) {
    InducedSubgraph sub = induced_subgraph(s.base(), region);
    for (const Edge& e : c4_edges(sub.graph))
        s.override_edge(s.base().edge_id(Edge(sub.new_to_old[e.u], sub.new_to_old[e.v])));
}

SolverState mark_c4_edges_infinite(const SolverState& s) {
    if (!s.feasible()) throw StateError(StateError::Kind::InfeasibleState, s.infeasible_reason());
    SolverState out = s;
    mark_c4_edges_in(out, s.alive_vertices());
    return out;
}

ForcedSeed forced_seed(const WeightedGraph& g) { return {diamond_mid_edges(g), butterfly_peripheral_edges(g)}; }

SeedOutcome seed_forced_edges_in(const SolverState& s, const std::vector<VertexId>& region) {
    InducedSubgraph sub = induced_subgraph(s.base(), region);
    ForcedSeed seed = forced_seed(sub.graph);
    Matching local = seed.f1;
    local.insert(local.end(), seed.f2.begin(), seed.f2.end());
    local = canonical(std::move(local));
    if (local.empty()) return SeedReduced{s};
    if (!is_induced_matching(sub.graph, local)) return SeedNoDim{};

    Matching global;
    for (const Edge& e : local) global.emplace_back(sub.new_to_old[e.u], sub.new_to_old[e.v]);
    global = canonical(std::move(global));
    for (const Edge& e : global)
        if (s.overridden(s.base().edge_id(e))) return SeedNoDim{};

    if (check_dim(sub.graph, local).is_dim) {
        Weight w(0);
        for (const Edge& e : global) w += s.base().weight(e);
        return SeedDone{global, w};
    }
    SolverState out = s;
    for (const Edge& e : global)
        if (!out.reduce(e)) return SeedNoDim{};
    return SeedReduced{std::move(out)};
}

SeedOutcome seed_forced_edges(const WeightedGraph& g) {
    SolverState s = SolverState::fresh(g);
    std::vector<VertexId> all(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) all[v] = v;
    return seed_forced_edges_in(s, all);
}

}  // namespace dimp8
