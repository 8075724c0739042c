#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dimp8/graph.hpp"

namespace dimp8 {

class StateError : public std::logic_error {
public:
    enum class Kind { InfeasibleState, EdgeNotAlive };
    StateError(Kind k, const std::string& what) : std::logic_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Residual view over a shared base graph: alive vertices, Infinite weight overrides and the
/// accumulated forced matching. Copied by value when the solver branches.
///
/// An overridden edge is one that cannot belong to any d.i.m. extending m_acc (it lies on a C4
/// or at distance 1 from a forced edge). The solver never selects one, and forcing one makes the
/// state infeasible. Base weights that are Infinite stay selectable; they only make the total
/// Infinite.
class SolverState {
public:
    SolverState() = default;
    static SolverState fresh(const WeightedGraph& g);
    /// The state keeps a pointer to g.
    static SolverState fresh(const WeightedGraph&&) = delete;

    const WeightedGraph& base() const { return *base_; }

    bool feasible() const { return reason_.empty(); }
    const std::string& infeasible_reason() const { return reason_; }
    void mark_infeasible(std::string why) {
        if (reason_.empty()) reason_ = why.empty() ? "infeasible" : std::move(why);
    }

    bool alive(VertexId v) const { return alive_[v] != 0; }
    bool matched(VertexId v) const { return matched_[v] != 0; }
    bool overridden(EdgeId e) const { return overridden_[e] != 0; }
    /// Both endpoints alive.
    bool edge_alive(EdgeId e) const;
    Weight effective_weight(EdgeId e) const;

    const Matching& m_acc() const { return m_acc_; }
    std::vector<VertexId> alive_vertices() const;

    /// Reduction-Step in place. Returns false (and marks the state infeasible) when vw is
    /// overridden, an endpoint is no longer alive, or m_acc + vw is not an induced matching.
    bool reduce(const Edge& vw);
    /// reduce() that treats an edge already in m_acc as satisfied.
    bool force(const Edge& vw);
    bool in_m_acc(const Edge& vw) const;
    void override_edge(EdgeId e) { overridden_[e] = 1; }

private:
    const WeightedGraph* base_ = nullptr;
    std::vector<char> alive_;
    std::vector<char> matched_;
    std::vector<char> overridden_;
    Matching m_acc_;
    std::string reason_;
};

/// Induced subgraph on the alive vertices with overridden edges weighted Infinite.
/// Throws StateError(InfeasibleState).
WeightedGraph residual_graph(const SolverState& s);

/// Value-returning Reduction-Step. Throws StateError(EdgeNotAlive) when vw is not a live edge;
/// an induced-matching violation yields an infeasible state.
SolverState apply_reduction_step(const SolverState& s, const Edge& vw);

/// Marks every alive edge on an induced C4 of the residual graph.
SolverState mark_c4_edges_infinite(const SolverState& s);
/// In-place variant restricted to a vertex set (the residual component).
void mark_c4_edges_in(SolverState& s, const std::vector<VertexId>& region);

struct ForcedSeed {
    std::vector<Edge> f1;  // diamond mid-edges
    std::vector<Edge> f2;  // butterfly peripheral edges
};

struct SeedReduced {
    SolverState state;
};
struct SeedNoDim {};
struct SeedDone {
    Matching matching;
    Weight weight;
};
using SeedOutcome = std::variant<SeedReduced, SeedNoDim, SeedDone>;

ForcedSeed forced_seed(const WeightedGraph& g);
/// Global forced-edge seeding on the whole graph.
SeedOutcome seed_forced_edges(const WeightedGraph& g);
/// Seeding restricted to a connected set of alive vertices of s. Done carries only the
/// matching inside the region.
SeedOutcome seed_forced_edges_in(const SolverState& s, const std::vector<VertexId>& region);

}  // namespace dimp8
