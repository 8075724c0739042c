#pragma once

#include <optional>
#include <vector>

#include "dimp8/forced_reduce.hpp"
#include "dimp8/levels.hpp"

namespace dimp8 {

/// Split of the alive part of the xy component. The core is the union of residual components that
/// still hold an alive S2 vertex; every other component with an edge is detached and can be solved
/// on its own because no edge joins it to the core.
struct CoreView {
    std::vector<char> in_core;                     // per vertex
    std::vector<std::vector<VertexId>> detached;   // sorted, each with at least one alive edge
};

CoreView core_view(const SolverState& s, const LevelDecomposition& d);

struct N4Component {
    enum class Kind { Triangle, EdgeComp, Singleton };
    Kind kind = Kind::Singleton;
    std::vector<VertexId> vertices;          // sorted
    std::vector<std::vector<VertexId>> n3;   // parallel to vertices: N(v) ∩ N3 (level labels, alive or not)
    std::vector<VertexId> n5;                // alive N5 neighbors of the component
};

/// Triangle spanning the N4/N5 boundary. With edge_in_n4 the base a,b lies in N4 and the apex
/// c in N5; otherwise a is the N4 vertex and b,c form an N5 edge with ab the cheaper of ab, ac.
struct ApexTriangle {
    VertexId a = -1, b = -1, c = -1;
    bool edge_in_n4 = false;
    std::vector<VertexId> n3;  // N3 neighbors of the N4 part
};

/// Two N5-edge triangles whose N3/N4 vertices induce the C4 d_i - a_j - d_j - a_i.
struct C4Link {
    int i = -1, j = -1;
    VertexId d_i = -1, d_j = -1;
};

/// The edge an exchange argument allows: non-overridden first, then lower weight, then the
/// canonically smaller edge.
Edge cheaper_edge(const SolverState& s, const Edge& e1, const Edge& e2);

/// Components of the alive core part of N4. nullopt when one of them is not a clique of size
/// at most 3 (no d.i.m. contains xy).
std::optional<std::vector<N4Component>> classify_n4(const SolverState& s, const LevelDecomposition& d,
                                                    const CoreView& core);

/// Three-way branch on the M-edge of the first N4 triangle. Infeasible branches are dropped.
std::vector<SolverState> branch_n4_triangles(const SolverState& s, const LevelDecomposition& d,
                                             const std::vector<N4Component>& comps);
/// Edge components of a triangle-free N4.
std::vector<SolverState> resolve_n4_edges(const SolverState& s, const LevelDecomposition& d,
                                          const std::vector<N4Component>& comps);
/// N5 components once N4 is independent, ending with the rule that clears N4.
std::vector<SolverState> resolve_n5(const SolverState& s, const LevelDecomposition& d, const CoreView& core);

/// N4 vertex a with an alive N5 edge bc in its neighborhood, one entry per N5 edge component.
std::vector<ApexTriangle> n5_edge_triangles(const SolverState& s, const LevelDecomposition& d,
                                            const CoreView& core);
std::vector<C4Link> find_c4_links(const SolverState& s, const LevelDecomposition& d,
                                  const std::vector<ApexTriangle>& tris);

/// One stage of the N4 != ∅ case: the first applicable of triangles, edges, N5 and the clearing
/// rule. Every returned state carries more forced edges than s.
std::vector<SolverState> n4_stage_step(const SolverState& s, const LevelDecomposition& d);

/// True when the core holds no alive N4 or N5 vertex.
bool core_n4_empty(const LevelDecomposition& d, const CoreView& core);

struct ReduceDiagnostics {
    long states = 0;
    bool cap_exceeded = false;
    bool stalled = false;
};

/// Drives the N4 stages from a state with xy and the level rules applied until every surviving
/// branch has an empty core N4. Stops early (setting cap_exceeded) after `cap` processed states.
std::vector<SolverState> reduce_until_n4_empty(const SolverState& s, const LevelDecomposition& d, long cap,
                                               ReduceDiagnostics& diag);

}  // namespace dimp8
