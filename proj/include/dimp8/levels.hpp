#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "dimp8/forced_reduce.hpp"
#include "dimp8/graph.hpp"

namespace dimp8 {

/// Distance levels of the residual graph around a candidate M-edge xy.
///
/// Levels are BFS distances from {x, y} over the alive vertices plus x and y themselves, so the
/// decomposition can be taken before or after xy has been reduced into the state.
struct LevelDecomposition {
    Edge xy;
    VertexId r = -1;
    std::vector<int> level;                   // per vertex: 0 for x,y; 1..5; -1 otherwise
    std::array<std::vector<VertexId>, 6> N;   // N[1]..N[5]; N[0] = {x, y}
    std::vector<Edge> m2;                     // edges inside N2
    std::vector<VertexId> s2;                 // u_1..u_k, ascending
    std::vector<int> s2_index;                // per vertex: i if vertex is u_i, else -1
    std::vector<std::vector<VertexId>> T;     // T[i]: N3 vertices whose only S2 neighbor is u_i
    std::vector<int> group;                   // per vertex: i if in T_i, else -1
    std::vector<VertexId> s3;                 // N3 \ T_one
    std::vector<VertexId> unreached;          // alive vertices outside the component of xy

    bool in_level(VertexId v, int i) const { return level[v] == i; }
    bool n4_empty() const { return N[4].empty(); }
};

struct DecomposeInfeasible {
    std::string reason;
};
struct DecomposeNotP8Free {
    VertexId far_vertex;
};
using DecomposeResult = std::variant<LevelDecomposition, DecomposeInfeasible, DecomposeNotP8Free>;

/// Requires x, y both alive or xy in m_acc (throws StateError(EdgeNotAlive) otherwise), and r
/// alive and adjacent to exactly one of x, y (throws std::invalid_argument otherwise).
DecomposeResult decompose(const SolverState& s, const Edge& xy, VertexId r);

/// In-place forcing rules. Each returns true when it found at least one forced edge; on conflict
/// the state is left infeasible (check s.feasible()).
bool force_m2_in_place(SolverState& s, const LevelDecomposition& d);
bool force_n3n4_triangles_in_place(SolverState& s, const LevelDecomposition& d);
bool force_double_tj_contact_in_place(SolverState& s, const LevelDecomposition& d);

/// All three rules in order. Level labels are fixed, so one pass reaches the fixpoint; forcing
/// an edge already in m_acc is a no-op. Returns s.feasible().
bool apply_level_rules(SolverState& s, const LevelDecomposition& d);

SolverState force_m2(const SolverState& s, const LevelDecomposition& d);
SolverState force_n3n4_triangles(const SolverState& s, const LevelDecomposition& d);
SolverState force_double_tj_contact(const SolverState& s, const LevelDecomposition& d);

}  // namespace dimp8
