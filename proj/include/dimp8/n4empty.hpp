#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dimp8/forced_reduce.hpp"
#include "dimp8/levels.hpp"
#include "dimp8/n4_reducer.hpp"

namespace dimp8 {

class WNotInTOne : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// T_one as it stands in a residual state: alive core vertices of N3 whose unique S2 neighbor is
/// still alive. Everything else alive in the core at level 3 plays the role of S3.
struct TOneView {
    std::vector<int> group;                 // per vertex: i for T_i, else -1
    std::vector<std::vector<VertexId>> T;   // indexed like d.s2; empty for dead u_i
    std::vector<VertexId> s3;
    std::vector<char> in_core;
};

TOneView t_one_view(const SolverState& s, const LevelDecomposition& d);

enum Color : signed char { Uncolored = 0, Black = 1, White = 2 };

struct ExtendResult {
    bool conflict = false;                // no d.i.m. with W ⊆ V(M)
    std::vector<signed char> color;       // per vertex, includes the initial coloring
    std::vector<VertexId> black, white, uncolored;  // T_one ∩ W'
    std::vector<VertexId> s2_colored;
};

/// Black/white propagation from W. `initial` (per vertex, may be empty) seeds earlier decisions.
/// A black vertex whose mate edge is overridden is a conflict. Throws WNotInTOne.
ExtendResult extend_w_in_m(const SolverState& s, const LevelDecomposition& d, const TOneView& v,
                           const std::vector<VertexId>& W, const std::vector<signed char>& initial = {});

/// Forces u_i t for every edge s-t with s in S3 and t in T_i, repeated until S3 is isolated in
/// N3. Two S3 vertices adjacent to each other make the state infeasible.
SolverState force_s3_contacts(const SolverState& s, const LevelDecomposition& d);

struct CoreChoice {
    Matching mates;  // the chosen u_i t edges
    Weight weight;   // of mates
};

std::optional<CoreChoice> solve_disjoint_ts(const SolverState& s, const LevelDecomposition& d, const TOneView& v);

struct ZGraph {
    enum class Shape { Singleton, EdgeType, StarType };
    struct Component {
        Shape shape = Shape::Singleton;
        int center = -1;           // group index; for EdgeType the smaller one
        std::vector<int> leaves;   // group indices
    };
    std::vector<int> nodes;                  // group indices
    std::vector<std::vector<int>> adj;       // parallel to nodes, group indices
    std::vector<Component> components;
};

/// Z over the groups other than those of t1, t2, restricted to the non-neighborhood of t1, t2.
/// nullopt when a component is not a singleton, an edge or a star.
std::optional<ZGraph> build_z_graph(const SolverState& s, const LevelDecomposition& d, const TOneView& v,
                                    VertexId t1, VertexId t2);

/// Completes one uncolored component Q (S2 and T vertices) with q black, on top of `color`.
std::optional<CoreChoice> solve_star_component(const SolverState& s, const LevelDecomposition& d,
                                               const TOneView& v, const std::vector<signed char>& color,
                                               const std::vector<VertexId>& Q, VertexId q);

std::optional<CoreChoice> solve_with_t1t2_edge(const SolverState& s, const LevelDecomposition& d, const TOneView& v);

struct CoreSolution {
    SolverState state;   // after S3 contacts were forced
    Matching matching;   // state.m_acc() plus the mates
};

/// Finishes a branch whose core N4 is empty. Every returned matching is induced and dominates
/// each edge touching the core exactly once.
std::optional<CoreSolution> solve_n4_empty(const SolverState& s, const LevelDecomposition& d);

}  // namespace dimp8
