#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dimp8/graph.hpp"

namespace dimp8 {

/// Per-edge domination counts of a candidate matching. An M-edge counts itself.
struct DominationReport {
    std::vector<int> count;  // indexed by EdgeId
    bool induced_matching = false;
    bool is_dim = false;

    /// First edge (canonical order) whose count differs from 1.
    std::optional<EdgeId> first_violation() const;
};

/// Throws GraphError(EdgeNotPresent) for foreign edges.
bool is_induced_matching(const WeightedGraph& g, const Matching& m);
DominationReport check_dim(const WeightedGraph& g, const Matching& m);
Weight matching_weight(const WeightedGraph& g, const Matching& m);
/// m is an induced matching and every edge with an endpoint in `mask` is hit exactly once.
bool is_dim_on(const WeightedGraph& g, const Matching& m, const std::vector<char>& mask);

/// Tie-break order among equal weights: lexicographically smallest canonical edge list.
bool better_solution(Weight wa, const Matching& a, Weight wb, const Matching& b);

class OracleTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    bool found = false;  // false means no d.i.m. exists
    Matching matching;   // canonical
    Weight weight;
};

inline constexpr int kDefaultOracleLimit = 26;

/// Exhaustive minimum-weight d.i.m. by backtracking over edges in canonical order.
/// Throws OracleTooLarge when m > limit.
OracleResult oracle_min_dim(const WeightedGraph& g, int limit = kDefaultOracleLimit);

/// Every d.i.m. of g (test helper; same search without weight pruning).
std::vector<Matching> enumerate_dims(const WeightedGraph& g, int limit = kDefaultOracleLimit);

}  // namespace dimp8
