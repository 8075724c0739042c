#pragma once

#include <optional>
#include <vector>

#include "dimp8/forced_reduce.hpp"
#include "dimp8/graph.hpp"

namespace dimp8 {

struct SolveOptions {
    long branch_cap = 0;    // states per N4 reduction; 0 means 10 n^3
    int threads = 1;        // workers for the top-level xy sweep
    bool p8_check = false;  // look for an induced P8 first and report it
};

enum class SolveStatus { DimFound, NoDim, NoFiniteDim };

struct SolveDiagnostics {
    long branches = 0;
    long xy_tried = 0;
    long millis = 0;
    bool incomplete = false;  // an induced P8 was met or the branch cap was hit
    std::optional<std::vector<VertexId>> p8_witness;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::NoDim;
    Matching matching;  // canonical; empty unless DimFound
    Weight weight;      // Infinite for NoFiniteDim
    SolveDiagnostics diagnostics;
};

struct RegionResult {
    Matching added;  // edges chosen inside the region, canonical
    Weight weight;
};

/// Minimum d.i.m. containing xy on a fresh state of a connected graph. nullopt when there is none
/// or xy has no P3 witness.
std::optional<RegionResult> dim_with_xy(const WeightedGraph& g, const Edge& xy, const SolveOptions& opts = {});

SolveOutcome solve_dim(const WeightedGraph& g, const SolveOptions& opts = {});
/// solve_dim with the induced-P8 certificate check switched on.
SolveOutcome solve_dim_checked(const WeightedGraph& g, SolveOptions opts = {});

}  // namespace dimp8
