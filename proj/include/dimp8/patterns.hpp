#pragma once

#include <optional>
#include <vector>

#include "dimp8/graph.hpp"

namespace dimp8 {

enum class PatternKind { K4, Diamond, Butterfly, C4, P8, P3 };

/// Vertices listed in the pattern's role order:
///   Diamond   a,b,c,d with mid-edge bc
///   Butterfly a,b,c,d,e with center c and peripheral edges ab, de
///   C4        cycle order
///   P8 / P3   path order
struct PatternWitness {
    PatternKind kind;
    std::vector<VertexId> vertices;
};

/// True if the witness vertices induce exactly the named pattern in g.
bool validate_witness(const WeightedGraph& g, const PatternWitness& w);

std::vector<Edge> diamond_mid_edges(const WeightedGraph& g);
std::vector<Edge> butterfly_peripheral_edges(const WeightedGraph& g);
/// Edges lying on at least one induced C4.
std::vector<Edge> c4_edges(const WeightedGraph& g);
std::optional<PatternWitness> find_k4(const WeightedGraph& g);
std::optional<PatternWitness> find_induced_p8(const WeightedGraph& g);
/// Induced path on `length` vertices; find_induced_p8 is the length-8 case.
std::optional<PatternWitness> find_induced_path(const WeightedGraph& g, int length);
/// Some r adjacent to exactly one endpoint of xy. Throws EdgeNotPresent.
std::optional<VertexId> p3_witness(const WeightedGraph& g, const Edge& xy);

}  // namespace dimp8
