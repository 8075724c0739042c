#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dimp8 {

using VertexId = int;
using EdgeId = int;

/// Edge weight: a nonnegative integer or the absorbing Infinite element.
class Weight {
public:
    constexpr Weight() = default;
    constexpr explicit Weight(std::uint64_t v) : value_(v) {}

    static constexpr Weight infinite() {
        Weight w;
        w.infinite_ = true;
        return w;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    std::uint64_t value() const {
        if (infinite_) throw std::logic_error("value() of an infinite weight");
        return value_;
    }

    /// Saturating: Infinite absorbs, and overflow of the finite range also yields Infinite.
    friend constexpr Weight operator+(Weight a, Weight b) {
        if (a.infinite_ || b.infinite_) return infinite();
        std::uint64_t s = a.value_ + b.value_;
        if (s < a.value_) return infinite();
        return Weight(s);
    }
    Weight& operator+=(Weight o) { return *this = *this + o; }

    friend constexpr bool operator==(Weight a, Weight b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Weight a, Weight b) {
        if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        if (a.infinite_) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

/// Undirected edge stored as the 2-set {u, v} with u < v.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    constexpr Edge() = default;
    constexpr Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    constexpr bool contains(VertexId w) const { return u == w || v == w; }
    constexpr bool intersects(const Edge& o) const { return contains(o.u) || contains(o.v); }
    constexpr VertexId other(VertexId w) const { return w == u ? v : u; }

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

using Matching = std::vector<Edge>;

/// Sorts and deduplicates a matching into canonical form.
Matching canonical(Matching m);

struct WeightedEdge {
    VertexId u;
    VertexId v;
    Weight w;
};

class GraphError : public std::invalid_argument {
public:
    enum class Kind { DuplicateEdge, SelfLoop, VertexOutOfRange, EdgeNotPresent };
    GraphError(Kind k, const std::string& what) : std::invalid_argument(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline constexpr int kBitMatrixLimit = 8192;

/// Immutable simple undirected graph with dense vertex ids and per-edge weights.
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Throws GraphError on loops, duplicate pairs, or out-of-range endpoints.
    static WeightedGraph build(int n, const std::vector<WeightedEdge>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<VertexId>& neighbors(VertexId v) const;
    /// Edge ids parallel to neighbors(v).
    const std::vector<EdgeId>& incident(VertexId v) const;
    int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

    bool adjacent(VertexId a, VertexId b) const;
    /// Row v of the adjacency bit matrix (bit_words() words), or nullptr above kBitMatrixLimit vertices.
    const std::uint64_t* adjacency_bits(VertexId v) const;
    int bit_words() const { return words_; }
    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
    /// Throws EdgeNotPresent.
    EdgeId edge_id(const Edge& e) const;

    const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }
    Weight weight(EdgeId id) const { return weights_.at(static_cast<std::size_t>(id)); }
    Weight weight(const Edge& e) const { return weight(edge_id(e)); }
    /// Edges in canonical (lexicographic) order; the index is the EdgeId.
    const std::vector<Edge>& edges() const { return edges_; }

    void check_vertex(VertexId v) const;

private:
    int n_ = 0;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<std::vector<EdgeId>> inc_;
    std::vector<Edge> edges_;
    std::vector<Weight> weights_;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct EdgeNeighborhood {
    std::vector<VertexId> open;
    std::vector<VertexId> closed;
};

/// N(uv) and N[uv], both sorted.
EdgeNeighborhood edge_neighborhood(const WeightedGraph& g, const Edge& e);

struct InducedSubgraph {
    WeightedGraph graph;
    std::vector<VertexId> old_to_new;  // -1 for dropped vertices
    std::vector<VertexId> new_to_old;
};

InducedSubgraph induced_subgraph(const WeightedGraph& g, const std::vector<VertexId>& keep);

/// Components ordered by smallest vertex; each component sorted.
std::vector<std::vector<VertexId>> connected_components(const WeightedGraph& g);

}  // namespace dimp8
