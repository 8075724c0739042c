#include "dimp8/graph.hpp"

#include <algorithm>
#include <numeric>

namespace dimp8 {

Matching canonical(Matching m) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

WeightedGraph WeightedGraph::build(int n, const std::vector<WeightedEdge>& input) {
    if (n < 0) throw GraphError(GraphError::Kind::VertexOutOfRange, "negative vertex count");
    WeightedGraph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    g.inc_.assign(static_cast<std::size_t>(n), {});

    std::vector<std::pair<Edge, Weight>> es;
    es.reserve(input.size());
    for (const auto& we : input) {
        if (we.u < 0 || we.u >= n || we.v < 0 || we.v >= n)
            throw GraphError(GraphError::Kind::VertexOutOfRange,
                             "edge (" + std::to_string(we.u) + "," + std::to_string(we.v) + ") out of range");
        if (we.u == we.v)
            throw GraphError(GraphError::Kind::SelfLoop, "self loop at " + std::to_string(we.u));
        es.emplace_back(Edge(we.u, we.v), we.w);
    }
    std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < es.size(); ++i)
        if (es[i].first == es[i - 1].first)
            throw GraphError(GraphError::Kind::DuplicateEdge, "duplicate edge (" + std::to_string(es[i].first.u) +
                                                                  "," + std::to_string(es[i].first.v) + ")");

    for (const auto& [e, w] : es) {
        const auto id = static_cast<EdgeId>(g.edges_.size());
        g.edges_.push_back(e);
        g.weights_.push_back(w);
        g.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        g.inc_[static_cast<std::size_t>(e.u)].push_back(id);
        g.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
        g.inc_[static_cast<std::size_t>(e.v)].push_back(id);
    }
    // Edges are inserted in lexicographic order, so each list for u is sorted except
    // where entries from the "v side" interleave; sort the pairs jointly.
    for (int v = 0; v < n; ++v) {
        auto& a = g.adj_[static_cast<std::size_t>(v)];
        auto& ids = g.inc_[static_cast<std::size_t>(v)];
        std::vector<std::size_t> order(a.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x] < a[y]; });
        std::vector<VertexId> a2;
        std::vector<EdgeId> i2;
        for (auto k : order) {
            a2.push_back(a[k]);
            i2.push_back(ids[k]);
        }
        a = std::move(a2);
        ids = std::move(i2);
    }
    if (n <= kBitMatrixLimit) {
        g.words_ = (n + 63) / 64;
        g.bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(g.words_), 0);
        for (const Edge& e : g.edges_) {
            g.bits_[static_cast<std::size_t>(e.u) * g.words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
            g.bits_[static_cast<std::size_t>(e.v) * g.words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
        }
    }
    return g;
}

void WeightedGraph::check_vertex(VertexId v) const {
    if (v < 0 || v >= n_)
        throw GraphError(GraphError::Kind::VertexOutOfRange, "vertex " + std::to_string(v) + " out of range");
}

const std::vector<VertexId>& WeightedGraph::neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
}

const std::vector<EdgeId>& WeightedGraph::incident(VertexId v) const {
    check_vertex(v);
    return inc_[static_cast<std::size_t>(v)];
}

std::optional<EdgeId> WeightedGraph::find_edge(VertexId a, VertexId b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || a == b) return std::nullopt;
    const auto& na = adj_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it == na.end() || *it != b) return std::nullopt;
    return inc_[static_cast<std::size_t>(a)][static_cast<std::size_t>(it - na.begin())];
}

bool WeightedGraph::adjacent(VertexId a, VertexId b) const {
    if (bits_.empty()) return find_edge(a, b).has_value();
    if (a < 0 || a >= n_ || b < 0 || b >= n_) return false;
    return (bits_[static_cast<std::size_t>(a) * words_ + b / 64] >> (b % 64)) & 1;
}

const std::uint64_t* WeightedGraph::adjacency_bits(VertexId v) const {
    check_vertex(v);
    return bits_.empty() ? nullptr : bits_.data() + static_cast<std::size_t>(v) * words_;
}

EdgeId WeightedGraph::edge_id(const Edge& e) const {
    auto id = find_edge(e.u, e.v);
    if (!id)
        throw GraphError(GraphError::Kind::EdgeNotPresent,
                         "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not present");
    return *id;
}

EdgeNeighborhood edge_neighborhood(const WeightedGraph& g, const Edge& e) {
    g.edge_id(e);
    EdgeNeighborhood r;
    std::set_union(g.neighbors(e.u).begin(), g.neighbors(e.u).end(), g.neighbors(e.v).begin(),
                   g.neighbors(e.v).end(), std::back_inserter(r.closed));
    for (VertexId w : r.closed)
        if (w != e.u && w != e.v) r.open.push_back(w);
    r.closed = r.open;
    r.closed.push_back(e.u);
    r.closed.push_back(e.v);
    std::sort(r.closed.begin(), r.closed.end());
    return r;
}

InducedSubgraph induced_subgraph(const WeightedGraph& g, const std::vector<VertexId>& keep) {
    InducedSubgraph s;
    s.old_to_new.assign(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<VertexId> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (VertexId v : sorted) {
        g.check_vertex(v);
        s.old_to_new[static_cast<std::size_t>(v)] = static_cast<VertexId>(s.new_to_old.size());
        s.new_to_old.push_back(v);
    }
    std::vector<WeightedEdge> es;
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
        const Edge& e = g.edge(id);
        VertexId a = s.old_to_new[static_cast<std::size_t>(e.u)];
        VertexId b = s.old_to_new[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) es.push_back({a, b, g.weight(id)});
    }
    s.graph = WeightedGraph::build(static_cast<int>(s.new_to_old.size()), es);
    return s;
}

std::vector<std::vector<VertexId>> connected_components(const WeightedGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<VertexId>> out;
    for (VertexId s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        const int c = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<VertexId> stack{s};
        comp[static_cast<std::size_t>(s)] = c;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (VertexId w : g.neighbors(v))
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = c;
                    stack.push_back(w);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

}  // namespace dimp8
