#include "dimp8/patterns.hpp"

#include <algorithm>
#include <bit>

namespace dimp8 {

namespace {

std::vector<VertexId> common_neighbors(const WeightedGraph& g, VertexId a, VertexId b) {
    std::vector<VertexId> out;
    std::set_intersection(g.neighbors(a).begin(), g.neighbors(a).end(), g.neighbors(b).begin(),
                          g.neighbors(b).end(), std::back_inserter(out));
    return out;
}

int common_bits(const WeightedGraph& g, const Edge& e, std::vector<std::uint64_t>& out) {
    const std::uint64_t *bu = g.adjacency_bits(e.u), *bv = g.adjacency_bits(e.v);
    int size = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = bu[k] & bv[k];
        size += std::popcount(out[k]);
    }
    return size;
}

bool bit(const std::vector<std::uint64_t>& set, VertexId v) { return (set[v / 64] >> (v % 64)) & 1; }

int overlap(const std::uint64_t* row, const std::vector<std::uint64_t>& set) {
    int size = 0;
    for (std::size_t k = 0; k < set.size(); ++k) size += std::popcount(row[k] & set[k]);
    return size;
}

// Expected edges of each pattern, as index pairs into the witness vertex list.
std::vector<std::pair<int, int>> pattern_edges(PatternKind k, int size) {
    switch (k) {
        case PatternKind::K4: return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        case PatternKind::Diamond: return {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
        case PatternKind::Butterfly: return {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}};
        case PatternKind::C4: return {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
        case PatternKind::P8:
        case PatternKind::P3: {
            std::vector<std::pair<int, int>> es;
            for (int i = 0; i + 1 < size; ++i) es.emplace_back(i, i + 1);
            return es;
        }
    }
    return {};
}

int pattern_size(PatternKind k) {
    switch (k) {
        case PatternKind::K4:
        case PatternKind::Diamond:
        case PatternKind::C4: return 4;
        case PatternKind::Butterfly: return 5;
        case PatternKind::P8: return 8;
        case PatternKind::P3: return 3;
    }
    return 0;
}

}  // namespace

bool validate_witness(const WeightedGraph& g, const PatternWitness& w) {
    const int s = static_cast<int>(w.vertices.size());
    if (s != pattern_size(w.kind)) return false;
    for (VertexId v : w.vertices)
        if (v < 0 || v >= g.num_vertices()) return false;
    auto sorted = w.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    auto expected = pattern_edges(w.kind, s);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            bool want = std::find(expected.begin(), expected.end(), std::make_pair(i, j)) != expected.end();
            if (g.adjacent(w.vertices[i], w.vertices[j]) != want) return false;
        }
    return true;
}

std::vector<Edge> diamond_mid_edges(const WeightedGraph& g) {
    std::vector<Edge> out;
    if (g.num_vertices() > 0 && g.adjacency_bits(0)) {
        std::vector<std::uint64_t> common(g.bit_words());
        for (const Edge& e : g.edges()) {
            int size = common_bits(g, e, common);
            for (VertexId c : g.neighbors(e.u))
                if (bit(common, c) && overlap(g.adjacency_bits(c), common) < size - 1) {
                    out.push_back(e);
                    break;
                }
        }
        return out;
    }
    for (const Edge& e : g.edges()) {
        auto c = common_neighbors(g, e.u, e.v);
        bool found = false;
        for (std::size_t i = 0; i < c.size() && !found; ++i)
            for (std::size_t j = i + 1; j < c.size() && !found; ++j)
                if (!g.adjacent(c[i], c[j])) found = true;
        if (found) out.push_back(e);
    }
    return out;
}

std::vector<Edge> butterfly_peripheral_edges(const WeightedGraph& g) {
    std::vector<Edge> out;
    if (g.num_vertices() > 0 && g.adjacency_bits(0)) {
        const int words = g.bit_words();
        std::vector<std::uint64_t> rest(words);
        for (const Edge& e : g.edges()) {
            const std::uint64_t *bu = g.adjacency_bits(e.u), *bv = g.adjacency_bits(e.v);
            bool found = false;
            for (VertexId c : common_neighbors(g, e.u, e.v)) {
                // rest = N(c) minus N[u] and N[v]; the butterfly needs an edge inside it
                const std::uint64_t* bc = g.adjacency_bits(c);
                for (int k = 0; k < words; ++k) rest[k] = bc[k] & ~bu[k] & ~bv[k];
                rest[e.u / 64] &= ~(std::uint64_t{1} << (e.u % 64));
                rest[e.v / 64] &= ~(std::uint64_t{1} << (e.v % 64));
                for (int k = 0; k < words && !found; ++k)
                    for (std::uint64_t bitsk = rest[k]; bitsk && !found; bitsk &= bitsk - 1) {
                        const std::uint64_t* bd = g.adjacency_bits(k * 64 + std::countr_zero(bitsk));
                        for (int j = 0; j < words; ++j)
                            if (bd[j] & rest[j]) {
                                found = true;
                                break;
                            }
                    }
                if (found) break;
            }
            if (found) out.push_back(e);
        }
        return out;
    }
    for (const Edge& e : g.edges()) {
        bool found = false;
        for (VertexId c : common_neighbors(g, e.u, e.v)) {
            for (VertexId d : g.neighbors(c)) {
                if (d == e.u || d == e.v || g.adjacent(d, e.u) || g.adjacent(d, e.v)) continue;
                for (VertexId f : g.neighbors(d)) {
                    if (f <= d || f == c || !g.adjacent(f, c)) continue;
                    if (f == e.u || f == e.v || g.adjacent(f, e.u) || g.adjacent(f, e.v)) continue;
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (found) out.push_back(e);
    }
    return out;
}

std::vector<Edge> c4_edges(const WeightedGraph& g) {
    std::vector<Edge> out;
    for (const Edge& e : g.edges()) {
        // cycle u - v - w - z - u with w !~ u and z !~ v
        bool found = false;
        for (VertexId w : g.neighbors(e.v)) {
            if (w == e.u || g.adjacent(w, e.u)) continue;
            for (VertexId z : g.neighbors(w)) {
                if (z == e.v || z == e.u || g.adjacent(z, e.v)) continue;
                if (g.adjacent(z, e.u)) {
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (found) out.push_back(e);
    }
    return out;
}

std::optional<PatternWitness> find_k4(const WeightedGraph& g) {
    if (g.num_vertices() > 0 && g.adjacency_bits(0)) {
        std::vector<std::uint64_t> common(g.bit_words());
        for (const Edge& e : g.edges()) {
            if (common_bits(g, e, common) < 2) continue;
            for (VertexId c : g.neighbors(e.u)) {
                if (!bit(common, c)) continue;
                const std::uint64_t* bc = g.adjacency_bits(c);
                for (int k = 0; k < g.bit_words(); ++k)
                    if (std::uint64_t hit = bc[k] & common[k]) {
                        std::vector<VertexId> vs{e.u, e.v, c, k * 64 + std::countr_zero(hit)};
                        std::sort(vs.begin(), vs.end());
                        return PatternWitness{PatternKind::K4, vs};
                    }
            }
        }
        return std::nullopt;
    }
    for (const Edge& e : g.edges()) {
        auto c = common_neighbors(g, e.u, e.v);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (g.adjacent(c[i], c[j])) {
                    std::vector<VertexId> vs{e.u, e.v, c[i], c[j]};
                    std::sort(vs.begin(), vs.end());
                    return PatternWitness{PatternKind::K4, vs};
                }
    }
    return std::nullopt;
}

namespace {

// Depth-first growth of chordless paths. `blocked[w]` counts path vertices adjacent to w
// (excluding the current end), so an extension w is chordless iff blocked[w] == 0.
bool grow_path(const WeightedGraph& g, int length, std::vector<VertexId>& path, std::vector<int>& on_path,
               std::vector<int>& seen_by) {
    if (static_cast<int>(path.size()) == length) return true;
    const VertexId end = path.back();
    for (VertexId w : g.neighbors(end)) {
        if (on_path[w] || seen_by[w] > 0) continue;
        // every neighbor of `end` becomes forbidden for the next step, except w itself
        for (VertexId z : g.neighbors(end)) ++seen_by[z];
        path.push_back(w);
        on_path[w] = 1;
        if (grow_path(g, length, path, on_path, seen_by)) return true;
        on_path[w] = 0;
        path.pop_back();
        for (VertexId z : g.neighbors(end)) --seen_by[z];
    }
    return false;
}

}  // namespace

std::optional<PatternWitness> find_induced_path(const WeightedGraph& g, int length) {
    const int n = g.num_vertices();
    if (length <= 0 || length > n) return std::nullopt;
    std::vector<int> on_path(n, 0), seen_by(n, 0);
    std::vector<VertexId> path;
    for (VertexId s = 0; s < n; ++s) {
        path.assign(1, s);
        on_path[s] = 1;
        if (grow_path(g, length, path, on_path, seen_by)) {
            PatternKind k = length == 8 ? PatternKind::P8 : PatternKind::P3;
            return PatternWitness{k, path};
        }
        on_path[s] = 0;
    }
    return std::nullopt;
}

std::optional<PatternWitness> find_induced_p8(const WeightedGraph& g) { return find_induced_path(g, 8); }

std::optional<VertexId> p3_witness(const WeightedGraph& g, const Edge& xy) {
    g.edge_id(xy);
    for (VertexId r : g.neighbors(xy.u))
        if (r != xy.v && !g.adjacent(r, xy.v)) return r;
    for (VertexId r : g.neighbors(xy.v))
        if (r != xy.u && !g.adjacent(r, xy.u)) return r;
    return std::nullopt;
}

}  // namespace dimp8
