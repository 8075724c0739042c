#include "dimp8/instance_gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "dimp8/patterns.hpp"

namespace dimp8 {

namespace {

std::mt19937_64 attempt_rng(std::uint64_t seed, int attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(attempt)};
    return std::mt19937_64(seq);
}

// Library distributions are implementation-defined; these two keep corpora portable.
bool coin(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? rng() : rng() % bound;
}

Weight draw_weight(std::mt19937_64& rng, const GenSpec& spec) {
    std::uint64_t span = spec.w_hi - spec.w_lo + 1;
    return Weight(spec.w_lo + below(rng, span));
}

template <class T>
void shuffle(std::mt19937_64& rng, std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(rng, i)]);
}

void check_common(const GenSpec& spec) {
    if (spec.n < 0) throw BadParameter("n must be nonnegative");
    if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw BadParameter("p must lie in [0, 1]");
    if (spec.w_lo > spec.w_hi) throw BadParameter("empty weight range");
}

bool connected(const WeightedGraph& g) {
    return g.num_vertices() <= 1 || connected_components(g).size() == 1;
}

WeightedGraph relabel(const WeightedGraph& g, const std::vector<VertexId>& perm, Matching* m) {
    std::vector<WeightedEdge> es;
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
        const Edge& e = g.edge(id);
        es.push_back({perm[e.u], perm[e.v], g.weight(id)});
    }
    if (m)
        for (Edge& e : *m) e = Edge(perm[e.u], perm[e.v]);
    return WeightedGraph::build(g.num_vertices(), es);
}

PlantedInstance assemble(std::mt19937_64& rng, const GenSpec& spec, int k,
                         const std::vector<std::vector<VertexId>>& attach) {
    int n = 2 * k + static_cast<int>(attach.size());
    std::vector<WeightedEdge> es;
    Matching planted;
    for (int i = 0; i < k; ++i) {
        es.push_back({2 * i, 2 * i + 1, draw_weight(rng, spec)});
        planted.emplace_back(2 * i, 2 * i + 1);
    }
    for (std::size_t j = 0; j < attach.size(); ++j)
        for (VertexId t : attach[j]) es.push_back({2 * k + static_cast<int>(j), t, draw_weight(rng, spec)});
    WeightedGraph g = WeightedGraph::build(n, es);
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(rng, perm);
    g = relabel(g, perm, &planted);
    return {std::move(g), canonical(std::move(planted))};
}

std::vector<std::vector<VertexId>> random_attachments(std::mt19937_64& rng, const GenSpec& spec, int k, int isize) {
    std::vector<std::vector<VertexId>> attach(isize);
    for (auto& a : attach) {
        for (VertexId t = 0; t < 2 * k; ++t)
            if (coin(rng, spec.p)) a.push_back(t);
        if (a.empty()) a.push_back(static_cast<VertexId>(below(rng, 2 * k)));
    }
    return attach;
}

std::vector<std::vector<VertexId>> nested_attachments(std::mt19937_64& rng, int k, int isize) {
    std::vector<VertexId> order(2 * k);
    std::iota(order.begin(), order.end(), 0);
    shuffle(rng, order);
    std::vector<std::vector<VertexId>> attach(isize);
    for (int j = 0; j < isize; ++j) {
        std::size_t len = j == 0 ? order.size() : 1 + below(rng, order.size());
        attach[j].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
    }
    return attach;
}

}  // namespace

WeightedGraph gen_random_p8_free(const GenSpec& spec) {
    check_common(spec);
    for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
        auto rng = attempt_rng(spec.seed, attempt);
        std::vector<WeightedEdge> es;
        for (VertexId u = 0; u < spec.n; ++u)
            for (VertexId v = u + 1; v < spec.n; ++v)
                if (coin(rng, spec.p)) es.push_back({u, v, draw_weight(rng, spec)});
        WeightedGraph g = WeightedGraph::build(spec.n, es);
        if (spec.connected && !connected(g)) continue;
        if (spec.n >= 8 && find_induced_p8(g)) continue;
        return g;
    }
    throw RejectionBudgetExceeded("no P8-free sample after " + std::to_string(kRejectionBudget) + " attempts");
}

PlantedInstance gen_planted_yes(const GenSpec& spec, int k) {
    check_common(spec);
    if (k < 1) throw BadParameter("k must be at least 1");
    if (spec.n < 2 * k) throw BadParameter("n must be at least 2k");
    if (k >= 2 && spec.n == 2 * k) throw BadParameter("several M-edges need an I-vertex to be connected");
    int isize = spec.n - 2 * k;
    constexpr int kRandomTries = 20;
    for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
        auto rng = attempt_rng(spec.seed, attempt);
        auto attach = attempt < kRandomTries ? random_attachments(rng, spec, k, isize) : nested_attachments(rng, k, isize);
        PlantedInstance inst = assemble(rng, spec, k, attach);
        if (!connected(inst.graph)) continue;
        if (inst.graph.num_vertices() >= 8 && find_induced_p8(inst.graph)) continue;
        return inst;
    }
    throw RejectionBudgetExceeded("no connected P8-free planted instance after " + std::to_string(kRejectionBudget) +
                                  " attempts");
}

PlantedInstance planted_from(int k, const std::vector<std::vector<VertexId>>& attach) {
    if (k < 1) throw BadParameter("k must be at least 1");
    std::vector<WeightedEdge> es;
    Matching planted;
    for (int i = 0; i < k; ++i) {
        es.push_back({2 * i, 2 * i + 1, Weight(1)});
        planted.emplace_back(2 * i, 2 * i + 1);
    }
    for (std::size_t j = 0; j < attach.size(); ++j)
        for (VertexId t : attach[j]) {
            if (t < 0 || t >= 2 * k) throw BadParameter("I-vertices attach only to matched vertices");
            es.push_back({2 * k + static_cast<int>(j), t, Weight(1)});
        }
    return {WeightedGraph::build(2 * k + static_cast<int>(attach.size()), es), planted};
}

WeightedGraph gen_named(NamedFamily family, int n) {
    auto fixed = [&](int want) {
        if (n != want) throw BadParameter(family_name(family) + " has exactly " + std::to_string(want) + " vertices");
    };
    std::vector<std::pair<int, int>> pairs;
    switch (family) {
        case NamedFamily::Path:
            if (n < 1) throw BadParameter("path needs n >= 1");
            for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
            break;
        case NamedFamily::Cycle:
            if (n < 3) throw BadParameter("cycle needs n >= 3");
            for (int i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
            break;
        case NamedFamily::Diamond:
            fixed(4);
            pairs = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
            break;
        case NamedFamily::Butterfly:
            fixed(5);
            pairs = {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}};
            break;
        case NamedFamily::Gem:
            fixed(5);
            pairs = {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}};
            break;
        case NamedFamily::K4:
            fixed(4);
            pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
            break;
        case NamedFamily::Claw:
            fixed(4);
            pairs = {{0, 1}, {0, 2}, {0, 3}};
            break;
    }
    std::vector<WeightedEdge> es;
    for (auto [u, v] : pairs) es.push_back({u, v, Weight(1)});
    return WeightedGraph::build(n, es);
}

WeightedGraph generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenKind::RandomP8Free:
            return gen_random_p8_free(spec);
        case GenKind::PlantedYes:
            return gen_planted_yes(spec, spec.k).graph;
        case GenKind::Named:
            return gen_named(spec.family, spec.n);
    }
    throw BadParameter("unknown kind");
}

NamedFamily parse_family(const std::string& name) {
    for (NamedFamily f : {NamedFamily::Path, NamedFamily::Cycle, NamedFamily::Diamond, NamedFamily::Butterfly,
                          NamedFamily::Gem, NamedFamily::K4, NamedFamily::Claw})
        if (family_name(f) == name) return f;
    throw BadParameter("unknown family '" + name + "'");
}

std::string family_name(NamedFamily f) {
    switch (f) {
        case NamedFamily::Path: return "path";
        case NamedFamily::Cycle: return "cycle";
        case NamedFamily::Diamond: return "diamond";
        case NamedFamily::Butterfly: return "butterfly";
        case NamedFamily::Gem: return "gem";
        case NamedFamily::K4: return "k4";
        case NamedFamily::Claw: return "claw";
    }
    return "?";
}

}  // namespace dimp8
