#include "dimp8/dim_check.hpp"

#include <algorithm>
#include <functional>

namespace dimp8 {

std::optional<EdgeId> DominationReport::first_violation() const {
    for (std::size_t i = 0; i < count.size(); ++i)
        if (count[i] != 1) return static_cast<EdgeId>(i);
    return std::nullopt;
}

bool is_induced_matching(const WeightedGraph& g, const Matching& m) {
    std::vector<int> owner(g.num_vertices(), -1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        g.edge_id(m[i]);
        for (VertexId v : {m[i].u, m[i].v}) {
            if (owner[v] >= 0) return false;
            owner[v] = static_cast<int>(i);
        }
    }
    for (const Edge& e : g.edges()) {
        int a = owner[e.u], b = owner[e.v];
        if (a >= 0 && b >= 0 && a != b) return false;
    }
    return true;
}

bool is_dim_on(const WeightedGraph& g, const Matching& m, const std::vector<char>& mask) {
    if (!is_induced_matching(g, m)) return false;
    std::vector<char> covered(g.num_vertices(), 0);
    for (const Edge& f : m) covered[f.u] = covered[f.v] = 1;
    for (const Edge& e : g.edges()) {
        if (!mask[e.u] && !mask[e.v]) continue;
        // in an induced matching both endpoints covered means e itself is an M-edge
        if (!covered[e.u] && !covered[e.v]) return false;
    }
    return true;
}

DominationReport check_dim(const WeightedGraph& g, const Matching& m) {
    DominationReport r;
    r.count.assign(g.num_edges(), 0);
    r.induced_matching = is_induced_matching(g, m);
    for (const Edge& f : m) {
        for (VertexId v : {f.u, f.v})
            for (EdgeId id : g.incident(v)) ++r.count[id];
        --r.count[g.edge_id(f)];  // counted from both endpoints
    }
    r.is_dim = std::all_of(r.count.begin(), r.count.end(), [](int c) { return c == 1; });
    return r;
}

Weight matching_weight(const WeightedGraph& g, const Matching& m) {
    Weight w(0);
    for (const Edge& e : m) w += g.weight(e);
    return w;
}

bool better_solution(Weight wa, const Matching& a, Weight wb, const Matching& b) {
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

class Backtracker {
public:
    Backtracker(const WeightedGraph& g, bool prune_weight) : g_(g), prune_weight_(prune_weight) {
        const int m = g.num_edges();
        matched_.assign(g.num_vertices(), 0);
        due_.assign(m, {});
        for (EdgeId e = 0; e < m; ++e) {
            const Edge& ed = g.edge(e);
            EdgeId last = e;
            for (VertexId v : {ed.u, ed.v})
                for (EdgeId f : g.incident(v)) last = std::max(last, f);
            due_[last].push_back(e);
        }
    }

    void run(const std::function<void(const Matching&, Weight)>& visit) {
        visit_ = &visit;
        chosen_.clear();
        dfs(0, Weight(0));
    }

    bool has_best() const { return has_best_; }
    Weight best_weight() const { return best_w_; }

    void offer(const Matching& m, Weight w) {
        if (!has_best_ || better_solution(w, m, best_w_, best_)) {
            best_ = m;
            best_w_ = w;
            has_best_ = true;
        }
    }
    const Matching& best() const { return best_; }

private:
    bool can_add(const Edge& e) const {
        // induced: no vertex of N[u] ∪ N[v] already matched
        for (VertexId v : {e.u, e.v}) {
            if (matched_[v]) return false;
            for (VertexId w : g_.neighbors(v))
                if (matched_[w]) return false;
        }
        return true;
    }

    bool dominated(EdgeId id) const {
        const Edge& e = g_.edge(id);
        return matched_[e.u] || matched_[e.v];
    }

    bool settled_ok(EdgeId i) const {
        for (EdgeId e : due_[i])
            if (!dominated(e)) return false;
        return true;
    }

    void dfs(EdgeId i, Weight w) {
        if (prune_weight_ && has_best_ && w > best_w_) return;
        if (i == g_.num_edges()) {
            (*visit_)(chosen_, w);
            return;
        }
        const Edge& e = g_.edge(i);
        if (can_add(e)) {
            matched_[e.u] = matched_[e.v] = 1;
            chosen_.push_back(e);
            if (settled_ok(i)) dfs(i + 1, w + g_.weight(i));
            chosen_.pop_back();
            matched_[e.u] = matched_[e.v] = 0;
        }
        if (settled_ok(i)) dfs(i + 1, w);
    }

    const WeightedGraph& g_;
    bool prune_weight_;
    std::vector<char> matched_;
    std::vector<std::vector<EdgeId>> due_;
    Matching chosen_;
    const std::function<void(const Matching&, Weight)>* visit_ = nullptr;
    Matching best_;
    Weight best_w_;
    bool has_best_ = false;
};

void check_limit(const WeightedGraph& g, int limit) {
    if (g.num_edges() > limit)
        throw OracleTooLarge("oracle limit exceeded: " + std::to_string(g.num_edges()) + " edges > " +
                             std::to_string(limit));
}

}  // namespace

OracleResult oracle_min_dim(const WeightedGraph& g, int limit) {
    check_limit(g, limit);
    Backtracker bt(g, true);
    bt.run([&](const Matching& m, Weight w) { bt.offer(m, w); });
    OracleResult r;
    if (bt.has_best()) {
        r.found = true;
        r.matching = bt.best();
        r.weight = bt.best_weight();
    }
    return r;
}

std::vector<Matching> enumerate_dims(const WeightedGraph& g, int limit) {
    check_limit(g, limit);
    std::vector<Matching> all;
    Backtracker bt(g, false);
    bt.run([&](const Matching& m, Weight) { all.push_back(m); });
    return all;
}

}  // namespace dimp8
