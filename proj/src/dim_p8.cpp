#include "dimp8/dim_p8.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <variant>

#include "dimp8/dim_check.hpp"
#include "dimp8/levels.hpp"
#include "dimp8/n4_reducer.hpp"
#include "dimp8/n4empty.hpp"
#include "dimp8/patterns.hpp"

namespace dimp8 {

namespace {

struct Context {
    const WeightedGraph& g;
    long cap;
    std::map<std::vector<int>, std::optional<RegionResult>> memo;
    long branches = 0;
    long xy_tried = 0;
    bool incomplete = false;

    Context(const WeightedGraph& graph, long branch_cap) : g(graph), cap(branch_cap) {}
};

long default_cap(const WeightedGraph& g, const SolveOptions& opts) {
    if (opts.branch_cap > 0) return opts.branch_cap;
    long n = std::max(g.num_vertices(), 2);
    return 10 * n * n * n;
}

Weight weight_of(const WeightedGraph& g, const Matching& m) {
    Weight w(0);
    for (const Edge& e : m) w += g.weight(e);
    return w;
}

Matching minus(const Matching& all, const Matching& known) {
    Matching out;
    std::set_difference(all.begin(), all.end(), known.begin(), known.end(), std::back_inserter(out));
    return out;
}

std::vector<char> mask_of(int n, const std::vector<VertexId>& vs) {
    std::vector<char> m(n, 0);
    for (VertexId v : vs) m[v] = 1;
    return m;
}

void keep_better(std::optional<RegionResult>& best, RegionResult cand) {
    if (!best || better_solution(cand.weight, cand.added, best->weight, best->added)) best = std::move(cand);
}

std::optional<VertexId> alive_p3_witness(const SolverState& s, const Edge& xy) {
    const WeightedGraph& g = s.base();
    for (VertexId end : {xy.u, xy.v})
        for (VertexId r : g.neighbors(end))
            if (s.alive(r) && !xy.contains(r) && !g.adjacent(r, xy.other(end))) return r;
    return std::nullopt;
}

std::vector<EdgeId> region_edges(const SolverState& s, const std::vector<VertexId>& region) {
    const WeightedGraph& g = s.base();
    std::vector<EdgeId> out;
    for (VertexId v : region)
        for (std::size_t k = 0; k < g.neighbors(v).size(); ++k) {
            VertexId w = g.neighbors(v)[k];
            if (w > v && s.alive(w) && std::binary_search(region.begin(), region.end(), w))
                out.push_back(g.incident(v)[k]);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<VertexId>> alive_components(const SolverState& s, const std::vector<VertexId>& within) {
    const WeightedGraph& g = s.base();
    std::vector<char> allowed = mask_of(g.num_vertices(), within), seen(g.num_vertices(), 0);
    std::vector<std::vector<VertexId>> out;
    for (VertexId v : within) {
        if (!s.alive(v) || seen[v]) continue;
        std::vector<VertexId> comp{v};
        seen[v] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (VertexId w : g.neighbors(comp[k]))
                if (allowed[w] && s.alive(w) && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::optional<RegionResult> solve_region(Context& ctx, const SolverState& s, const std::vector<VertexId>& region);

std::optional<RegionResult> xy_in_region(Context& ctx, const SolverState& s, const std::vector<VertexId>& region,
                                         const Edge& xy) {
    ++ctx.xy_tried;
    auto r = alive_p3_witness(s, xy);
    if (!r) return std::nullopt;
    DecomposeResult dr = decompose(s, xy, *r);
    if (std::holds_alternative<DecomposeNotP8Free>(dr)) {
        ctx.incomplete = true;
        return std::nullopt;
    }
    if (!std::holds_alternative<LevelDecomposition>(dr)) return std::nullopt;
    const LevelDecomposition& d = std::get<LevelDecomposition>(dr);

    SolverState st = s;
    if (!st.reduce(xy) || !apply_level_rules(st, d)) return std::nullopt;

    ReduceDiagnostics diag;
    auto branches = reduce_until_n4_empty(st, d, ctx.cap, diag);
    ctx.branches += diag.states;
    if (diag.cap_exceeded || diag.stalled) ctx.incomplete = true;

    const WeightedGraph& g = ctx.g;
    std::vector<char> mask = mask_of(g.num_vertices(), region);
    std::optional<RegionResult> best;
    for (const SolverState& br : branches) {
        auto sol = solve_n4_empty(br, d);
        if (!sol) continue;
        Matching full = sol->matching;
        bool ok = true;
        for (const auto& comp : core_view(sol->state, d).detached) {
            auto sub = solve_region(ctx, sol->state, comp);
            if (!sub) {
                ok = false;
                break;
            }
            full.insert(full.end(), sub->added.begin(), sub->added.end());
        }
        if (!ok) continue;
        full = canonical(std::move(full));
        if (!is_dim_on(g, full, mask)) continue;
        Matching added = minus(full, s.m_acc());
        Weight w = weight_of(g, added);
        keep_better(best, {std::move(added), w});
    }
    return best;
}

std::optional<RegionResult> single_edge(const SolverState& s, const std::vector<VertexId>& region) {
    const WeightedGraph& g = s.base();
    auto edges = region_edges(s, region);
    std::optional<RegionResult> best;
    for (EdgeId id : edges) {
        if (s.overridden(id)) continue;
        const Edge& e = g.edge(id);
        bool all = std::all_of(edges.begin(), edges.end(), [&](EdgeId f) { return g.edge(f).intersects(e); });
        if (all) keep_better(best, {{e}, g.weight(id)});
    }
    return best;
}

std::optional<RegionResult> solve_fresh_region(Context& ctx, const SolverState& s,
                                               const std::vector<VertexId>& region) {
    const WeightedGraph& g = ctx.g;
    SeedOutcome seeded = seed_forced_edges_in(s, region);
    if (std::holds_alternative<SeedNoDim>(seeded)) return std::nullopt;
    if (auto* done = std::get_if<SeedDone>(&seeded)) return RegionResult{done->matching, done->weight};

    const SolverState& st = std::get<SeedReduced>(seeded).state;
    if (st.m_acc().size() > s.m_acc().size()) {
        Matching full = st.m_acc();
        for (const auto& comp : alive_components(st, region)) {
            auto sub = solve_region(ctx, st, comp);
            if (!sub) return std::nullopt;
            full.insert(full.end(), sub->added.begin(), sub->added.end());
        }
        full = canonical(std::move(full));
        if (!is_dim_on(g, full, mask_of(g.num_vertices(), region))) return std::nullopt;
        Matching added = minus(full, s.m_acc());
        Weight w = weight_of(g, added);
        return RegionResult{std::move(added), w};
    }

    SolverState marked = s;
    mark_c4_edges_in(marked, region);
    if (auto one = single_edge(marked, region)) return one;

    std::optional<RegionResult> best;
    for (EdgeId id : region_edges(marked, region)) {
        if (marked.overridden(id)) continue;
        if (auto cand = xy_in_region(ctx, marked, region, g.edge(id))) keep_better(best, std::move(*cand));
    }
    return best;
}

std::optional<RegionResult> solve_region(Context& ctx, const SolverState& s, const std::vector<VertexId>& region) {
    auto edges = region_edges(s, region);
    if (edges.empty()) return RegionResult{{}, Weight(0)};
    std::vector<int> key(region.begin(), region.end());
    key.push_back(-1);
    for (EdgeId id : edges)
        if (s.overridden(id)) key.push_back(id);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
    auto res = solve_fresh_region(ctx, s, region);
    ctx.memo.emplace(std::move(key), res);
    return res;
}

/// Top-level region solve with the xy sweep spread over worker threads. Each worker owns its
/// context, and results are reduced in edge order, so the answer does not depend on scheduling.
std::optional<RegionResult> solve_region_parallel(Context& ctx, const SolverState& s,
                                                  const std::vector<VertexId>& region, int threads) {
    const WeightedGraph& g = ctx.g;
    if (region_edges(s, region).empty()) return RegionResult{{}, Weight(0)};
    SeedOutcome seeded = seed_forced_edges_in(s, region);
    if (std::holds_alternative<SeedNoDim>(seeded)) return std::nullopt;
    if (std::holds_alternative<SeedDone>(seeded) ||
        std::get<SeedReduced>(seeded).state.m_acc().size() > s.m_acc().size())
        return solve_region(ctx, s, region);

    SolverState marked = s;
    mark_c4_edges_in(marked, region);
    if (auto one = single_edge(marked, region)) return one;

    std::vector<EdgeId> xs;
    for (EdgeId id : region_edges(marked, region))
        if (!marked.overridden(id)) xs.push_back(id);

    struct Partial {
        std::optional<RegionResult> best;
        long branches = 0, xy_tried = 0;
        bool incomplete = false;
    };
    auto work = [&](std::size_t from, std::size_t step) {
        Context local(g, ctx.cap);
        Partial p;
        for (std::size_t k = from; k < xs.size(); k += step)
            if (auto cand = xy_in_region(local, marked, region, g.edge(xs[k]))) keep_better(p.best, std::move(*cand));
        p.branches = local.branches;
        p.xy_tried = local.xy_tried;
        p.incomplete = local.incomplete;
        return p;
    };
    std::vector<std::future<Partial>> futs;
    for (int t = 0; t < threads; ++t) futs.push_back(std::async(std::launch::async, work, t, threads));
    std::optional<RegionResult> best;
    for (auto& f : futs) {
        Partial p = f.get();
        ctx.branches += p.branches;
        ctx.xy_tried += p.xy_tried;
        ctx.incomplete = ctx.incomplete || p.incomplete;
        if (p.best) keep_better(best, std::move(*p.best));
    }
    return best;
}

}  // namespace

std::optional<RegionResult> dim_with_xy(const WeightedGraph& g, const Edge& xy, const SolveOptions& opts) {
    g.edge_id(xy);
    Context ctx(g, default_cap(g, opts));
    SolverState s = SolverState::fresh(g);
    std::vector<VertexId> all(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) all[v] = v;
    return xy_in_region(ctx, s, all, xy);
}

SolveOutcome solve_dim(const WeightedGraph& g, const SolveOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    if (opts.p8_check) {
        if (auto w = find_induced_p8(g)) {
            out.diagnostics.p8_witness = w->vertices;
            out.diagnostics.incomplete = true;
        }
    }
    auto finish = [&]() {
        out.diagnostics.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
        return out;
    };
    if (find_k4(g)) return finish();

    Context ctx(g, default_cap(g, opts));
    SolverState s = SolverState::fresh(g);
    Matching total;
    bool found = true;
    for (const auto& comp : connected_components(g)) {
        auto res = opts.threads > 1 ? solve_region_parallel(ctx, s, comp, opts.threads) : solve_region(ctx, s, comp);
        if (!res) {
            found = false;
            break;
        }
        total.insert(total.end(), res->added.begin(), res->added.end());
    }
    out.diagnostics.branches = ctx.branches;
    out.diagnostics.xy_tried = ctx.xy_tried;
    out.diagnostics.incomplete = out.diagnostics.incomplete || ctx.incomplete;
    if (!found) return finish();

    total = canonical(std::move(total));
    if (!check_dim(g, total).is_dim) {
        out.diagnostics.incomplete = true;
        return finish();
    }
    Weight w = matching_weight(g, total);
    if (w.is_infinite()) {
        out.status = SolveStatus::NoFiniteDim;
        out.weight = w;
        return finish();
    }
    out.status = SolveStatus::DimFound;
    out.matching = std::move(total);
    out.weight = w;
    return finish();
}

SolveOutcome solve_dim_checked(const WeightedGraph& g, SolveOptions opts) {
    opts.p8_check = true;
    return solve_dim(g, opts);
}

}  // namespace dimp8
