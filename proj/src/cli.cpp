#include "dimp8/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "dimp8/dim_check.hpp"
#include "dimp8/dim_p8.hpp"
#include "dimp8/instance_gen.hpp"
#include "dimp8/io.hpp"

namespace dimp8 {

namespace {

int exit_for(SolveStatus s) { return s == SolveStatus::DimFound ? kExitFound : kExitNone; }

void report(std::ostream& out, const SolveOutcome& r, bool json) {
    if (json) out << result_record(r) << '\n';
    else out << result_text(r);
}

struct SolveArgs {
    std::string path;
    bool json = false;
    bool check_p8 = false;
    long branch_cap = 0;
    int threads = 1;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
    WeightedGraph g = parse_graph_file(read_file(a.path));
    SolveOptions opts;
    opts.branch_cap = a.branch_cap;
    opts.threads = a.threads;
    opts.p8_check = a.check_p8;
    SolveOutcome r = solve_dim(g, opts);
    report(out, r, a.json);
    return exit_for(r.status);
}

struct OracleArgs {
    std::string path;
    bool json = false;
    int max_edges = kDefaultOracleLimit;
};

int run_oracle(const OracleArgs& a, std::ostream& out) {
    WeightedGraph g = parse_graph_file(read_file(a.path));
    auto start = std::chrono::steady_clock::now();
    SolveOutcome r = from_oracle(oracle_min_dim(g, a.max_edges));
    r.diagnostics.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    report(out, r, a.json);
    return exit_for(r.status);
}

int run_check(const std::string& path, const std::string& matching_path, std::ostream& out) {
    WeightedGraph g = parse_graph_file(read_file(path));
    Matching m = parse_matching_file(read_file(matching_path), g.num_vertices());
    DominationReport rep = check_dim(g, m);
    if (rep.is_dim) {
        out << "ok: dominating induced matching of weight " << matching_weight(g, canonical(m)).to_string() << '\n';
        return kExitFound;
    }
    if (!rep.induced_matching) {
        out << "violation: not induced matching\n";
        return kExitNone;
    }
    EdgeId bad = *rep.first_violation();
    const Edge& e = g.edge(bad);
    out << "violation: edge (" << e.u + 1 << ',' << e.v + 1 << ") count " << rep.count[bad] << '\n';
    return kExitNone;
}

struct GenArgs {
    std::string kind = "random";
    std::string family = "path";
    GenSpec spec;
    int count = 1;
    std::string out_path;
    std::string dir;
};

std::string gen_one(const GenArgs& a, const GenSpec& spec) {
    std::ostringstream head;
    head << "c kind=" << a.kind << " n=" << spec.n;
    if (a.kind == "named") {
        head << " family=" << a.family << '\n';
        return head.str() + emit_graph_file(gen_named(spec.family, spec.n));
    }
    head << " p=" << spec.p << " seed=" << spec.seed << " w=" << spec.w_lo << ".." << spec.w_hi
         << " prng=" << kPrngId;
    if (a.kind == "random") {
        head << '\n';
        return head.str() + emit_graph_file(gen_random_p8_free(spec));
    }
    PlantedInstance inst = gen_planted_yes(spec, spec.k);
    head << " k=" << spec.k << "\nc planted";
    for (const Edge& e : inst.planted) head << ' ' << e.u + 1 << '-' << e.v + 1;
    head << '\n';
    return head.str() + emit_graph_file(inst.graph);
}

int run_gen(GenArgs a, std::ostream& out) {
    if (a.kind == "named") a.spec.family = parse_family(a.family);
    else if (a.kind != "random" && a.kind != "planted") throw BadParameter("unknown kind '" + a.kind + "'");
    a.spec.kind = a.kind == "random" ? GenKind::RandomP8Free : a.kind == "planted" ? GenKind::PlantedYes : GenKind::Named;
    if (a.kind == "planted" && a.spec.n == 0) a.spec.n = 3 * a.spec.k;
    if (a.count < 1) throw BadParameter("count must be positive");
    if (a.count > 1 && a.dir.empty()) throw BadParameter("--count above 1 needs --dir");
    if (a.dir.empty()) {
        std::string text = gen_one(a, a.spec);
        if (a.out_path.empty()) out << text;
        else write_file(a.out_path, text);
        return kExitFound;
    }
    std::filesystem::create_directories(a.dir);
    for (int i = 0; i < a.count; ++i) {
        GenSpec s = a.spec;
        s.seed = a.spec.seed + static_cast<std::uint64_t>(i);
        std::ostringstream name;
        name << a.kind << "_n" << std::setw(4) << std::setfill('0') << s.n << "_s" << s.seed << ".dim";
        write_file((std::filesystem::path(a.dir) / name.str()).string(), gen_one(a, s));
    }
    return kExitFound;
}

struct BenchRow {
    std::string file;
    int n = 0;
    int m = 0;
    SolveOutcome r;
    double millis = 0;
};

int run_bench(const std::vector<std::string>& inputs, bool summary, int threads, std::ostream& out) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        if (std::filesystem::is_directory(in)) {
            for (const auto& ent : std::filesystem::directory_iterator(in))
                if (ent.is_regular_file()) files.push_back(ent.path().string());
        } else {
            files.push_back(in);
        }
    }
    std::vector<BenchRow> rows;
    for (const auto& f : files) {
        BenchRow row;
        row.file = f;
        WeightedGraph g = parse_graph_file(read_file(f));
        row.n = g.num_vertices();
        row.m = g.num_edges();
        SolveOptions opts;
        opts.threads = threads;
        auto start = std::chrono::steady_clock::now();
        row.r = solve_dim(g, opts);
        row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const BenchRow& a, const BenchRow& b) { return std::tie(a.n, a.file) < std::tie(b.n, b.file); });
    out << std::fixed << std::setprecision(3);
    if (!summary) {
        out << "file,n,m,status,weight,millis\n";
        for (const auto& row : rows)
            out << row.file << ',' << row.n << ',' << row.m << ',' << status_name(row.r.status) << ','
                << (row.r.status == SolveStatus::NoDim ? "" : row.r.weight.to_string()) << ',' << row.millis << '\n';
        return kExitFound;
    }
    std::map<int, std::vector<double>> by_n;
    for (const auto& row : rows) by_n[row.n].push_back(row.millis);
    out << "n,instances,median_millis,max_millis\n";
    for (auto& [n, ts] : by_n) {
        std::sort(ts.begin(), ts.end());
        out << n << ',' << ts.size() << ',' << ts[ts.size() / 2] << ',' << ts.back() << '\n';
    }
    return kExitFound;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-weight dominating induced matching for P8-free graphs", "dimp8"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve a graph file");
    solve->add_option("file", sa.path, "Graph file")->required();
    solve->add_flag("--json", sa.json, "Print the result record as JSON");
    solve->add_flag("--check-p8-free", sa.check_p8, "Look for an induced P8 and report it");
    solve->add_option("--branch-cap", sa.branch_cap, "States per N4 reduction (0: 10 n^3)")->check(CLI::NonNegativeNumber);
    solve->add_option("--threads", sa.threads, "Workers for the edge sweep")->check(CLI::PositiveNumber);

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive search, for small graphs");
    oracle->add_option("file", oa.path, "Graph file")->required();
    oracle->add_flag("--json", oa.json, "Print the result record as JSON");
    oracle->add_option("--max-edges", oa.max_edges, "Refuse graphs with more edges")->check(CLI::NonNegativeNumber);

    std::string check_path, matching_path;
    auto* check = app.add_subcommand("check", "Verify a candidate matching");
    check->add_option("file", check_path, "Graph file")->required();
    check->add_option("--matching", matching_path, "Matching file with lines 'e u v'")->required();

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "Generate a graph file");
    gen->add_option("--kind", ga.kind, "random, planted or named");
    gen->add_option("--family", ga.family, "path, cycle, diamond, butterfly, gem, k4, claw");
    gen->add_option("--n", ga.spec.n, "Vertex count");
    gen->add_option("--p", ga.spec.p, "Edge or attachment probability");
    gen->add_option("--seed", ga.spec.seed, "Seed");
    gen->add_option("--k", ga.spec.k, "Planted M-edges");
    gen->add_option("--wlo", ga.spec.w_lo, "Smallest weight");
    gen->add_option("--whi", ga.spec.w_hi, "Largest weight");
    gen->add_flag("--connected", ga.spec.connected, "Random kind: reject disconnected samples");
    gen->add_option("--count", ga.count, "Number of instances, seeds counting up");
    gen->add_option("--out", ga.out_path, "Output file (default stdout)");
    gen->add_option("--dir", ga.dir, "Output directory for --count");

    std::vector<std::string> bench_inputs;
    bool bench_summary = false;
    int bench_threads = 1;
    auto* bench = app.add_subcommand("bench", "Time the solver over instance files, CSV out");
    bench->add_option("inputs", bench_inputs, "Files or directories")->required();
    bench->add_flag("--summary", bench_summary, "One row per vertex count instead of per instance");
    bench->add_option("--threads", bench_threads, "Workers for the edge sweep")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store{"dimp8"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*solve) return run_solve(sa, out);
        if (*oracle) return run_oracle(oa, out);
        if (*check) return run_check(check_path, matching_path, out);
        if (*gen) return run_gen(ga, out);
        if (*bench) return run_bench(bench_inputs, bench_summary, bench_threads, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const OracleTooLarge& e) {
        err << "too large: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

}  // namespace dimp8
