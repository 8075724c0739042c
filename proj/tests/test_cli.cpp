#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "dimp8/cli.hpp"
#include "dimp8/instance_gen.hpp"
#include "dimp8/io.hpp"
#include "test_util.hpp"

using namespace dimp8;
using namespace dimp8::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("dimp8_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string put(const std::string& name, const std::string& text) const {
        std::string p = (path / name).string();
        write_file(p, text);
        return p;
    }
};

}  // namespace

TEST_CASE("solve subcommand") {
    TempDir t;
    auto c4 = t.put("c4.dim", emit_graph_file(cycle(4)));
    auto r = cli({"solve", c4, "--json"});
    CHECK(r.code == kExitNone);
    CHECK(nlohmann::json::parse(r.out)["status"] == "no_dim");

    r = cli({"solve", t.put("c6.dim", emit_graph_file(cycle(6))), "--json"});
    CHECK(r.code == kExitFound);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["weight"] == 2);
    CHECK(j["edges"].size() == 2);

    r = cli({"solve", t.put("p7.dim", emit_graph_file(path(7))), "--json"});
    CHECK(r.code == kExitFound);
    CHECK(nlohmann::json::parse(r.out)["edges"] == nlohmann::json::parse("[[2,3],[5,6]]"));

    r = cli({"solve", t.put("p8.dim", emit_graph_file(path(8))), "--json", "--check-p8-free"});
    j = nlohmann::json::parse(r.out);
    CHECK(j["diagnostics"]["incomplete"] == true);
    CHECK(j["diagnostics"]["p8_witness"].size() == 8);

    r = cli({"solve", t.put("p7b.dim", emit_graph_file(path(7))), "--threads", "3", "--branch-cap", "50"});
    CHECK(r.code == kExitFound);
    CHECK(r.out.find("dim_found") != std::string::npos);

    r = cli({"solve", t.put("bad.dim", "e 1 2 5\n")});
    CHECK(r.code == kExitError);
    CHECK(r.err.find("line 1: missing header") != std::string::npos);
    CHECK(cli({"solve", (t.path / "absent.dim").string()}).code == kExitError);
    CHECK(cli({"solve"}).code == kExitError);
    CHECK(cli({"frobnicate"}).code == kExitError);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("oracle subcommand") {
    TempDir t;
    auto r = cli({"oracle", t.put("c5.dim", emit_graph_file(cycle(5))), "--json"});
    CHECK(r.code == kExitNone);
    CHECK(nlohmann::json::parse(r.out)["status"] == "no_dim");

    r = cli({"oracle", t.put("tri.dim", "p dim 3 3\ne 1 2 1\ne 2 3 2\ne 1 3 3\n"), "--json"});
    CHECK(r.code == kExitFound);
    CHECK(nlohmann::json::parse(r.out)["weight"] == 1);

    std::ostringstream big;
    big << "p dim 30 30\n";
    for (int i = 1; i <= 30; ++i) big << "e " << i << ' ' << (i % 30) + 1 << " 1\n";
    r = cli({"oracle", t.put("c30.dim", big.str()), "--max-edges", "26"});
    CHECK(r.code == kExitError);
}

TEST_CASE("check subcommand") {
    TempDir t;
    auto c6 = t.put("c6.dim", emit_graph_file(cycle(6)));
    auto r = cli({"check", c6, "--matching", t.put("m1", "e 1 2\ne 4 5\n")});
    CHECK(r.code == kExitFound);
    CHECK(r.out.rfind("ok:", 0) == 0);

    r = cli({"check", c6, "--matching", t.put("m2", "e 1 2\n")});
    CHECK(r.code == kExitNone);
    CHECK(r.out == "violation: edge (3,4) count 0\n");

    auto p4 = t.put("p4.dim", emit_graph_file(path(4)));
    r = cli({"check", p4, "--matching", t.put("m3", "e 1 2\ne 3 4\n")});
    CHECK(r.code == kExitNone);
    CHECK(r.out == "violation: not induced matching\n");

    auto star = t.put("k13.dim", "p dim 4 3\ne 1 2 1\ne 1 3 1\ne 1 4 1\n");
    r = cli({"check", star, "--matching", t.put("m4", "e 1 2\ne 1 3\n")});
    CHECK(r.code == kExitNone);

    CHECK(cli({"check", c6, "--matching", t.put("m5", "e 1 9\n")}).code == kExitError);
    CHECK(cli({"check", c6, "--matching", t.put("m6", "e 1 3\n")}).code == kExitError);
}

TEST_CASE("gen subcommand") {
    TempDir t;
    auto r = cli({"gen", "--kind", "named", "--family", "cycle", "--n", "6"});
    CHECK(r.code == 0);
    auto g = parse_graph_file(r.out);
    CHECK(g.num_vertices() == 6);
    CHECK(g.num_edges() == 6);
    CHECK(emit_graph_file(g) == emit_graph_file(cycle(6)));

    auto a = cli({"gen", "--kind", "planted", "--k", "3", "--seed", "7"});
    auto b = cli({"gen", "--kind", "planted", "--k", "3", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("c planted") != std::string::npos);
    CHECK(parse_graph_file(a.out).num_vertices() == 9);

    auto out = (t.path / "r.dim").string();
    CHECK(cli({"gen", "--kind", "random", "--n", "10", "--p", "0.3", "--seed", "2", "--out", out}).code == 0);
    CHECK(parse_graph_file(read_file(out)).num_vertices() == 10);
    CHECK(read_file(out).find(kPrngId) != std::string::npos);

    CHECK(cli({"gen", "--kind", "mystery"}).code == kExitError);
    CHECK(cli({"gen", "--kind", "named", "--family", "cycle", "--n", "2"}).code == kExitError);
    CHECK(cli({"gen", "--kind", "planted", "--k", "0"}).code == kExitError);
    CHECK(cli({"gen", "--count", "3"}).code == kExitError);
}

TEST_CASE("bench subcommand") {
    TempDir t;
    auto dir = (t.path / "corpus").string();
    for (int n = 50; n <= 200; n += 50)
        CHECK(cli({"gen", "--kind", "planted", "--n", std::to_string(n), "--k", std::to_string(n / 5), "--seed",
                   std::to_string(n), "--count", n == 200 ? "1" : "3", "--dir", dir})
                  .code == 0);
    auto r = cli({"bench", dir});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "file,n,m,status,weight,millis");
    int rows = 0, last_n = 0;
    while (std::getline(lines, line)) {
        ++rows;
        auto c1 = line.find(',');
        int n = std::stoi(line.substr(c1 + 1));
        CHECK(n >= last_n);
        last_n = n;
        CHECK(line.find("dim_found") != std::string::npos);
    }
    CHECK(rows == 10);

    r = cli({"bench", dir, "--summary"});
    std::istringstream sum(r.out);
    std::getline(sum, line);
    CHECK(line == "n,instances,median_millis,max_millis");
    rows = 0;
    while (std::getline(sum, line)) ++rows;
    CHECK(rows == 4);
    CHECK(cli({"bench", (t.path / "nothing").string()}).code == kExitError);
}

TEST_CASE("solve and oracle agree on a small corpus") {
    TempDir t;
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        GenSpec s;
        s.n = 5 + static_cast<int>(seed % 8);
        s.p = 0.35;
        s.seed = 300 + seed;
        s.w_hi = 1 + seed % 9;
        auto g = gen_random_p8_free(s);
        if (g.num_edges() > 26) continue;
        auto f = t.put("g" + std::to_string(seed) + ".dim", emit_graph_file(g));
        auto a = cli({"solve", f, "--json"});
        auto b = cli({"oracle", f, "--json"});
        CHECK(a.code == b.code);
        auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
        CHECK(ja["status"] == jb["status"]);
        CHECK(ja["weight"] == jb["weight"]);
        ++compared;
    }
    CHECK(compared > 50);
}
