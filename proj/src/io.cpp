#include "dimp8/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace dimp8 {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

template <class Int>
bool parse_int(const std::string& s, Int& out) {
    if (s.empty() || s[0] == '-' || s[0] == '+') return false;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && end == s.data() + s.size();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        out.push_back(l);
    }
    return out;
}

VertexId parse_id(const std::string& tok, int n, int line) {
    long long id = 0;
    if (!parse_int(tok, id)) throw ParseError(line, "bad vertex id '" + tok + "'");
    if (id < 1 || id > n) throw ParseError(line, "vertex id " + tok + " out of range [1, " + std::to_string(n) + "]");
    return static_cast<VertexId>(id - 1);
}

nlohmann::ordered_json weight_json(Weight w) {
    if (w.is_infinite()) return "inf";
    return w.value();
}

}  // namespace

WeightedGraph parse_graph_file(const std::string& text) {
    auto lines = lines_of(text);
    bool header = false;
    int n = 0;
    long long m = 0;
    int last = 0;
    std::vector<WeightedEdge> es;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        int ln = static_cast<int>(i) + 1;
        auto t = tokens(lines[i]);
        if (t.empty() || t[0] == "c") continue;
        last = ln;
        if (t[0] == "p") {
            if (header) throw ParseError(ln, "duplicate header");
            if (t.size() != 4 || t[1] != "dim") throw ParseError(ln, "malformed header, expected 'p dim <n> <m>'");
            if (!parse_int(t[2], n) || !parse_int(t[3], m)) throw ParseError(ln, "malformed header counts");
            header = true;
            continue;
        }
        if (t[0] != "e") throw ParseError(ln, "unrecognized line");
        if (!header) throw ParseError(ln, "missing header");
        if (t.size() != 4) throw ParseError(ln, "edge line needs 'e <u> <v> <w>'");
        VertexId u = parse_id(t[1], n, ln);
        VertexId v = parse_id(t[2], n, ln);
        if (u == v) throw ParseError(ln, "self loop");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw ParseError(ln, "duplicate edge");
        Weight w;
        std::uint64_t value = 0;
        if (t[3] == "inf") w = Weight::infinite();
        else if (parse_int(t[3], value)) w = Weight(value);
        else throw ParseError(ln, "bad weight token '" + t[3] + "'");
        if (static_cast<long long>(es.size()) == m) throw ParseError(ln, "more edge lines than the header declares");
        es.push_back({u, v, w});
    }
    if (!header) throw ParseError(1, "missing header");
    if (static_cast<long long>(es.size()) != m)
        throw ParseError(last, "header declares " + std::to_string(m) + " edges, found " + std::to_string(es.size()));
    return WeightedGraph::build(n, es);
}

std::string emit_graph_file(const WeightedGraph& g) {
    std::ostringstream out;
    out << "p dim " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
        const Edge& e = g.edge(id);
        out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << g.weight(id).to_string() << '\n';
    }
    return out.str();
}

Matching parse_matching_file(const std::string& text, int n) {
    auto lines = lines_of(text);
    Matching m;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        int ln = static_cast<int>(i) + 1;
        auto t = tokens(lines[i]);
        if (t.empty() || t[0] == "c") continue;
        if (t[0] != "e" || t.size() != 3) throw ParseError(ln, "matching line needs 'e <u> <v>'");
        VertexId u = parse_id(t[1], n, ln);
        VertexId v = parse_id(t[2], n, ln);
        if (u == v) throw ParseError(ln, "self loop");
        m.emplace_back(u, v);
    }
    return m;
}

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::DimFound: return "dim_found";
        case SolveStatus::NoDim: return "no_dim";
        case SolveStatus::NoFiniteDim: return "no_finite_dim";
    }
    return "?";
}

std::string result_record(const SolveOutcome& r, bool with_millis) {
    nlohmann::ordered_json j;
    j["status"] = status_name(r.status);
    if (r.status == SolveStatus::DimFound) {
        auto edges = nlohmann::ordered_json::array();
        for (const Edge& e : r.matching) edges.push_back({e.u + 1, e.v + 1});
        j["edges"] = edges;
    }
    j["weight"] = r.status == SolveStatus::NoDim ? nlohmann::ordered_json(nullptr) : weight_json(r.weight);
    nlohmann::ordered_json d;
    d["branches"] = r.diagnostics.branches;
    d["xy_tried"] = r.diagnostics.xy_tried;
    if (with_millis) d["millis"] = r.diagnostics.millis;
    d["incomplete"] = r.diagnostics.incomplete;
    if (r.diagnostics.p8_witness) {
        auto w = nlohmann::ordered_json::array();
        for (VertexId v : *r.diagnostics.p8_witness) w.push_back(v + 1);
        d["p8_witness"] = w;
    } else {
        d["p8_witness"] = nullptr;
    }
    j["diagnostics"] = d;
    return j.dump();
}

std::string result_text(const SolveOutcome& r) {
    std::ostringstream out;
    out << "status: " << status_name(r.status) << '\n';
    if (r.status != SolveStatus::NoDim) out << "weight: " << r.weight.to_string() << '\n';
    if (r.status == SolveStatus::DimFound) {
        out << "edges:";
        for (const Edge& e : r.matching) out << " (" << e.u + 1 << ',' << e.v + 1 << ')';
        out << '\n';
    }
    const auto& d = r.diagnostics;
    out << "branches: " << d.branches << "  xy_tried: " << d.xy_tried << "  millis: " << d.millis << '\n';
    if (d.incomplete) out << "incomplete: true\n";
    if (d.p8_witness) {
        out << "induced P8:";
        for (VertexId v : *d.p8_witness) out << ' ' << v + 1;
        out << '\n';
    }
    return out.str();
}

SolveOutcome from_oracle(const OracleResult& r) {
    SolveOutcome out;
    if (!r.found) return out;
    out.weight = r.weight;
    if (r.weight.is_infinite()) {
        out.status = SolveStatus::NoFiniteDim;
        return out;
    }
    out.status = SolveStatus::DimFound;
    out.matching = r.matching;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

}  // namespace dimp8
