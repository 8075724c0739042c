#pragma once

#include <stdexcept>
#include <string>

#include "dimp8/dim_check.hpp"
#include "dimp8/dim_p8.hpp"
#include "dimp8/graph.hpp"

namespace dimp8 {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
    int line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    int line_;
    std::string reason_;
};

/// "p dim n m", "c ..." comments, then m lines "e u v w" with 1-based ids and w an integer or "inf".
WeightedGraph parse_graph_file(const std::string& text);
std::string emit_graph_file(const WeightedGraph& g);

/// Lines "e u v" (1-based). Comments and blank lines are skipped. Ids are checked against n.
Matching parse_matching_file(const std::string& text, int n);

/// Single-line JSON object with keys status, edges (dim_found only), weight, diagnostics.
/// Weight is null for no_dim. Setting with_millis to false drops the only timing-dependent key.
std::string result_record(const SolveOutcome& r, bool with_millis = true);
std::string result_text(const SolveOutcome& r);
/// Oracle results in the same record shape, with zeroed diagnostics.
SolveOutcome from_oracle(const OracleResult& r);

std::string status_name(SolveStatus s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace dimp8
