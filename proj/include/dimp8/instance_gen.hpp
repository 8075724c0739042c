#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimp8/graph.hpp"

namespace dimp8 {

class RejectionBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class GenKind { RandomP8Free, PlantedYes, Named };
enum class NamedFamily { Path, Cycle, Diamond, Butterfly, Gem, K4, Claw };

/// PRNG: std::mt19937_64; attempt i of a seed draws from seed_seq{seed_hi, seed_lo, i}.
inline constexpr const char* kPrngId = "mt19937_64/seed_seq";
inline constexpr int kRejectionBudget = 10000;

struct GenSpec {
    GenKind kind = GenKind::RandomP8Free;
    NamedFamily family = NamedFamily::Path;
    int n = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t w_lo = 1;
    std::uint64_t w_hi = 1;
    bool connected = false;  // RandomP8Free only: also reject disconnected samples
    int k = 1;               // PlantedYes: number of planted M-edges
};

struct PlantedInstance {
    WeightedGraph graph;
    Matching planted;  // canonical
};

/// Throws BadParameter, RejectionBudgetExceeded.
WeightedGraph gen_random_p8_free(const GenSpec& spec);

/// spec.n is the total vertex count, so |I| = n - 2k. Falls back to nested attachments
/// (each I-vertex sees a prefix of one shuffled order of V(M)) after repeated rejections.
PlantedInstance gen_planted_yes(const GenSpec& spec, int k);

/// Graph on 2k + |attach| vertices: vertex 2i is matched to 2i+1, I-vertex j is 2k + j and is
/// joined to every vertex listed in attach[j]. Unit weights.
PlantedInstance planted_from(int k, const std::vector<std::vector<VertexId>>& attach);

/// Throws BadParameter when n does not fit the family.
WeightedGraph gen_named(NamedFamily family, int n);

/// Dispatch on spec.kind.
WeightedGraph generate(const GenSpec& spec);

NamedFamily parse_family(const std::string& name);
std::string family_name(NamedFamily f);

}  // namespace dimp8
