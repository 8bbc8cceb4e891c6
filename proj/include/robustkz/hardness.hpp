#pragma once

#include <cstdint>

#include "robustkz/oracle.hpp"

namespace robustkz {

struct CodeBook {
    int t = 0;          // block length
    double eta = 0.0;   // balance slack
    std::vector<std::vector<std::uint8_t>> words;  // s binary vectors of length t
};

enum class CodeMode { Hadamard, RandomLinear };

// Every Hamming weight and pairwise distance must lie in
// [(1/2 - eta) t, (1/2 + eta) t]; checked over all words and pairs.
bool code_is_balanced(const CodeBook& code);

// Hadamard mode: the first s nonzero words of the Sylvester-Hadamard code of
// length 2^b >= s + 1; weights and pairwise distances are exactly t/2, so
// eta = 0. Random-linear mode: codewords of a random binary generator matrix
// with t = ceil(2 log2(max(s, 2)) / eta^2), resampled until balanced.
CodeBook build_code(int s, double eta, CodeMode mode, std::uint64_t seed = 0);

struct PartiteGraph {
    int k = 0;
    std::vector<std::vector<int>> parts;        // global vertex ids per part
    std::vector<std::pair<int, int>> edges;     // cross-part edges, canonical order
    std::vector<int> part_of;                   // vertex -> part
    std::vector<char> is_hub;                   // added by normalization

    int num_vertices() const { return static_cast<int>(part_of.size()); }
    bool has_edge(int u, int v) const;
};

enum class EdgePattern { None, Complete, Random };

// k parts of `part_size` user vertices each, plus one hub per part adjacent
// to everything outside its part. Hubs keep part sizes equal and never join
// an independent transversal, so they do not change the answer.
PartiteGraph make_partite_graph(int k, int part_size, EdgePattern pattern,
                                double edge_probability = 0.0, std::uint64_t seed = 0);
PartiteGraph make_partite_graph(int k, int part_size,
                                const std::vector<std::pair<int, int>>& user_edges);

// Discrete point set in {0,1}^(k t) under l_q: one point per vertex carrying
// its code word in its part's block, one point per edge carrying the two
// complemented endpoint words. Facilities equal the points, one singleton
// unit-weight group per point (z = 1).
Instance mcis_to_kcenter(const PartiteGraph& g, const CodeBook& code, int q);

struct GapReport {
    bool has_mcis = false;
    double kcenter_opt = 0.0;
    double opt_pow_q = 0.0;
    double yes_bound = 0.0;  // (1 + 2 eta) t
    double no_bound = 0.0;   // (3/2 - 3 eta) t
    bool gap_respected = false;
    std::uint64_t transversals_checked = 0;
    // optimum when centers are restricted to vertex points; edge points as
    // centers can cover their whole part pair, which collapses the no-side
    // separation at small k, so this diagnostic shows where that happens
    double vertex_only_opt_pow_q = 0.0;
};

// Exhaustive independent-transversal search plus the exact clustering
// optimum; checks that yes-instances land at or below the yes bound and
// no-instances at or above the no bound.
GapReport verify_gap(const Instance& inst, const PartiteGraph& g, const CodeBook& code, int q,
                     std::uint64_t budget = kDefaultOracleBudget);

}  // namespace robustkz
