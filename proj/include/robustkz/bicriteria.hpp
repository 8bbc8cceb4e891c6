#pragma once

#include <optional>

#include "robustkz/oracle.hpp"

namespace robustkz {

enum class AlphaMode { CertifiedByOracle, Configured, Unknown };

struct BicriteriaSolution {
    std::vector<int> centers;  // facility indices, sorted
    double cost = 0.0;         // solution_cost of centers as an open set
    double alpha = 1.0;        // cost / OPT when certified
    double beta = 1.0;         // |centers| / k
    AlphaMode alpha_mode = AlphaMode::Unknown;
};

// The exact optimum as a (1, 1)-bicriteria seed.
BicriteriaSolution bicriteria_exact(const Instance& inst,
                                    std::uint64_t oracle_budget = kDefaultOracleBudget);

// Farthest-point traversal on the max weighted distance objective: start at
// the facility nearest the heaviest point, then repeatedly open the unopened
// facility nearest the point maximizing max_w w[p] * dist(p, B)^z, until
// floor(target_beta * k) facilities are open. Alpha is certified by the
// oracle when affordable, taken from assume_alpha otherwise.
BicriteriaSolution bicriteria_greedy(const Instance& inst, double target_beta,
                                     std::optional<double> assume_alpha = std::nullopt,
                                     std::uint64_t oracle_budget = kDefaultOracleBudget);

// cost(B) / OPT; defined as 1 when both are zero, throws when only OPT is.
double certify_alpha(const Instance& inst, std::span<const int> B,
                     std::uint64_t oracle_budget = kDefaultOracleBudget);

}  // namespace robustkz
