#pragma once

#include "robustkz/coreset.hpp"

namespace robustkz {

constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct SearchStats {
    std::uint64_t tuples_enumerated = 0;
    bool certified = true;
    double ratio_bound = 1.0;  // proven cost / OPT bound when certified
};

struct SolveOutcome {
    Solution sol;
    SearchStats stats;
};

// Geometric radius grid: powers of (1 + eps/(10 z)) anchored at the smallest
// positive point-facility distance, extended to one value at or above the
// largest. Degenerates to {0} when every distance is zero.
std::vector<double> radii_grid(const Instance& inst, double eps);

// Enumerates leader tuples from P, per-leader radii from the grid, and one
// candidate facility per sub-ball of each guessed ball; returns the best
// center set found. Certified (1 + eps)-approximate when the enumeration
// fits the budget; otherwise the best-so-far is returned uncertified.
SolveOutcome leader_search(const Instance& inst, double eps,
                           std::uint64_t budget = kDefaultSearchBudget, int threads = 1);

// Coreset at eps/10, leader search at eps/10, then the returned centers are
// re-evaluated on the original instance.
SolveOutcome epas_solve(const Instance& inst, double eps, const BicriteriaSolution& bic,
                        std::uint64_t budget = kDefaultSearchBudget, int threads = 1,
                        const WarnFn& warn = {});

}  // namespace robustkz
