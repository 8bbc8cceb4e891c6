#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "robustkz/instance.hpp"

namespace robustkz {

class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

// C(n, r), saturating at 2^63-1.
std::uint64_t n_choose_k(int n, int r);

constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

struct OracleResult {
    Solution sol;
    std::uint64_t subsets_enumerated = 0;
};

// Enumerates all k-subsets of F in colexicographic order with an
// incumbent-cost short circuit; ties broken by lexicographically smallest
// index set. Throws BudgetExceededError when C(|F|, k) > budget. The result
// is independent of the worker count.
OracleResult exact_solve(const Instance& inst, std::uint64_t budget = kDefaultOracleBudget,
                         int threads = 1);

// Complete map from every k-subset to its cost (no pruning).
std::map<std::vector<int>, double> enumerate_costs(const Instance& inst,
                                                   std::uint64_t budget = kDefaultOracleBudget);

}  // namespace robustkz
