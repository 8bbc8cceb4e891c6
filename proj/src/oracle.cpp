#include "robustkz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace robustkz {

std::uint64_t n_choose_k(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (int i = 1; i <= r; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
        if (result > std::numeric_limits<std::uint64_t>::max() / num / 2)
            return std::numeric_limits<std::int64_t>::max();
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

namespace {

struct Incumbent {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<int> centers;

    void offer(double c, const std::vector<int>& x) {
        if (c < cost || (c == cost && (centers.empty() || x < centers))) {
            cost = c;
            centers = x;
        }
    }
};

// Colex successor: bump the lowest position that can grow, reset the prefix.
bool next_colex(std::vector<int>& comb, int n) {
    const int k = static_cast<int>(comb.size());
    for (int i = 0; i < k; ++i) {
        const int limit = (i + 1 < k) ? comb[static_cast<std::size_t>(i) + 1] : n;
        if (comb[static_cast<std::size_t>(i)] + 1 < limit) {
            ++comb[static_cast<std::size_t>(i)];
            for (int j = 0; j < i; ++j) comb[static_cast<std::size_t>(j)] = j;
            return true;
        }
    }
    return false;
}

// All k-subsets whose largest element is `top`, colex order among them.
template <typename Fn>
void for_each_subset_with_top(int k, int top, Fn&& fn) {
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i + 1 < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    comb[static_cast<std::size_t>(k) - 1] = top;
    while (true) {
        fn(comb);
        // advance within the fixed top element
        bool advanced = false;
        for (int i = 0; i + 1 < k; ++i) {
            const int limit = (i + 2 < k) ? comb[static_cast<std::size_t>(i) + 1] : top;
            if (comb[static_cast<std::size_t>(i)] + 1 < limit) {
                ++comb[static_cast<std::size_t>(i)];
                for (int j = 0; j < i; ++j) comb[static_cast<std::size_t>(j)] = j;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

}  // namespace

OracleResult exact_solve(const Instance& inst, std::uint64_t budget, int threads) {
    const int f = inst.num_facilities();
    const int k = inst.k();
    const std::uint64_t total = n_choose_k(f, k);
    if (total > budget)
        throw BudgetExceededError("exact solve would enumerate " + std::to_string(total) +
                                  " subsets, budget is " + std::to_string(budget));

    threads = std::max(1, std::min(threads, f - k + 1));
    std::vector<Incumbent> best(static_cast<std::size_t>(threads));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(threads), 0);

    auto worker = [&](int w) {
        std::vector<double> scratch;
        Incumbent& inc = best[static_cast<std::size_t>(w)];
        // partition by the subset's largest element
        for (int top = k - 1 + w; top < f; top += threads) {
            for_each_subset_with_top(k, top, [&](const std::vector<int>& comb) {
                ++counts[static_cast<std::size_t>(w)];
                const double c = solution_cost_bounded(inst, comb, inc.cost, scratch);
                if (std::isfinite(c)) inc.offer(c, comb);
            });
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    Incumbent merged;
    std::uint64_t enumerated = 0;
    for (int w = 0; w < threads; ++w) {
        if (!best[static_cast<std::size_t>(w)].centers.empty())
            merged.offer(best[static_cast<std::size_t>(w)].cost, best[static_cast<std::size_t>(w)].centers);
        enumerated += counts[static_cast<std::size_t>(w)];
    }

    OracleResult res;
    res.sol = solution_cost(inst, merged.centers);
    res.subsets_enumerated = enumerated;
    return res;
}

std::map<std::vector<int>, double> enumerate_costs(const Instance& inst, std::uint64_t budget) {
    const int f = inst.num_facilities();
    const int k = inst.k();
    const std::uint64_t total = n_choose_k(f, k);
    if (total > budget)
        throw BudgetExceededError("cost enumeration would cover " + std::to_string(total) +
                                  " subsets, budget is " + std::to_string(budget));
    std::map<std::vector<int>, double> out;
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
        out[comb] = solution_cost(inst, comb).cost;
        if (!next_colex(comb, f)) break;
    }
    return out;
}

}  // namespace robustkz
