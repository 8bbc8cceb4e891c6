#include "robustkz/bicriteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robustkz {

BicriteriaSolution bicriteria_exact(const Instance& inst, std::uint64_t oracle_budget) {
    const OracleResult opt = exact_solve(inst, oracle_budget);
    BicriteriaSolution b;
    b.centers = opt.sol.centers;
    b.cost = opt.sol.cost;
    b.alpha = 1.0;
    b.beta = static_cast<double>(b.centers.size()) / inst.k();
    b.alpha_mode = AlphaMode::CertifiedByOracle;
    return b;
}

double certify_alpha(const Instance& inst, std::span<const int> B, std::uint64_t oracle_budget) {
    const double cost_b = solution_cost(inst, B).cost;
    const double opt = exact_solve(inst, oracle_budget).sol.cost;
    if (opt == 0.0) {
        if (cost_b == 0.0) return 1.0;
        throw std::runtime_error("bicriteria cost is positive on a zero-cost instance");
    }
    return cost_b / opt;
}

BicriteriaSolution bicriteria_greedy(const Instance& inst, double target_beta,
                                     std::optional<double> assume_alpha,
                                     std::uint64_t oracle_budget) {
    if (target_beta < 1.0) throw std::invalid_argument("target beta must be >= 1");
    const int size = static_cast<int>(std::floor(target_beta * inst.k()));
    if (size > inst.num_facilities())
        throw std::invalid_argument("target beta opens more centers than there are facilities");

    const int n = inst.n();
    const int m = inst.num_groups();
    // max group weight per point
    std::vector<double> wmax(static_cast<std::size_t>(n), 0.0);
    for (int g = 0; g < m; ++g)
        for (const auto& [p, w] : inst.group(g).weights)
            wmax[static_cast<std::size_t>(p)] = std::max(wmax[static_cast<std::size_t>(p)], w);

    auto nearest_unopened = [&](int p, const std::vector<char>& open) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int f = 0; f < inst.num_facilities(); ++f) {
            if (open[static_cast<std::size_t>(f)]) continue;
            const double d = inst.dist_pf(p, f);
            if (d < best_d) {
                best_d = d;
                best = f;
            }
        }
        return best;
    };

    std::vector<char> open(static_cast<std::size_t>(inst.num_facilities()), 0);
    std::vector<int> centers;
    std::vector<double> dist_to_b(static_cast<std::size_t>(n),
                                  std::numeric_limits<double>::infinity());

    int heaviest = 0;
    for (int p = 1; p < n; ++p)
        if (wmax[static_cast<std::size_t>(p)] > wmax[static_cast<std::size_t>(heaviest)]) heaviest = p;

    auto add_center = [&](int f) {
        open[static_cast<std::size_t>(f)] = 1;
        centers.push_back(f);
        for (int p = 0; p < n; ++p)
            dist_to_b[static_cast<std::size_t>(p)] =
                std::min(dist_to_b[static_cast<std::size_t>(p)], inst.dist_pf(p, f));
    };

    add_center(nearest_unopened(heaviest, open));
    while (static_cast<int>(centers.size()) < size) {
        int worst_p = -1;
        double worst_score = -1.0;
        for (int p = 0; p < n; ++p) {
            const double score =
                wmax[static_cast<std::size_t>(p)] * pow_z(dist_to_b[static_cast<std::size_t>(p)], inst.z());
            if (score > worst_score) {
                worst_score = score;
                worst_p = p;
            }
        }
        int f = worst_score > 0.0 ? nearest_unopened(worst_p, open) : -1;
        if (f < 0) {
            // everything already served at distance zero: fill deterministically
            for (int cand = 0; cand < inst.num_facilities(); ++cand)
                if (!open[static_cast<std::size_t>(cand)]) {
                    f = cand;
                    break;
                }
        }
        add_center(f);
    }
    std::sort(centers.begin(), centers.end());

    BicriteriaSolution b;
    b.centers = std::move(centers);
    b.cost = solution_cost(inst, b.centers).cost;
    b.beta = static_cast<double>(b.centers.size()) / inst.k();
    if (n_choose_k(inst.num_facilities(), inst.k()) <= oracle_budget) {
        // the certified parameter is an upper bound on cost(B)/OPT and never
        // drops below 1, even when extra centers beat the k-center optimum
        b.alpha = std::max(1.0, certify_alpha(inst, b.centers, oracle_budget));
        b.alpha_mode = AlphaMode::CertifiedByOracle;
    } else if (assume_alpha) {
        b.alpha = *assume_alpha;
        b.alpha_mode = AlphaMode::Configured;
    } else {
        b.alpha = std::numeric_limits<double>::quiet_NaN();
        b.alpha_mode = AlphaMode::Unknown;
    }
    return b;
}

}  // namespace robustkz
