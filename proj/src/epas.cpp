#include "robustkz/epas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace robustkz {

std::vector<double> radii_grid(const Instance& inst, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("radius grid needs eps > 0");
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (int p = 0; p < inst.n(); ++p)
        for (int f = 0; f < inst.num_facilities(); ++f) {
            const double d = inst.dist_pf(p, f);
            dmax = std::max(dmax, d);
            if (d > 0.0) dmin = std::min(dmin, d);
        }
    if (dmax == 0.0) return {0.0};
    const double step = 1.0 + eps / (10.0 * inst.z());
    std::vector<double> grid;
    double v = dmin;
    while (true) {
        grid.push_back(v);
        if (v >= dmax) break;
        v *= step;
    }
    return grid;
}

namespace {

struct Incumbent {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<int> centers;

    bool offer(double c, const std::vector<int>& x) {
        if (c < cost || (c == cost && (centers.empty() || x < centers))) {
            cost = c;
            centers = x;
            return true;
        }
        return false;
    }
};

// Candidate facilities for one guessed (leader, radius) ball: the lowest
// index facility of every sub-ball of an eps/(20 z)-net over the facilities
// inside the ball. A zero radius keeps just the facility co-located with the
// leader, if any.
std::vector<int> ball_candidates(const Instance& inst, int leader, double radius, double eps) {
    std::vector<int> out;
    if (radius == 0.0) {
        for (int f = 0; f < inst.num_facilities(); ++f)
            if (inst.dist_pf(leader, f) == 0.0) {
                out.push_back(f);
                break;
            }
        return out;
    }
    std::vector<int> inside;
    for (int f = 0; f < inst.num_facilities(); ++f)
        if (inst.dist_pf(leader, f) <= radius) inside.push_back(f);
    if (inside.empty()) return out;

    const double net_radius = eps / (20.0 * inst.z()) * radius;
    std::vector<PointId> inside_ids;
    inside_ids.reserve(inside.size());
    for (int f : inside) inside_ids.push_back(inst.facility_id(f));
    const Ball ball{inst.point_id(leader), radius};
    const std::vector<PointId> net = inst.metric().ball_decompose(ball, net_radius, inside_ids);

    std::vector<int> pick(net.size(), -1);
    for (std::size_t idx = 0; idx < inside.size(); ++idx) {
        int best = 0;
        double best_d = inst.metric().distance(inside_ids[idx], net[0]);
        for (std::size_t s = 1; s < net.size(); ++s) {
            const double d = inst.metric().distance(inside_ids[idx], net[s]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(s);
            }
        }
        if (pick[static_cast<std::size_t>(best)] < 0)
            pick[static_cast<std::size_t>(best)] = inside[idx];  // facilities scanned ascending
    }
    for (int f : pick)
        if (f >= 0) out.push_back(f);
    return out;
}

// Distinct candidate sets per leader, radii collapsed: different radii that
// produce the same candidate set contribute identical work.
std::vector<std::vector<int>> distinct_candidate_sets(const Instance& inst, int leader,
                                                      const std::vector<double>& grid, double eps) {
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;
    auto keep = [&](std::vector<int> t) {
        if (t.empty()) return;
        if (seen.insert(t).second) out.push_back(std::move(t));
    };
    keep(ball_candidates(inst, leader, 0.0, eps));
    for (double r : grid)
        if (r > 0.0) keep(ball_candidates(inst, leader, r, eps));
    return out;
}

}  // namespace

SolveOutcome leader_search(const Instance& inst, double eps, std::uint64_t budget, int threads) {
    if (eps <= 0.0) throw std::invalid_argument("leader search needs eps > 0");
    const int n = inst.n();
    const int k = inst.k();
    const std::vector<double> grid = radii_grid(inst, eps);

    std::vector<std::vector<std::vector<int>>> cands(static_cast<std::size_t>(n));
    double per_leader_sum = 0.0;
    for (int p = 0; p < n; ++p) {
        cands[static_cast<std::size_t>(p)] = distinct_candidate_sets(inst, p, grid, eps);
        for (const auto& t : cands[static_cast<std::size_t>(p)])
            per_leader_sum += static_cast<double>(t.size());
    }
    double planned = 1.0;
    for (int i = 0; i < k; ++i) planned *= per_leader_sum;
    const bool certified = planned <= static_cast<double>(budget);

    // Walks every (leader, candidate-set, member) product for the positions
    // in canonical order and reports each complete center tuple.
    struct Walker {
        const Instance& inst;
        const std::vector<std::vector<std::vector<int>>>& cands;
        int k;
        Incumbent inc;
        std::uint64_t count = 0;
        std::uint64_t limit;
        std::vector<double> scratch;
        std::vector<int> centers_scratch;

        bool evaluate(const std::vector<const std::vector<int>*>& sets, std::vector<int>& members,
                      int depth) {
            if (depth == k) {
                if (count >= limit) return false;
                ++count;
                centers_scratch = members;
                std::sort(centers_scratch.begin(), centers_scratch.end());
                centers_scratch.erase(std::unique(centers_scratch.begin(), centers_scratch.end()),
                                      centers_scratch.end());
                const double c = solution_cost_bounded(inst, centers_scratch, inc.cost, scratch);
                if (std::isfinite(c)) inc.offer(c, centers_scratch);
                return true;
            }
            for (int m : *sets[static_cast<std::size_t>(depth)]) {
                members[static_cast<std::size_t>(depth)] = m;
                if (!evaluate(sets, members, depth + 1)) return false;
            }
            return true;
        }

        bool sets_product(std::vector<const std::vector<int>*>& sets, const std::vector<int>& leaders,
                          int depth) {
            if (depth == k) {
                std::vector<int> members(static_cast<std::size_t>(k));
                return evaluate(sets, members, 0);
            }
            for (const auto& t : cands[static_cast<std::size_t>(leaders[static_cast<std::size_t>(depth)])]) {
                sets[static_cast<std::size_t>(depth)] = &t;
                if (!sets_product(sets, leaders, depth + 1)) return false;
            }
            return true;
        }

        bool leader_tuple(const std::vector<int>& leaders) {
            std::vector<const std::vector<int>*> sets(static_cast<std::size_t>(k));
            return sets_product(sets, leaders, 0);
        }
    };

    struct RangeResult {
        Incumbent inc;
        std::uint64_t count = 0;
    };
    auto run_range = [&](std::uint64_t first, std::uint64_t last, std::uint64_t limit) {
        // leader tuples indexed base-n, position 0 most significant
        Walker w{inst, cands, k, {}, 0, limit, {}, {}};
        std::vector<int> leaders(static_cast<std::size_t>(k));
        for (std::uint64_t t = first; t < last; ++t) {
            std::uint64_t v = t;
            for (int i = k - 1; i >= 0; --i) {
                leaders[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(n));
                v /= static_cast<std::uint64_t>(n);
            }
            if (!w.leader_tuple(leaders)) break;
        }
        return RangeResult{std::move(w.inc), w.count};
    };

    std::uint64_t tuple_count = 1;
    for (int i = 0; i < k; ++i) {
        if (tuple_count > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n)) {
            tuple_count = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        tuple_count *= static_cast<std::uint64_t>(n);
    }

    Incumbent best;
    std::uint64_t enumerated = 0;
    if (!certified || threads <= 1) {
        // canonical prefix when the budget binds, so results do not depend
        // on the worker count
        RangeResult r =
            run_range(0, tuple_count, certified ? std::numeric_limits<std::uint64_t>::max() : budget);
        best = std::move(r.inc);
        enumerated = r.count;
    } else {
        const int nw = static_cast<int>(std::min<std::uint64_t>(
            static_cast<std::uint64_t>(threads), tuple_count));
        std::vector<RangeResult> results(static_cast<std::size_t>(nw));
        std::vector<std::thread> pool;
        std::vector<std::uint64_t> bounds;
        for (int i = 0; i <= nw; ++i)
            bounds.push_back(tuple_count * static_cast<std::uint64_t>(i) / static_cast<std::uint64_t>(nw));
        for (int i = 0; i < nw; ++i)
            pool.emplace_back([&, i] {
                results[static_cast<std::size_t>(i)] =
                    run_range(bounds[static_cast<std::size_t>(i)], bounds[static_cast<std::size_t>(i) + 1],
                              std::numeric_limits<std::uint64_t>::max());
            });
        for (auto& t : pool) t.join();
        for (const auto& r : results) {
            if (!r.inc.centers.empty()) best.offer(r.inc.cost, r.inc.centers);
            enumerated += r.count;
        }
    }

    if (best.centers.empty())
        throw std::runtime_error("leader search found no feasible center set");

    SolveOutcome out;
    out.sol = solution_cost(inst, best.centers);
    out.stats.tuples_enumerated = enumerated;
    out.stats.certified = certified;
    out.stats.ratio_bound = 1.0 + eps;
    return out;
}

SolveOutcome epas_solve(const Instance& inst, double eps, const BicriteriaSolution& bic,
                        std::uint64_t budget, int threads, const WarnFn& warn) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epas needs eps in (0, 1)");
    const Coreset cs = build_coreset(inst, bic, eps / 10.0, warn);
    const Instance reduced = coreset_instance(cs, inst);
    SolveOutcome inner = leader_search(reduced, eps / 10.0, budget, threads);
    SolveOutcome out;
    out.sol = solution_cost(inst, inner.sol.centers);
    out.stats = inner.stats;
    const double e = eps / 10.0;
    out.stats.ratio_bound = (1.0 + e) * (1.0 + e) * (1.0 + 2.0 * e);
    out.stats.certified = inner.stats.certified && bic.alpha_mode == AlphaMode::CertifiedByOracle;
    return out;
}

}  // namespace robustkz
