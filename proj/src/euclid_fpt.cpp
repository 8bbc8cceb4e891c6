#include "robustkz/euclid_fpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace robustkz {

namespace {

void require_euclidean(const Instance& inst, const char* what) {
    if (!inst.metric().is_euclidean())
        throw std::invalid_argument(std::string(what) + " requires a Euclidean (l2) instance");
}

double l2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("coordinate dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// nearest facility of S to `f`, ties to the smallest facility index
int nearest_facility(const Instance& inst, int f, std::span<const int> S) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int s : S) {
        const double d = inst.dist_ff(f, s);
        if (d < best_d || (d == best_d && (best < 0 || s < best))) {
            best_d = d;
            best = s;
        }
    }
    return best;
}

}  // namespace

ClosureSet midpoint_closure(const Instance& inst, std::span<const int> B) {
    require_euclidean(inst, "midpoint closure");
    if (B.empty()) throw std::invalid_argument("midpoint closure of an empty set");
    const MetricSpace& m = inst.metric();

    std::vector<int> all_facilities(static_cast<std::size_t>(inst.num_facilities()));
    for (int f = 0; f < inst.num_facilities(); ++f) all_facilities[static_cast<std::size_t>(f)] = f;
    std::vector<PointId> facility_ids = inst.facility_ids();

    struct Entry {
        int member;
        ClosureSet::Origin origin;
    };
    std::vector<Entry> entries;
    for (int b : B) entries.push_back({b, {true, -1, -1}});

    const std::size_t nb = B.size();
    std::vector<double> mid;
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = i; j < nb; ++j) {
            const auto ca = m.coords_of(inst.facility_id(B[i]));
            const auto cb = m.coords_of(inst.facility_id(B[j]));
            mid.resize(ca.size());
            for (std::size_t t = 0; t < ca.size(); ++t) mid[t] = 0.5 * (ca[t] + cb[t]);
            const PointId snapped_id = m.nearest_to_coords(mid, facility_ids).first;
            int snapped = -1;
            for (int f = 0; f < inst.num_facilities(); ++f)
                if (inst.facility_id(f) == snapped_id) {
                    snapped = f;
                    break;
                }
            entries.push_back({snapped, {false, B[i], B[j]}});
        }
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.member != b.member) return a.member < b.member;
        return a.origin.seed > b.origin.seed;  // seed origin wins on ties
    });
    ClosureSet cl;
    for (const auto& e : entries) {
        if (!cl.members.empty() && cl.members.back() == e.member) continue;
        cl.members.push_back(e.member);
        cl.origins.push_back(e.origin);
    }
    return cl;
}

std::vector<int> projection_assign(const Instance& inst, std::span<const int> X,
                                   std::span<const int> B) {
    if (B.empty()) throw std::invalid_argument("projection onto an empty set");
    std::vector<int> sigma;
    sigma.reserve(X.size());
    for (int x : X) sigma.push_back(nearest_facility(inst, x, B));
    return sigma;
}

AssignmentReport sigma_assign(const Instance& inst, std::span<const int> O,
                              std::span<const int> B, double alpha, double beta0) {
    require_euclidean(inst, "mirror-ball assignment");
    if (B.empty()) throw std::invalid_argument("assignment onto an empty set");
    const MetricSpace& m = inst.metric();
    const ClosureSet cl = midpoint_closure(inst, B);

    AssignmentReport rep;
    rep.alpha = alpha;
    rep.beta0 = beta0;
    rep.sigma.reserve(O.size());
    rep.used_mirror_rule.assign(O.size(), 0);
    std::vector<double> q;
    for (std::size_t oi = 0; oi < O.size(); ++oi) {
        const int o = O[oi];
        const int b = nearest_facility(inst, o, B);
        const double dob = inst.dist_ff(o, b);
        if (dob == 0.0) {
            rep.sigma.push_back(b);
            continue;
        }
        const auto co = m.coords_of(inst.facility_id(o));
        const auto cb = m.coords_of(inst.facility_id(b));
        q.resize(co.size());
        for (std::size_t t = 0; t < co.size(); ++t) q[t] = 2.0 * co[t] - cb[t];
        bool mirror_hit = false;
        for (int bm : B) {
            if (l2(q, m.coords_of(inst.facility_id(bm))) <= alpha * dob) {
                mirror_hit = true;
                break;
            }
        }
        if (mirror_hit) {
            rep.sigma.push_back(nearest_facility(inst, o, cl.members));
            rep.used_mirror_rule[oi] = 1;
        } else {
            rep.sigma.push_back(b);
        }
    }

    std::vector<int> image = rep.sigma;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());

    rep.far_point.assign(static_cast<std::size_t>(inst.n()), 0);
    rep.point_ratio.assign(static_cast<std::size_t>(inst.n()), 0.0);
    for (int p = 0; p < inst.n(); ++p) {
        const double dpo = inst.dist_point_to_centers(p, O);
        const double dpb = inst.dist_point_to_centers(p, B);
        const double dps = inst.dist_point_to_centers(p, image);
        const bool far = dpo >= beta0 * dpb;
        rep.far_point[static_cast<std::size_t>(p)] = far ? 1 : 0;
        const double den = 2.0 * dpo + dpb;
        const double ratio = dps == 0.0 ? 0.0 : dps / den;
        rep.point_ratio[static_cast<std::size_t>(p)] = ratio;
        if (far) rep.max_far_ratio = std::max(rep.max_far_ratio, ratio);
    }
    return rep;
}

double displacement_ratio(std::span<const double> o, std::span<const double> sigma_o,
                          std::span<const double> p, std::span<const double> b_serving) {
    const double den = 2.0 * l2(p, o) + l2(p, b_serving);
    if (den == 0.0) throw std::invalid_argument("degenerate configuration: p = o = b");
    return l2(p, sigma_o) / den;
}

SolveOutcome fpt_solve(const Instance& inst, const BicriteriaSolution& bic,
                       std::uint64_t budget, int threads) {
    require_euclidean(inst, "closure enumeration");
    const ClosureSet cl = midpoint_closure(inst, bic.centers);
    const int nc = static_cast<int>(cl.members.size());
    const int k = inst.k();
    if (nc < k) throw std::invalid_argument("closure smaller than k");
    const std::uint64_t total = n_choose_k(nc, k);
    if (total > budget)
        throw BudgetExceededError("closure enumeration would cover " + std::to_string(total) +
                                  " subsets, budget is " + std::to_string(budget));

    threads = std::max(1, std::min(threads, nc - k + 1));
    struct Best {
        double cost = std::numeric_limits<double>::infinity();
        std::vector<int> centers;
    };
    std::vector<Best> best(static_cast<std::size_t>(threads));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(threads), 0);

    auto worker = [&](int w) {
        std::vector<double> scratch;
        std::vector<int> comb(static_cast<std::size_t>(k));
        std::vector<int> centers(static_cast<std::size_t>(k));
        Best& inc = best[static_cast<std::size_t>(w)];
        for (int top = k - 1 + w; top < nc; top += threads) {
            for (int i = 0; i + 1 < k; ++i) comb[static_cast<std::size_t>(i)] = i;
            comb[static_cast<std::size_t>(k) - 1] = top;
            while (true) {
                for (int i = 0; i < k; ++i)
                    centers[static_cast<std::size_t>(i)] = cl.members[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
                ++counts[static_cast<std::size_t>(w)];
                const double c = solution_cost_bounded(inst, centers, inc.cost, scratch);
                if (std::isfinite(c) &&
                    (c < inc.cost || (c == inc.cost && (inc.centers.empty() || centers < inc.centers)))) {
                    inc.cost = c;
                    inc.centers = centers;
                }
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
                if (!advanced) break;
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    Best merged;
    std::uint64_t enumerated = 0;
    for (int w = 0; w < threads; ++w) {
        const Best& b = best[static_cast<std::size_t>(w)];
        if (!b.centers.empty() &&
            (b.cost < merged.cost || (b.cost == merged.cost && (merged.centers.empty() || b.centers < merged.centers)))) {
            merged.cost = b.cost;
            merged.centers = b.centers;
        }
        enumerated += counts[static_cast<std::size_t>(w)];
    }

    SolveOutcome out;
    out.sol = solution_cost(inst, merged.centers);
    out.stats.tuples_enumerated = enumerated;
    out.stats.certified = bic.alpha_mode == AlphaMode::CertifiedByOracle &&
                          bic.alpha <= 1.0 + kAssignmentEps0;
    out.stats.ratio_bound = pow_z(3.0, inst.z()) * (1.0 - kFptMargin);
    return out;
}

std::vector<CostSplit> cost_split(const Instance& inst, std::span<const int> X,
                                  std::span<const int> O, std::span<const int> B, double beta0) {
    if (!(beta0 > 0.0 && beta0 < 1.0)) throw std::invalid_argument("beta0 must lie in (0, 1)");
    std::vector<CostSplit> out;
    out.reserve(inst.groups().size());
    for (const auto& g : inst.groups()) {
        CostSplit s;
        for (const auto& [p, w] : g.weights) {
            if (w == 0.0) continue;
            const double term = w * pow_z(inst.dist_point_to_centers(p, X), inst.z());
            const bool far =
                inst.dist_point_to_centers(p, O) >= beta0 * inst.dist_point_to_centers(p, B);
            (far ? s.far_cost : s.near_cost) += term;
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace robustkz
