#include "robustkz/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace robustkz {

namespace {

Coreset degenerate_coreset(const Instance& inst, const BicriteriaSolution& bic, double eps,
                           double tau) {
    const int n = inst.n();
    Coreset cs;
    cs.rep.assign(static_cast<std::size_t>(n), -1);
    cs.ring_assignment.assign(static_cast<std::size_t>(n), RingAssignment{});
    std::vector<int> class_of(static_cast<std::size_t>(n), -1);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < p; ++q) {
            if (inst.dist_pp(q, p) == 0.0) {
                cs.rep[static_cast<std::size_t>(p)] = cs.rep[static_cast<std::size_t>(q)];
                class_of[static_cast<std::size_t>(p)] = class_of[static_cast<std::size_t>(q)];
                break;
            }
        }
        if (cs.rep[static_cast<std::size_t>(p)] < 0) {
            cs.rep[static_cast<std::size_t>(p)] = p;
            class_of[static_cast<std::size_t>(p)] = static_cast<int>(cs.points.size());
            cs.points.push_back(p);
        }
        cs.ring_assignment[static_cast<std::size_t>(p)] =
            RingAssignment{0, 0, class_of[static_cast<std::size_t>(p)]};
    }
    for (const auto& g : inst.groups()) {
        std::map<int, double> agg;
        for (const auto& [p, w] : g.weights) agg[cs.rep[static_cast<std::size_t>(p)]] += w;
        Group out;
        out.weights.assign(agg.begin(), agg.end());
        cs.weights.push_back(std::move(out));
    }
    cs.params = CoresetParams{eps, bic.alpha, 0.0, tau, 0, bic.centers};
    return cs;
}

}  // namespace

Coreset build_coreset(const Instance& inst, const BicriteriaSolution& bic, double eps,
                      const WarnFn& warn) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("coreset eps must lie in (0, 1)");
    if (!std::isfinite(bic.alpha) || bic.alpha < 1.0)
        throw std::invalid_argument("coreset needs a finite bicriteria alpha >= 1");
    if (bic.centers.empty()) throw std::invalid_argument("coreset needs a nonempty seed");

    const int n = inst.n();
    const int z = inst.z();
    const int nb = static_cast<int>(bic.centers.size());
    const double alpha = bic.alpha;

    double tau = 0.0;
    for (const auto& g : inst.groups()) tau = std::max(tau, g.l1_norm());

    const double cost_b = solution_cost(inst, bic.centers).cost;
    if (cost_b == 0.0) return degenerate_coreset(inst, bic, eps, tau);

    const double radius_r = std::pow(cost_b / (alpha * tau), 1.0 / z);

    std::vector<char> weighted(static_cast<std::size_t>(n), 0);
    for (const auto& g : inst.groups())
        for (const auto& [p, w] : g.weights)
            if (w > 0.0) weighted[static_cast<std::size_t>(p)] = 1;

    // smallest ball around any center containing each point
    std::vector<int> ring_of(static_cast<std::size_t>(n), 0);
    std::vector<int> center_of(static_cast<std::size_t>(n), 0);
    int max_needed = 0;
    for (int p = 0; p < n; ++p) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < nb; ++i)
            dmin = std::min(dmin, inst.dist_pf(p, bic.centers[static_cast<std::size_t>(i)]));
        int j = 0;
        while (std::ldexp(radius_r, j) < dmin) {
            ++j;
            if (j > 1100) throw std::runtime_error("ring index overflow: degenerate seed radius");
        }
        ring_of[static_cast<std::size_t>(p)] = j;
        for (int i = 0; i < nb; ++i) {
            if (inst.dist_pf(p, bic.centers[static_cast<std::size_t>(i)]) <= std::ldexp(radius_r, j)) {
                center_of[static_cast<std::size_t>(p)] = i;
                break;
            }
        }
        if (weighted[static_cast<std::size_t>(p)]) max_needed = std::max(max_needed, j);
    }

    int ring_count =
        static_cast<int>(std::ceil(2.0 * std::log2(std::max(1.0, alpha * inst.weight_aspect_ratio()))));
    if (max_needed > ring_count) {
        if (warn)
            warn("extending ring count from " + std::to_string(ring_count) + " to " +
                 std::to_string(max_needed) + " to cover all weighted points");
        ring_count = max_needed;
    }

    Coreset cs;
    cs.rep.assign(static_cast<std::size_t>(n), -1);
    cs.ring_assignment.assign(static_cast<std::size_t>(n), RingAssignment{});
    std::vector<std::map<int, double>> agg(inst.groups().size());

    const double sub_ball_scale = eps / (alpha * pow_z(3.0, z + 2));

    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j <= ring_count; ++j) {
            std::vector<int> members;  // ascending point index
            for (int p = 0; p < n; ++p)
                if (center_of[static_cast<std::size_t>(p)] == i &&
                    ring_of[static_cast<std::size_t>(p)] == j)
                    members.push_back(p);
            if (members.empty()) continue;

            const double ball_radius = std::ldexp(radius_r, j);
            const double net_radius = sub_ball_scale * ball_radius;
            std::vector<PointId> member_ids;
            member_ids.reserve(members.size());
            for (int p : members) member_ids.push_back(inst.point_id(p));
            const Ball ball{inst.facility_id(bic.centers[static_cast<std::size_t>(i)]), ball_radius};
            const std::vector<PointId> net = inst.metric().ball_decompose(ball, net_radius, member_ids);

            // each member joins its nearest net point, ties to the earlier one
            std::vector<std::vector<int>> sub_ball_members(net.size());
            for (int p : members) {
                int best = 0;
                double best_d = inst.metric().distance(inst.point_id(p), net[0]);
                for (std::size_t s = 1; s < net.size(); ++s) {
                    const double d = inst.metric().distance(inst.point_id(p), net[s]);
                    if (d < best_d) {
                        best_d = d;
                        best = static_cast<int>(s);
                    }
                }
                sub_ball_members[static_cast<std::size_t>(best)].push_back(p);
                cs.ring_assignment[static_cast<std::size_t>(p)] = RingAssignment{i, j, best};
            }

            for (const auto& sub : sub_ball_members) {
                if (sub.empty()) continue;
                const int rep = sub.front();  // lowest index, members are ascending
                cs.points.push_back(rep);
                for (int p : sub) cs.rep[static_cast<std::size_t>(p)] = rep;
                for (std::size_t g = 0; g < inst.groups().size(); ++g) {
                    double sum = 0.0;
                    for (int p : sub) {
                        const auto& w = inst.group(static_cast<int>(g)).weights;
                        const auto it = std::lower_bound(w.begin(), w.end(), std::make_pair(p, 0.0));
                        if (it != w.end() && it->first == p) sum += it->second;
                    }
                    if (sum > 0.0) agg[g][rep] += sum;
                }
            }
        }
    }

    std::sort(cs.points.begin(), cs.points.end());
    for (const auto& a : agg) {
        Group out;
        out.weights.assign(a.begin(), a.end());
        cs.weights.push_back(std::move(out));
    }
    cs.params = CoresetParams{eps, alpha, radius_r, tau, ring_count, bic.centers};
    return cs;
}

Instance coreset_instance(const Coreset& cs, const Instance& original) {
    std::vector<PointId> point_ids;
    point_ids.reserve(cs.points.size());
    std::vector<int> local_of(static_cast<std::size_t>(original.n()), -1);
    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        point_ids.push_back(original.point_id(cs.points[i]));
        local_of[static_cast<std::size_t>(cs.points[i])] = static_cast<int>(i);
    }
    std::vector<Group> groups;
    groups.reserve(cs.weights.size());
    for (const auto& g : cs.weights) {
        Group out;
        for (const auto& [p, w] : g.weights)
            out.weights.emplace_back(local_of[static_cast<std::size_t>(p)], w);
        std::sort(out.weights.begin(), out.weights.end());
        groups.push_back(std::move(out));
    }
    return Instance(original.metric_ptr(), std::move(point_ids), original.facility_ids(), false,
                    original.k(), original.z(), std::move(groups));
}

std::vector<ErrorSplit> coreset_error_report(const Instance& inst, const Coreset& cs,
                                             std::span<const int> X) {
    const double radius_r = cs.params.radius_r;
    const auto& B = cs.params.bicriteria_centers;
    std::vector<ErrorSplit> out;
    out.reserve(inst.groups().size());
    for (std::size_t g = 0; g < inst.groups().size(); ++g) {
        ErrorSplit e;
        const double orig = group_cost(inst, inst.group(static_cast<int>(g)), X);
        const double mapped = group_cost(inst, cs.weights[g], X);
        e.total = std::abs(mapped - orig);
        for (const auto& [p, w] : inst.group(static_cast<int>(g)).weights) {
            if (w == 0.0) continue;
            const int r = cs.rep[static_cast<std::size_t>(p)];
            if (r < 0) continue;
            const double dx = inst.dist_point_to_centers(p, X);
            const double db = inst.dist_point_to_centers(p, B);
            const double drx = inst.dist_point_to_centers(r, X);
            const double term = w * std::abs(pow_z(dx, inst.z()) - pow_z(drx, inst.z()));
            if (db <= radius_r && dx <= radius_r)
                e.e_near += term;
            else if (db > radius_r && dx <= db)
                e.e_seed += term;
            else
                e.e_sol += term;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace robustkz
