#include "robustkz/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "robustkz/generators.hpp"

namespace robustkz {

namespace {

using Vec = std::vector<double>;

double l2(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Vec random_direction(Rng& rng, int dim) {
    Vec v(static_cast<std::size_t>(dim));
    while (true) {
        double norm2 = 0.0;
        for (auto& x : v) {
            x = rng.normal();
            norm2 += x * x;
        }
        if (norm2 > 1e-12) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& x : v) x *= inv;
            return v;
        }
    }
}

std::string describe_config(std::uint64_t seed, std::uint64_t index) {
    std::ostringstream os;
    os << "seed=" << seed << " sample=" << index;
    return os.str();
}

}  // namespace

CheckReport check_projection_lemma(int samples_per_dim, const std::vector<int>& dims,
                                   std::uint64_t seed) {
    CheckReport rep;
    rep.name = "projection-lemma";
    double worst_slack = -std::numeric_limits<double>::infinity();
    for (int dim : dims) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(dim)));
        for (int s = 0; s < samples_per_dim; ++s) {
            auto random_set = [&](int count) {
                std::vector<Vec> out;
                for (int i = 0; i < count; ++i) {
                    Vec v(static_cast<std::size_t>(dim));
                    for (auto& x : v) x = 2.0 * rng.normal();
                    out.push_back(std::move(v));
                }
                return out;
            };
            const auto X = random_set(1 + rng.uniform_int(5));
            const auto B = random_set(1 + rng.uniform_int(5));
            const auto P = random_set(3);
            auto nearest_in = [&](const Vec& v, const std::vector<Vec>& S) {
                std::size_t best = 0;
                double best_d = l2(v, S[0]);
                for (std::size_t i = 1; i < S.size(); ++i) {
                    const double d = l2(v, S[i]);
                    if (d < best_d) {
                        best_d = d;
                        best = i;
                    }
                }
                return std::make_pair(best, best_d);
            };
            for (const auto& x : X) {
                const auto [sx, unused] = nearest_in(x, B);
                for (const auto& p : P) {
                    const double lhs = l2(p, B[sx]);
                    const double rhs = 2.0 * l2(p, x) + nearest_in(p, B).second;
                    worst_slack = std::max(worst_slack, lhs - rhs);
                    rep.expect(lhs <= rhs + 1e-12,
                               "projection bound violated at dim=" + std::to_string(dim) + " " +
                                   describe_config(seed, static_cast<std::uint64_t>(s)));
                }
            }
        }
    }
    rep.metrics["worst_slack"] = worst_slack;
    return rep;
}

CheckReport check_assignment_lemma(std::uint64_t samples, const std::vector<int>& dims,
                                   std::uint64_t seed, double alpha, double beta0, double bound) {
    CheckReport rep;
    rep.name = "assignment-lemma";
    double max_ratio = 0.0;
    std::uint64_t case1 = 0;
    for (int dim : dims) {
        if (dim < 2) throw std::invalid_argument("mirror configurations need dimension >= 2");
        Rng rng(seed ^ (0xbf58476d1ce4e5b9ull * static_cast<std::uint64_t>(dim)));
        const std::uint64_t per_dim = samples / dims.size();
        for (std::uint64_t s = 0; s < per_dim; ++s) {
            // normalized frame: o at the origin, b = -e1, mirror point q = +e1
            Vec o(static_cast<std::size_t>(dim), 0.0);
            Vec b(static_cast<std::size_t>(dim), 0.0);
            b[0] = -1.0;
            Vec q(static_cast<std::size_t>(dim), 0.0);
            q[0] = 1.0;

            Vec b_serving = random_direction(rng, dim);
            double norm;
            const double pick = rng.uniform01();
            if (pick < 0.4)
                norm = 1.0;
            else if (pick < 0.7)
                norm = 1.0 + 0.5 * std::abs(rng.normal());
            else
                norm = rng.uniform(1.0, 4.0);
            for (auto& x : b_serving) x *= norm;

            Vec p = random_direction(rng, dim);
            double pnorm;
            const double pickp = rng.uniform01();
            if (pickp < 0.3)
                pnorm = beta0 + 0.3 * std::abs(rng.normal());
            else if (pickp < 0.6)
                pnorm = std::max(beta0, 1.0 + 0.05 * rng.normal());
            else
                pnorm = rng.uniform(beta0, 3.0);
            for (auto& x : p) x *= pnorm;

            const bool mirror_hit = l2(b_serving, q) <= alpha;
            Vec sigma_o;
            if (mirror_hit) {
                ++case1;
                // adversarial snap: alpha away from o, directly away from p
                sigma_o.assign(static_cast<std::size_t>(dim), 0.0);
                const double pl = l2(p, o);
                for (int i = 0; i < dim; ++i)
                    sigma_o[static_cast<std::size_t>(i)] = -alpha * p[static_cast<std::size_t>(i)] / pl;
            } else {
                sigma_o = b;
            }
            const double ratio = displacement_ratio(o, sigma_o, p, b_serving);
            max_ratio = std::max(max_ratio, ratio);
            rep.expect(ratio <= bound + 1e-9,
                       "displacement ratio " + std::to_string(ratio) + " above bound at dim=" +
                           std::to_string(dim) + " " + describe_config(seed, s));
        }
    }
    rep.metrics["max_ratio"] = max_ratio;
    rep.metrics["mirror_rule_configs"] = case1;
    return rep;
}

CheckReport check_eps_net(int calls, std::uint64_t seed) {
    CheckReport rep;
    rep.name = "eps-net";
    Rng rng(seed);
    std::size_t max_net = 0;
    double max_spread = 0.0;  // radius / eps at the largest net, logged only
    for (int c = 0; c < calls; ++c) {
        const int dim = 1 + rng.uniform_int(3);
        const int n = 4 + rng.uniform_int(56);
        std::vector<std::vector<double>> coords;
        for (int i = 0; i < n; ++i) {
            std::vector<double> v(static_cast<std::size_t>(dim));
            for (auto& x : v) x = rng.uniform(0.0, 10.0);
            coords.push_back(std::move(v));
        }
        const MetricSpace space = MetricSpace::lq(std::move(coords), 2.0);
        std::vector<PointId> candidates;
        for (int i = 0; i < n; ++i) candidates.push_back(i);
        const Ball ball{rng.uniform_int(n), rng.uniform(1.0, 12.0)};
        const double eps = rng.uniform(0.05, ball.radius / 2.0);
        const auto net = space.ball_decompose(ball, eps, candidates);
        const std::string where = describe_config(seed, static_cast<std::uint64_t>(c));
        if (net.size() > max_net) {
            max_net = net.size();
            max_spread = ball.radius / eps;
        }

        for (std::size_t i = 0; i < net.size(); ++i) {
            rep.expect(space.distance(net[i], ball.center) <= ball.radius,
                       "net point outside the ball " + where);
            for (std::size_t j = i + 1; j < net.size(); ++j)
                rep.expect(space.distance(net[i], net[j]) > eps, "net not separated " + where);
        }
        for (PointId cand : candidates) {
            if (space.distance(cand, ball.center) > ball.radius) continue;
            double dmin = std::numeric_limits<double>::infinity();
            for (PointId a : net) dmin = std::min(dmin, space.distance(cand, a));
            rep.expect(dmin <= eps, "net not dense " + where);
        }
    }
    rep.metrics["max_net_size"] = max_net;
    rep.metrics["spread_at_max"] = max_spread;
    return rep;
}

CheckReport check_coreset_instance(const Instance& inst, double eps, std::uint64_t oracle_budget,
                                   CheckReport* accumulate) {
    CheckReport local;
    CheckReport& rep = accumulate ? *accumulate : local;
    if (rep.name.empty()) rep.name = "coreset";

    const BicriteriaSolution bic = bicriteria_exact(inst, oracle_budget);
    const Coreset cs = build_coreset(inst, bic, eps);
    const auto costs = enumerate_costs(inst, oracle_budget);
    const double opt = bic.cost;

    auto rel_tol = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };

    for (int g = 0; g < inst.num_groups(); ++g) {
        double orig = 0.0, mapped = 0.0;
        for (const auto& [p, w] : inst.group(g).weights) orig += w;
        for (const auto& [p, w] : cs.weights[static_cast<std::size_t>(g)].weights) mapped += w;
        rep.expect(std::abs(orig - mapped) <= rel_tol(orig), "group weight not conserved");
    }

    const double sub_ball_scale =
        cs.params.eps / (cs.params.alpha * pow_z(3.0, inst.z() + 2));
    for (int p = 0; p < inst.n(); ++p) {
        const int r = cs.rep[static_cast<std::size_t>(p)];
        if (r < 0) continue;
        const auto& ra = cs.ring_assignment[static_cast<std::size_t>(p)];
        const double limit =
            cs.params.radius_r == 0.0
                ? 0.0
                : 2.0 * sub_ball_scale * std::ldexp(cs.params.radius_r, ra.ring);
        rep.expect(inst.dist_pp(p, r) <= limit + 1e-12, "representative displaced too far");
    }

    double opt_cost_mapped_max = 0.0;
    for (const auto& [X, cost_x] : costs) {
        for (int g = 0; g < inst.num_groups(); ++g) {
            const double cw = group_cost(inst, inst.group(g), X);
            const double cm = group_cost(inst, cs.weights[static_cast<std::size_t>(g)], X);
            rep.expect(cm >= (1.0 - eps) * cw - rel_tol(cw), "coreset lower bound violated");
            rep.expect(cm <= (1.0 + eps) * cost_x + rel_tol(cost_x),
                       "coreset upper bound violated");
            if (cost_x <= opt + rel_tol(opt)) opt_cost_mapped_max = std::max(opt_cost_mapped_max, cm);
        }
        const auto split = coreset_error_report(inst, cs, X);
        for (int g = 0; g < inst.num_groups(); ++g) {
            const auto& e = split[static_cast<std::size_t>(g)];
            const double cw = group_cost(inst, inst.group(g), X);
            rep.expect(e.e_near <= eps / 3.0 * opt + rel_tol(opt), "near-part error above bound");
            rep.expect(e.e_seed <= eps / 3.0 * opt + rel_tol(opt), "seed-part error above bound");
            rep.expect(e.e_sol <= eps / 3.0 * cw + rel_tol(cw), "solution-part error above bound");
            rep.expect(e.total <= e.e_near + e.e_seed + e.e_sol + rel_tol(e.total),
                       "error parts below the total");
        }
    }
    // at the optimum the mapped cost stays within (1 + eps) of it
    rep.expect(opt_cost_mapped_max <= (1.0 + eps) * opt + rel_tol(opt),
               "mapped cost at the optimum above (1 + eps) OPT");
    rep.metrics["coreset_points"] = cs.points.size();
    return rep;
}

CheckReport check_gadget_gap(int k, int part_size, EdgePattern pattern, CodeMode mode, double eta,
                             int q, std::uint64_t seed, double edge_probability) {
    CheckReport rep;
    rep.name = "gadget-gap";
    const PartiteGraph g = make_partite_graph(k, part_size, pattern, edge_probability, seed);
    const CodeBook code = build_code(g.num_vertices(), eta, mode, seed);
    const Instance inst = mcis_to_kcenter(g, code, q);
    const GapReport gap = verify_gap(inst, g, code, q);
    rep.expect(gap.gap_respected, "gadget gap violated");
    if (pattern == EdgePattern::None)
        rep.expect(gap.has_mcis, "edge-free graph lost its independent transversal");
    if (pattern == EdgePattern::Complete)
        rep.expect(!gap.has_mcis, "complete graph admitted an independent transversal");
    rep.metrics["has_mcis"] = gap.has_mcis;
    rep.metrics["opt_pow_q"] = gap.opt_pow_q;
    rep.metrics["vertex_only_opt_pow_q"] = gap.vertex_only_opt_pow_q;
    rep.metrics["yes_bound"] = gap.yes_bound;
    rep.metrics["no_bound"] = gap.no_bound;
    rep.metrics["points"] = inst.n();
    return rep;
}

}  // namespace robustkz
