#include "doctest.h"
#include "robustkz/checks.hpp"
#include "robustkz/euclid_fpt.hpp"
#include "robustkz/generators.hpp"
#include "test_util.hpp"

using namespace robustkz;
using robustkz::test::make_line;
using robustkz::test::make_lq;
using robustkz::test::unit_group;

namespace {

// the configuration where plain projection is tight: client at 0.5 between
// seed centers -1 and 1, optimum at 0
Instance tight_line() {
    return make_line({0.5}, {-1.0, 0.0, 1.0}, 1, 1, {Group{{{0, 1.0}}}});
}

}  // namespace

TEST_CASE("midpoint closure") {
    SUBCASE("singleton seed closes to itself") {
        auto inst = make_line({0.0}, {-1.0, 1.0}, 1, 1, {unit_group(1)});
        const ClosureSet cl = midpoint_closure(inst, std::vector<int>{0});
        CHECK(cl.members == std::vector<int>{0});
        CHECK(cl.origins[0].seed);
    }
    SUBCASE("exact midpoint facility joins") {
        const Instance inst = tight_line();
        const ClosureSet cl = midpoint_closure(inst, std::vector<int>{0, 2});
        CHECK(cl.members == std::vector<int>{0, 1, 2});
    }
    SUBCASE("size bound") {
        GroupSpec gs;
        gs.count = 1;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Instance inst = gen_uniform_cube(6, 12, 3, 2, 1, gs, seed);
            std::vector<int> b{0, 2, 5, 7};
            const ClosureSet cl = midpoint_closure(inst, b);
            const int nb = static_cast<int>(b.size());
            CHECK(static_cast<int>(cl.members.size()) <= nb * (nb + 3) / 2);
            for (int x : b) CHECK(std::binary_search(cl.members.begin(), cl.members.end(), x));
        }
    }
    SUBCASE("rejects non-Euclidean inputs") {
        auto l1 = make_lq({{0.0}}, {{1.0}}, 1.0, 1, 1, {unit_group(1)});
        CHECK_THROWS_AS(midpoint_closure(l1, std::vector<int>{0}), std::invalid_argument);
    }
}

TEST_CASE("nearest-seed projection") {
    SUBCASE("tight line configuration meets the bound with equality") {
        const Instance inst = tight_line();
        const std::vector<int> X{1};      // optimum at 0
        const std::vector<int> B{0, 2};   // seeds at -1 and 1
        const auto sigma = projection_assign(inst, X, B);
        CHECK(sigma == std::vector<int>{0});  // distance tie, smaller index
        const double lhs = inst.dist_pf(0, sigma[0]);
        const double rhs = 2.0 * inst.dist_pf(0, X[0]) + inst.dist_point_to_centers(0, B);
        CHECK(lhs == doctest::Approx(1.5));
        CHECK(rhs == doctest::Approx(1.5));
    }
    SUBCASE("members of B map to themselves") {
        GroupSpec gs;
        gs.count = 1;
        const Instance inst = gen_uniform_cube(8, 8, 2, 2, 1, gs, 3);
        const std::vector<int> B{1, 4, 6};
        const auto sigma = projection_assign(inst, B, B);
        CHECK(sigma == B);
    }
    SUBCASE("random configurations never violate the bound") {
        const CheckReport rep = check_projection_lemma(1000, {3}, 99);
        CHECK(rep.passed);
    }
}

TEST_CASE("mirror-ball assignment") {
    SUBCASE("centers already in the seed set stay put") {
        GroupSpec gs;
        gs.count = 1;
        const Instance inst = gen_uniform_cube(8, 8, 2, 2, 1, gs, 5);
        const std::vector<int> B{0, 3, 5};
        const AssignmentReport rep = sigma_assign(inst, B, B);
        CHECK(rep.sigma == B);
    }
    SUBCASE("exact midpoint gives zero displacement on the line") {
        const Instance inst = tight_line();
        const std::vector<int> O{1};     // optimum at 0
        const std::vector<int> B{0, 2};  // -1 and 1; mirror of -1 about 0 is 1
        const AssignmentReport rep = sigma_assign(inst, O, B);
        CHECK(rep.used_mirror_rule[0] == 1);
        CHECK(rep.sigma == std::vector<int>{1});  // snaps to the facility at 0
        CHECK(inst.dist_ff(1, rep.sigma[0]) == 0.0);
    }
    SUBCASE("far-point ratios stay under the analysis bound on random instances") {
        GroupSpec gs;
        gs.count = 2;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Instance inst = gen_uniform_cube(15, 10, 3, 2, 1, gs, 700 + seed);
            const OracleResult opt = exact_solve(inst);
            const BicriteriaSolution bic = bicriteria_greedy(inst, 2.0);
            const AssignmentReport rep = sigma_assign(inst, opt.sol.centers, bic.centers);
            CHECK(rep.max_far_ratio <= kAssignmentRatioBound + 1e-9);
        }
    }
}

TEST_CASE("displacement ratio") {
    using V = std::vector<double>;
    SUBCASE("identity assignment is at most one half") {
        const V o{0.0, 0.0}, p{2.0, 1.0}, b{5.0, 5.0};
        const double r = displacement_ratio(o, o, p, b);
        CHECK(r <= 0.5);
    }
    SUBCASE("tight configuration evaluates to one") {
        const V o{0.0}, sigma{-1.0}, p{0.5}, b{1.0};
        CHECK(displacement_ratio(o, sigma, p, b) == doctest::Approx(1.0));
    }
    SUBCASE("matches an independent recomputation") {
        Rng rng(808);
        for (int i = 0; i < 200; ++i) {
            V o(3), s(3), p(3), b(3);
            for (int d = 0; d < 3; ++d) {
                o[d] = rng.normal();
                s[d] = rng.normal();
                p[d] = rng.normal();
                b[d] = rng.normal();
            }
            auto dist = [](const V& a, const V& c) {
                return std::sqrt((a[0] - c[0]) * (a[0] - c[0]) + (a[1] - c[1]) * (a[1] - c[1]) +
                                 (a[2] - c[2]) * (a[2] - c[2]));
            };
            const double expected = dist(p, s) / (2.0 * dist(p, o) + dist(p, b));
            CHECK(displacement_ratio(o, s, p, b) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("degenerate denominator is rejected") {
        const V z{0.0};
        CHECK_THROWS_AS(displacement_ratio(z, z, z, z), std::invalid_argument);
    }
}

TEST_CASE("monte-carlo displacement bound") {
    const CheckReport rep = check_assignment_lemma(10000, {2, 3, 5, 10}, 4321);
    CHECK(rep.passed);
    CHECK(rep.metrics["max_ratio"].get<double>() <= kAssignmentRatioBound + 1e-9);
    CHECK(rep.metrics["mirror_rule_configs"].get<std::uint64_t>() > 0);
}

TEST_CASE("closure enumeration") {
    SUBCASE("an exact seed keeps the optimum") {
        GroupSpec gs;
        gs.count = 2;
        const Instance inst = gen_uniform_cube(12, 8, 2, 2, 2, gs, 11);
        const BicriteriaSolution bic = bicriteria_exact(inst);
        const SolveOutcome r = fpt_solve(inst, bic);
        CHECK(r.sol.cost == doctest::Approx(bic.cost));
    }
    SUBCASE("the closure breaks the tight line configuration") {
        const Instance inst = tight_line();
        BicriteriaSolution bic;
        bic.centers = {0, 2};
        bic.cost = solution_cost(inst, bic.centers).cost;
        bic.alpha = certify_alpha(inst, bic.centers);
        bic.alpha_mode = AlphaMode::CertifiedByOracle;
        bic.beta = 2.0;
        // plain projection of the optimum lands on a seed at cost 1.5
        const auto sigma = projection_assign(inst, std::vector<int>{1}, bic.centers);
        CHECK(solution_cost(inst, sigma).cost == doctest::Approx(1.5));
        // enumerating the closure recovers the true optimum
        const SolveOutcome r = fpt_solve(inst, bic);
        CHECK(r.sol.centers == std::vector<int>{1});
        CHECK(r.sol.cost == doctest::Approx(0.5));
    }
    SUBCASE("the closure never loses to the seed set alone") {
        GroupSpec gs;
        gs.count = 2;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Instance inst = gen_uniform_cube(12, 8, 3, 2, 1, gs, 900 + seed);
            const BicriteriaSolution bic = bicriteria_greedy(inst, 2.0);
            const SolveOutcome r = fpt_solve(inst, bic);
            // best k-subset of B alone, by direct enumeration
            double best_b = std::numeric_limits<double>::infinity();
            const auto& b = bic.centers;
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = i + 1; j < b.size(); ++j) {
                    const std::vector<int> x{b[i], b[j]};
                    best_b = std::min(best_b, solution_cost(inst, x).cost);
                }
            CHECK(r.sol.cost <= best_b + 1e-12);
        }
    }
    SUBCASE("greedy seeds stay under the improved factor on random instances") {
        GroupSpec gs;
        gs.count = 2;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            for (int z = 1; z <= 2; ++z) {
                const Instance inst = gen_uniform_cube(14, 8, 5, 2, z, gs, 100 + seed);
                const double opt = exact_solve(inst).sol.cost;
                const SolveOutcome r = fpt_solve(inst, bicriteria_greedy(inst, 2.0));
                if (opt > 0.0)
                    CHECK(r.sol.cost / opt <= pow_z(3.0, z) * (1.0 - kFptMargin) + 1e-9);
                else
                    CHECK(r.sol.cost == 0.0);
            }
        }
    }
    SUBCASE("non-Euclidean instances are rejected") {
        GroupSpec gs;
        gs.count = 1;
        const Instance inst = gen_matrix(6, 4, 1, 1, gs, 2);
        BicriteriaSolution bic = bicriteria_exact(inst);
        CHECK_THROWS_AS(fpt_solve(inst, bic), std::invalid_argument);
    }
}

TEST_CASE("near/far cost split") {
    GroupSpec gs;
    gs.count = 3;
    const Instance inst = gen_uniform_cube(15, 6, 2, 2, 2, gs, 55);
    const std::vector<int> X{0, 2};
    const std::vector<int> O{1, 3};
    const std::vector<int> B{0, 4, 5};

    SUBCASE("near plus far is the whole cost") {
        const auto split = cost_split(inst, X, O, B, kFarBeta0);
        for (int g = 0; g < inst.num_groups(); ++g)
            CHECK(split[static_cast<std::size_t>(g)].near_cost +
                      split[static_cast<std::size_t>(g)].far_cost ==
                  doctest::Approx(group_cost(inst, inst.group(g), X)));
    }
    SUBCASE("O = B classifies every point far") {
        const auto split = cost_split(inst, X, B, B, kFarBeta0);
        for (const auto& s : split) CHECK(s.near_cost == 0.0);
    }
    SUBCASE("a zero-distance seed set makes every served point far") {
        auto co = make_line({1.0, 5.0}, {1.0, 5.0, 3.0}, 1, 1, {unit_group(2)});
        const std::vector<int> all{0, 1};  // serves both points at zero
        const auto split = cost_split(co, std::vector<int>{2}, std::vector<int>{2}, all, kFarBeta0);
        CHECK(split[0].near_cost == 0.0);
        CHECK(split[0].far_cost == doctest::Approx(group_cost(co, co.group(0), std::vector<int>{2})));
    }
}

TEST_CASE("scalar inequality behind the improved factor") {
    for (int z = 1; z <= 10; ++z) {
        const double v = 2.0 * pow_z(1.0 - kAssignmentEps0, z) +
                         kAssignmentEps0 * (1.0 + 2.0 * pow_z(kFarBeta0, z) * z);
        CHECK(v <= 1.9982 + 1e-12);
    }
}
