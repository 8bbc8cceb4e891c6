#include <sstream>

#include "doctest.h"
#include "robustkz/generators.hpp"
#include "robustkz/io.hpp"
#include "robustkz/oracle.hpp"
#include "test_util.hpp"

using namespace robustkz;
using robustkz::test::make_line;
using robustkz::test::make_lq;

TEST_CASE("group cost") {
    SUBCASE("co-located facility serves for free") {
        auto inst = make_lq({{1.0, 2.0}}, {{1.0, 2.0}}, 2.0, 1, 2, {Group{{{0, 1.0}}}});
        const std::vector<int> x{0};
        CHECK(group_cost(inst, inst.group(0), x) == 0.0);
    }
    SUBCASE("line, z = 1") {
        auto inst = make_line({0.5}, {0.0}, 1, 1, {Group{{{0, 1.0}}}});
        const std::vector<int> x{0};
        CHECK(group_cost(inst, inst.group(0), x) == doctest::Approx(0.5));
    }
    SUBCASE("line, z = 2 sums squared distances") {
        auto inst = make_line({0.5, 2.0}, {0.0}, 1, 2, {Group{{{0, 1.0}, {1, 1.0}}}});
        const std::vector<int> x{0};
        CHECK(group_cost(inst, inst.group(0), x) == doctest::Approx(4.25));
    }
    SUBCASE("empty center set is rejected") {
        auto inst = make_line({0.5}, {0.0}, 1, 1, {Group{{{0, 1.0}}}});
        CHECK_THROWS_AS(group_cost(inst, inst.group(0), {}), std::invalid_argument);
    }
}

TEST_CASE("solution cost") {
    SUBCASE("single group equals group cost") {
        auto inst = make_line({0.0, 3.0}, {1.0}, 1, 1, {Group{{{0, 2.0}, {1, 1.0}}}});
        const std::vector<int> x{0};
        const Solution s = solution_cost(inst, x);
        CHECK(s.cost == doctest::Approx(group_cost(inst, inst.group(0), x)));
        CHECK(s.per_group.size() == 1);
    }
    SUBCASE("singleton unit groups give the k-center objective") {
        auto inst = make_line({0.0, 1.0, 5.0}, {2.0}, 1, 1,
                              {Group{{{0, 1.0}}}, Group{{{1, 1.0}}}, Group{{{2, 1.0}}}});
        const std::vector<int> x{0};
        CHECK(solution_cost(inst, x).cost == doctest::Approx(3.0));  // farthest point
    }
    SUBCASE("duplicated group leaves the max unchanged") {
        auto inst1 = make_line({0.0, 2.0}, {1.0}, 1, 1, {Group{{{0, 1.0}, {1, 1.0}}}});
        auto inst2 = make_line({0.0, 2.0}, {1.0}, 1, 1,
                               {Group{{{0, 1.0}, {1, 1.0}}}, Group{{{0, 1.0}, {1, 1.0}}}});
        const std::vector<int> x{0};
        CHECK(solution_cost(inst1, x).cost == doctest::Approx(solution_cost(inst2, x).cost));
    }
}

TEST_CASE("construction validation") {
    CHECK_THROWS(make_line({0.0}, {1.0, 2.0}, 3, 1, {Group{{{0, 1.0}}}}));  // k > |F|
    CHECK_THROWS(make_line({0.0}, {1.0}, 1, 0, {Group{{{0, 1.0}}}}));       // z < 1
    CHECK_THROWS(make_line({0.0}, {1.0}, 1, 1, {Group{{{0, 0.0}}}}));       // no positive weight
    CHECK_THROWS(make_line({0.0}, {1.0}, 1, 1, {Group{{{0, -1.0}}}}));      // negative weight
    CHECK_THROWS(make_line({0.0}, {1.0}, 1, 1, {Group{{{5, 1.0}}}}));       // unknown point
    CHECK_THROWS(make_line({0.0}, {1.0}, 1, 1, {}));                        // no groups
}

TEST_CASE("json round trip is identity") {
    const char* text = R"({
      "metric": {"kind": "lq", "q": 2},
      "points": [[0.1, 0.2], [3.0, 4.0], [1.0, 1.0]],
      "facilities": [[0.0, 0.0], [2.5, 2.5]],
      "k": 1, "z": 2,
      "groups": [{"weights": {"0": 1.25, "2": 0.7500000000000001}},
                 {"weights": {"1": 3.0}}]
    })";
    const Instance a = instance_from_json(nlohmann::json::parse(text));
    const std::string dumped = instance_to_json(a).dump();
    const Instance b = instance_from_json(nlohmann::json::parse(dumped));
    CHECK(instance_to_json(b).dump() == dumped);  // bit-exact second pass
    CHECK(a.n() == b.n());
    CHECK(a.k() == b.k());
    CHECK(a.z() == b.z());
    const std::vector<int> x{0};
    CHECK(solution_cost(a, x).cost == solution_cost(b, x).cost);
    CHECK(instance_digest(a) == instance_digest(b));
}

TEST_CASE("minimal instance round trips") {
    const char* text = R"({
      "metric": {"kind": "lq", "q": 2},
      "points": [[1.5]],
      "facilities": [[2.5]],
      "k": 1, "z": 1,
      "groups": [{"weights": {"0": 1}}]
    })";
    const Instance a = instance_from_json(nlohmann::json::parse(text));
    const Instance b = instance_from_json(instance_to_json(a));
    CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());
    CHECK(b.n() == 1);
    CHECK(b.num_facilities() == 1);
}

TEST_CASE("aliased facilities round trip") {
    const char* text = R"({
      "metric": {"kind": "lq", "q": 2},
      "points": [[0], [1]],
      "facilities": "same_as_points",
      "k": 1, "z": 1,
      "groups": [{"weights": {"0": 1, "1": 1}}]
    })";
    const Instance a = instance_from_json(nlohmann::json::parse(text));
    CHECK(a.facilities_alias_points());
    CHECK(instance_to_json(a)["facilities"] == "same_as_points");
}

TEST_CASE("subset groups convert to weight vectors") {
    const char* text = R"({
      "metric": {"kind": "lq", "q": 2},
      "points": [[0], [1], [2]],
      "facilities": "same_as_points",
      "k": 1, "z": 1,
      "pointWeights": [2.0, 3.0, 4.0],
      "groups": [{"subset": [0, 2]}, {"subset": [1]}]
    })";
    const Instance a = instance_from_json(nlohmann::json::parse(text));
    CHECK(a.group(0).weights == std::vector<std::pair<int, double>>{{0, 2.0}, {2, 4.0}});
    CHECK(a.group(1).weights == std::vector<std::pair<int, double>>{{1, 3.0}});
}

TEST_CASE("schema violations are rejected") {
    auto parse = [](const char* s) { return instance_from_json(nlohmann::json::parse(s)); };
    // asymmetric explicit matrix
    CHECK_THROWS_AS(parse(R"({"metric": {"kind": "matrix", "d": [[0,1],[2,0]]},
        "points": [0, 1], "facilities": "same_as_points", "k": 1, "z": 1,
        "groups": [{"weights": {"0": 1}}]})"),
                    std::invalid_argument);
    // k > |F|
    CHECK_THROWS_AS(parse(R"({"metric": {"kind": "lq", "q": 2}, "points": [[0]],
        "facilities": [[1]], "k": 2, "z": 1, "groups": [{"weights": {"0": 1}}]})"),
                    std::invalid_argument);
    // non-finite weight
    CHECK_THROWS(parse(R"({"metric": {"kind": "lq", "q": 2}, "points": [[0]],
        "facilities": [[1]], "k": 1, "z": 1, "groups": [{"weights": {"0": 1e999}}]})"));
}

TEST_CASE("cost is monotone under center-set growth") {
    GroupSpec gs;
    gs.count = 3;
    const Instance inst = gen_uniform_cube(15, 8, 2, 2, 2, gs, 99);
    const std::vector<int> small{1, 4};
    const std::vector<int> big{1, 3, 4, 6};
    for (const auto& g : inst.groups())
        CHECK(group_cost(inst, g, big) <= group_cost(inst, g, small) + 1e-12);
    CHECK(solution_cost(inst, big).cost <= solution_cost(inst, small).cost + 1e-12);
    for (std::size_t i = 0; i < inst.groups().size(); ++i)
        CHECK(solution_cost(inst, small).cost >= solution_cost(inst, small).per_group[i]);
}

TEST_CASE("uniform weight scaling preserves the argmin") {
    GroupSpec gs;
    gs.count = 2;
    const Instance base = gen_uniform_cube(12, 8, 2, 2, 1, gs, 5);
    const double c = 3.7;
    std::vector<Group> scaled;
    for (const auto& g : base.groups()) {
        Group s = g;
        for (auto& [p, w] : s.weights) w *= c;
        scaled.push_back(std::move(s));
    }
    const Instance scaled_inst(base.metric_ptr(), base.point_ids(), base.facility_ids(),
                               base.facilities_alias_points(), base.k(), base.z(), scaled);
    const std::vector<int> x{0, 3};
    for (std::size_t g = 0; g < base.groups().size(); ++g)
        CHECK(group_cost(scaled_inst, scaled_inst.group(static_cast<int>(g)), x) ==
              doctest::Approx(c * group_cost(base, base.group(static_cast<int>(g)), x)));
    CHECK(exact_solve(base).sol.centers == exact_solve(scaled_inst).sol.centers);
}
