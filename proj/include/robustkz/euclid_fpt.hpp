#pragma once

#include "robustkz/epas.hpp"

namespace robustkz {

// Worst-case constants of the assignment rule analysis.
constexpr double kMirrorBallAlpha = 0.6;
constexpr double kFarBeta0 = 0.05;
constexpr double kAssignmentEps0 = 0.002;
constexpr double kAssignmentRatioBound = 0.9978;  // 1 - 0.0022
constexpr double kFptMargin = 0.0006;             // relative improvement below 3^z

struct ClosureSet {
    struct Origin {
        bool seed = false;  // member of B itself
        int pair_a = -1;    // midpoint parents within B, when snapped
        int pair_b = -1;
    };
    std::vector<int> members;  // facility indices, sorted ascending
    std::vector<Origin> origins;
};

// B plus the facility nearest each pairwise midpoint of B (Euclidean only).
ClosureSet midpoint_closure(const Instance& inst, std::span<const int> B);

// sigma(x) = nearest member of B, ties to the smallest index. Entry i serves
// X[i]. For every point p and every x in X the returned assignment satisfies
// dist(p, sigma(x)) <= 2 dist(p, x) + dist(p, B).
std::vector<int> projection_assign(const Instance& inst, std::span<const int> X,
                                   std::span<const int> B);

struct AssignmentReport {
    std::vector<int> sigma;      // per center of O, a member of cl(B)
    std::vector<char> used_mirror_rule;  // sigma(o) = nearest closure member
    std::vector<char> far_point;         // dist(p, O) >= beta0 * dist(p, B)
    std::vector<double> point_ratio;     // dist(p, sigma(O)) / (2 dist(p, O) + dist(p, B))
    double max_far_ratio = 0.0;
    double alpha = kMirrorBallAlpha;
    double beta0 = kFarBeta0;
};

// Mirror-ball assignment of O into the midpoint closure of B: for o with
// nearest seed b, sigma(o) = b unless some member of B lies in the ball of
// radius alpha*|o-b| around the mirror image 2o - b, in which case o snaps
// to its nearest closure member.
AssignmentReport sigma_assign(const Instance& inst, std::span<const int> O,
                              std::span<const int> B, double alpha = kMirrorBallAlpha,
                              double beta0 = kFarBeta0);

// |p - sigma_o| / (2|p - o| + |p - b_serving|) on raw coordinates.
double displacement_ratio(std::span<const double> o, std::span<const double> sigma_o,
                          std::span<const double> p, std::span<const double> b_serving);

// Enumerates every k-subset of the midpoint closure of the seed centers.
SolveOutcome fpt_solve(const Instance& inst, const BicriteriaSolution& bic,
                       std::uint64_t budget = kDefaultOracleBudget, int threads = 1);

struct CostSplit {
    double near_cost = 0.0;
    double far_cost = 0.0;
};

// Splits each group's cost of X between points near to and far from O
// relative to B (far means dist(p, O) >= beta0 * dist(p, B)).
std::vector<CostSplit> cost_split(const Instance& inst, std::span<const int> X,
                                  std::span<const int> O, std::span<const int> B, double beta0);

}  // namespace robustkz
