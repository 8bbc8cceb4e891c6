#pragma once

#include "robustkz/bicriteria.hpp"

namespace robustkz {

struct CoresetParams {
    double eps = 0.0;
    double alpha = 1.0;
    double radius_r = 0.0;  // z-th root of cost(B) / (alpha * tau)
    double tau = 0.0;       // max group l1 norm
    int ring_count_j = 0;   // rings are indexed 0..ring_count_j
    std::vector<int> bicriteria_centers;
};

struct RingAssignment {
    int center = -1;    // position in bicriteria_centers
    int ring = -1;      // ring index j
    int sub_ball = -1;  // position of the point's net member within the ring
};

struct Coreset {
    std::vector<int> points;              // representative original point indices, ascending
    std::vector<Group> weights;           // remapped group vectors, keyed by original point index
    std::vector<int> rep;                 // original point -> its representative (-1 if dropped)
    CoresetParams params;
    std::vector<RingAssignment> ring_assignment;
};

// Ring-and-subball construction around the bicriteria centers. Every point
// joins the smallest ball containing it (ties to the smallest center), each
// ring is carved into an eps-net of sub-balls, and the lowest-index point of
// each nonempty sub-ball absorbs the ring weight of its members. When the
// seed cost is zero the rings collapse and the coreset is the exact set of
// distinct point locations.
Coreset build_coreset(const Instance& inst, const BicriteriaSolution& bic, double eps,
                      const WarnFn& warn = {});

// The reduced instance (P', F, eta(W)) with the same k, z and metric.
Instance coreset_instance(const Coreset& cs, const Instance& original);

struct ErrorSplit {
    double total = 0.0;   // |cost(eta(w), X) - cost(w, X)|
    double e_near = 0.0;  // points within R of both the seed and X
    double e_seed = 0.0;  // points farther than R from the seed, X no farther
    double e_sol = 0.0;   // points farther than R from X, seed no farther
};

// Per-group displacement error decomposition for one candidate solution X.
std::vector<ErrorSplit> coreset_error_report(const Instance& inst, const Coreset& cs,
                                             std::span<const int> X);

}  // namespace robustkz
