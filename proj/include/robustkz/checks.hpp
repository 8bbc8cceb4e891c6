#pragma once

#include "json.hpp"
#include "robustkz/euclid_fpt.hpp"
#include "robustkz/hardness.hpp"

namespace robustkz {

struct CheckReport {
    std::string name;
    bool passed = true;
    std::uint64_t assertions = 0;
    std::vector<std::string> failures;  // each carries a reproducer hint
    nlohmann::json metrics;

    void expect(bool ok, const std::string& what) {
        ++assertions;
        if (!ok) {
            passed = false;
            if (failures.size() < 32) failures.push_back(what);
        }
    }
};

// dist(p, sigma(x)) <= 2 dist(p, x) + dist(p, B) on random coordinate
// configurations; an exact metric identity, checked to 1e-12 slack.
CheckReport check_projection_lemma(int samples_per_dim, const std::vector<int>& dims,
                                   std::uint64_t seed);

// Monte-Carlo bound on the mirror-ball displacement ratio over normalized
// configurations with a far client; the mirror-rule branch uses the
// adversarial worst displacement of alpha.
CheckReport check_assignment_lemma(std::uint64_t samples, const std::vector<int>& dims,
                                   std::uint64_t seed, double alpha = kMirrorBallAlpha,
                                   double beta0 = kFarBeta0,
                                   double bound = kAssignmentRatioBound);

// Density and separation of greedy ball decompositions on random inputs.
CheckReport check_eps_net(int calls, std::uint64_t seed);

// Two-sided cost preservation of a built coreset over every k-subset of one
// instance, plus weight conservation and the per-part error bounds.
CheckReport check_coreset_instance(const Instance& inst, double eps, std::uint64_t oracle_budget,
                                   CheckReport* accumulate = nullptr);

// Yes/no gadget gap for one graph + code + exponent.
CheckReport check_gadget_gap(int k, int part_size, EdgePattern pattern, CodeMode mode, double eta,
                             int q, std::uint64_t seed, double edge_probability = 0.5);

}  // namespace robustkz
