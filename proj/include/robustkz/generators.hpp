#pragma once

#include <cstdint>
#include <random>

#include "robustkz/instance.hpp"

namespace robustkz {

// Deterministic random helpers on top of mt19937_64; distributions are
// hand-rolled so output does not depend on the standard library build.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    int uniform_int(int n);  // [0, n)
    double normal();         // standard normal, polar method
    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

struct GroupSpec {
    int count = 1;
    double min_weight = 0.5;
    double max_weight = 2.0;
    bool singletons = false;  // one unit-weight group per point
};

Instance gen_uniform_cube(int n, int f, int dim, int k, int z, const GroupSpec& gs,
                          std::uint64_t seed);
Instance gen_gaussian_mixture(int n, int f, int dim, int clusters, double stddev, int k, int z,
                              const GroupSpec& gs, std::uint64_t seed);
Instance gen_line(int n, int f, int k, int z, const GroupSpec& gs, std::uint64_t seed);
// explicit-matrix instance; distances come from a random planar embedding so
// the triangle inequality holds exactly
Instance gen_matrix(int n, int f, int k, int z, const GroupSpec& gs, std::uint64_t seed);

}  // namespace robustkz
