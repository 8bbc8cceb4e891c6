#include "robustkz/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robustkz {

int Rng::uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int needs n > 0");
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
        v = eng_();
    } while (v >= limit);
    return static_cast<int>(v % span);
}

double Rng::normal() {
    while (true) {
        const double u = 2.0 * uniform01() - 1.0;
        const double v = 2.0 * uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

namespace {

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

std::vector<Group> make_groups(int n, const GroupSpec& gs, Rng& rng) {
    std::vector<Group> groups;
    if (gs.singletons) {
        for (int p = 0; p < n; ++p) {
            Group g;
            g.weights.emplace_back(p, 1.0);
            groups.push_back(std::move(g));
        }
        return groups;
    }
    for (int i = 0; i < gs.count; ++i) {
        const int size = 1 + rng.uniform_int(n);
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) idx[static_cast<std::size_t>(p)] = p;
        for (int p = n - 1; p > 0; --p)
            std::swap(idx[static_cast<std::size_t>(p)], idx[static_cast<std::size_t>(rng.uniform_int(p + 1))]);
        idx.resize(static_cast<std::size_t>(size));
        std::sort(idx.begin(), idx.end());
        Group g;
        for (int p : idx)
            g.weights.emplace_back(p, round3(rng.uniform(gs.min_weight, gs.max_weight)));
        if (!g.has_positive_weight()) g.weights.front().second = gs.max_weight;
        groups.push_back(std::move(g));
    }
    return groups;
}

Instance assemble_lq(std::vector<std::vector<double>> point_coords,
                     std::vector<std::vector<double>> facility_coords, double q, int k, int z,
                     const GroupSpec& gs, Rng& rng) {
    const int n = static_cast<int>(point_coords.size());
    const bool alias = facility_coords.empty();
    std::vector<PointId> point_ids, facility_ids;
    for (int i = 0; i < n; ++i) point_ids.push_back(i);
    auto universe = point_coords;
    if (alias) {
        facility_ids = point_ids;
    } else {
        for (std::size_t i = 0; i < facility_coords.size(); ++i)
            facility_ids.push_back(n + static_cast<int>(i));
        universe.insert(universe.end(), facility_coords.begin(), facility_coords.end());
    }
    auto metric = std::make_shared<MetricSpace>(MetricSpace::lq(std::move(universe), q));
    return Instance(std::move(metric), std::move(point_ids), std::move(facility_ids), alias, k, z,
                    make_groups(n, gs, rng));
}

}  // namespace

Instance gen_uniform_cube(int n, int f, int dim, int k, int z, const GroupSpec& gs,
                          std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> pts, fac;
    for (int i = 0; i < n; ++i) {
        std::vector<double> c(static_cast<std::size_t>(dim));
        for (auto& x : c) x = round3(rng.uniform(0.0, 10.0));
        pts.push_back(std::move(c));
    }
    for (int i = 0; i < f; ++i) {
        std::vector<double> c(static_cast<std::size_t>(dim));
        for (auto& x : c) x = round3(rng.uniform(0.0, 10.0));
        fac.push_back(std::move(c));
    }
    return assemble_lq(std::move(pts), std::move(fac), 2.0, k, z, gs, rng);
}

Instance gen_gaussian_mixture(int n, int f, int dim, int clusters, double stddev, int k, int z,
                              const GroupSpec& gs, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> centers;
    for (int c = 0; c < clusters; ++c) {
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (auto& v : x) v = round3(rng.uniform(0.0, 10.0));
        centers.push_back(std::move(x));
    }
    auto sample = [&](int i) {
        const auto& c = centers[static_cast<std::size_t>(i % clusters)];
        std::vector<double> x(static_cast<std::size_t>(dim));
        for (std::size_t d = 0; d < x.size(); ++d) x[d] = round3(c[d] + stddev * rng.normal());
        return x;
    };
    std::vector<std::vector<double>> pts, fac;
    for (int i = 0; i < n; ++i) pts.push_back(sample(i));
    for (int i = 0; i < f; ++i) fac.push_back(sample(i));
    return assemble_lq(std::move(pts), std::move(fac), 2.0, k, z, gs, rng);
}

Instance gen_line(int n, int f, int k, int z, const GroupSpec& gs, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> pts, fac;
    for (int i = 0; i < n; ++i) pts.push_back({round3(rng.uniform(0.0, 10.0))});
    for (int i = 0; i < f; ++i) fac.push_back({round3(rng.uniform(0.0, 10.0))});
    return assemble_lq(std::move(pts), std::move(fac), 2.0, k, z, gs, rng);
}

Instance gen_matrix(int n, int f, int k, int z, const GroupSpec& gs, std::uint64_t seed) {
    Rng rng(seed);
    const int total = n + std::max(f, 0);
    std::vector<std::vector<double>> embed;
    for (int i = 0; i < total; ++i)
        embed.push_back({round3(rng.uniform(0.0, 10.0)), round3(rng.uniform(0.0, 10.0))});
    std::vector<std::vector<double>> d(static_cast<std::size_t>(total),
                                       std::vector<double>(static_cast<std::size_t>(total), 0.0));
    for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j) {
            const double dx = embed[static_cast<std::size_t>(i)][0] - embed[static_cast<std::size_t>(j)][0];
            const double dy = embed[static_cast<std::size_t>(i)][1] - embed[static_cast<std::size_t>(j)][1];
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::hypot(dx, dy);
        }
    auto metric = std::make_shared<MetricSpace>(MetricSpace::matrix(std::move(d), false));
    std::vector<PointId> point_ids, facility_ids;
    for (int i = 0; i < n; ++i) point_ids.push_back(i);
    const bool alias = f <= 0;
    if (alias)
        facility_ids = point_ids;
    else
        for (int i = 0; i < f; ++i) facility_ids.push_back(n + i);
    return Instance(std::move(metric), std::move(point_ids), std::move(facility_ids), alias, k, z,
                    make_groups(n, gs, rng));
}

}  // namespace robustkz
