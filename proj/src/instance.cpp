#include "robustkz/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robustkz {

double pow_z(double x, int z) {
    double r = x;
    for (int i = 1; i < z; ++i) r *= x;
    return r;
}

double Group::l1_norm() const {
    double s = 0.0;
    for (const auto& [p, w] : weights)
        if (w > 0.0) s += w;
    return s;
}

bool Group::has_positive_weight() const {
    for (const auto& [p, w] : weights)
        if (w > 0.0) return true;
    return false;
}

namespace {

constexpr std::size_t kCacheLimit = 2'000'000;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Instance::Instance(std::shared_ptr<const MetricSpace> metric, std::vector<PointId> points,
                   std::vector<PointId> facilities, bool facilities_alias_points, int k, int z,
                   std::vector<Group> groups, const WarnFn& warn)
    : metric_(std::move(metric)),
      points_(std::move(points)),
      facilities_(std::move(facilities)),
      facilities_alias_points_(facilities_alias_points),
      k_(k),
      z_(z),
      groups_(std::move(groups)) {
    require(metric_ != nullptr, "instance needs a metric");
    require(!points_.empty(), "instance needs at least one point");
    require(!facilities_.empty(), "instance needs at least one facility");
    require(z_ >= 1, "z must be a positive integer");
    require(k_ >= 1, "k must be a positive integer");
    require(k_ <= num_facilities(), "k exceeds the number of facilities");
    require(!groups_.empty(), "instance needs at least one group");
    for (PointId p : points_) require(p >= 0 && static_cast<std::size_t>(p) < metric_->universe_size(), "point id out of range");
    for (PointId f : facilities_) require(f >= 0 && static_cast<std::size_t>(f) < metric_->universe_size(), "facility id out of range");

    double wmin = std::numeric_limits<double>::infinity();
    double wmax = 0.0;
    for (auto& g : groups_) {
        std::sort(g.weights.begin(), g.weights.end());
        // merge duplicate point entries
        std::size_t out = 0;
        for (std::size_t i = 0; i < g.weights.size(); ++i) {
            if (out > 0 && g.weights[out - 1].first == g.weights[i].first)
                g.weights[out - 1].second += g.weights[i].second;
            else
                g.weights[out++] = g.weights[i];
        }
        g.weights.resize(out);
        require(g.has_positive_weight(), "every group needs a strictly positive weight");
        for (const auto& [p, w] : g.weights) {
            require(p >= 0 && p < n(), "group weight references an unknown point");
            require(std::isfinite(w) && w >= 0.0, "group weights must be finite and nonnegative");
            if (w > 0.0) {
                wmin = std::min(wmin, w);
                wmax = std::max(wmax, w);
            }
        }
    }
    weight_aspect_ = wmax > 0.0 ? wmax / wmin : 1.0;

    if (static_cast<std::size_t>(n()) * static_cast<std::size_t>(num_facilities()) <= kCacheLimit) {
        pf_cache_.resize(static_cast<std::size_t>(n()) * static_cast<std::size_t>(num_facilities()));
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < num_facilities(); ++j)
                pf_cache_[static_cast<std::size_t>(i) * num_facilities() + j] =
                    metric_->distance(points_[static_cast<std::size_t>(i)], facilities_[static_cast<std::size_t>(j)]);
    }

    distance_aspect_ = std::numeric_limits<double>::quiet_NaN();
    if (n() <= 1000) {
        double dmin = std::numeric_limits<double>::infinity();
        double dmax = 0.0;
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j) {
                const double d = dist_pp(i, j);
                dmax = std::max(dmax, d);
                if (d > 0.0) dmin = std::min(dmin, d);
            }
        distance_aspect_ = dmax > 0.0 && std::isfinite(dmin) ? dmax / dmin : 1.0;
    }

    if (warn) {
        const double n4 = pow_z(static_cast<double>(n()), 4);
        if (weight_aspect_ > n4)
            warn("weight aspect ratio " + std::to_string(weight_aspect_) + " exceeds n^4");
        if (std::isfinite(distance_aspect_) && distance_aspect_ > n4)
            warn("distance aspect ratio " + std::to_string(distance_aspect_) + " exceeds n^4");
    }
}

double Instance::dist_pf(int point, int facility) const {
    if (!pf_cache_.empty())
        return pf_cache_[static_cast<std::size_t>(point) * num_facilities() + facility];
    return metric_->distance(points_[static_cast<std::size_t>(point)],
                             facilities_[static_cast<std::size_t>(facility)]);
}

double Instance::dist_pp(int a, int b) const {
    return metric_->distance(points_[static_cast<std::size_t>(a)], points_[static_cast<std::size_t>(b)]);
}

double Instance::dist_ff(int a, int b) const {
    return metric_->distance(facilities_[static_cast<std::size_t>(a)],
                             facilities_[static_cast<std::size_t>(b)]);
}

double Instance::dist_point_to_centers(int point, std::span<const int> X) const {
    double best = std::numeric_limits<double>::infinity();
    for (int x : X) best = std::min(best, dist_pf(point, x));
    return best;
}

double group_cost(const Instance& inst, const Group& w, std::span<const int> X) {
    if (X.empty()) throw std::invalid_argument("cost of an empty center set is undefined");
    double s = 0.0;
    for (const auto& [p, wp] : w.weights) {
        if (wp == 0.0) continue;
        s += wp * pow_z(inst.dist_point_to_centers(p, X), inst.z());
    }
    return s;
}

double solution_cost_bounded(const Instance& inst, std::span<const int> X, double bound,
                             std::vector<double>& scratch) {
    scratch.assign(static_cast<std::size_t>(inst.n()), -1.0);
    double worst = 0.0;
    for (const auto& g : inst.groups()) {
        double s = 0.0;
        for (const auto& [p, wp] : g.weights) {
            if (wp == 0.0) continue;
            double& dz = scratch[static_cast<std::size_t>(p)];
            if (dz < 0.0) dz = pow_z(inst.dist_point_to_centers(p, X), inst.z());
            s += wp * dz;
            if (s > bound) break;
        }
        worst = std::max(worst, s);
        if (worst > bound) return std::numeric_limits<double>::infinity();
    }
    return worst;
}

Solution solution_cost(const Instance& inst, std::span<const int> X) {
    if (X.empty()) throw std::invalid_argument("cost of an empty center set is undefined");
    Solution sol;
    sol.centers.assign(X.begin(), X.end());
    std::sort(sol.centers.begin(), sol.centers.end());
    sol.centers.erase(std::unique(sol.centers.begin(), sol.centers.end()), sol.centers.end());
    sol.per_group.reserve(inst.groups().size());
    double worst = 0.0;
    for (const auto& g : inst.groups()) {
        const double c = group_cost(inst, g, sol.centers);
        sol.per_group.push_back(c);
        worst = std::max(worst, c);
    }
    sol.cost = worst;
    return sol;
}

}  // namespace robustkz
