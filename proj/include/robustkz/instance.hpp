#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "robustkz/metric.hpp"

namespace robustkz {

// Sparse weight vector over point indices; entries sorted by point index.
struct Group {
    std::vector<std::pair<int, double>> weights;

    double l1_norm() const;           // sum of positive entries
    bool has_positive_weight() const;
};

struct Solution {
    std::vector<int> centers;          // facility indices, sorted ascending
    double cost = 0.0;                 // max over per_group
    std::vector<double> per_group;
};

using WarnFn = std::function<void(const std::string&)>;

// z-th power by repeated multiplication; z is a positive integer everywhere.
double pow_z(double x, int z);

/// One clustering instance: clients P and facilities F referencing a shared
/// metric universe, the center count k, the distance exponent z, and the
/// groups as sparse weight vectors over P. Immutable after construction.
class Instance {
public:
    Instance(std::shared_ptr<const MetricSpace> metric, std::vector<PointId> points,
             std::vector<PointId> facilities, bool facilities_alias_points, int k, int z,
             std::vector<Group> groups, const WarnFn& warn = {});

    const MetricSpace& metric() const { return *metric_; }
    std::shared_ptr<const MetricSpace> metric_ptr() const { return metric_; }
    int n() const { return static_cast<int>(points_.size()); }
    int num_facilities() const { return static_cast<int>(facilities_.size()); }
    int num_groups() const { return static_cast<int>(groups_.size()); }
    int k() const { return k_; }
    int z() const { return z_; }
    bool facilities_alias_points() const { return facilities_alias_points_; }
    const std::vector<PointId>& point_ids() const { return points_; }
    const std::vector<PointId>& facility_ids() const { return facilities_; }
    PointId point_id(int i) const { return points_[static_cast<std::size_t>(i)]; }
    PointId facility_id(int j) const { return facilities_[static_cast<std::size_t>(j)]; }
    const std::vector<Group>& groups() const { return groups_; }
    const Group& group(int g) const { return groups_[static_cast<std::size_t>(g)]; }

    double weight_aspect_ratio() const { return weight_aspect_; }
    double distance_aspect_ratio() const { return distance_aspect_; }  // NaN if not computed

    double dist_pf(int point, int facility) const;
    double dist_pp(int a, int b) const;
    double dist_ff(int a, int b) const;
    // min over X (facility indices) of dist_pf(point, x); X nonempty
    double dist_point_to_centers(int point, std::span<const int> X) const;

    friend double group_cost(const Instance&, const Group&, std::span<const int>);

private:
    std::shared_ptr<const MetricSpace> metric_;
    std::vector<PointId> points_;
    std::vector<PointId> facilities_;
    bool facilities_alias_points_ = false;
    int k_ = 1;
    int z_ = 1;
    std::vector<Group> groups_;
    double weight_aspect_ = 1.0;
    double distance_aspect_ = 0.0;
    std::vector<double> pf_cache_;  // row-major |P| x |F|, empty if too large
};

double group_cost(const Instance& inst, const Group& w, std::span<const int> X);

// Evaluates every group against X; cost is the max entry.
Solution solution_cost(const Instance& inst, std::span<const int> X);

// Max group cost of X, abandoning with +inf once the running max exceeds
// `bound`. Per-point minimum distances are memoized in `scratch`.
double solution_cost_bounded(const Instance& inst, std::span<const int> X, double bound,
                             std::vector<double>& scratch);

}  // namespace robustkz
