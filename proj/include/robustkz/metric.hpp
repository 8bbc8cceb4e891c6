#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace robustkz {

// Index into a metric space's point universe.
using PointId = int;

struct Ball {
    PointId center = 0;
    double radius = 0.0;
};

/// A finite metric space: either an l_q metric over coordinate vectors or an
/// explicit symmetric distance matrix. Immutable after construction; all
/// queries are pure and safe to call concurrently.
class MetricSpace {
public:
    enum class Kind { Lq, Matrix };

    static MetricSpace lq(std::vector<std::vector<double>> coords, double q,
                          std::optional<int> doubling_dim = std::nullopt);

    // validate_triangle is skipped automatically above 500 points (O(n^3)).
    static MetricSpace matrix(std::vector<std::vector<double>> dist,
                              bool validate_triangle = true,
                              std::optional<int> doubling_dim = std::nullopt);

    Kind kind() const { return kind_; }
    bool is_lq() const { return kind_ == Kind::Lq; }
    bool is_euclidean() const { return kind_ == Kind::Lq && q_ == 2.0; }
    double exponent() const { return q_; }
    std::size_t universe_size() const;
    int dimension() const;  // coordinate dimension, Lq only
    std::optional<int> doubling_dimension() const { return doubling_dim_; }

    std::span<const double> coords_of(PointId p) const;
    const std::vector<std::vector<double>>& matrix_data() const { return dist_; }

    double distance(PointId a, PointId b) const;

    // Nearest member of S to x; ties broken by smallest position in S.
    std::pair<PointId, double> nearest(PointId x, std::span<const PointId> S) const;

    // Nearest member of S to an arbitrary coordinate vector (Lq only).
    std::pair<PointId, double> nearest_to_coords(std::span<const double> x,
                                                 std::span<const PointId> S) const;

    // Greedy eps-net of candidates inside the ball, scanned in the given
    // order: a candidate is kept iff it lies in the ball and is > eps from
    // every kept point. The result is eps-dense in candidates-in-ball and
    // eps-separated.
    std::vector<PointId> ball_decompose(const Ball& ball, double eps,
                                        std::span<const PointId> candidates) const;

private:
    MetricSpace() = default;
    void check_id(PointId p) const;
    double lq_distance(PointId a, PointId b) const;

    Kind kind_ = Kind::Lq;
    double q_ = 2.0;
    std::vector<std::vector<double>> coords_;  // Lq universe
    std::vector<std::vector<double>> dist_;    // explicit matrix
    std::optional<int> doubling_dim_;
};

}  // namespace robustkz
