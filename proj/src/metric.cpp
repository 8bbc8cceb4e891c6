#include "robustkz/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robustkz {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

MetricSpace MetricSpace::lq(std::vector<std::vector<double>> coords, double q,
                            std::optional<int> doubling_dim) {
    require(q >= 1.0, "lq exponent must be >= 1");
    if (!coords.empty()) {
        const std::size_t dim = coords.front().size();
        for (const auto& c : coords) {
            require(c.size() == dim, "coordinate dimension mismatch");
            for (double v : c) require(std::isfinite(v), "non-finite coordinate");
        }
    }
    MetricSpace m;
    m.kind_ = Kind::Lq;
    m.q_ = q;
    m.coords_ = std::move(coords);
    m.doubling_dim_ = doubling_dim;
    return m;
}

MetricSpace MetricSpace::matrix(std::vector<std::vector<double>> dist,
                                bool validate_triangle,
                                std::optional<int> doubling_dim) {
    const std::size_t n = dist.size();
    for (std::size_t i = 0; i < n; ++i) {
        require(dist[i].size() == n, "distance matrix must be square");
        require(dist[i][i] == 0.0, "distance matrix must be zero on the diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            require(std::isfinite(dist[i][j]), "non-finite matrix entry");
            require(dist[i][j] >= 0.0, "negative matrix entry");
            require(dist[i][j] == dist[j][i], "distance matrix must be symmetric");
        }
    }
    if (validate_triangle && n <= 500) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l)
                    require(dist[i][j] <= dist[i][l] + dist[l][j] + 1e-12,
                            "distance matrix violates the triangle inequality");
    }
    MetricSpace m;
    m.kind_ = Kind::Matrix;
    m.dist_ = std::move(dist);
    m.doubling_dim_ = doubling_dim;
    return m;
}

std::size_t MetricSpace::universe_size() const {
    return kind_ == Kind::Lq ? coords_.size() : dist_.size();
}

int MetricSpace::dimension() const {
    require(kind_ == Kind::Lq, "dimension() requires an lq metric");
    return coords_.empty() ? 0 : static_cast<int>(coords_.front().size());
}

std::span<const double> MetricSpace::coords_of(PointId p) const {
    require(kind_ == Kind::Lq, "coords_of() requires an lq metric");
    check_id(p);
    return coords_[static_cast<std::size_t>(p)];
}

void MetricSpace::check_id(PointId p) const {
    if (p < 0 || static_cast<std::size_t>(p) >= universe_size())
        throw std::out_of_range("point index out of range");
}

double MetricSpace::lq_distance(PointId a, PointId b) const {
    const auto& x = coords_[static_cast<std::size_t>(a)];
    const auto& y = coords_[static_cast<std::size_t>(b)];
    if (q_ == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            s += d * d;
        }
        return std::sqrt(s);
    }
    if (q_ == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i] - y[i]), q_);
    return std::pow(s, 1.0 / q_);
}

double MetricSpace::distance(PointId a, PointId b) const {
    check_id(a);
    check_id(b);
    if (a == b) return 0.0;
    return kind_ == Kind::Lq ? lq_distance(a, b) : dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::pair<PointId, double> MetricSpace::nearest(PointId x, std::span<const PointId> S) const {
    require(!S.empty(), "nearest() needs a nonempty set");
    PointId best = S[0];
    double best_d = distance(x, S[0]);
    for (std::size_t i = 1; i < S.size(); ++i) {
        const double d = distance(x, S[i]);
        if (d < best_d) {
            best_d = d;
            best = S[i];
        }
    }
    return {best, best_d};
}

std::pair<PointId, double> MetricSpace::nearest_to_coords(std::span<const double> x,
                                                          std::span<const PointId> S) const {
    require(kind_ == Kind::Lq, "nearest_to_coords() requires an lq metric");
    require(!S.empty(), "nearest_to_coords() needs a nonempty set");
    auto dist_to = [&](PointId p) {
        const auto& c = coords_[static_cast<std::size_t>(p)];
        require(c.size() == x.size(), "coordinate dimension mismatch");
        if (q_ == 2.0) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - c[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i] - c[i]), q_);
        return std::pow(s, 1.0 / q_);
    };
    PointId best = S[0];
    double best_d = dist_to(S[0]);
    for (std::size_t i = 1; i < S.size(); ++i) {
        const double d = dist_to(S[i]);
        if (d < best_d) {
            best_d = d;
            best = S[i];
        }
    }
    return {best, best_d};
}

std::vector<PointId> MetricSpace::ball_decompose(const Ball& ball, double eps,
                                                 std::span<const PointId> candidates) const {
    require(eps > 0.0, "ball decomposition radius must be positive");
    require(ball.radius >= 0.0, "ball radius must be nonnegative");
    std::vector<PointId> net;
    for (PointId c : candidates) {
        if (distance(c, ball.center) > ball.radius) continue;
        bool covered = false;
        for (PointId a : net) {
            if (distance(c, a) <= eps) {
                covered = true;
                break;
            }
        }
        if (!covered) net.push_back(c);
    }
    return net;
}

}  // namespace robustkz
