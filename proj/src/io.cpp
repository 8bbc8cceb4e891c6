#include "robustkz/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace robustkz {

using nlohmann::json;

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument("instance schema: " + msg);
}

std::vector<std::vector<double>> parse_coord_list(const json& j, const char* what) {
    require(j.is_array(), std::string(what) + " must be an array");
    std::vector<std::vector<double>> out;
    out.reserve(j.size());
    for (const auto& row : j) {
        require(row.is_array(), std::string(what) + " entries must be coordinate arrays");
        std::vector<double> c;
        c.reserve(row.size());
        for (const auto& v : row) {
            require(v.is_number(), "coordinates must be numbers");
            const double x = v.get<double>();
            require(std::isfinite(x), "coordinates must be finite");
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<PointId> parse_index_list(const json& j, const char* what, std::size_t universe) {
    require(j.is_array(), std::string(what) + " must be an array");
    std::vector<PointId> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        require(v.is_number_integer(), std::string(what) + " entries must be integer indices");
        const long long i = v.get<long long>();
        require(i >= 0 && static_cast<std::size_t>(i) < universe, std::string(what) + " index out of range");
        out.push_back(static_cast<PointId>(i));
    }
    return out;
}

}  // namespace

Instance instance_from_json(const json& j, bool trusted, const WarnFn& warn) {
    require(j.is_object(), "top level must be an object");
    require(j.contains("metric") && j["metric"].is_object(), "missing metric object");
    require(j.contains("points"), "missing points");
    require(j.contains("k") && j["k"].is_number_integer(), "missing integer k");
    require(j.contains("z") && j["z"].is_number_integer(), "missing integer z");
    require(j.contains("groups") && j["groups"].is_array(), "missing groups array");

    const json& jm = j["metric"];
    require(jm.contains("kind") && jm["kind"].is_string(), "metric needs a kind");
    const std::string kind = jm["kind"].get<std::string>();

    const bool alias = j.contains("facilities") && j["facilities"].is_string() &&
                       j["facilities"].get<std::string>() == "same_as_points";
    require(alias || j.contains("facilities"), "missing facilities");

    std::shared_ptr<const MetricSpace> metric;
    std::vector<PointId> point_ids, facility_ids;

    if (kind == "lq") {
        require(jm.contains("q") && jm["q"].is_number(), "lq metric needs q");
        const double q = jm["q"].get<double>();
        auto pts = parse_coord_list(j["points"], "points");
        auto universe = pts;
        const int n = static_cast<int>(pts.size());
        for (int i = 0; i < n; ++i) point_ids.push_back(i);
        if (alias) {
            facility_ids = point_ids;
        } else {
            auto fac = parse_coord_list(j["facilities"], "facilities");
            for (std::size_t i = 0; i < fac.size(); ++i)
                facility_ids.push_back(n + static_cast<int>(i));
            universe.insert(universe.end(), fac.begin(), fac.end());
        }
        metric = std::make_shared<MetricSpace>(MetricSpace::lq(std::move(universe), q));
    } else if (kind == "matrix") {
        require(jm.contains("d") && jm["d"].is_array(), "matrix metric needs d");
        std::vector<std::vector<double>> d = parse_coord_list(jm["d"], "matrix rows");
        metric = std::make_shared<MetricSpace>(MetricSpace::matrix(std::move(d), !trusted));
        point_ids = parse_index_list(j["points"], "points", metric->universe_size());
        facility_ids = alias ? point_ids
                             : parse_index_list(j["facilities"], "facilities", metric->universe_size());
    } else {
        require(false, "unknown metric kind '" + kind + "'");
    }

    const int n = static_cast<int>(point_ids.size());
    std::vector<double> point_weights;
    if (j.contains("pointWeights")) {
        require(j["pointWeights"].is_array() && static_cast<int>(j["pointWeights"].size()) == n,
                "pointWeights must list one weight per point");
        for (const auto& v : j["pointWeights"]) point_weights.push_back(v.get<double>());
    }

    std::vector<Group> groups;
    for (const auto& jg : j["groups"]) {
        require(jg.is_object(), "each group must be an object");
        Group g;
        if (jg.contains("weights")) {
            require(jg["weights"].is_object(), "group weights must be an object");
            for (auto it = jg["weights"].begin(); it != jg["weights"].end(); ++it) {
                int p = -1;
                try {
                    p = std::stoi(it.key());
                } catch (const std::exception&) {
                    require(false, "group weight key is not a point index");
                }
                require(p >= 0 && p < n, "group weight index out of range");
                require(it.value().is_number(), "group weight must be a number");
                const double w = it.value().get<double>();
                require(std::isfinite(w) && w >= 0.0, "group weights must be finite and nonnegative");
                g.weights.emplace_back(p, w);
            }
        } else if (jg.contains("subset")) {
            require(jg["subset"].is_array(), "group subset must be an array");
            for (const auto& v : jg["subset"]) {
                require(v.is_number_integer(), "subset entries must be point indices");
                const int p = v.get<int>();
                require(p >= 0 && p < n, "subset index out of range");
                const double w = point_weights.empty() ? 1.0 : point_weights[static_cast<std::size_t>(p)];
                g.weights.emplace_back(p, w);
            }
        } else {
            require(false, "group needs either weights or subset");
        }
        groups.push_back(std::move(g));
    }

    return Instance(std::move(metric), std::move(point_ids), std::move(facility_ids), alias,
                    j["k"].get<int>(), j["z"].get<int>(), std::move(groups), warn);
}

json instance_to_json(const Instance& inst) {
    json j;
    const MetricSpace& m = inst.metric();
    if (m.is_lq()) {
        j["metric"] = {{"kind", "lq"}, {"q", m.exponent()}};
        json pts = json::array();
        for (PointId p : inst.point_ids()) {
            auto c = m.coords_of(p);
            pts.push_back(json(std::vector<double>(c.begin(), c.end())));
        }
        j["points"] = std::move(pts);
        if (inst.facilities_alias_points()) {
            j["facilities"] = "same_as_points";
        } else {
            json fac = json::array();
            for (PointId f : inst.facility_ids()) {
                auto c = m.coords_of(f);
                fac.push_back(json(std::vector<double>(c.begin(), c.end())));
            }
            j["facilities"] = std::move(fac);
        }
    } else {
        j["metric"] = {{"kind", "matrix"}, {"d", m.matrix_data()}};
        j["points"] = inst.point_ids();
        if (inst.facilities_alias_points())
            j["facilities"] = "same_as_points";
        else
            j["facilities"] = inst.facility_ids();
    }
    j["k"] = inst.k();
    j["z"] = inst.z();
    json groups = json::array();
    for (const auto& g : inst.groups()) {
        json w = json::object();
        for (const auto& [p, wp] : g.weights) w[std::to_string(p)] = wp;
        groups.push_back(json{{"weights", std::move(w)}});
    }
    j["groups"] = std::move(groups);
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    write_json_file(instance_to_json(inst), path);
}

Instance load_instance(const std::string& path, bool trusted, const WarnFn& warn) {
    return instance_from_json(read_json_file(path), trusted, warn);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

std::string instance_digest(const Instance& inst) {
    return fnv1a_hex(instance_to_json(inst).dump());
}

}  // namespace robustkz
