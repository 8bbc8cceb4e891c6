#include "robustkz/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace robustkz {

namespace {

int hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

int weight(const std::vector<std::uint8_t>& a) {
    int w = 0;
    for (std::uint8_t bit : a) w += bit;
    return w;
}

}  // namespace

bool code_is_balanced(const CodeBook& code) {
    const double lo = (0.5 - code.eta) * code.t;
    const double hi = (0.5 + code.eta) * code.t;
    for (std::size_t i = 0; i < code.words.size(); ++i) {
        const int w = weight(code.words[i]);
        if (w < lo - 1e-9 || w > hi + 1e-9) return false;
        for (std::size_t j = i + 1; j < code.words.size(); ++j) {
            const int d = hamming(code.words[i], code.words[j]);
            if (d < lo - 1e-9 || d > hi + 1e-9) return false;
        }
    }
    return true;
}

CodeBook build_code(int s, double eta, CodeMode mode, std::uint64_t seed) {
    if (s < 1) throw std::invalid_argument("code needs at least one word");
    if (eta < 0.0 || eta >= 0.5) throw std::invalid_argument("eta must lie in [0, 1/2)");

    CodeBook code;
    if (mode == CodeMode::Hadamard) {
        int b = 1;
        while ((1 << b) < s + 1) ++b;
        const int t = 1 << b;
        code.t = t;
        code.eta = 0.0;
        for (int msg = 1; msg <= s; ++msg) {
            std::vector<std::uint8_t> w(static_cast<std::size_t>(t));
            for (int c = 0; c < t; ++c) {
                // inner product of the message and column index over GF(2)
                int bit = msg & c;
                bit ^= bit >> 16;
                bit ^= bit >> 8;
                bit ^= bit >> 4;
                bit ^= bit >> 2;
                bit ^= bit >> 1;
                w[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(bit & 1);
            }
            code.words.push_back(std::move(w));
        }
    } else {
        if (eta == 0.0) throw std::invalid_argument("random-linear codes need eta > 0");
        const double log_s = std::log2(static_cast<double>(std::max(s, 2)));
        const int t = static_cast<int>(std::ceil(2.0 * log_s / (eta * eta)));
        int b = 1;
        while ((1 << b) < s + 1) ++b;
        code.t = t;
        code.eta = eta;
        std::mt19937_64 rng(seed);
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::vector<std::vector<std::uint8_t>> gen(static_cast<std::size_t>(b));
            for (auto& row : gen) {
                row.resize(static_cast<std::size_t>(t));
                for (auto& bit : row) bit = static_cast<std::uint8_t>(rng() & 1);
            }
            code.words.clear();
            for (int msg = 1; msg <= s; ++msg) {
                std::vector<std::uint8_t> w(static_cast<std::size_t>(t), 0);
                for (int r = 0; r < b; ++r)
                    if ((msg >> r) & 1)
                        for (int c = 0; c < t; ++c)
                            w[static_cast<std::size_t>(c)] ^= gen[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                code.words.push_back(std::move(w));
            }
            if (code_is_balanced(code)) return code;
        }
        throw std::runtime_error("no balanced random code after 1000 samples; increase t or eta");
    }
    if (!code_is_balanced(code)) throw std::runtime_error("constructed code fails the balance check");
    return code;
}

bool PartiteGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

namespace {

PartiteGraph normalize(int k, int part_size, std::vector<std::pair<int, int>> user_edges) {
    if (k < 2) throw std::invalid_argument("partite graph needs k >= 2");
    if (part_size < 1) throw std::invalid_argument("part size must be positive");
    PartiteGraph g;
    g.k = k;
    g.parts.resize(static_cast<std::size_t>(k));
    const int user_n = k * part_size;
    for (int i = 0; i < k; ++i)
        for (int v = 0; v < part_size; ++v) g.parts[static_cast<std::size_t>(i)].push_back(i * part_size + v);
    g.part_of.resize(static_cast<std::size_t>(user_n));
    for (int v = 0; v < user_n; ++v) g.part_of[static_cast<std::size_t>(v)] = v / part_size;
    g.is_hub.assign(static_cast<std::size_t>(user_n), 0);

    for (auto& [u, v] : user_edges) {
        if (u < 0 || v < 0 || u >= user_n || v >= user_n)
            throw std::invalid_argument("edge endpoint out of range");
        if (g.part_of[static_cast<std::size_t>(u)] == g.part_of[static_cast<std::size_t>(v)])
            throw std::invalid_argument("edges must join distinct parts");
        if (u > v) std::swap(u, v);
    }

    // one hub per part, adjacent to every vertex outside the part
    std::vector<int> hubs;
    for (int i = 0; i < k; ++i) {
        const int hub = user_n + i;
        hubs.push_back(hub);
        g.parts[static_cast<std::size_t>(i)].push_back(hub);
        g.part_of.push_back(i);
        g.is_hub.push_back(1);
    }
    for (int i = 0; i < k; ++i)
        for (int v = 0; v < static_cast<int>(g.part_of.size()); ++v)
            if (g.part_of[static_cast<std::size_t>(v)] != i && v != hubs[static_cast<std::size_t>(i)])
                user_edges.emplace_back(std::min(hubs[static_cast<std::size_t>(i)], v),
                                        std::max(hubs[static_cast<std::size_t>(i)], v));

    std::sort(user_edges.begin(), user_edges.end());
    user_edges.erase(std::unique(user_edges.begin(), user_edges.end()), user_edges.end());
    g.edges = std::move(user_edges);
    return g;
}

}  // namespace

PartiteGraph make_partite_graph(int k, int part_size, EdgePattern pattern,
                                double edge_probability, std::uint64_t seed) {
    std::vector<std::pair<int, int>> edges;
    const int user_n = k * part_size;
    if (pattern == EdgePattern::Complete) {
        for (int u = 0; u < user_n; ++u)
            for (int v = u + 1; v < user_n; ++v)
                if (u / part_size != v / part_size) edges.emplace_back(u, v);
    } else if (pattern == EdgePattern::Random) {
        std::mt19937_64 rng(seed);
        for (int u = 0; u < user_n; ++u)
            for (int v = u + 1; v < user_n; ++v) {
                if (u / part_size == v / part_size) continue;
                const double coin = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                if (coin < edge_probability) edges.emplace_back(u, v);
            }
    }
    return normalize(k, part_size, std::move(edges));
}

PartiteGraph make_partite_graph(int k, int part_size,
                                const std::vector<std::pair<int, int>>& user_edges) {
    return normalize(k, part_size, user_edges);
}

Instance mcis_to_kcenter(const PartiteGraph& g, const CodeBook& code, int q) {
    if (q < 1) throw std::invalid_argument("q must be a positive integer");
    const int n = g.num_vertices();
    if (n > static_cast<int>(code.words.size()))
        throw std::invalid_argument("code book has fewer words than vertices");
    const int t = code.t;
    const int dim = g.k * t;

    auto complement = [&](const std::vector<std::uint8_t>& w) {
        std::vector<std::uint8_t> out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] ? 0 : 1;
        return out;
    };

    std::vector<std::vector<double>> coords;
    // one point per vertex: its code word in the part's block
    for (int v = 0; v < n; ++v) {
        std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
        const int block = g.part_of[static_cast<std::size_t>(v)];
        const auto& w = code.words[static_cast<std::size_t>(v)];
        for (int i = 0; i < t; ++i) c[static_cast<std::size_t>(block * t + i)] = w[static_cast<std::size_t>(i)];
        coords.push_back(std::move(c));
    }
    // one point per edge: complemented words of both endpoints
    for (const auto& [u, v] : g.edges) {
        std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
        for (int end : {u, v}) {
            const int block = g.part_of[static_cast<std::size_t>(end)];
            const auto w = complement(code.words[static_cast<std::size_t>(end)]);
            for (int i = 0; i < t; ++i) c[static_cast<std::size_t>(block * t + i)] = w[static_cast<std::size_t>(i)];
        }
        coords.push_back(std::move(c));
    }

    const int total = static_cast<int>(coords.size());
    std::vector<PointId> ids(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) ids[static_cast<std::size_t>(i)] = i;
    std::vector<Group> groups;
    groups.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
        Group gg;
        gg.weights.emplace_back(i, 1.0);
        groups.push_back(std::move(gg));
    }
    auto metric = std::make_shared<MetricSpace>(
        MetricSpace::lq(std::move(coords), static_cast<double>(q)));
    return Instance(std::move(metric), ids, ids, true, g.k, 1, std::move(groups));
}

GapReport verify_gap(const Instance& inst, const PartiteGraph& g, const CodeBook& code, int q,
                     std::uint64_t budget) {
    GapReport rep;
    rep.yes_bound = (1.0 + 2.0 * code.eta) * code.t;
    rep.no_bound = (1.5 - 3.0 * code.eta) * code.t;

    std::uint64_t combos = 1;
    for (const auto& part : g.parts) {
        combos *= part.size();
        if (combos > budget)
            throw BudgetExceededError("transversal search would cover too many combinations");
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(g.k), 0);
    while (true) {
        bool independent = true;
        for (int i = 0; i < g.k && independent; ++i)
            for (int j = i + 1; j < g.k && independent; ++j)
                if (g.has_edge(g.parts[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]],
                               g.parts[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]]))
                    independent = false;
        ++rep.transversals_checked;
        if (independent) {
            rep.has_mcis = true;
            break;
        }
        int pos = g.k - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] + 1 ==
                               g.parts[static_cast<std::size_t>(pos)].size()) {
            pick[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
    }

    rep.kcenter_opt = exact_solve(inst, budget).sol.cost;
    rep.opt_pow_q = std::pow(rep.kcenter_opt, static_cast<double>(q));
    const double tol = 1e-6;
    rep.gap_respected = rep.has_mcis ? rep.opt_pow_q <= rep.yes_bound + tol
                                     : rep.opt_pow_q >= rep.no_bound - tol;

    std::vector<PointId> vertex_ids;
    for (int v = 0; v < g.num_vertices(); ++v) vertex_ids.push_back(inst.point_id(v));
    const Instance vertex_restricted(inst.metric_ptr(), inst.point_ids(), vertex_ids, false,
                                     inst.k(), inst.z(), inst.groups());
    rep.vertex_only_opt_pow_q =
        std::pow(exact_solve(vertex_restricted, budget).sol.cost, static_cast<double>(q));
    return rep;
}

}  // namespace robustkz
