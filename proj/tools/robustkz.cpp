// Command-line front end: instance generators, solvers, the coreset builder,
// property checkers, and a small benchmark table writer. All output is JSON
// with sorted keys; every run is reproducible from --seed.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "robustkz/checks.hpp"
#include "robustkz/generators.hpp"
#include "robustkz/io.hpp"

using nlohmann::json;
using namespace robustkz;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitCheckFailed = 3;

int default_threads() {
    if (const char* env = std::getenv("ROBUSTKZ_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

std::string join_args(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) {
        if (i) os << ' ';
        os << argv[i];
    }
    return os.str();
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(j, out_path);
}

struct SolveFlags {
    std::string in;
    std::string out;
    std::string algo = "exact";
    std::string bicriteria = "exact";
    double eps = 0.3;
    double beta = 2.0;
    double assume_alpha = 0.0;  // 0 means unset
    std::uint64_t budget = kDefaultSearchBudget;
    std::uint64_t oracle_budget = kDefaultOracleBudget;
    int threads = default_threads();
    std::uint64_t seed = 0;
    bool timings = false;
    bool trusted = false;
};

BicriteriaSolution make_bicriteria(const Instance& inst, const SolveFlags& f) {
    if (f.bicriteria == "exact") return bicriteria_exact(inst, f.oracle_budget);
    std::optional<double> assume;
    if (f.assume_alpha > 0.0) assume = f.assume_alpha;
    return bicriteria_greedy(inst, f.beta, assume, f.oracle_budget);
}

json run_result(const std::string& command, const Instance& inst, const std::string& algo,
                const Solution& sol, bool certified, double ratio_bound, std::uint64_t tuples,
                double wall_ms, std::uint64_t seed, bool timings) {
    json j;
    j["command"] = command;
    j["instance_digest"] = instance_digest(inst);
    j["algorithm"] = algo;
    j["seed"] = seed;
    j["solution"] = {{"centers", sol.centers},
                     {"cost", sol.cost},
                     {"per_group_costs", sol.per_group}};
    j["certification"] = {{"certified", certified}, {"ratio_bound", ratio_bound}};
    j["counters"] = json{{"tuples_enumerated", tuples}};
    if (timings) j["counters"]["wall_ms"] = wall_ms;
    return j;
}

int cmd_solve(const SolveFlags& f, const std::string& command) {
    const Instance inst = load_instance(f.in, f.trusted,
                                        [](const std::string& w) { std::cerr << "warning: " << w << "\n"; });
    const auto t0 = std::chrono::steady_clock::now();
    Solution sol;
    bool certified = true;
    double ratio_bound = 1.0;
    std::uint64_t tuples = 0;

    if (f.algo == "exact") {
        const OracleResult r = exact_solve(inst, f.oracle_budget, f.threads);
        sol = r.sol;
        tuples = r.subsets_enumerated;
    } else if (f.algo == "bicriteria") {
        const BicriteriaSolution b = make_bicriteria(inst, f);
        sol = solution_cost(inst, b.centers);
        certified = b.alpha_mode == AlphaMode::CertifiedByOracle;
        ratio_bound = b.alpha;
        tuples = static_cast<std::uint64_t>(b.centers.size());
    } else if (f.algo == "epas") {
        const BicriteriaSolution b = make_bicriteria(inst, f);
        const SolveOutcome r = epas_solve(inst, f.eps, b, f.budget, f.threads);
        sol = r.sol;
        certified = r.stats.certified;
        ratio_bound = r.stats.ratio_bound;
        tuples = r.stats.tuples_enumerated;
    } else if (f.algo == "fpt-euclid") {
        const BicriteriaSolution b = make_bicriteria(inst, f);
        const SolveOutcome r = fpt_solve(inst, b, f.oracle_budget, f.threads);
        sol = r.sol;
        certified = r.stats.certified;
        ratio_bound = r.stats.ratio_bound;
        tuples = r.stats.tuples_enumerated;
    } else {
        std::cerr << "unknown algorithm '" << f.algo << "'\n";
        return kExitUsage;
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    // recompute from centers so no stale cost can leak out
    sol = solution_cost(inst, sol.centers);
    emit(run_result(command, inst, f.algo, sol, certified, ratio_bound, tuples, ms, f.seed,
                    f.timings),
         f.out);
    std::cerr << "solved in " << ms << " ms\n";
    return kExitOk;
}

struct GenFlags {
    std::string type = "uniform";
    std::string out;
    int n = 20, f = 8, d = 2, k = 2, z = 1, m = 3;
    int clusters = 3;
    double stddev = 0.5;
    bool singleton_groups = false;
    std::uint64_t seed = 0;
    // gadget
    int part_size = 3;
    std::string edges = "random:0.5";
    std::string code = "hadamard";
    double eta = 0.0;
    int q = 2;
};

int cmd_gen(const GenFlags& f) {
    GroupSpec gs;
    gs.count = f.m;
    gs.singletons = f.singleton_groups;
    if (f.type == "gadget") {
        if (f.k < 3) {
            std::cerr << "gadget generation needs k >= 3 for a meaningful gap\n";
            return kExitUsage;
        }
        EdgePattern pattern = EdgePattern::Random;
        double prob = 0.5;
        std::vector<std::pair<int, int>> file_edges;
        bool from_file = false;
        if (f.edges == "none")
            pattern = EdgePattern::None;
        else if (f.edges == "complete")
            pattern = EdgePattern::Complete;
        else if (f.edges.rfind("random:", 0) == 0)
            prob = std::stod(f.edges.substr(7));
        else {
            from_file = true;
            const json je = read_json_file(f.edges);
            for (const auto& e : je) file_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        const PartiteGraph g = from_file
                                   ? make_partite_graph(f.k, f.part_size, file_edges)
                                   : make_partite_graph(f.k, f.part_size, pattern, prob, f.seed);
        const CodeMode mode = f.code == "hadamard" ? CodeMode::Hadamard : CodeMode::RandomLinear;
        const CodeBook code = build_code(g.num_vertices(), f.eta, mode, f.seed);
        const Instance inst = mcis_to_kcenter(g, code, f.q);
        save_instance(inst, f.out);
        json sidecar;
        sidecar["graph"] = {{"k", g.k}, {"parts", g.parts}, {"edges", g.edges}, {"is_hub", g.is_hub}};
        json words = json::array();
        for (const auto& w : code.words) {
            std::string bits;
            for (auto b : w) bits.push_back(b ? '1' : '0');
            words.push_back(bits);
        }
        sidecar["code"] = {{"t", code.t}, {"eta", code.eta}, {"words", words}};
        sidecar["bounds"] = {{"yes", (1.0 + 2.0 * code.eta) * code.t},
                             {"no", (1.5 - 3.0 * code.eta) * code.t},
                             {"q", f.q}};
        write_json_file(sidecar, f.out + ".sidecar.json");
        std::cerr << "wrote " << f.out << " and sidecar\n";
        return kExitOk;
    }

    Instance inst = [&] {
        if (f.type == "uniform") return gen_uniform_cube(f.n, f.f, f.d, f.k, f.z, gs, f.seed);
        if (f.type == "gaussian")
            return gen_gaussian_mixture(f.n, f.f, f.d, f.clusters, f.stddev, f.k, f.z, gs, f.seed);
        if (f.type == "line") return gen_line(f.n, f.f, f.k, f.z, gs, f.seed);
        if (f.type == "matrix") return gen_matrix(f.n, f.f, f.k, f.z, gs, f.seed);
        throw std::invalid_argument("unknown generator type '" + f.type + "'");
    }();
    save_instance(inst, f.out);
    std::cerr << "wrote " << f.out << " (digest " << instance_digest(inst) << ")\n";
    return kExitOk;
}

struct CoresetFlags {
    std::string in;
    std::string out;
    double eps = 0.2;
    std::string bicriteria = "exact";
    double beta = 2.0;
    double assume_alpha = 0.0;
    std::uint64_t oracle_budget = kDefaultOracleBudget;
    bool trusted = false;
};

int cmd_coreset(const CoresetFlags& f) {
    const Instance inst = load_instance(f.in, f.trusted);
    SolveFlags sf;
    sf.bicriteria = f.bicriteria;
    sf.beta = f.beta;
    sf.assume_alpha = f.assume_alpha;
    sf.oracle_budget = f.oracle_budget;
    const BicriteriaSolution bic = make_bicriteria(inst, sf);
    const Coreset cs =
        build_coreset(inst, bic, f.eps, [](const std::string& w) { std::cerr << "warning: " << w << "\n"; });
    json j = instance_to_json(coreset_instance(cs, inst));
    json rep = json::object();
    for (int p = 0; p < inst.n(); ++p)
        if (cs.rep[static_cast<std::size_t>(p)] >= 0)
            rep[std::to_string(p)] = cs.rep[static_cast<std::size_t>(p)];
    j["rep"] = std::move(rep);
    j["params"] = {{"eps", cs.params.eps},
                   {"alpha", cs.params.alpha},
                   {"R", cs.params.radius_r},
                   {"tau", cs.params.tau},
                   {"ring_count", cs.params.ring_count_j},
                   {"bicriteria_centers", cs.params.bicriteria_centers},
                   {"original_points", inst.n()},
                   {"coreset_points", cs.points.size()}};
    emit(j, f.out);
    return kExitOk;
}

struct CheckFlags {
    std::string kind;
    std::uint64_t samples = 0;
    std::vector<int> dims;
    std::uint64_t seed = 0;
    int instances = 10;
    int calls = 200;
    double eps = 0.2;
    int n = 20, f = 8, k = 2, z = 1, m = 3;
    // gadget
    int part_size = 3;
    std::string edges = "complete";
    std::string code = "hadamard";
    double eta = 0.0;
    int q = 2;
};

int cmd_check(const CheckFlags& f, const std::string& command) {
    CheckReport rep;
    if (f.kind == "projection-lemma") {
        const auto dims = f.dims.empty() ? std::vector<int>{1, 2, 3, 5, 10} : f.dims;
        rep = check_projection_lemma(f.samples ? static_cast<int>(f.samples) : 1000, dims, f.seed);
    } else if (f.kind == "assignment-lemma") {
        const auto dims = f.dims.empty() ? std::vector<int>{2, 3, 5, 10} : f.dims;
        rep = check_assignment_lemma(f.samples ? f.samples : 100000, dims, f.seed);
    } else if (f.kind == "eps-net") {
        rep = check_eps_net(f.calls, f.seed);
    } else if (f.kind == "coreset") {
        rep.name = "coreset";
        for (int i = 0; i < f.instances; ++i) {
            GroupSpec gs;
            gs.count = f.m;
            const Instance inst =
                gen_uniform_cube(f.n, f.f, 2, f.k, f.z, gs, f.seed + static_cast<std::uint64_t>(i));
            check_coreset_instance(inst, f.eps, kDefaultOracleBudget, &rep);
        }
    } else if (f.kind == "gadget-gap") {
        EdgePattern pattern = EdgePattern::Complete;
        double prob = 0.5;
        if (f.edges == "none")
            pattern = EdgePattern::None;
        else if (f.edges == "complete")
            pattern = EdgePattern::Complete;
        else if (f.edges.rfind("random:", 0) == 0) {
            pattern = EdgePattern::Random;
            prob = std::stod(f.edges.substr(7));
        } else {
            pattern = EdgePattern::Random;
        }
        const CodeMode mode = f.code == "hadamard" ? CodeMode::Hadamard : CodeMode::RandomLinear;
        rep = check_gadget_gap(f.k, f.part_size, pattern, mode, f.eta, f.q, f.seed, prob);
    } else {
        std::cerr << "unknown check kind '" << f.kind << "'\n";
        return kExitUsage;
    }
    json j;
    j["command"] = command;
    j["check"] = rep.name;
    j["passed"] = rep.passed;
    j["assertions"] = rep.assertions;
    j["failures"] = rep.failures;
    j["metrics"] = rep.metrics;
    std::cout << j.dump(2) << "\n";
    return rep.passed ? kExitOk : kExitCheckFailed;
}

struct BenchFlags {
    std::vector<std::string> inputs;
    std::vector<std::string> algos = {"exact", "epas"};
    double eps = 0.3;
    std::uint64_t seed = 0;
    int threads = default_threads();
};

int cmd_bench(const BenchFlags& f) {
    std::cout << "instance,digest,algorithm,cost,certified,ratio_bound,tuples,wall_ms\n";
    for (const auto& path : f.inputs) {
        const Instance inst = load_instance(path);
        for (const auto& algo : f.algos) {
            SolveFlags sf;
            sf.algo = algo;
            sf.eps = f.eps;
            sf.threads = f.threads;
            const auto t0 = std::chrono::steady_clock::now();
            Solution sol;
            bool certified = true;
            double ratio = 1.0;
            std::uint64_t tuples = 0;
            if (algo == "exact") {
                const auto r = exact_solve(inst, kDefaultOracleBudget, f.threads);
                sol = r.sol;
                tuples = r.subsets_enumerated;
            } else if (algo == "bicriteria") {
                const auto b = bicriteria_greedy(inst, 2.0, std::nullopt);
                sol = solution_cost(inst, b.centers);
                certified = b.alpha_mode == AlphaMode::CertifiedByOracle;
                ratio = b.alpha;
            } else if (algo == "epas") {
                const auto b = bicriteria_exact(inst);
                const auto r = epas_solve(inst, f.eps, b, kDefaultSearchBudget, f.threads);
                sol = r.sol;
                certified = r.stats.certified;
                ratio = r.stats.ratio_bound;
                tuples = r.stats.tuples_enumerated;
            } else if (algo == "fpt-euclid") {
                const auto b = bicriteria_greedy(inst, 2.0, std::nullopt);
                const auto r = fpt_solve(inst, b, kDefaultOracleBudget, f.threads);
                sol = r.sol;
                certified = r.stats.certified;
                ratio = r.stats.ratio_bound;
                tuples = r.stats.tuples_enumerated;
            } else {
                std::cerr << "unknown algorithm '" << algo << "'\n";
                return kExitUsage;
            }
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            std::cout << path << ',' << instance_digest(inst) << ',' << algo << ',' << sol.cost
                      << ',' << (certified ? 1 : 0) << ',' << ratio << ',' << tuples << ',' << ms
                      << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string command = join_args(argc, argv);
    CLI::App app{"Robust (k,z)-clustering toolkit"};
    app.require_subcommand(1);

    GenFlags gf;
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("--type", gf.type, "uniform|gaussian|line|matrix|gadget");
    gen->add_option("--out", gf.out)->required();
    gen->add_option("--n", gf.n);
    gen->add_option("--f", gf.f, "facility count; 0 aliases facilities to points");
    gen->add_option("--d", gf.d);
    gen->add_option("--k", gf.k);
    gen->add_option("--z", gf.z);
    gen->add_option("--m", gf.m, "group count");
    gen->add_option("--clusters", gf.clusters);
    gen->add_option("--stddev", gf.stddev);
    gen->add_flag("--singleton-groups", gf.singleton_groups);
    gen->add_option("--seed", gf.seed);
    gen->add_option("--part-size", gf.part_size);
    gen->add_option("--edges", gf.edges, "none|complete|random:p|<json file>");
    gen->add_option("--code", gf.code, "hadamard|random-linear");
    gen->add_option("--eta", gf.eta);
    gen->add_option("--q", gf.q);

    SolveFlags sf;
    auto* solve = app.add_subcommand("solve", "run a solver on an instance");
    solve->add_option("--in", sf.in)->required();
    solve->add_option("--out", sf.out);
    solve->add_option("--algo", sf.algo, "exact|bicriteria|epas|fpt-euclid");
    solve->add_option("--eps", sf.eps);
    solve->add_option("--bicriteria", sf.bicriteria, "exact|greedy");
    solve->add_option("--beta", sf.beta);
    solve->add_option("--assume-alpha", sf.assume_alpha);
    solve->add_option("--budget", sf.budget);
    solve->add_option("--oracle-budget", sf.oracle_budget);
    solve->add_option("--threads", sf.threads);
    solve->add_option("--seed", sf.seed);
    solve->add_flag("--timings", sf.timings);
    solve->add_flag("--trusted", sf.trusted);

    CoresetFlags cf;
    auto* coreset = app.add_subcommand("coreset", "coreset operations");
    auto* coreset_build = coreset->add_subcommand("build", "build and emit a coreset");
    coreset_build->add_option("--in", cf.in)->required();
    coreset_build->add_option("--out", cf.out);
    coreset_build->add_option("--eps", cf.eps);
    coreset_build->add_option("--bicriteria", cf.bicriteria);
    coreset_build->add_option("--beta", cf.beta);
    coreset_build->add_option("--assume-alpha", cf.assume_alpha);
    coreset_build->add_flag("--trusted", cf.trusted);

    CheckFlags kf;
    auto* check = app.add_subcommand("check", "run a property checker");
    check->add_option("kind", kf.kind, "coreset|projection-lemma|assignment-lemma|gadget-gap|eps-net")
        ->required();
    check->add_option("--samples", kf.samples);
    check->add_option("--dims", kf.dims)->delimiter(',');
    check->add_option("--seed", kf.seed);
    check->add_option("--instances", kf.instances);
    check->add_option("--calls", kf.calls);
    check->add_option("--eps", kf.eps);
    check->add_option("--n", kf.n);
    check->add_option("--f", kf.f);
    check->add_option("--k", kf.k);
    check->add_option("--z", kf.z);
    check->add_option("--m", kf.m);
    check->add_option("--part-size", kf.part_size);
    check->add_option("--edges", kf.edges);
    check->add_option("--code", kf.code);
    check->add_option("--eta", kf.eta);
    check->add_option("--q", kf.q);

    BenchFlags bf;
    auto* bench = app.add_subcommand("bench", "CSV benchmark table");
    bench->add_option("--in", bf.inputs)->required()->delimiter(',');
    bench->add_option("--algos", bf.algos)->delimiter(',');
    bench->add_option("--eps", bf.eps);
    bench->add_option("--threads", bf.threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gf);
        if (solve->parsed()) return cmd_solve(sf, command);
        if (coreset->parsed()) return cmd_coreset(cf);
        if (check->parsed()) return cmd_check(kf, command);
        if (bench->parsed()) return cmd_bench(bf);
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
