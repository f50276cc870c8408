#include "orient/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "orient/errors.hpp"
#include "orient/exact.hpp"
#include "orient/generators.hpp"
#include "orient/inequality.hpp"
#include "orient/lattice.hpp"
#include "orient/monte_carlo.hpp"
#include "orient/report_json.hpp"

namespace orient::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputOptions {
    std::string graph_path;
    std::string grid;   // WxH
    std::size_t complete = 0;
    std::string random; // n=..,m=..|q=..[,bias=..]
    double bias = 0.5;  // grid and complete graphs
    std::size_t trials = 1;
};

struct RunConfig {
    InputOptions input;
    std::vector<Vertex> sources;
    std::vector<Vertex> targets;
    std::string method = "recursion";
    std::string mode = "exact";
    bool slack = false;
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 0;
    unsigned streams = 1;
    std::size_t enum_cap = kDefaultEnumerationCap;
    std::size_t memo_cap = kDefaultMemoCap;
    double tolerance = kProbabilityTolerance;
    std::size_t max_size = 3;
    std::size_t random_sets = 0;
    Vertex root = 0;
    std::size_t n = 0;
    std::size_t width = 0, height = 0;
    std::vector<double> biases;
    std::string origin = "0,0";
    std::string point_a, point_b;
    std::string flip = "toward-high";
    std::uint64_t attempts = 1000000;
    std::string format = "json";
    std::string output;
};

void add_input_options(CLI::App* app, InputOptions& in, bool allow_trials) {
    auto* group = app->add_option_group("input", "graph source (exactly one)");
    group->add_option("--graph", in.graph_path, "edge-list file");
    group->add_option("--grid", in.grid, "grid WxH, every edge biased right/up by --bias");
    group->add_option("--complete", in.complete, "complete graph K_n with constant --bias");
    group->add_option("--random", in.random, "random graph n=<v>,m=<e>|q=<prob>[,bias=uniform|<p>]");
    group->require_option(1);
    app->add_option("--bias", in.bias, "constant bias for --grid and --complete")->check(CLI::Range(0.0, 1.0));
    if (allow_trials) app->add_option("--trials", in.trials, "number of random graphs")->check(CLI::PositiveNumber);
}

void add_sampling_options(CLI::App* app, RunConfig& cfg) {
    app->add_option("--seed", cfg.seed, "master seed");
    app->add_option("--samples", cfg.samples, "sample count");
    app->add_option("--streams", cfg.streams, "random streams")->check(CLI::PositiveNumber);
}

std::uint64_t require_seed(const RunConfig& cfg) {
    if (!cfg.seed) throw UsageError("--seed is required for randomized runs");
    return *cfg.seed;
}

SamplingPlan plan_of(const RunConfig& cfg, std::uint64_t minimum_samples) {
    if (cfg.samples < minimum_samples) {
        throw UsageError("--samples must be at least " + std::to_string(minimum_samples));
    }
    return SamplingPlan{cfg.samples, require_seed(cfg), cfg.streams};
}

std::vector<Graph> load_inputs(const RunConfig& cfg, bool allow_many) {
    const InputOptions& in = cfg.input;
    if (!in.random.empty()) {
        const RandomGraphSpec spec = RandomGraphSpec::parse(in.random);
        std::mt19937_64 rng(require_seed(cfg));
        if (!allow_many && in.trials != 1) throw UsageError("--trials is not supported here");
        std::vector<Graph> graphs;
        for (std::size_t t = 0; t < in.trials; ++t) graphs.push_back(spec.generate(rng));
        return graphs;
    }
    if (in.trials != 1) throw UsageError("--trials applies only to --random");
    if (!in.graph_path.empty()) return {load_graph_file(in.graph_path)};
    if (in.complete > 0) return {complete_graph(in.complete, in.bias)};
    const auto x = in.grid.find('x');
    if (x == std::string::npos) throw UsageError("--grid expects WxH");
    try {
        return {build_grid(GridSpec{std::stoul(in.grid.substr(0, x)), std::stoul(in.grid.substr(x + 1)), in.bias})};
    } catch (const std::logic_error&) {
        throw UsageError("--grid expects WxH");
    }
}

Graph load_single(const RunConfig& cfg) { return load_inputs(cfg, false).front(); }

Vertex parse_point(const GridSpec& spec, const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError(std::string(flag) + " expects x,y");
    try {
        return spec.id(std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1)));
    } catch (const std::logic_error&) {
        throw UsageError(std::string(flag) + " expects x,y");
    }
}

VerifyMode mode_of(const std::string& mode) {
    if (mode == "exact") return VerifyMode::exact;
    if (mode == "montecarlo") return VerifyMode::montecarlo;
    throw UsageError("--mode must be exact or montecarlo");
}

struct Outcome {
    std::string text;
    int code = kSuccess;
};

Outcome emit(const json& j, int code = kSuccess) { return Outcome{j.dump(2) + "\n", code}; }

Outcome cmd_exact(const RunConfig& cfg) {
    if (cfg.sources.empty()) throw UsageError("--source is required");
    if (cfg.targets.empty() || cfg.targets.size() > 2) throw UsageError("exact needs one or two --target values");
    const Graph g = load_single(cfg);
    const VertexSet sources = make_vertex_set(cfg.sources);
    ExactResult r;
    if (cfg.method == "enumeration") {
        EventExpr ev = cfg.targets.size() == 1 ? EventExpr::connection(sources, cfg.targets[0])
                                               : EventExpr::joint(sources, cfg.targets[0], cfg.targets[1]);
        r = brute_force_prob(g, ev, cfg.enum_cap);
    } else if (cfg.method == "recursion") {
        r = cfg.targets.size() == 1 ? exact_connection_prob(g, sources, cfg.targets[0], cfg.memo_cap)
                                    : exact_joint_prob(g, sources, cfg.targets[0], cfg.targets[1], cfg.memo_cap);
    } else {
        throw UsageError("--method must be recursion or enumeration");
    }
    json j = to_json(r);
    j["sources"] = sources;
    j["targets"] = cfg.targets;
    return emit(j);
}

Outcome cmd_mc(const RunConfig& cfg) {
    if (cfg.sources.empty()) throw UsageError("--source is required");
    if (cfg.targets.empty()) throw UsageError("--target is required");
    const SamplingPlan plan = plan_of(cfg, cfg.slack ? 2 : 1);
    const Graph g = load_single(cfg);
    const VertexSet sources = make_vertex_set(cfg.sources);
    json j;
    if (cfg.slack) {
        if (cfg.targets.size() != 2) throw UsageError("--slack needs exactly two --target values");
        j = to_json(estimate_slack(g, sources, cfg.targets[0], cfg.targets[1], plan));
        j["seed"] = plan.seed;
        j["streams"] = plan.streams;
    } else {
        EventExpr ev;
        for (Vertex t : cfg.targets) ev.atoms.push_back(ConnectionAtom{sources, t});
        j = to_json(estimate_event(g, ev, plan));
    }
    j["sources"] = sources;
    j["targets"] = cfg.targets;
    return emit(j);
}

Outcome cmd_verify_t1(const RunConfig& cfg) {
    VerifyOptions opt;
    opt.mode = mode_of(cfg.mode);
    opt.tolerance = cfg.tolerance;
    opt.memo_cap = cfg.memo_cap;
    if (opt.mode == VerifyMode::montecarlo) opt.plan = plan_of(cfg, 2);
    const auto graphs = load_inputs(cfg, true);
    VerificationReport total;
    for (const Graph& g : graphs) total.merge(verify_point_correlation(g, opt));
    json j = to_json(total);
    j["graphs"] = graphs.size();
    j["mode"] = cfg.mode;
    return emit(j, total.ok() ? kSuccess : kViolation);
}

Outcome cmd_verify_t2(const RunConfig& cfg) {
    SourceSetPolicy policy;
    if (cfg.random_sets > 0) {
        policy.kind = SourceSetPolicy::Kind::random;
        policy.count = cfg.random_sets;
        policy.seed = require_seed(cfg);
    } else {
        policy.max_size = cfg.max_size;
    }
    const auto graphs = load_inputs(cfg, true);
    VerificationReport total;
    for (const Graph& g : graphs) total.merge(verify_set_correlation(g, policy, cfg.tolerance, cfg.memo_cap));
    json j = to_json(total);
    j["graphs"] = graphs.size();
    return emit(j, total.ok() ? kSuccess : kViolation);
}

Outcome cmd_fourfunc(const RunConfig& cfg) {
    if (cfg.sources.empty()) throw UsageError("--source is required");
    if (cfg.targets.size() != 2) throw UsageError("fourfunc needs exactly two --target values");
    const Graph g = load_single(cfg);
    const VertexSet sources = make_vertex_set(cfg.sources);
    const Vertex a = cfg.targets[0], b = cfg.targets[1];
    const SetFunctionQuadruple q = build_proof_quadruple(g, sources, a, b, cfg.memo_cap);
    const VerificationReport hypothesis = check_four_functions(q, cfg.tolerance);
    const VerificationReport lattice = check_lattice_identity(out_neighborhood_distribution(g, sources), cfg.tolerance);

    ExactEngine engine(g, cfg.memo_cap);
    json j;
    j["ground"] = q.ground;
    j["four_functions"] = to_json(hypothesis);
    j["lattice_identity"] = to_json(lattice);
    j["sums"] = to_json(sums(q));
    j["exact"] = {{"p_a", engine.connection(sources, a).probability},
                  {"p_b", engine.connection(sources, b).probability},
                  {"p_joint", engine.joint(sources, a, b).probability}};
    return emit(j, hypothesis.ok() && lattice.ok() ? kSuccess : kViolation);
}

Outcome cmd_mcdiarmid(const RunConfig& cfg) {
    const auto graphs = load_inputs(cfg, true);
    double worst = 0.0;
    for (const Graph& g : graphs) worst = std::max(worst, verify_mcdiarmid(g, cfg.root, cfg.enum_cap));
    json j = {{"tv_distance", worst}, {"graphs", graphs.size()}, {"root", cfg.root}};
    return emit(j, worst <= cfg.tolerance ? kSuccess : kViolation);
}

Outcome cmd_alm_linusson(const RunConfig& cfg) {
    const VerifyMode mode = mode_of(cfg.mode);
    SamplingPlan plan;
    if (mode == VerifyMode::montecarlo) plan = plan_of(cfg, 2);
    return emit(to_json(alm_linusson_covariance(cfg.n, mode, plan, Triple{}, cfg.enum_cap)));
}

Outcome cmd_grid_stats(const RunConfig& cfg) {
    const SamplingPlan plan = plan_of(cfg, 1);
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
    const std::vector<double> biases = cfg.biases.empty() ? std::vector<double>{0.5} : cfg.biases;
    std::ostringstream text;
    json rows = json::array();
    if (cfg.format == "csv") text << grid_stats_csv_header() << '\n';
    for (double p : biases) {
        const GridSpec spec{cfg.width, cfg.height, p};
        if (cfg.width == 0 || cfg.height == 0) throw InputError("grid dimensions must be positive");
        const GridStats s = grid_reach_stats(spec, parse_point(spec, cfg.origin, "--origin"), plan);
        if (cfg.format == "csv") {
            text << grid_stats_csv_row(s) << '\n';
        } else {
            rows.push_back(to_json(s));
        }
    }
    if (cfg.format == "json") return emit(rows);
    return Outcome{text.str(), kSuccess};
}

Outcome cmd_witness(const RunConfig& cfg) {
    const std::uint64_t seed = require_seed(cfg);
    if (cfg.width == 0 || cfg.height == 0) throw InputError("grid dimensions must be positive");
    const GridSpec spec{cfg.width, cfg.height, cfg.biases.empty() ? 0.5 : cfg.biases.front()};
    FlipDirection flip;
    if (cfg.flip == "toward-high") {
        flip = FlipDirection::toward_high;
    } else if (cfg.flip == "toward-low") {
        flip = FlipDirection::toward_low;
    } else {
        throw UsageError("--flip must be toward-high or toward-low");
    }
    if (cfg.attempts < 1) throw UsageError("--attempts must be at least 1");
    const Vertex a = parse_point(spec, cfg.point_a, "--a");
    const Vertex b = parse_point(spec, cfg.point_b, "--b");
    const WitnessSearch search = find_nonmonotonicity_witness(spec, a, b, flip, cfg.attempts, seed);
    json j;
    if (search.witness) {
        j = to_json(build_grid(spec), *search.witness);
    } else {
        j = {{"found", false}};
    }
    j["attempts"] = search.attempts;
    j["seed"] = seed;
    return emit(j, search.witness ? kSuccess : kExhausted);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Connection probabilities in biased random orientations of graphs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_output = [&](CLI::App* sub) { sub->add_option("--output", cfg.output, "write output to a file"); };

    auto* exact = app.add_subcommand("exact", "exact connection or joint probability");
    add_input_options(exact, cfg.input, false);
    exact->add_option("--source", cfg.sources, "source vertices")->delimiter(',');
    exact->add_option("--target", cfg.targets, "one or two target vertices")->delimiter(',');
    exact->add_option("--method", cfg.method, "recursion | enumeration");
    exact->add_option("--enum-cap", cfg.enum_cap, "max edges for enumeration");
    exact->add_option("--memo-cap", cfg.memo_cap, "max memo entries for recursion");
    exact->add_option("--seed", cfg.seed, "seed for --random");
    add_output(exact);

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of a connection event");
    add_input_options(mc, cfg.input, false);
    mc->add_option("--source", cfg.sources, "source vertices")->delimiter(',');
    mc->add_option("--target", cfg.targets, "targets (conjunction)")->delimiter(',');
    mc->add_flag("--slack", cfg.slack, "estimate the paired slack for two targets");
    add_sampling_options(mc, cfg);
    add_output(mc);

    auto* t1 = app.add_subcommand("verify-t1", "check the three-vertex correlation inequality");
    add_input_options(t1, cfg.input, true);
    t1->add_option("--mode", cfg.mode, "exact | montecarlo");
    t1->add_option("--tolerance", cfg.tolerance, "allowed negative slack");
    t1->add_option("--memo-cap", cfg.memo_cap, "max memo entries for recursion");
    add_sampling_options(t1, cfg);
    add_output(t1);

    auto* t2 = app.add_subcommand("verify-t2", "check the set-source correlation inequality");
    add_input_options(t2, cfg.input, true);
    t2->add_option("--max-size", cfg.max_size, "all source sets up to this size");
    t2->add_option("--random-sets", cfg.random_sets, "use this many seeded random source sets instead");
    t2->add_option("--tolerance", cfg.tolerance, "allowed negative slack");
    t2->add_option("--memo-cap", cfg.memo_cap, "max memo entries for recursion");
    t2->add_option("--seed", cfg.seed, "seed for --random and --random-sets");
    add_output(t2);

    auto* ff = app.add_subcommand("fourfunc", "build and check the induction-step quadruple");
    add_input_options(ff, cfg.input, false);
    ff->add_option("--source", cfg.sources, "source vertices")->delimiter(',');
    ff->add_option("--target", cfg.targets, "two targets outside the sources")->delimiter(',');
    ff->add_option("--tolerance", cfg.tolerance, "allowed negative slack")->default_val(kIdentityTolerance);
    ff->add_option("--memo-cap", cfg.memo_cap, "max memo entries for recursion");
    ff->add_option("--seed", cfg.seed, "seed for --random");
    add_output(ff);

    auto* mcd = app.add_subcommand("mcdiarmid", "compare unbiased reachable sets with percolation clusters");
    add_input_options(mcd, cfg.input, true);
    mcd->add_option("--root", cfg.root, "root vertex");
    mcd->add_option("--tolerance", cfg.tolerance, "allowed total variation");
    mcd->add_option("--enum-cap", cfg.enum_cap, "max edges for enumeration");
    mcd->add_option("--seed", cfg.seed, "seed for --random");
    add_output(mcd);

    auto* al = app.add_subcommand("alm-linusson", "covariance of a->s and s->b on unbiased K_n");
    al->add_option("--n", cfg.n, "vertices of K_n")->required();
    al->add_option("--mode", cfg.mode, "exact | montecarlo");
    al->add_option("--enum-cap", cfg.enum_cap, "max edges for enumeration");
    add_sampling_options(al, cfg);
    add_output(al);

    auto* gs = app.add_subcommand("grid-stats", "reachable-set statistics on a biased grid");
    gs->add_option("--width", cfg.width, "grid width")->required();
    gs->add_option("--height", cfg.height, "grid height")->required();
    gs->add_option("--bias", cfg.biases, "one or more bias values")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    gs->add_option("--origin", cfg.origin, "origin x,y");
    gs->add_option("--format", cfg.format, "csv | json")->default_val("csv");
    add_sampling_options(gs, cfg);
    add_output(gs);

    auto* wit = app.add_subcommand("witness", "search for a non-monotone connection event on a grid");
    wit->add_option("--width", cfg.width, "grid width")->required();
    wit->add_option("--height", cfg.height, "grid height")->required();
    wit->add_option("--bias", cfg.biases, "bias")->check(CLI::Range(0.0, 1.0));
    wit->add_option("--a", cfg.point_a, "start x,y")->required();
    wit->add_option("--b", cfg.point_b, "end x,y")->required();
    wit->add_option("--flip", cfg.flip, "toward-high | toward-low");
    wit->add_option("--attempts", cfg.attempts, "orientation budget");
    wit->add_option("--seed", cfg.seed, "seed");
    add_output(wit);

    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        Outcome result;
        if (*exact) result = cmd_exact(cfg);
        else if (*mc) result = cmd_mc(cfg);
        else if (*t1) result = cmd_verify_t1(cfg);
        else if (*t2) result = cmd_verify_t2(cfg);
        else if (*ff) result = cmd_fourfunc(cfg);
        else if (*mcd) result = cmd_mcdiarmid(cfg);
        else if (*al) result = cmd_alm_linusson(cfg);
        else if (*gs) result = cmd_grid_stats(cfg);
        else result = cmd_witness(cfg);

        if (cfg.output.empty()) {
            out << result.text;
        } else {
            std::ofstream file(cfg.output);
            if (!file) throw InputError("cannot write '" + cfg.output + "'");
            file << result.text;
        }
        if (result.code == kViolation) err << "verification violation found\n";
        if (result.code == kExhausted) err << "budget exhausted without a result\n";
        return result.code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExhausted;
    }
}

} // namespace orient::cli
