#include "orient/inequality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "orient/generators.hpp"

namespace orient {

namespace {

std::string set_text(const VertexSet& set) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < set.size(); ++i) out << (i ? "," : "") << set[i];
    out << '}';
    return out.str();
}

VertexSet subset_of(const std::vector<Vertex>& ground, Mask key) {
    VertexSet out;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if ((key >> i) & 1U) out.push_back(ground[i]);
    }
    return out;
}

bool better_worst(double slack, const std::string& instance, double min_slack, const std::string& worst) {
    return slack < min_slack || (slack == min_slack && instance < worst);
}

} // namespace

void SetFunctionQuadruple::validate() const {
    if (ground.size() > kMaxFourFunctionsGround) {
        throw InputError("four-functions check supports ground sets of at most " +
                         std::to_string(kMaxFourFunctionsGround) + " elements");
    }
    const std::size_t size = subset_count();
    for (const auto* f : {&alpha, &beta, &gamma, &delta}) {
        if (f->size() != size) throw InputError("set function is not defined on every subset");
        for (double v : *f) {
            if (!(v >= 0.0)) throw InputError("set function takes a negative value");
        }
    }
}

QuadrupleSums sums(const SetFunctionQuadruple& q) {
    QuadrupleSums s;
    for (double v : q.alpha) s.alpha += v;
    for (double v : q.beta) s.beta += v;
    for (double v : q.gamma) s.gamma += v;
    for (double v : q.delta) s.delta += v;
    return s;
}

void VerificationReport::merge(const VerificationReport& other) {
    instances_checked += other.instances_checked;
    if (other.instances_checked > 0 && better_worst(other.min_slack, other.worst_instance, min_slack, worst_instance)) {
        min_slack = other.min_slack;
        worst_instance = other.worst_instance;
    }
    violation_count += other.violation_count;
    for (const Violation& v : other.violations) {
        if (violations.size() < kMaxStoredViolations) violations.push_back(v);
    }
    details.insert(details.end(), other.details.begin(), other.details.end());
}

VerificationReport check_four_functions(const SetFunctionQuadruple& q, double tolerance) {
    q.validate();
    VerificationReport report;
    const std::size_t size = q.subset_count();
    for (std::size_t x1 = 0; x1 < size; ++x1) {
        for (std::size_t x2 = 0; x2 < size; ++x2) {
            const double slack = q.gamma[x1 | x2] * q.delta[x1 & x2] - q.alpha[x1] * q.beta[x2];
            report.record_with_tolerance(slack, tolerance, [&] {
                return "hypothesis X1=" + set_text(subset_of(q.ground, x1)) +
                       " X2=" + set_text(subset_of(q.ground, x2));
            });
        }
    }
    const QuadrupleSums s = sums(q);
    report.record_with_tolerance(s.gamma * s.delta - s.alpha * s.beta, tolerance, [] { return std::string("conclusion"); });
    return report;
}

SetFunctionQuadruple build_proof_quadruple(const Graph& graph, std::span<const Vertex> sources, Vertex target_a,
                                           Vertex target_b, std::size_t memo_cap) {
    graph.check_vertex(target_a);
    graph.check_vertex(target_b);
    const SubsetDistribution law = out_neighborhood_distribution(graph, sources);
    const Mask source_mask = to_mask(sources);
    if (((source_mask >> target_a) & 1U) || ((source_mask >> target_b) & 1U)) {
        throw InputError("proof quadruple requires both targets outside the source set");
    }
    if (law.ground.size() > kMaxFourFunctionsGround) {
        throw ResourceError("out-neighborhood of " + std::to_string(law.ground.size()) + " vertices exceeds " +
                            std::to_string(kMaxFourFunctionsGround));
    }

    ExactEngine engine(graph, memo_cap);
    const Mask rest = MaskGraph(graph).all() & ~source_mask;
    const Mask a = Mask{1} << target_a;
    const Mask b = Mask{1} << target_b;

    SetFunctionQuadruple q;
    q.ground = law.ground;
    const std::size_t size = q.subset_count();
    q.alpha.resize(size);
    q.beta.resize(size);
    q.gamma.resize(size);
    q.delta.resize(size);
    for (Mask x = 0; x < size; ++x) {
        const double mass = law.at(x);
        const Mask outside = to_mask(subset_of(q.ground, x));
        q.delta[x] = mass;
        q.alpha[x] = mass * engine.all_reached(rest, outside, a);
        q.beta[x] = mass * engine.all_reached(rest, outside, b);
        q.gamma[x] = mass * engine.all_reached(rest, outside, a | b);
    }
    return q;
}

VerificationReport check_lattice_identity(const SubsetDistribution& dist, double tolerance) {
    const std::size_t size = std::size_t{1} << dist.ground.size();
    std::vector<double> mass(size);
    for (Mask x = 0; x < size; ++x) mass[x] = dist.at(x);
    VerificationReport report;
    for (std::size_t x1 = 0; x1 < size; ++x1) {
        for (std::size_t x2 = 0; x2 < size; ++x2) {
            const double err = std::abs(mass[x1] * mass[x2] - mass[x1 | x2] * mass[x1 & x2]);
            report.record_with_tolerance(-err, tolerance, [&] {
                return "X1=" + set_text(subset_of(dist.ground, x1)) + " X2=" + set_text(subset_of(dist.ground, x2));
            });
        }
    }
    return report;
}

VerificationReport verify_point_correlation(const Graph& graph, const VerifyOptions& options) {
    const std::size_t n = graph.vertex_count();
    VerificationReport report;
    auto describe = [](std::size_t s, std::size_t a, std::size_t b) {
        return "s=" + std::to_string(s) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
    };

    if (options.mode == VerifyMode::exact) {
        ExactEngine engine(graph, options.memo_cap);
        for (Vertex s = 0; s < n; ++s) {
            const Vertex src[] = {s};
            std::vector<double> single(n);
            for (Vertex t = 0; t < n; ++t) single[t] = engine.connection(src, t).probability;
            for (Vertex a = 0; a < n; ++a) {
                for (Vertex b = 0; b < n; ++b) {
                    const double slack = engine.joint(src, a, b).probability - single[a] * single[b];
                    report.record_with_tolerance(slack, options.tolerance, [&] { return describe(s, a, b); });
                }
            }
        }
        return report;
    }

    for (Vertex s = 0; s < n; ++s) {
        const auto table = estimate_slack_table(graph, VertexSet{s}, options.plan);
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = 0; b < n; ++b) {
                const CovarianceEstimate& est = table[a * n + b];
                const bool significant = est.covariance < -kSignificanceSigmas * est.std_error &&
                                         est.covariance < -options.tolerance;
                report.record(est.covariance, significant, [&] { return describe(s, a, b); });
                report.details.push_back(SlackDetail{describe(s, a, b), est.covariance, est.std_error});
            }
        }
    }
    return report;
}

std::vector<VertexSet> enumerate_source_sets(std::size_t vertex_count, const SourceSetPolicy& policy) {
    std::vector<VertexSet> sets;
    if (vertex_count == 0) return sets;
    if (policy.kind == SourceSetPolicy::Kind::all_up_to) {
        if (vertex_count > 63) throw ResourceError("source set enumeration supports at most 63 vertices");
        const std::size_t k = std::min(policy.max_size, vertex_count);
        for (Mask m = 1; m < (Mask{1} << vertex_count); ++m) {
            if (static_cast<std::size_t>(std::popcount(m)) <= k) sets.push_back(from_mask(m));
        }
        std::stable_sort(sets.begin(), sets.end(),
                         [](const VertexSet& x, const VertexSet& y) { return x.size() < y.size(); });
        return sets;
    }
    std::mt19937_64 rng(policy.seed);
    std::vector<Vertex> ids(vertex_count);
    for (Vertex v = 0; v < vertex_count; ++v) ids[v] = v;
    std::uniform_int_distribution<std::size_t> size_dist(1, vertex_count);
    for (std::size_t i = 0; i < policy.count; ++i) {
        std::shuffle(ids.begin(), ids.end(), rng);
        const std::size_t k = size_dist(rng);
        sets.push_back(make_vertex_set(std::vector<Vertex>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k))));
    }
    return sets;
}

VerificationReport verify_set_correlation(const Graph& graph, const SourceSetPolicy& policy, double tolerance,
                                    std::size_t memo_cap) {
    const std::size_t n = graph.vertex_count();
    ExactEngine engine(graph, memo_cap);
    VerificationReport report;
    for (const VertexSet& sources : enumerate_source_sets(n, policy)) {
        std::vector<double> single(n);
        for (Vertex t = 0; t < n; ++t) single[t] = engine.connection(sources, t).probability;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = 0; b < n; ++b) {
                const double slack = engine.joint(sources, a, b).probability - single[a] * single[b];
                report.record_with_tolerance(slack, tolerance, [&] {
                    return "S=" + set_text(sources) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
                });
            }
        }
    }
    return report;
}

SubsetDistribution percolation_cluster_distribution(const Graph& graph, Vertex root, double density,
                                                    std::size_t cap) {
    graph.check_vertex(root);
    if (!(density >= 0.0 && density <= 1.0)) throw InputError("density outside [0, 1]");
    const MaskGraph mg(graph);
    SubsetDistribution law;
    law.ground.resize(graph.vertex_count());
    for (Vertex v = 0; v < law.ground.size(); ++v) law.ground[v] = v;

    std::vector<Mask> open_adj(graph.vertex_count());
    for_each_edge_assignment(
        graph.edge_count(), cap, [&](std::size_t) { return density; },
        [&](Mask open, double weight) {
            std::fill(open_adj.begin(), open_adj.end(), Mask{0});
            for (std::size_t e = 0; e < mg.edge_count(); ++e) {
                if ((open >> e) & 1U) {
                    open_adj[mg.low(e)] |= Mask{1} << mg.high(e);
                    open_adj[mg.high(e)] |= Mask{1} << mg.low(e);
                }
            }
            law.mass[MaskGraph::closure(open_adj, Mask{1} << root)] += weight;
        });
    return law;
}

double verify_mcdiarmid(const Graph& graph, Vertex root, std::size_t cap) {
    graph.check_vertex(root);
    const Vertex src[] = {root};
    const SubsetDistribution oriented = reachable_set_law(graph.with_uniform_bias(0.5), src, cap);
    const SubsetDistribution cluster = percolation_cluster_distribution(graph, root, 0.5, cap);
    return total_variation(oriented, cluster);
}

CovarianceResult alm_linusson_covariance(std::size_t n, VerifyMode mode, const SamplingPlan& plan, Triple triple,
                                         std::size_t cap) {
    if (n < 3) throw InputError("complete-graph covariance needs n >= 3");
    if (triple.s >= n || triple.a >= n || triple.b >= n || triple.s == triple.a || triple.s == triple.b ||
        triple.a == triple.b) {
        throw InputError("s, a, b must be distinct vertices of K_n");
    }
    if (mode == VerifyMode::exact && n * (n - 1) / 2 > cap) {
        throw ResourceError("K_" + std::to_string(n) + " has " + std::to_string(n * (n - 1) / 2) +
                            " edges, above the enumeration cap m <= " + std::to_string(cap));
    }
    const Graph kn = complete_graph(n, 0.5);
    const EventExpr into_s = EventExpr::connection({triple.a}, triple.s);
    const EventExpr out_of_s = EventExpr::connection({triple.s}, triple.b);

    CovarianceResult r;
    r.n = n;
    r.mode = mode;
    if (mode == VerifyMode::exact) {
        EventExpr both{{into_s.atoms[0], out_of_s.atoms[0]}};
        r.p_a_to_s = brute_force_prob(kn, into_s, cap).probability;
        r.p_s_to_b = brute_force_prob(kn, out_of_s, cap).probability;
        r.p_both = brute_force_prob(kn, both, cap).probability;
        r.covariance = r.p_both - r.p_a_to_s * r.p_s_to_b;
        return r;
    }
    const CovarianceEstimate est = estimate_covariance(kn, into_s, out_of_s, plan);
    r.p_a_to_s = est.p_first;
    r.p_s_to_b = est.p_second;
    r.p_both = est.p_both;
    r.covariance = est.covariance;
    r.std_error = est.std_error;
    return r;
}

} // namespace orient
