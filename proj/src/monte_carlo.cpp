#include "orient/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "orient/errors.hpp"

namespace orient {

namespace {

struct CountAcc {
    std::uint64_t hits = 0;
    void merge(const CountAcc& o) { hits += o.hits; }
};

struct BatchCounts {
    std::uint64_t n = 0, first = 0, second = 0, both = 0;
};

struct BatchAcc {
    std::vector<BatchCounts> batches;
    void merge(const BatchAcc& o) {
        for (std::size_t k = 0; k < batches.size(); ++k) {
            batches[k].n += o.batches[k].n;
            batches[k].first += o.batches[k].first;
            batches[k].second += o.batches[k].second;
            batches[k].both += o.batches[k].both;
        }
    }
};

// Per batch: sample count, per-target hits, and pairwise joint hits.
struct TableAcc {
    std::size_t n = 0;
    std::vector<std::uint64_t> count, single, pair;
    void merge(const TableAcc& o) {
        for (std::size_t k = 0; k < count.size(); ++k) count[k] += o.count[k];
        for (std::size_t k = 0; k < single.size(); ++k) single[k] += o.single[k];
        for (std::size_t k = 0; k < pair.size(); ++k) pair[k] += o.pair[k];
    }
};

double covariance_of(const BatchCounts& c) {
    const double n = static_cast<double>(c.n);
    return static_cast<double>(c.both) / n -
           (static_cast<double>(c.first) / n) * (static_cast<double>(c.second) / n);
}

CovarianceEstimate summarize(const std::vector<BatchCounts>& batches, std::uint64_t samples) {
    BatchCounts total;
    for (const BatchCounts& c : batches) {
        total.n += c.n;
        total.first += c.first;
        total.second += c.second;
        total.both += c.both;
    }

    CovarianceEstimate out;
    out.samples = samples;
    const double n = static_cast<double>(total.n);
    out.p_both = static_cast<double>(total.both) / n;
    out.p_first = static_cast<double>(total.first) / n;
    out.p_second = static_cast<double>(total.second) / n;
    out.covariance = out.p_both - out.p_first * out.p_second;

    const double b = static_cast<double>(batches.size());
    double mean = 0.0;
    for (const BatchCounts& c : batches) mean += covariance_of(c);
    mean /= b;
    double ss = 0.0;
    for (const BatchCounts& c : batches) {
        const double d = covariance_of(c) - mean;
        ss += d * d;
    }
    out.std_error = batches.size() > 1 ? std::sqrt(ss / (b - 1.0) / b) : 0.0;
    return out;
}

} // namespace

EstimateReport estimate_event(const Graph& graph, const EventExpr& event, const SamplingPlan& plan) {
    event.validate(graph);
    if (plan.samples < 1) throw InputError("estimate_event needs at least one sample");
    CountAcc acc = run_samples(plan, CountAcc{}, [&](CountAcc& a, std::uint64_t, const StreamHandle& h) {
        if (holds(graph, sample_orientation(graph, h), event)) ++a.hits;
    });

    EstimateReport r;
    r.samples = plan.samples;
    r.seed = plan.seed;
    r.streams = std::max(1U, plan.streams);
    r.estimate = static_cast<double>(acc.hits) / static_cast<double>(plan.samples);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(plan.samples));
    r.ci_lo = std::max(0.0, r.estimate - 1.96 * r.std_error);
    r.ci_hi = std::min(1.0, r.estimate + 1.96 * r.std_error);
    return r;
}

CovarianceEstimate estimate_covariance(const Graph& graph, const EventExpr& first, const EventExpr& second,
                                       const SamplingPlan& plan) {
    first.validate(graph);
    second.validate(graph);
    if (plan.samples < 2) throw InputError("paired estimation needs at least two samples");

    const std::uint64_t batch_count = std::min<std::uint64_t>(kSlackBatches, plan.samples);
    BatchAcc zero;
    zero.batches.resize(batch_count);
    BatchAcc acc = run_samples(plan, zero, [&](BatchAcc& a, std::uint64_t i, const StreamHandle& h) {
        const Orientation o = sample_orientation(graph, h);
        const bool e1 = holds(graph, o, first);
        const bool e2 = holds(graph, o, second);
        BatchCounts& c = a.batches[i * batch_count / plan.samples];
        ++c.n;
        c.first += e1;
        c.second += e2;
        c.both += e1 && e2;
    });

    return summarize(acc.batches, plan.samples);
}

CovarianceEstimate estimate_slack(const Graph& graph, const VertexSet& sources, Vertex a, Vertex b,
                                  const SamplingPlan& plan) {
    return estimate_covariance(graph, EventExpr::connection(sources, a), EventExpr::connection(sources, b), plan);
}

std::vector<CovarianceEstimate> estimate_slack_table(const Graph& graph, const VertexSet& sources,
                                                     const SamplingPlan& plan) {
    if (sources.empty()) throw InputError("source set is empty");
    for (Vertex s : sources) graph.check_vertex(s);
    if (plan.samples < 2) throw InputError("paired estimation needs at least two samples");

    const std::size_t n = graph.vertex_count();
    const std::uint64_t batch_count = std::min<std::uint64_t>(kSlackBatches, plan.samples);
    TableAcc zero;
    zero.n = n;
    zero.count.assign(batch_count, 0);
    zero.single.assign(batch_count * n, 0);
    zero.pair.assign(batch_count * n * n, 0);

    TableAcc acc = run_samples(plan, zero, [&](TableAcc& t, std::uint64_t i, const StreamHandle& h) {
        const auto reached = reachable_mask(graph, sample_orientation(graph, h), sources);
        const std::size_t k = i * batch_count / plan.samples;
        ++t.count[k];
        std::vector<std::size_t> hit;
        for (std::size_t v = 0; v < n; ++v) {
            if (reached[v]) hit.push_back(v);
        }
        for (std::size_t a : hit) {
            ++t.single[k * n + a];
            for (std::size_t b : hit) ++t.pair[(k * n + a) * n + b];
        }
    });

    std::vector<CovarianceEstimate> table(n * n);
    std::vector<BatchCounts> batches(batch_count);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t k = 0; k < batch_count; ++k) {
                batches[k] = BatchCounts{acc.count[k], acc.single[k * n + a], acc.single[k * n + b],
                                         acc.pair[(k * n + a) * n + b]};
            }
            table[a * n + b] = summarize(batches, plan.samples);
        }
    }
    return table;
}

} // namespace orient
