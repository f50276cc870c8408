#pragma once

#include <cstdint>
#include <vector>

#include "orient/graph.hpp"
#include "orient/sampling.hpp"

namespace orient {

inline constexpr unsigned kSlackBatches = 100;

struct EstimateReport {
    double estimate = 0.0;
    std::uint64_t samples = 0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
    unsigned streams = 1;

    friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

/// Mean of the event indicator over seeded orientations, with the Bernoulli
/// standard error and a normal-approximation 95% interval.
[[nodiscard]] EstimateReport estimate_event(const Graph& graph, const EventExpr& event,
                                            const SamplingPlan& plan);

/// Paired estimate of P(E1 and E2) - P(E1) P(E2) from one set of samples.
struct CovarianceEstimate {
    double covariance = 0.0;
    double std_error = 0.0; // batch means over kSlackBatches batches
    double p_both = 0.0;
    double p_first = 0.0;
    double p_second = 0.0;
    std::uint64_t samples = 0;

    friend bool operator==(const CovarianceEstimate&, const CovarianceEstimate&) = default;
};

[[nodiscard]] CovarianceEstimate estimate_covariance(const Graph& graph, const EventExpr& first,
                                                     const EventExpr& second, const SamplingPlan& plan);

/// Slack P(S->a and S->b) - P(S->a) P(S->b) by the paired estimator.
[[nodiscard]] CovarianceEstimate estimate_slack(const Graph& graph, const VertexSet& sources, Vertex a,
                                                Vertex b, const SamplingPlan& plan);

/// Paired slack estimates for every ordered target pair (a, b) from one run;
/// entry a * n + b equals estimate_slack(graph, sources, a, b, plan).
[[nodiscard]] std::vector<CovarianceEstimate> estimate_slack_table(const Graph& graph, const VertexSet& sources,
                                                                   const SamplingPlan& plan);

} // namespace orient
