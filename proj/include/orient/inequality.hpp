#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "orient/exact.hpp"
#include "orient/graph.hpp"
#include "orient/monte_carlo.hpp"

namespace orient {

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kProbabilityTolerance = 1e-9;
inline constexpr double kSignificanceSigmas = 4.0;
inline constexpr std::size_t kMaxStoredViolations = 1000;
inline constexpr std::size_t kMaxFourFunctionsGround = 16;

/// Four nonnegative functions on the subsets of `ground`, each stored densely
/// and indexed by the subset's bit pattern over `ground`.
struct SetFunctionQuadruple {
    std::vector<Vertex> ground;
    std::vector<double> alpha, beta, gamma, delta;

    [[nodiscard]] std::size_t subset_count() const noexcept { return std::size_t{1} << ground.size(); }
    void validate() const;
};

struct QuadrupleSums {
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};

[[nodiscard]] QuadrupleSums sums(const SetFunctionQuadruple& q);

struct Violation {
    std::string instance;
    double slack = 0.0;
};

// Per-instance estimate kept by Monte Carlo verification.
struct SlackDetail {
    std::string instance;
    double slack = 0.0;
    double std_error = 0.0;
};

struct VerificationReport {
    std::uint64_t instances_checked = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::string worst_instance;
    std::vector<Violation> violations; // at most kMaxStoredViolations kept
    std::uint64_t violation_count = 0;
    std::vector<SlackDetail> details;  // Monte Carlo mode only

    // Records one checked instance. `violated` decides whether it is reported;
    // `describe` is only called when the text is needed.
    template <class Describe>
    void record(double slack, bool violated, Describe&& describe) {
        ++instances_checked;
        std::string text;
        if (slack <= min_slack) {
            text = describe();
            if (slack < min_slack || text < worst_instance) {
                min_slack = slack;
                worst_instance = text;
            }
        }
        if (violated) {
            ++violation_count;
            if (violations.size() < kMaxStoredViolations) {
                violations.push_back(Violation{text.empty() ? std::string(describe()) : text, slack});
            }
        }
    }
    template <class Describe>
    void record_with_tolerance(double slack, double tolerance, Describe&& describe) {
        record(slack, slack < -tolerance, describe);
    }

    // Order-independent: minimum slack (ties broken by instance text) and
    // concatenated violations.
    void merge(const VerificationReport& other);

    [[nodiscard]] bool ok() const noexcept { return violation_count == 0; }
};

/// Checks the pairwise hypothesis alpha(X1) beta(X2) <= gamma(X1|X2) delta(X1&X2)
/// for every ordered pair, and the conclusion sum(alpha) sum(beta) <= sum(gamma) sum(delta).
[[nodiscard]] VerificationReport check_four_functions(const SetFunctionQuadruple& q, double tolerance);

/// The induction-step quadruple for sources S and targets a, b outside S:
/// with T the outside neighbors of S and H = G - S,
///   alpha(X) = P(O_S = X) P_H(X -> a)
///   beta(X)  = P(O_S = X) P_H(X -> b)
///   gamma(X) = P(O_S = X) P_H(X -> a and X -> b)
///   delta(X) = P(O_S = X)
[[nodiscard]] SetFunctionQuadruple build_proof_quadruple(const Graph& graph, std::span<const Vertex> sources,
                                                         Vertex target_a, Vertex target_b,
                                                         std::size_t memo_cap = kDefaultMemoCap);

/// Checks mass(X1) mass(X2) == mass(X1|X2) mass(X1&X2) over all pairs; slack is
/// the negated absolute error, so min_slack >= -tolerance means the identity holds.
[[nodiscard]] VerificationReport check_lattice_identity(const SubsetDistribution& dist, double tolerance);

enum class VerifyMode { exact, montecarlo };

struct VerifyOptions {
    VerifyMode mode = VerifyMode::exact;
    double tolerance = kProbabilityTolerance;
    SamplingPlan plan{};
    std::size_t memo_cap = kDefaultMemoCap;
};

/// Slack P(s->a and s->b) - P(s->a) P(s->b) over every ordered triple.
///
/// Exact mode flags slack < -tolerance. Monte Carlo mode flags only estimates
/// at least four standard errors below zero (and below -tolerance) and keeps a
/// per-triple detail list.
[[nodiscard]] VerificationReport verify_point_correlation(const Graph& graph, const VerifyOptions& options);

struct SourceSetPolicy {
    enum class Kind { all_up_to, random } kind = Kind::all_up_to;
    std::size_t max_size = 3;   // all_up_to
    std::size_t count = 0;      // random
    std::uint64_t seed = 0;     // random
};

[[nodiscard]] std::vector<VertexSet> enumerate_source_sets(std::size_t vertex_count, const SourceSetPolicy& policy);

/// Exact slack check with set sources over all ordered target pairs.
[[nodiscard]] VerificationReport verify_set_correlation(const Graph& graph, const SourceSetPolicy& policy,
                                                  double tolerance, std::size_t memo_cap = kDefaultMemoCap);

/// Law of the root's open cluster in bond percolation, by enumerating all
/// 2^m edge subsets. Ground = all vertices in id order.
[[nodiscard]] SubsetDistribution percolation_cluster_distribution(const Graph& graph, Vertex root, double density,
                                                                  std::size_t cap = kDefaultEnumerationCap);

/// Total variation between the reachable-set law of `root` under the unbiased
/// orientation and the density-1/2 percolation cluster law. The graph's own
/// biases are ignored.
[[nodiscard]] double verify_mcdiarmid(const Graph& graph, Vertex root, std::size_t cap = kDefaultEnumerationCap);

struct CovarianceResult {
    std::size_t n = 0;
    VerifyMode mode = VerifyMode::exact;
    double covariance = 0.0;
    double p_a_to_s = 0.0;
    double p_s_to_b = 0.0;
    double p_both = 0.0;
    double std_error = 0.0; // zero in exact mode
};

struct Triple {
    Vertex s = 0, a = 1, b = 2;
};

/// Cov(a -> s, s -> b) on the unbiased complete graph K_n.
[[nodiscard]] CovarianceResult alm_linusson_covariance(std::size_t n, VerifyMode mode, const SamplingPlan& plan = {},
                                                       Triple triple = {},
                                                       std::size_t cap = kDefaultEnumerationCap);

} // namespace orient
