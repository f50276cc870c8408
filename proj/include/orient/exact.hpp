#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "orient/errors.hpp"
#include "orient/graph.hpp"

namespace orient {

using Mask = std::uint64_t;

inline constexpr std::size_t kDefaultEnumerationCap = 24;
inline constexpr std::size_t kDefaultMemoCap = std::size_t{1} << 22;

/// Probability mass over subsets of an ordered ground set.
///
/// A subset is keyed by its bit pattern over `ground`: bit i set means
/// ground[i] is a member. Absent keys have mass zero.
struct SubsetDistribution {
    std::vector<Vertex> ground;
    std::map<Mask, double> mass;

    [[nodiscard]] double at(Mask key) const;
    [[nodiscard]] double total() const;
    [[nodiscard]] VertexSet members(Mask key) const;
    [[nodiscard]] Mask key_of(std::span<const Vertex> vertices) const;
};

[[nodiscard]] double total_variation(const SubsetDistribution& p, const SubsetDistribution& q);

enum class ExactMethod { enumeration, recursion };

struct ExactResult {
    double probability = 0.0;
    ExactMethod method = ExactMethod::recursion;
    std::uint64_t states_visited = 0;
};

/// Bitmask view of a graph with at most 64 vertices, for the exponential engines.
class MaskGraph {
public:
    explicit MaskGraph(const Graph& graph);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return low_.size(); }
    [[nodiscard]] Mask all() const noexcept { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }
    [[nodiscard]] Mask neighbors(Vertex v) const { return adj_[v]; }
    [[nodiscard]] Mask neighbors_of_set(Mask set) const;

    // Vertices joined to `start` by undirected paths inside `within`.
    [[nodiscard]] Mask component(Mask within, Mask start) const;

    // Out-neighbor masks of every vertex under an orientation given as edge bits.
    void out_neighbors(Mask orientation_bits, std::span<Mask> out) const;
    [[nodiscard]] static Mask closure(std::span<const Mask> out, Mask sources);

    [[nodiscard]] Mask reach(Mask orientation_bits, Mask sources) const;

    [[nodiscard]] Vertex low(std::size_t e) const { return low_[e]; }
    [[nodiscard]] Vertex high(std::size_t e) const { return high_[e]; }

private:
    std::size_t n_ = 0;
    std::vector<Vertex> low_, high_;
    std::vector<Mask> adj_;
};

[[nodiscard]] Mask to_mask(std::span<const Vertex> vertices);
[[nodiscard]] VertexSet from_mask(Mask mask);

/// Calls visit(bits, weight) for each of the 2^m orientations, where bit e of
/// `bits` is edge e's direction and `weight` its probability under `bias`.
/// Weights come from two half tables so each orientation costs one multiply.
template <class BiasOf, class Visit>
void for_each_edge_assignment(std::size_t m, std::size_t cap, BiasOf&& bias, Visit&& visit) {
    if (m > cap) {
        throw ResourceError("enumeration needs 2^m states with m = " + std::to_string(m) +
                            " edges, above the cap m <= " + std::to_string(cap));
    }
    if (m > 62) throw ResourceError("enumeration requires at most 62 edges");
    const std::size_t lo_bits = m / 2;
    const std::size_t hi_bits = m - lo_bits;
    auto table = [&](std::size_t offset, std::size_t bits) {
        std::vector<double> w(std::size_t{1} << bits, 1.0);
        for (std::size_t x = 0; x < w.size(); ++x) {
            for (std::size_t i = 0; i < bits; ++i) {
                double p = bias(offset + i);
                w[x] *= ((x >> i) & 1U) ? p : 1.0 - p;
            }
        }
        return w;
    };
    const std::vector<double> lo = table(0, lo_bits);
    const std::vector<double> hi = table(lo_bits, hi_bits);
    for (std::size_t h = 0; h < hi.size(); ++h) {
        if (hi[h] == 0.0) continue;
        for (std::size_t l = 0; l < lo.size(); ++l) {
            double w = hi[h] * lo[l];
            if (w == 0.0) continue;
            visit((static_cast<Mask>(h) << lo_bits) | static_cast<Mask>(l), w);
        }
    }
}

template <class Visit>
void for_each_orientation(const Graph& graph, std::size_t cap, Visit&& visit) {
    auto edges = graph.edges();
    for_each_edge_assignment(
        edges.size(), cap, [&](std::size_t e) { return edges[e].bias; }, visit);
}

/// Sum over all 2^m orientations of [event holds] times the orientation's probability.
[[nodiscard]] ExactResult brute_force_prob(const Graph& graph, const EventExpr& event,
                                           std::size_t cap = kDefaultEnumerationCap);

/// Exact law of reachable_set(sources) by enumeration; ground = all vertices in id order.
[[nodiscard]] SubsetDistribution reachable_set_law(const Graph& graph, std::span<const Vertex> sources,
                                                   std::size_t cap = kDefaultEnumerationCap);

/// Law of the random set of vertices outside `sources` that receive an edge
/// oriented out of `sources`. Members are independent, so the law is a
/// product measure over the ground set T of outside neighbors.
[[nodiscard]] SubsetDistribution out_neighborhood_distribution(const Graph& graph,
                                                               std::span<const Vertex> sources);

/// Recursive evaluator for P(S -> t for every t in targets).
///
/// Conditions on the out-neighborhood X of the current sources, deletes the
/// sources and recurses with X as the new source set on the remaining graph.
/// Subproblems are memoized on (remaining vertices, sources, targets); the
/// memo lives as long as the engine and is never shared between engines.
class ExactEngine {
public:
    explicit ExactEngine(const Graph& graph, std::size_t memo_cap = kDefaultMemoCap);

    [[nodiscard]] const Graph& graph() const noexcept { return graph_; }

    [[nodiscard]] ExactResult connection(std::span<const Vertex> sources, Vertex target);
    [[nodiscard]] ExactResult joint(std::span<const Vertex> sources, Vertex a, Vertex b);

    // P(sources -> t for all t in targets) on the subgraph induced by `remaining`.
    [[nodiscard]] double all_reached(Mask remaining, Mask sources, Mask targets);

    [[nodiscard]] std::size_t memo_size() const noexcept { return memo_.size(); }
    [[nodiscard]] std::uint64_t states_visited() const noexcept { return states_; }

private:
    struct Key {
        Mask remaining, sources, targets;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    double solve(Mask remaining, Mask sources, Mask targets);
    Mask validated_sources(std::span<const Vertex> sources) const;

    const Graph& graph_;
    MaskGraph masks_;
    std::size_t memo_cap_;
    std::unordered_map<Key, double, KeyHash> memo_;
    std::uint64_t states_ = 0;
};

[[nodiscard]] ExactResult exact_connection_prob(const Graph& graph, std::span<const Vertex> sources,
                                                Vertex target, std::size_t memo_cap = kDefaultMemoCap);

[[nodiscard]] ExactResult exact_joint_prob(const Graph& graph, std::span<const Vertex> sources,
                                           Vertex target_a, Vertex target_b,
                                           std::size_t memo_cap = kDefaultMemoCap);

[[nodiscard]] double clamp_probability(double p);

} // namespace orient
