#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orient/random_stream.hpp"

namespace orient {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>; // sorted, no duplicates

struct Edge {
    Vertex low = 0;
    Vertex high = 0;
    double bias = 0.5; // probability of the low -> high direction
};

struct Incidence {
    Vertex neighbor = 0;
    std::uint32_t edge = 0;
};

/// Simple undirected graph with a bias per edge.
///
/// Vertex ids are 0..n-1. Edge order is significant: edge e owns bit e of
/// every Orientation of this graph. The constructor canonicalizes endpoint
/// order, rejects self-loops, duplicates, out-of-range ids and biases outside
/// [0, 1], and never mutates afterwards.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t vertex_count, std::vector<Edge> edges);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] const Edge& edge(std::size_t e) const { return edges_.at(e); }
    [[nodiscard]] std::span<const Incidence> incident(Vertex v) const;
    [[nodiscard]] std::size_t degree(Vertex v) const { return incident(v).size(); }

    // Copy of this graph with every bias replaced.
    [[nodiscard]] Graph with_uniform_bias(double bias) const;

    void check_vertex(Vertex v) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_; // CSR into incidences_
    std::vector<Incidence> incidences_;
};

/// One direction bit per edge: 1 means low -> high, 0 means high -> low.
struct Orientation {
    std::vector<std::uint8_t> bits;

    [[nodiscard]] std::size_t size() const noexcept { return bits.size(); }
    [[nodiscard]] bool low_to_high(std::size_t e) const { return bits.at(e) != 0; }
    friend bool operator==(const Orientation&, const Orientation&) = default;
};

struct ConnectionAtom {
    VertexSet sources;
    Vertex target = 0;
};

/// Conjunction of connection events "sources -> target".
struct EventExpr {
    std::vector<ConnectionAtom> atoms;

    static EventExpr connection(VertexSet sources, Vertex target);
    static EventExpr joint(VertexSet sources, Vertex a, Vertex b);

    void validate(const Graph& graph) const;
};

[[nodiscard]] VertexSet make_vertex_set(std::vector<Vertex> ids);

/// Parses the edge-list text format:
///
///     # comment
///     n 5          (optional header; otherwise n = 1 + max id)
///     0 1 0.7      (u v p; bias p applies to the direction min(u,v) -> max(u,v))
///
/// Throws InputError carrying the 1-based line number.
[[nodiscard]] Graph parse_graph(std::string_view text);
[[nodiscard]] Graph load_graph_file(const std::string& path);
[[nodiscard]] std::string format_graph(const Graph& graph);

[[nodiscard]] Orientation sample_orientation(const Graph& graph, const StreamHandle& stream);

[[nodiscard]] VertexSet reachable_set(const Graph& graph, const Orientation& orientation,
                                      std::span<const Vertex> sources);

// Membership form of reachable_set, indexed by vertex id.
[[nodiscard]] std::vector<std::uint8_t> reachable_mask(const Graph& graph,
                                                       const Orientation& orientation,
                                                       std::span<const Vertex> sources);

[[nodiscard]] bool holds(const Graph& graph, const Orientation& orientation, const EventExpr& event);

} // namespace orient
