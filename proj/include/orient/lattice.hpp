#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "orient/graph.hpp"
#include "orient/sampling.hpp"

namespace orient {

/// Finite box of the square lattice with free boundary. Vertex (x, y) has id
/// y * width + x, so rightward and upward edges always run low -> high and
/// `bias` is the probability of pointing right (horizontal) or up (vertical).
struct GridSpec {
    std::size_t width = 1;
    std::size_t height = 1;
    double bias = 0.5;

    [[nodiscard]] Vertex id(std::size_t x, std::size_t y) const;
    [[nodiscard]] std::size_t x_of(Vertex v) const noexcept { return v % width; }
    [[nodiscard]] std::size_t y_of(Vertex v) const noexcept { return v / width; }
};

/// Horizontal edges first (row by row), then vertical edges (row by row).
[[nodiscard]] Graph build_grid(const GridSpec& spec);

struct GridStats {
    double bias = 0.0;
    std::size_t width = 0, height = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double mean_reach = 0.0;
    double reach_std_error = 0.0;
    std::uint64_t max_reach = 0;
    double mean_radius = 0.0;
    std::uint64_t max_radius = 0;
    double boundary_frac = 0.0;
    double boundary_std_error = 0.0;

    friend bool operator==(const GridStats&, const GridStats&) = default;
};

/// Reachable-set statistics from `origin` over seeded samples. The radius is
/// the Chebyshev distance from the origin; the far boundary is x = width-1 or
/// y = height-1.
[[nodiscard]] GridStats grid_reach_stats(const GridSpec& spec, Vertex origin, const SamplingPlan& plan);

[[nodiscard]] std::string grid_stats_csv_header();
[[nodiscard]] std::string grid_stats_csv_row(const GridStats& stats);

enum class FlipDirection { toward_high, toward_low };

/// An orientation where a -> b holds but stops holding once `edge` is set to
/// `flip`. Only constructible through certify(), which rechecks both facts.
class Witness {
public:
    [[nodiscard]] static Witness certify(const Graph& graph, Orientation orientation, std::size_t edge,
                                         FlipDirection flip, Vertex a, Vertex b);

    [[nodiscard]] const Orientation& orientation() const noexcept { return orientation_; }
    [[nodiscard]] std::size_t edge() const noexcept { return edge_; }
    [[nodiscard]] FlipDirection flip() const noexcept { return flip_; }
    [[nodiscard]] Vertex a() const noexcept { return a_; }
    [[nodiscard]] Vertex b() const noexcept { return b_; }

    // Re-runs reachability on both orientations.
    [[nodiscard]] bool verify(const Graph& graph) const;

private:
    Witness() = default;
    Orientation orientation_;
    std::size_t edge_ = 0;
    FlipDirection flip_ = FlipDirection::toward_high;
    Vertex a_ = 0, b_ = 0;
};

struct WitnessSearch {
    std::optional<Witness> witness;
    std::uint64_t attempts = 0; // orientations sampled
};

/// Samples orientations from the grid measure until one has a -> b and some
/// edge whose flip toward `flip` destroys it. Sequential in the attempt index,
/// so the first witness found is a function of the seed.
[[nodiscard]] WitnessSearch find_nonmonotonicity_witness(const GridSpec& spec, Vertex a, Vertex b,
                                                         FlipDirection flip, std::uint64_t budget,
                                                         std::uint64_t seed);

} // namespace orient
