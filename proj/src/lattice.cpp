#include "orient/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "orient/errors.hpp"

namespace orient {

Vertex GridSpec::id(std::size_t x, std::size_t y) const {
    if (x >= width || y >= height) {
        throw InputError("grid coordinate (" + std::to_string(x) + ", " + std::to_string(y) + ") outside " +
                         std::to_string(width) + "x" + std::to_string(height));
    }
    return static_cast<Vertex>(y * width + x);
}

Graph build_grid(const GridSpec& spec) {
    if (spec.width == 0 || spec.height == 0) throw InputError("grid dimensions must be positive");
    std::vector<Edge> edges;
    edges.reserve(spec.width * (spec.height - 1) + (spec.width - 1) * spec.height);
    for (std::size_t y = 0; y < spec.height; ++y) {
        for (std::size_t x = 0; x + 1 < spec.width; ++x) edges.push_back(Edge{spec.id(x, y), spec.id(x + 1, y), spec.bias});
    }
    for (std::size_t y = 0; y + 1 < spec.height; ++y) {
        for (std::size_t x = 0; x < spec.width; ++x) edges.push_back(Edge{spec.id(x, y), spec.id(x, y + 1), spec.bias});
    }
    return Graph(spec.width * spec.height, std::move(edges));
}

namespace {

struct StatsAcc {
    std::uint64_t reach_sum = 0, reach_sq = 0, reach_max = 0;
    std::uint64_t radius_sum = 0, radius_max = 0;
    std::uint64_t boundary_hits = 0;
    void merge(const StatsAcc& o) {
        reach_sum += o.reach_sum;
        reach_sq += o.reach_sq;
        reach_max = std::max(reach_max, o.reach_max);
        radius_sum += o.radius_sum;
        radius_max = std::max(radius_max, o.radius_max);
        boundary_hits += o.boundary_hits;
    }
};

std::size_t distance(std::size_t u, std::size_t v) { return u > v ? u - v : v - u; }

} // namespace

GridStats grid_reach_stats(const GridSpec& spec, Vertex origin, const SamplingPlan& plan) {
    const Graph grid = build_grid(spec);
    grid.check_vertex(origin);
    if (plan.samples < 1) throw InputError("grid statistics need at least one sample");
    const std::size_t ox = spec.x_of(origin), oy = spec.y_of(origin);
    const Vertex src[] = {origin};

    StatsAcc acc = run_samples(plan, StatsAcc{}, [&](StatsAcc& a, std::uint64_t, const StreamHandle& h) {
        const auto reached = reachable_mask(grid, sample_orientation(grid, h), src);
        std::uint64_t size = 0, radius = 0;
        bool boundary = false;
        for (Vertex v = 0; v < reached.size(); ++v) {
            if (!reached[v]) continue;
            ++size;
            const std::size_t x = spec.x_of(v), y = spec.y_of(v);
            radius = std::max<std::uint64_t>(radius, std::max(distance(x, ox), distance(y, oy)));
            boundary = boundary || x + 1 == spec.width || y + 1 == spec.height;
        }
        a.reach_sum += size;
        a.reach_sq += size * size;
        a.reach_max = std::max(a.reach_max, size);
        a.radius_sum += radius;
        a.radius_max = std::max(a.radius_max, radius);
        a.boundary_hits += boundary;
    });

    GridStats s;
    s.bias = spec.bias;
    s.width = spec.width;
    s.height = spec.height;
    s.samples = plan.samples;
    s.seed = plan.seed;
    const double n = static_cast<double>(plan.samples);
    s.mean_reach = static_cast<double>(acc.reach_sum) / n;
    const double var = std::max(0.0, static_cast<double>(acc.reach_sq) / n - s.mean_reach * s.mean_reach);
    s.reach_std_error = plan.samples > 1 ? std::sqrt(var * n / (n - 1.0) / n) : 0.0;
    s.max_reach = acc.reach_max;
    s.mean_radius = static_cast<double>(acc.radius_sum) / n;
    s.max_radius = acc.radius_max;
    s.boundary_frac = static_cast<double>(acc.boundary_hits) / n;
    s.boundary_std_error = std::sqrt(s.boundary_frac * (1.0 - s.boundary_frac) / n);
    return s;
}

std::string grid_stats_csv_header() {
    return "p,width,height,samples,seed,mean_reach,max_reach,mean_radius,max_radius,boundary_frac";
}

std::string grid_stats_csv_row(const GridStats& s) {
    std::ostringstream out;
    out.precision(17);
    out << s.bias << ',' << s.width << ',' << s.height << ',' << s.samples << ',' << s.seed << ','
        << s.mean_reach << ',' << s.max_reach << ',' << s.mean_radius << ',' << s.max_radius << ','
        << s.boundary_frac;
    return out.str();
}

namespace {

std::uint8_t flip_bit(FlipDirection flip) { return flip == FlipDirection::toward_high ? 1 : 0; }

bool connects(const Graph& graph, const Orientation& o, Vertex a, Vertex b) {
    const Vertex src[] = {a};
    return reachable_mask(graph, o, src)[b] != 0;
}

} // namespace

Witness Witness::certify(const Graph& graph, Orientation orientation, std::size_t edge, FlipDirection flip,
                         Vertex a, Vertex b) {
    graph.check_vertex(a);
    graph.check_vertex(b);
    if (edge >= graph.edge_count()) throw InputError("witness edge index out of range");
    Witness w;
    w.orientation_ = std::move(orientation);
    w.edge_ = edge;
    w.flip_ = flip;
    w.a_ = a;
    w.b_ = b;
    if (!w.verify(graph)) throw InputError("orientation and edge do not form a non-monotonicity witness");
    return w;
}

bool Witness::verify(const Graph& graph) const {
    if (orientation_.size() != graph.edge_count() || edge_ >= graph.edge_count()) return false;
    if (!connects(graph, orientation_, a_, b_)) return false;
    Orientation flipped = orientation_;
    flipped.bits[edge_] = flip_bit(flip_);
    return !connects(graph, flipped, a_, b_);
}

WitnessSearch find_nonmonotonicity_witness(const GridSpec& spec, Vertex a, Vertex b, FlipDirection flip,
                                           std::uint64_t budget, std::uint64_t seed) {
    const Graph grid = build_grid(spec);
    grid.check_vertex(a);
    grid.check_vertex(b);
    if (budget < 1) throw InputError("witness search budget must be at least 1");
    const std::uint8_t target_bit = flip_bit(flip);

    WitnessSearch result;
    for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
        ++result.attempts;
        Orientation o = sample_orientation(grid, StreamHandle{seed, 0, attempt});
        if (!connects(grid, o, a, b)) continue;
        for (std::size_t e = 0; e < grid.edge_count(); ++e) {
            if (o.bits[e] == target_bit) continue;
            o.bits[e] = target_bit;
            const bool still = connects(grid, o, a, b);
            o.bits[e] = static_cast<std::uint8_t>(1 - target_bit);
            if (!still) {
                result.witness = Witness::certify(grid, std::move(o), e, flip, a, b);
                return result;
            }
        }
    }
    return result;
}

} // namespace orient
