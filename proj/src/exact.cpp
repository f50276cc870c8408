#include "orient/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace orient {

double SubsetDistribution::at(Mask key) const {
    auto it = mass.find(key);
    return it == mass.end() ? 0.0 : it->second;
}

double SubsetDistribution::total() const {
    double sum = 0.0;
    for (const auto& [key, p] : mass) sum += p;
    return sum;
}

VertexSet SubsetDistribution::members(Mask key) const {
    VertexSet out;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if ((key >> i) & 1U) out.push_back(ground[i]);
    }
    return make_vertex_set(std::move(out));
}

Mask SubsetDistribution::key_of(std::span<const Vertex> vertices) const {
    Mask key = 0;
    for (Vertex v : vertices) {
        auto it = std::find(ground.begin(), ground.end(), v);
        if (it == ground.end()) {
            throw InputError("vertex " + std::to_string(v) + " is not in the ground set");
        }
        key |= Mask{1} << (it - ground.begin());
    }
    return key;
}

double total_variation(const SubsetDistribution& p, const SubsetDistribution& q) {
    if (p.ground != q.ground) throw InputError("total variation needs a common ground set");
    double sum = 0.0;
    for (const auto& [key, mass] : p.mass) sum += std::abs(mass - q.at(key));
    for (const auto& [key, mass] : q.mass) {
        if (!p.mass.contains(key)) sum += std::abs(mass);
    }
    return 0.5 * sum;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

Mask to_mask(std::span<const Vertex> vertices) {
    Mask m = 0;
    for (Vertex v : vertices) {
        if (v >= 64) throw ResourceError("vertex id " + std::to_string(v) + " exceeds the 64-vertex mask limit");
        m |= Mask{1} << v;
    }
    return m;
}

VertexSet from_mask(Mask mask) {
    VertexSet out;
    while (mask) {
        out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

MaskGraph::MaskGraph(const Graph& graph) : n_(graph.vertex_count()) {
    if (n_ > 64) {
        throw ResourceError("exact computation supports at most 64 vertices, graph has " + std::to_string(n_));
    }
    adj_.assign(n_, 0);
    for (const Edge& e : graph.edges()) {
        low_.push_back(e.low);
        high_.push_back(e.high);
        adj_[e.low] |= Mask{1} << e.high;
        adj_[e.high] |= Mask{1} << e.low;
    }
}

Mask MaskGraph::neighbors_of_set(Mask set) const {
    Mask out = 0;
    for (Mask s = set; s; s &= s - 1) out |= adj_[std::countr_zero(s)];
    return out;
}

Mask MaskGraph::component(Mask within, Mask start) const {
    Mask seen = start & within;
    Mask frontier = seen;
    while (frontier) {
        Mask next = neighbors_of_set(frontier) & within & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

void MaskGraph::out_neighbors(Mask orientation_bits, std::span<Mask> out) const {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n_), Mask{0});
    for (std::size_t e = 0; e < low_.size(); ++e) {
        if ((orientation_bits >> e) & 1U) {
            out[low_[e]] |= Mask{1} << high_[e];
        } else {
            out[high_[e]] |= Mask{1} << low_[e];
        }
    }
}

Mask MaskGraph::closure(std::span<const Mask> out, Mask sources) {
    Mask seen = sources;
    Mask frontier = sources;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) next |= out[std::countr_zero(f)];
        next &= ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

Mask MaskGraph::reach(Mask orientation_bits, Mask sources) const {
    std::vector<Mask> out(n_);
    out_neighbors(orientation_bits, out);
    return closure(out, sources);
}

ExactResult brute_force_prob(const Graph& graph, const EventExpr& event, std::size_t cap) {
    event.validate(graph);
    MaskGraph mg(graph);
    std::vector<std::pair<Mask, Vertex>> atoms;
    for (const ConnectionAtom& atom : event.atoms) atoms.emplace_back(to_mask(atom.sources), atom.target);

    std::vector<Mask> out(graph.vertex_count());
    double total = 0.0;
    std::uint64_t visited = 0;
    for_each_orientation(graph, cap, [&](Mask bits, double weight) {
        ++visited;
        mg.out_neighbors(bits, out);
        for (const auto& [sources, target] : atoms) {
            if (!((MaskGraph::closure(out, sources) >> target) & 1U)) return;
        }
        total += weight;
    });
    return ExactResult{clamp_probability(total), ExactMethod::enumeration, visited};
}

SubsetDistribution reachable_set_law(const Graph& graph, std::span<const Vertex> sources, std::size_t cap) {
    if (sources.empty()) throw InputError("source set is empty");
    for (Vertex s : sources) graph.check_vertex(s);
    MaskGraph mg(graph);
    const Mask src = to_mask(sources);

    SubsetDistribution law;
    law.ground.resize(graph.vertex_count());
    for (Vertex v = 0; v < law.ground.size(); ++v) law.ground[v] = v;

    std::vector<Mask> out(graph.vertex_count());
    for_each_orientation(graph, cap, [&](Mask bits, double weight) {
        mg.out_neighbors(bits, out);
        law.mass[MaskGraph::closure(out, src)] += weight;
    });
    return law;
}

namespace {

// Membership probability of each vertex of T = N(sources) ∩ remaining \ sources
// in the out-neighborhood of `sources`. Edges with both ends in `sources` never
// appear since only outside vertices are visited.
std::vector<double> out_marginals(const Graph& graph, const MaskGraph& mg, Mask remaining, Mask sources,
                                  std::vector<Vertex>& ground) {
    Mask outside = mg.neighbors_of_set(sources) & remaining & ~sources;
    ground = from_mask(outside);
    std::vector<double> p(ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i) {
        const Vertex v = ground[i];
        double into_sources = 1.0;
        for (const Incidence& inc : graph.incident(v)) {
            if (!((sources >> inc.neighbor) & 1U)) continue;
            const Edge& e = graph.edge(inc.edge);
            // v is the high endpoint when the source neighbor is the low one
            into_sources *= inc.neighbor == e.low ? 1.0 - e.bias : e.bias;
        }
        p[i] = 1.0 - into_sources;
    }
    return p;
}

// Dense product-measure table: entry x is the mass of the subset with bit pattern x.
std::vector<double> product_table(const std::vector<double>& p) {
    std::vector<double> mass{1.0};
    mass.reserve(std::size_t{1} << p.size());
    for (double pv : p) {
        const std::size_t half = mass.size();
        mass.resize(2 * half);
        for (std::size_t x = 0; x < half; ++x) {
            mass[half + x] = mass[x] * pv;
            mass[x] *= 1.0 - pv;
        }
    }
    return mass;
}

} // namespace

SubsetDistribution out_neighborhood_distribution(const Graph& graph, std::span<const Vertex> sources) {
    if (sources.empty()) throw InputError("source set is empty");
    for (Vertex s : sources) graph.check_vertex(s);
    const MaskGraph mg(graph);
    SubsetDistribution dist;
    std::vector<double> p = out_marginals(graph, mg, mg.all(), to_mask(sources), dist.ground);
    if (p.size() > 30) throw ResourceError("out-neighborhood has more than 30 vertices");
    std::vector<double> table = product_table(p);
    for (Mask x = 0; x < table.size(); ++x) dist.mass.emplace(x, table[x]);
    return dist;
}

std::size_t ExactEngine::KeyHash::operator()(const Key& k) const noexcept {
    std::uint64_t h = k.remaining * 0x9e3779b97f4a7c15ULL;
    h ^= (k.sources + 0x632be59bd9b4e019ULL) * 0xbf58476d1ce4e5b9ULL;
    h ^= (k.targets + 0x85157af5ULL) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
}

ExactEngine::ExactEngine(const Graph& graph, std::size_t memo_cap)
    : graph_(graph), masks_(graph), memo_cap_(memo_cap) {}

Mask ExactEngine::validated_sources(std::span<const Vertex> sources) const {
    if (sources.empty()) throw InputError("source set is empty");
    for (Vertex s : sources) graph_.check_vertex(s);
    return to_mask(sources);
}

double ExactEngine::all_reached(Mask remaining, Mask sources, Mask targets) {
    return clamp_probability(solve(remaining, sources, targets));
}

double ExactEngine::solve(Mask remaining, Mask sources, Mask targets) {
    targets &= ~sources;
    if (!targets) return 1.0;
    if (!sources) return 0.0;
    // Vertices outside the undirected component of the sources play no role.
    remaining = masks_.component(remaining, sources);
    if (targets & ~remaining) return 0.0;

    const Key key{remaining, sources, targets};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= memo_cap_) {
        throw ResourceError("recursion memo exceeded its cap of " + std::to_string(memo_cap_) + " entries");
    }
    ++states_;

    std::vector<Vertex> ground;
    const std::vector<double> p = out_marginals(graph_, masks_, remaining, sources, ground);
    const std::vector<double> mass = product_table(p);
    const Mask rest = remaining & ~sources;

    double sum = 0.0;
    for (std::size_t x = 1; x < mass.size(); ++x) {
        if (mass[x] == 0.0) continue;
        Mask next = 0;
        for (std::size_t i = 0; i < ground.size(); ++i) {
            if ((x >> i) & 1U) next |= Mask{1} << ground[i];
        }
        sum += mass[x] * solve(rest, next, targets);
    }
    memo_.emplace(key, sum);
    return sum;
}

ExactResult ExactEngine::connection(std::span<const Vertex> sources, Vertex target) {
    const Mask src = validated_sources(sources);
    graph_.check_vertex(target);
    const std::uint64_t before = states_;
    double p = all_reached(masks_.all(), src, Mask{1} << target);
    return ExactResult{p, ExactMethod::recursion, states_ - before};
}

ExactResult ExactEngine::joint(std::span<const Vertex> sources, Vertex a, Vertex b) {
    const Mask src = validated_sources(sources);
    graph_.check_vertex(a);
    graph_.check_vertex(b);
    const std::uint64_t before = states_;
    double p = all_reached(masks_.all(), src, (Mask{1} << a) | (Mask{1} << b));
    return ExactResult{p, ExactMethod::recursion, states_ - before};
}

ExactResult exact_connection_prob(const Graph& graph, std::span<const Vertex> sources, Vertex target,
                                  std::size_t memo_cap) {
    ExactEngine engine(graph, memo_cap);
    return engine.connection(sources, target);
}

ExactResult exact_joint_prob(const Graph& graph, std::span<const Vertex> sources, Vertex target_a,
                             Vertex target_b, std::size_t memo_cap) {
    ExactEngine engine(graph, memo_cap);
    return engine.joint(sources, target_a, target_b);
}

} // namespace orient
