#include "orient/generators.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>
#include <vector>

#include "orient/errors.hpp"

namespace orient {

namespace {

double draw_bias(const BiasPolicy& policy, std::mt19937_64& rng) {
    if (policy.kind == BiasPolicy::Kind::constant) return policy.value;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::vector<std::pair<Vertex, Vertex>> all_pairs(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    return pairs;
}

} // namespace

Graph complete_graph(std::size_t n, double bias) {
    std::vector<Edge> edges;
    for (auto [u, v] : all_pairs(n)) edges.push_back(Edge{u, v, bias});
    return Graph(n, std::move(edges));
}

Graph random_graph_nm(std::size_t n, std::size_t m, BiasPolicy bias, std::mt19937_64& rng) {
    auto pairs = all_pairs(n);
    if (m > pairs.size()) {
        throw InputError("cannot place " + std::to_string(m) + " edges on " + std::to_string(n) + " vertices");
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(m);
    std::sort(pairs.begin(), pairs.end());
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.push_back(Edge{u, v, draw_bias(bias, rng)});
    return Graph(n, std::move(edges));
}

Graph random_graph_nq(std::size_t n, double q, BiasPolicy bias, std::mt19937_64& rng) {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("edge probability outside [0, 1]");
    std::bernoulli_distribution coin(q);
    std::vector<Edge> edges;
    for (auto [u, v] : all_pairs(n)) {
        if (coin(rng)) edges.push_back(Edge{u, v, draw_bias(bias, rng)});
    }
    return Graph(n, std::move(edges));
}

RandomGraphSpec RandomGraphSpec::parse(const std::string& text) {
    RandomGraphSpec spec;
    bool have_n = false, have_m = false;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("random graph spec item '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        try {
            if (key == "n") {
                spec.n = std::stoul(value);
                have_n = true;
            } else if (key == "m") {
                spec.m = std::stoul(value);
                have_m = true;
            } else if (key == "q") {
                spec.q = std::stod(value);
            } else if (key == "bias") {
                spec.bias = value == "uniform" ? BiasPolicy::uniform() : BiasPolicy::constant(std::stod(value));
            } else {
                throw InputError("unknown random graph key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw InputError("bad value '" + value + "' for random graph key '" + key + "'");
        }
    }
    if (!have_n) throw InputError("random graph spec needs n=<vertices>");
    if (have_m == (spec.q >= 0.0)) throw InputError("random graph spec needs exactly one of m=<edges> or q=<prob>");
    if (spec.bias.kind == BiasPolicy::Kind::constant && !(spec.bias.value >= 0.0 && spec.bias.value <= 1.0)) {
        throw InputError("constant bias outside [0, 1]");
    }
    return spec;
}

Graph RandomGraphSpec::generate(std::mt19937_64& rng) const {
    return q >= 0.0 ? random_graph_nq(n, q, bias, rng) : random_graph_nm(n, m, bias, rng);
}

} // namespace orient
