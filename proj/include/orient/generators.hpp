#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "orient/graph.hpp"

namespace orient {

struct BiasPolicy {
    enum class Kind { constant, uniform } kind = Kind::constant;
    double value = 0.5; // used by constant

    [[nodiscard]] static BiasPolicy constant(double p) { return {Kind::constant, p}; }
    [[nodiscard]] static BiasPolicy uniform() { return {Kind::uniform, 0.0}; }
};

[[nodiscard]] Graph complete_graph(std::size_t n, double bias = 0.5);

// G(n, m): m distinct pairs chosen uniformly, listed in lexicographic order.
[[nodiscard]] Graph random_graph_nm(std::size_t n, std::size_t m, BiasPolicy bias, std::mt19937_64& rng);

// G(n, q): each pair present independently with probability q.
[[nodiscard]] Graph random_graph_nq(std::size_t n, double q, BiasPolicy bias, std::mt19937_64& rng);

/// Parsed form of "n=5,m=8[,bias=uniform|<p>]" or "n=5,q=0.4[,...]".
struct RandomGraphSpec {
    std::size_t n = 0;
    std::size_t m = 0;
    double q = -1.0; // set when the q form is used
    BiasPolicy bias = BiasPolicy::uniform();

    [[nodiscard]] static RandomGraphSpec parse(const std::string& text);
    [[nodiscard]] Graph generate(std::mt19937_64& rng) const;
};

} // namespace orient
