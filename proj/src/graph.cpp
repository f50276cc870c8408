#include "orient/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "orient/errors.hpp"

namespace orient {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        Edge& edge = edges_[e];
        if (edge.low > edge.high) std::swap(edge.low, edge.high);
        if (edge.low == edge.high) {
            throw InputError("edge " + std::to_string(e) + " is a self-loop at vertex " +
                             std::to_string(edge.low));
        }
        if (edge.high >= n_) {
            throw InputError("edge " + std::to_string(e) + " has vertex " +
                             std::to_string(edge.high) + " outside [0, " + std::to_string(n_) + ")");
        }
        if (!(edge.bias >= 0.0 && edge.bias <= 1.0)) {
            throw InputError("edge " + std::to_string(e) + " has bias outside [0, 1]");
        }
        if (!seen.emplace(edge.low, edge.high).second) {
            throw InputError("duplicate edge {" + std::to_string(edge.low) + ", " +
                             std::to_string(edge.high) + "}");
        }
    }

    offsets_.assign(n_ + 1, 0);
    for (const Edge& edge : edges_) {
        ++offsets_[edge.low + 1];
        ++offsets_[edge.high + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    incidences_.resize(2 * edges_.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
        const Edge& edge = edges_[e];
        incidences_[fill[edge.low]++] = {edge.high, e};
        incidences_[fill[edge.high]++] = {edge.low, e};
    }
}

std::span<const Incidence> Graph::incident(Vertex v) const {
    check_vertex(v);
    return std::span<const Incidence>(incidences_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

Graph Graph::with_uniform_bias(double bias) const {
    std::vector<Edge> edges = edges_;
    for (Edge& e : edges) e.bias = bias;
    return Graph(n_, std::move(edges));
}

void Graph::check_vertex(Vertex v) const {
    if (v >= n_) {
        throw InputError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
    }
}

VertexSet make_vertex_set(std::vector<Vertex> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

EventExpr EventExpr::connection(VertexSet sources, Vertex target) {
    return EventExpr{{ConnectionAtom{make_vertex_set(std::move(sources)), target}}};
}

EventExpr EventExpr::joint(VertexSet sources, Vertex a, Vertex b) {
    VertexSet s = make_vertex_set(std::move(sources));
    return EventExpr{{ConnectionAtom{s, a}, ConnectionAtom{s, b}}};
}

void EventExpr::validate(const Graph& graph) const {
    if (atoms.empty()) throw InputError("event has no atoms");
    for (const ConnectionAtom& atom : atoms) {
        if (atom.sources.empty()) throw InputError("event atom has an empty source set");
        for (Vertex s : atom.sources) graph.check_vertex(s);
        graph.check_vertex(atom.target);
    }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
    }
    return fields;
}

template <class T>
bool parse_number(std::string_view field, T& out) {
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc() && ptr == end;
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
}

} // namespace

Graph parse_graph(std::string_view text) {
    std::vector<Edge> edges;
    std::map<std::pair<Vertex, Vertex>, std::size_t> first_line;
    bool have_header = false;
    std::size_t header_n = 0;
    std::size_t max_id_plus_one = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        auto fields = split_fields(line);
        if (fields.empty() || fields[0].front() == '#') continue;

        if (fields[0] == "n") {
            if (have_header) line_error(line_no, "repeated header");
            if (!edges.empty()) line_error(line_no, "header must precede edges");
            if (fields.size() != 2 || !parse_number(fields[1], header_n)) {
                line_error(line_no, "malformed header, expected \"n <vertex_count>\"");
            }
            have_header = true;
            continue;
        }

        if (fields.size() != 3) line_error(line_no, "expected \"u v p\"");
        Vertex u = 0, v = 0;
        double p = 0.0;
        if (!parse_number(fields[0], u) || !parse_number(fields[1], v)) {
            line_error(line_no, "vertex ids must be nonnegative integers");
        }
        if (!parse_number(fields[2], p)) line_error(line_no, "malformed bias");
        if (!(p >= 0.0 && p <= 1.0)) line_error(line_no, "bias outside [0, 1]");
        if (u == v) line_error(line_no, "self-loop at vertex " + std::to_string(u));
        if (have_header && std::max(u, v) >= header_n) {
            line_error(line_no, "vertex id out of range for n = " + std::to_string(header_n));
        }
        auto [it, fresh] = first_line.emplace(std::pair{std::min(u, v), std::max(u, v)}, line_no);
        if (!fresh) {
            line_error(line_no, "duplicate edge (first seen on line " + std::to_string(it->second) + ")");
        }
        edges.push_back(Edge{std::min(u, v), std::max(u, v), p});
        max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(u, v) + 1);
    }

    return Graph(have_header ? header_n : max_id_plus_one, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

std::string format_graph(const Graph& graph) {
    std::ostringstream out;
    out.precision(17);
    out << "n " << graph.vertex_count() << '\n';
    for (const Edge& e : graph.edges()) out << e.low << ' ' << e.high << ' ' << e.bias << '\n';
    return out.str();
}

Orientation sample_orientation(const Graph& graph, const StreamHandle& stream) {
    Orientation o;
    o.bits.resize(graph.edge_count());
    auto edges = graph.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        o.bits[e] = stream.uniform(e) < edges[e].bias ? 1 : 0;
    }
    return o;
}

std::vector<std::uint8_t> reachable_mask(const Graph& graph, const Orientation& orientation,
                                         std::span<const Vertex> sources) {
    if (orientation.size() != graph.edge_count()) {
        throw InputError("orientation has " + std::to_string(orientation.size()) +
                         " bits but graph has " + std::to_string(graph.edge_count()) + " edges");
    }
    std::vector<std::uint8_t> seen(graph.vertex_count(), 0);
    std::vector<Vertex> stack;
    for (Vertex s : sources) {
        graph.check_vertex(s);
        if (!seen[s]) {
            seen[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (const Incidence& inc : graph.incident(v)) {
            if (seen[inc.neighbor]) continue;
            // low->high edges leave the low endpoint
            bool forward = orientation.bits[inc.edge] != 0;
            bool leaves_v = (v < inc.neighbor) == forward;
            if (leaves_v) {
                seen[inc.neighbor] = 1;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return seen;
}

VertexSet reachable_set(const Graph& graph, const Orientation& orientation,
                        std::span<const Vertex> sources) {
    auto seen = reachable_mask(graph, orientation, sources);
    VertexSet out;
    for (Vertex v = 0; v < seen.size(); ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

bool holds(const Graph& graph, const Orientation& orientation, const EventExpr& event) {
    event.validate(graph);
    for (const ConnectionAtom& atom : event.atoms) {
        if (!reachable_mask(graph, orientation, atom.sources)[atom.target]) return false;
    }
    return true;
}

} // namespace orient
