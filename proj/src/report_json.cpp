#include "orient/report_json.hpp"

#include <cmath>

namespace orient {

using nlohmann::json;

const char* to_string(ExactMethod method) {
    return method == ExactMethod::enumeration ? "enumeration" : "recursion";
}

const char* to_string(VerifyMode mode) { return mode == VerifyMode::exact ? "exact" : "montecarlo"; }

json to_json(const VerificationReport& r) {
    json violations = json::array();
    for (const Violation& v : r.violations) violations.push_back({{"instance", v.instance}, {"slack", v.slack}});
    json j = {
        {"instances_checked", r.instances_checked},
        // an empty report has no minimum; JSON has no infinity
        {"min_slack", std::isfinite(r.min_slack) ? json(r.min_slack) : json(nullptr)},
        {"worst_instance", r.worst_instance},
        {"violations", violations},
        {"violation_count", r.violation_count},
    };
    if (!r.details.empty()) {
        json details = json::array();
        for (const SlackDetail& d : r.details) {
            details.push_back({{"instance", d.instance}, {"slack", d.slack}, {"std_error", d.std_error}});
        }
        j["details"] = details;
    }
    return j;
}

VerificationReport verification_report_from_json(const json& j) {
    VerificationReport r;
    r.instances_checked = j.at("instances_checked").get<std::uint64_t>();
    r.min_slack = j.at("min_slack").is_null() ? std::numeric_limits<double>::infinity()
                                              : j.at("min_slack").get<double>();
    r.worst_instance = j.at("worst_instance").get<std::string>();
    for (const json& v : j.at("violations")) {
        r.violations.push_back(Violation{v.at("instance").get<std::string>(), v.at("slack").get<double>()});
    }
    r.violation_count = j.value("violation_count", static_cast<std::uint64_t>(r.violations.size()));
    if (j.contains("details")) {
        for (const json& d : j.at("details")) {
            r.details.push_back(SlackDetail{d.at("instance").get<std::string>(), d.at("slack").get<double>(),
                                            d.at("std_error").get<double>()});
        }
    }
    return r;
}

json to_json(const EstimateReport& r) {
    return {{"estimate", r.estimate}, {"samples", r.samples}, {"std_error", r.std_error},
            {"ci95", {r.ci_lo, r.ci_hi}}, {"seed", r.seed},       {"streams", r.streams}};
}

json to_json(const CovarianceEstimate& e) {
    return {{"slack", e.covariance}, {"std_error", e.std_error}, {"p_joint", e.p_both},
            {"p_a", e.p_first},      {"p_b", e.p_second},        {"samples", e.samples}};
}

json to_json(const ExactResult& r) {
    return {{"prob", r.probability}, {"method", to_string(r.method)}, {"states_visited", r.states_visited}};
}

json to_json(const SubsetDistribution& d) {
    json mass = json::array();
    for (const auto& [key, p] : d.mass) {
        if (p == 0.0) continue;
        mass.push_back({{"set", d.members(key)}, {"mass", p}});
    }
    return {{"ground", d.ground}, {"mass", mass}};
}

json to_json(const QuadrupleSums& s) {
    return {{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}, {"delta", s.delta}};
}

json to_json(const CovarianceResult& r) {
    return {{"n", r.n},
            {"mode", to_string(r.mode)},
            {"covariance", r.covariance},
            {"p_a_to_s", r.p_a_to_s},
            {"p_s_to_b", r.p_s_to_b},
            {"p_both", r.p_both},
            {"std_error", r.std_error}};
}

json to_json(const GridStats& s) {
    return {{"p", s.bias},
            {"width", s.width},
            {"height", s.height},
            {"samples", s.samples},
            {"seed", s.seed},
            {"mean_reach", s.mean_reach},
            {"reach_std_error", s.reach_std_error},
            {"max_reach", s.max_reach},
            {"mean_radius", s.mean_radius},
            {"max_radius", s.max_radius},
            {"boundary_frac", s.boundary_frac},
            {"boundary_std_error", s.boundary_std_error}};
}

json to_json(const Graph& graph, const Witness& w) {
    const Edge& e = graph.edge(w.edge());
    std::string bits;
    for (std::uint8_t b : w.orientation().bits) bits.push_back(b ? '1' : '0');
    return {{"found", true},
            {"a", w.a()},
            {"b", w.b()},
            {"edge", w.edge()},
            {"edge_endpoints", {e.low, e.high}},
            {"flip", w.flip() == FlipDirection::toward_high ? "toward-high" : "toward-low"},
            {"orientation", bits},
            {"verified", w.verify(graph)}};
}

} // namespace orient
