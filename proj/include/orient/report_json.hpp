#pragma once

#include <json.hpp>

#include "orient/exact.hpp"
#include "orient/inequality.hpp"
#include "orient/lattice.hpp"
#include "orient/monte_carlo.hpp"

namespace orient {

// Verification reports carry instances_checked, min_slack, worst_instance and
// violations; other reports are flat objects of their fields.
[[nodiscard]] nlohmann::json to_json(const VerificationReport& report);
[[nodiscard]] nlohmann::json to_json(const EstimateReport& report);
[[nodiscard]] nlohmann::json to_json(const CovarianceEstimate& estimate);
[[nodiscard]] nlohmann::json to_json(const ExactResult& result);
[[nodiscard]] nlohmann::json to_json(const SubsetDistribution& dist);
[[nodiscard]] nlohmann::json to_json(const QuadrupleSums& sums);
[[nodiscard]] nlohmann::json to_json(const CovarianceResult& result);
[[nodiscard]] nlohmann::json to_json(const GridStats& stats);
[[nodiscard]] nlohmann::json to_json(const Graph& graph, const Witness& witness);

[[nodiscard]] VerificationReport verification_report_from_json(const nlohmann::json& j);

[[nodiscard]] const char* to_string(ExactMethod method);
[[nodiscard]] const char* to_string(VerifyMode mode);

} // namespace orient
