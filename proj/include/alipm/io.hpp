#pragma once

#include "alipm/bounds.hpp"
#include "alipm/config.hpp"
#include "alipm/core.hpp"
#include "alipm/hypotheses.hpp"
#include "alipm/ipm.hpp"
#include "alipm/query.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace alipm {

/// Shortest text that round-trips the double exactly.
std::string format_double(double v);

/// Pool CSV: optional "# mx=... my=..." comment, header x1,...,xn,y, one row
/// per point with an empty y field for unlabeled points.
void save_pool_csv(const Pool& pool, const std::string& path);
Pool load_pool_csv(const std::string& path);

/// x columns of a pool CSV as a matrix (labels ignored).
Matrix load_samples_csv(const std::string& path);

/// Hypothesis JSON: setting id plus parameter arrays.
nlohmann::json hypothesis_to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const nlohmann::json& j);

nlohmann::json ipm_to_json(const IpmEstimate& est);
nlohmann::json certificate_to_json(const Certificate& cert);
nlohmann::json rad_to_json(const RadEstimate& est);
nlohmann::json bound_report_to_json(const BoundReport& report);

/// Experiment config from a JSON document; keys mirror the field names and
/// unknown keys are rejected. See docs/config.md.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config_json(const std::string& path);

void save_curve_csv(const std::vector<CurveRecord>& records,
                    const std::string& path, const std::string& header_comment);
void save_coverage_csv(const CoverageResult& result, const std::string& path,
                       const std::string& header_comment);

}  // namespace alipm
