#pragma once

// JSON layouts for fixtures, the CLI and debugging dumps.
//
// PreComplex:
//   {"vertex_count": 2, "face_count": 14, "edges": ["a", "b0", ...],
//    "tetrahedra": [{"vertices": [v0, v1, v2, v3],
//                    "edges": [e01, e02, e03, e12, e13, e23],
//                    "faces": [f_opp0, f_opp1, f_opp2, f_opp3]}, ...]}
// MetricData:
//   {"lengths": [...], "signs": [+1 | -1, ...]}
// InvariantReport:
//   {"p", "q", "k", "samples": [...], "mean", "max_dev", "conjecture", "rel_err",
//    "max_defect", "flagged", "paper_ref_value"?}

#include <json.hpp>

#include "lensinv/complex.hpp"
#include "lensinv/invariant.hpp"
#include "lensinv/lens.hpp"

namespace lensinv {

nlohmann::json to_json(const PreComplex& c);
nlohmann::json to_json(const MetricData& m);
nlohmann::json to_json(const LensRealization& r);
nlohmann::json to_json(const InvariantReport& r);

/// Throws InvalidComplex / InvalidMetric on malformed input.
PreComplex complex_from_json(const nlohmann::json& j);
MetricData metric_from_json(const nlohmann::json& j);

}  // namespace lensinv
