#pragma once

#include "balance_lab/chordal.hpp"
#include "balance_lab/dynamics.hpp"
#include "balance_lab/experiments.hpp"
#include "balance_lab/graph.hpp"

#include <json.hpp>

#include <string_view>

namespace balance_lab {

// JSON views of library results. Node ids are 1-based; undefined values are null.

nlohmann::json to_json(const NodeSet& nodes);
nlohmann::json to_json(const Cycle& cycle);
nlohmann::json to_json(const AppraisalMatrix& x);
nlohmann::json to_json(const UpdateEvent& event);
nlohmann::json to_json(const RegressionResult& regression);

struct AnalyzeOptions {
  /// Also enumerate simple cycles (guarded like enumerate_simple_cycles).
  bool all_cycles = false;
  bool force = false;
};

nlohmann::json analyze_report(const AppraisalMatrix& x, const AnalyzeOptions& options = {});

/// Certificate per maximal cyclic subgraph, plus the 2^|E| check when requested.
nlohmann::json equivalence_report(const UndirectedSkeleton& g, bool verify_exhaustive,
                                  bool force = false);

nlohmann::json absorption_json(const AbsorptionRecord& record, std::string_view engine);

nlohmann::json study_summary_json(const StudyResult& result);

}  // namespace balance_lab
