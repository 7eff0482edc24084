#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "egonet/chi2.hpp"
#include "egonet/detect.hpp"
#include "egonet/graph.hpp"
#include "egonet/sim.hpp"

namespace egonet::io {

/// Graph plus the original string node labels, index -> label.
struct LabeledGraph {
    Graph graph;
    std::vector<std::string> labels;

    NodeIndex index_of(const std::string& label) const;  // throws when unknown
};

/// Parse "u v [w]" lines ('#' comments, blank lines skipped). Labels are
/// arbitrary strings, assigned dense indices in first-appearance order.
/// Duplicate pairs merge by summing weights. Self-loops, malformed lines and
/// non-positive-integer weights throw with the line number.
LabeledGraph read_edge_list(std::istream& in);
LabeledGraph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const LabeledGraph& lg);
void write_edge_list_file(const std::string& path, const LabeledGraph& lg);

/// Default labels "0".."n-1" for generated graphs.
LabeledGraph with_default_labels(Graph g);

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const DetectionReport& report, const std::vector<std::string>& labels);
DetectionReport detection_report_from_json(const nlohmann::json& j,
                                           std::vector<std::string>* labels = nullptr);

nlohmann::json to_json(const Chi2Report& report);
Chi2Report chi2_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimSummary& summary);
SimSummary sim_summary_from_json(const nlohmann::json& j);

/// Serialize with stable key order and full numeric precision.
std::string render(const nlohmann::json& j);

/// CLI entry point. Exit codes: 0 success, 1 usage error, 2 data error.
int cli_main(int argc, const char* const* argv);

}  // namespace egonet::io
