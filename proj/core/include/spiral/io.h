#ifndef SPIRAL_IO_H_
#define SPIRAL_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spiral/analysis.h"
#include "spiral/cost_model.h"
#include "spiral/optimizer.h"
#include "spiral/problem.h"
#include "spiral/topology.h"

namespace spiral::io {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
// Throws Error(kConfigParse) on malformed input.
double parse_double(std::string_view text);

// Estimates are written as one number for d = 1 and as ';'-joined
// components otherwise.
std::string format_estimate(const Estimate& e);
Estimate parse_estimate(std::string_view text);

// {"n", "n_C", "positions": [[x, y], ...], "heads": [...],
//  "clusters": [[path of cluster 0], ...]}
// Each cluster array lists its members in traversal order, head first.
nlohmann::json network_to_json(const NetworkInstance& network);
NetworkInstance network_from_json(const nlohmann::json& doc);

// node_index,obs_index,value
void write_observations_csv(std::ostream& out,
                            const std::vector<NodeData>& data);
std::vector<NodeData> read_observations_csv(std::istream& in);

// k,j,i,phi_value,theta_value,cluster_objective,total_objective,cum_bit_meters
//
// One row per recorded sub-iterate. The terminal state (k = K + 1) is written
// as one i = 0 row per cluster with an empty phi_value.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj);
// alpha is not part of the CSV; it is restored from the schedule.
TrajectoryRecord read_trajectory_csv(std::istream& in, Algorithm algorithm,
                                     const StepSizeSchedule& schedule);

nlohmann::json ledger_to_json(const CostLedger& ledger);
nlohmann::json analysis_to_json(const AnalysisReport& report);

void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace spiral::io

#endif  // SPIRAL_IO_H_
