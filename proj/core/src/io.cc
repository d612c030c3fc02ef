#include "spiral/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "spiral/errors.h"

namespace spiral::io {
namespace {

constexpr std::string_view kObservationsHeader = "node_index,obs_index,value";
constexpr std::string_view kTrajectoryHeader =
    "k,j,i,phi_value,theta_value,cluster_objective,total_objective,"
    "cum_bit_meters";

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::kConfigParse, what);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(std::string_view text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    parse_fail("bad integer '" + std::string(text) + "'");
  }
  return v;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    parse_fail("bad number '" + std::string(text) + "'");
  }
  return v;
}

std::string format_estimate(const Estimate& e) {
  std::string out;
  for (int c = 0; c < e.dim(); ++c) {
    if (c > 0) out += ';';
    out += format_double(e[c]);
  }
  return out;
}

Estimate parse_estimate(std::string_view text) {
  Estimate e;
  for (auto part : split(text, ';')) e.value.push_back(parse_double(part));
  return e;
}

nlohmann::json network_to_json(const NetworkInstance& network) {
  nlohmann::json positions = nlohmann::json::array();
  for (const auto& p : network.positions) positions.push_back({p.x, p.y});
  return {{"n", network.node_count()},
          {"n_C", network.cluster_count()},
          {"positions", std::move(positions)},
          {"heads", network.heads},
          {"clusters", network.paths}};
}

NetworkInstance network_from_json(const nlohmann::json& doc) {
  try {
    NetworkInstance net;
    for (const auto& p : doc.at("positions")) {
      if (p.size() != 2) parse_fail("position must be [x, y]");
      net.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    net.heads = doc.at("heads").get<std::vector<int>>();
    net.paths = doc.at("clusters").get<std::vector<std::vector<int>>>();
    if (doc.at("n").get<int>() != net.node_count() ||
        doc.at("n_C").get<int>() != net.cluster_count()) {
      parse_fail("declared counts do not match the arrays");
    }
    net.cluster_of.assign(net.positions.size(), -1);
    for (std::size_t c = 0; c < net.paths.size(); ++c) {
      for (int v : net.paths[c]) {
        if (v < 0 || v >= net.node_count()) parse_fail("node index out of range");
        net.cluster_of[v] = static_cast<int>(c);
      }
    }
    net.validate();
    return net;
  } catch (const nlohmann::json::exception& e) {
    parse_fail(std::string("network JSON: ") + e.what());
  }
}

void write_observations_csv(std::ostream& out,
                            const std::vector<NodeData>& data) {
  out << kObservationsHeader << '\n';
  for (std::size_t v = 0; v < data.size(); ++v) {
    for (int r = 0; r < data[v].count(); ++r) {
      auto x = data[v].observation(r);
      out << v << ',' << r << ','
          << format_estimate(Estimate({x.begin(), x.end()})) << '\n';
    }
  }
}

std::vector<NodeData> read_observations_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kObservationsHeader) {
    parse_fail("observations CSV: missing header");
  }
  std::vector<NodeData> data;
  while (std::getline(in, line)) {
    std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    auto cols = split(row, ',');
    if (cols.size() != 3) parse_fail("observations CSV: expected 3 columns");
    const int v = parse_int(cols[0]);
    const int r = parse_int(cols[1]);
    Estimate x = parse_estimate(cols[2]);
    if (v < 0 || v > static_cast<int>(data.size())) {
      parse_fail("observations CSV: node indices must be contiguous");
    }
    if (v == static_cast<int>(data.size())) data.push_back({x.dim(), {}});
    NodeData& node = data[v];
    if (r != node.count() || x.dim() != node.dim) {
      parse_fail("observations CSV: rows out of order");
    }
    node.values.insert(node.values.end(), x.value.begin(), x.value.end());
  }
  return data;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj) {
  out << kTrajectoryHeader << '\n';
  for (const IterationRecord& rec : traj.iterations) {
    const std::string total = format_double(rec.total_objective);
    const std::string cum = format_double(rec.cum_bit_meters);
    for (std::size_t j = 0; j < rec.theta.size(); ++j) {
      const std::string theta = format_estimate(rec.theta[j]);
      const std::string fj = format_double(rec.cluster_objective[j]);
      auto emit = [&](std::size_t i, const std::string& phi) {
        out << rec.k << ',' << j << ',' << i << ',' << phi << ',' << theta
            << ',' << fj << ',' << total << ',' << cum << '\n';
      };
      if (rec.phi.empty()) {
        emit(0, "");
      } else {
        for (std::size_t i = 0; i < rec.phi[j].size(); ++i) {
          emit(i, format_estimate(rec.phi[j][i]));
        }
      }
    }
  }
}

TrajectoryRecord read_trajectory_csv(std::istream& in, Algorithm algorithm,
                                     const StepSizeSchedule& schedule) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kTrajectoryHeader) {
    parse_fail("trajectory CSV: missing header");
  }
  TrajectoryRecord traj;
  traj.algorithm = algorithm;
  while (std::getline(in, line)) {
    std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    auto cols = split(row, ',');
    if (cols.size() != 8) parse_fail("trajectory CSV: expected 8 columns");
    const int k = parse_int(cols[0]);
    const int j = parse_int(cols[1]);
    const int i = parse_int(cols[2]);

    if (traj.iterations.empty() || traj.iterations.back().k != k) {
      if (!traj.iterations.empty() && k != traj.iterations.back().k + 1) {
        parse_fail("trajectory CSV: iterations out of order");
      }
      IterationRecord rec;
      rec.k = k;
      rec.alpha = schedule.at(k);
      rec.total_objective = parse_double(cols[6]);
      rec.cum_bit_meters = parse_double(cols[7]);
      traj.iterations.push_back(std::move(rec));
    }
    IterationRecord& rec = traj.iterations.back();
    const bool terminal = cols[3].empty();
    if (i == 0) {
      if (j != static_cast<int>(rec.theta.size())) {
        parse_fail("trajectory CSV: clusters out of order");
      }
      rec.theta.push_back(parse_estimate(cols[4]));
      rec.cluster_objective.push_back(parse_double(cols[5]));
      if (!terminal) rec.phi.emplace_back();
    } else if (terminal || j + 1 != static_cast<int>(rec.theta.size()) ||
               rec.phi.empty() ||
               i != static_cast<int>(rec.phi.back().size())) {
      parse_fail("trajectory CSV: sub-iterates out of order");
    }
    if (!terminal) rec.phi.back().push_back(parse_estimate(cols[3]));
  }
  if (traj.iterations.empty()) parse_fail("trajectory CSV: no rows");
  return traj;
}

nlohmann::json ledger_to_json(const CostLedger& ledger) {
  return {{"intra_cluster_bm", ledger.intra_cluster_bm},
          {"inter_cluster_bm", ledger.inter_cluster_bm},
          {"to_fusion_bm", ledger.to_fusion_bm},
          {"total_bm", ledger.total_bm()},
          {"message_count", ledger.message_count}};
}

nlohmann::json analysis_to_json(const AnalysisReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : report.checks) {
    checks.push_back({{"name", check.name},
                      {"evaluated", check.rows.size()},
                      {"violations", check.violations},
                      {"worst_margin", check.worst_margin},
                      {"pass", check.pass()}});
  }
  return {{"pass", report.pass()},
          {"tolerance", kViolationTolerance},
          {"theta_star", report.optimum.theta_star.value},
          {"f_star", report.optimum.f_star},
          {"c_total", report.bounds.c_total},
          {"c_hat", report.bounds.c_hat},
          {"checks", std::move(checks)}};
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace spiral::io
