#pragma once

#include <json.hpp>
#include <string>

namespace qrm::cli {

// Model arguments as typed on the command line. Each may be a plain value, a
// symbolic value such as "pi^-1/3", or (where a command sweeps) lo:hi:step.
// Kept as text so a saved configuration reproduces the run exactly.
struct ModelArgs {
  std::string epsilon = "0";
  std::string delta = "0";
  std::string omega = "1";
  std::string g = "0";

  friend bool operator==(const ModelArgs&, const ModelArgs&) = default;
};

struct SpectrumArgs {
  ModelArgs model;
  int levels = 10;
  friend bool operator==(const SpectrumArgs&, const SpectrumArgs&) = default;
};

struct GapCurveArgs {
  ModelArgs model;
  int k = 4;  // 1-based lower level
  friend bool operator==(const GapCurveArgs&, const GapCurveArgs&) = default;
};

struct CrossingArgs {
  ModelArgs model;
  std::string sweep = "g";
  std::string bracket;
  std::string pair = "auto";  // "auto" or the 1-based lower level
  int levels = 10;            // search depth for "auto"
  friend bool operator==(const CrossingArgs&, const CrossingArgs&) = default;
};

struct OverlapArgs {
  std::string row;  // epsilon,delta,g[,omega]
  std::string col;
  int levels = 10;
  double threshold = 1e-8;
  bool partition = false;
  friend bool operator==(const OverlapArgs&, const OverlapArgs&) = default;
};

struct PerturbArgs {
  ModelArgs model;
  std::string pair = "2,1";  // m,n
  friend bool operator==(const PerturbArgs&, const PerturbArgs&) = default;
};

struct ScanArgs {
  std::string epsilon = "1";  // value, list or range
  std::string delta_range = "0.1:3.1";
  std::string g_range = "0.1:3.1";
  double step = 0.05;
  int levels = 10;
  friend bool operator==(const ScanArgs&, const ScanArgs&) = default;
};

// Everything that determines a run's output. Thread count is deliberately
// absent: it never changes results.
struct RunConfig {
  std::string command;  // spectrum, gapcurve, crossing, overlap, partition, perturb, scan
  SpectrumArgs spectrum;
  GapCurveArgs gapcurve;
  CrossingArgs crossing;
  OverlapArgs overlap;  // shared by overlap and partition
  PerturbArgs perturb;
  ScanArgs scan;
  double tol = 1e-10;
  int precision = 6;
  std::string output_path;  // empty = stdout

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Only the record belonging to `command` is serialised.
nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& c, const std::string& path);

}  // namespace qrm::cli
