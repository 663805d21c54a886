#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

namespace qrm::cli {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ModelArgs, epsilon, delta, omega, g)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SpectrumArgs, model, levels)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GapCurveArgs, model, k)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CrossingArgs, model, sweep, bracket, pair, levels)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(OverlapArgs, row, col, levels, threshold, partition)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(PerturbArgs, model, pair)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ScanArgs, epsilon, delta_range, g_range, step,
                                                levels)

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  if (c.command == "spectrum") {
    j["args"] = c.spectrum;
  } else if (c.command == "gapcurve") {
    j["args"] = c.gapcurve;
  } else if (c.command == "crossing") {
    j["args"] = c.crossing;
  } else if (c.command == "overlap" || c.command == "partition") {
    j["args"] = c.overlap;
  } else if (c.command == "perturb") {
    j["args"] = c.perturb;
  } else if (c.command == "scan") {
    j["args"] = c.scan;
  } else {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }
  j["tol"] = c.tol;
  j["precision"] = c.precision;
  j["output_path"] = c.output_path;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    const nlohmann::json args = j.value("args", nlohmann::json::object());
    if (c.command == "spectrum") {
      c.spectrum = args.get<SpectrumArgs>();
    } else if (c.command == "gapcurve") {
      c.gapcurve = args.get<GapCurveArgs>();
    } else if (c.command == "crossing") {
      c.crossing = args.get<CrossingArgs>();
    } else if (c.command == "overlap" || c.command == "partition") {
      c.overlap = args.get<OverlapArgs>();
    } else if (c.command == "perturb") {
      c.perturb = args.get<PerturbArgs>();
    } else if (c.command == "scan") {
      c.scan = args.get<ScanArgs>();
    } else {
      throw std::invalid_argument("unknown command '" + c.command + "'");
    }
    c.tol = j.value("tol", c.tol);
    c.precision = j.value("precision", c.precision);
    c.output_path = j.value("output_path", c.output_path);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed run configuration: ") + e.what());
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open configuration '" + path + "'");
  try {
    return run_config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("configuration '" + path + "' is not valid JSON: " + e.what());
  }
}

void save_run_config(const RunConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write configuration '" + path + "'");
  out << to_json(c).dump(2) << '\n';
}

}  // namespace qrm::cli
