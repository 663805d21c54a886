#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "arguments.hpp"
#include "qrm/error.hpp"
#include "qrm/format.hpp"
#include "qrm/overlap.hpp"
#include "qrm/perturb.hpp"
#include "qrm/scan.hpp"
#include "qrm/spectra.hpp"

#ifndef QRM_VERSION
#define QRM_VERSION "0.0.0"
#endif

namespace qrm::cli {

namespace {

// Output is assembled in memory so the header can record the truncation that
// the computation ended up using.
struct Report {
  std::vector<std::string> meta;  // "key: value" comment lines after the config
  std::ostringstream body;
};

void emit(const RunConfig& c, const Report& r, std::ostream& fallback) {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &fallback;
  if (!c.output_path.empty()) {
    file = std::make_unique<std::ofstream>(c.output_path);
    if (!*file) throw std::runtime_error("cannot write output '" + c.output_path + "'");
    os = file.get();
  }
  *os << "# qrm " << QRM_VERSION << '\n';
  *os << "# config: " << to_json(c).dump() << '\n';
  for (const auto& m : r.meta) *os << "# " << m << '\n';
  *os << r.body.str();
  os->flush();
}

struct SweepSetup {
  ModelParams fixed;
  SweptParam swept = SweptParam::G;
  std::vector<double> grid;
};

SweepSetup sweep_setup(const ModelArgs& m) {
  SweepSetup s;
  int ranges = 0;
  auto take = [&](const std::string& text, SweptParam which, double& field) {
    const Range r = parse_range(text);
    field = r.lo;
    if (is_range(text)) {
      ++ranges;
      s.swept = which;
      s.grid = r.values();
    }
  };
  take(m.epsilon, SweptParam::Epsilon, s.fixed.epsilon);
  take(m.delta, SweptParam::Delta, s.fixed.delta);
  take(m.g, SweptParam::G, s.fixed.g);
  s.fixed.omega = parse_real(m.omega);
  if (ranges > 1) throw std::invalid_argument("only one of --eps, --delta, --g may be a range");
  if (ranges == 0) s.grid = {s.fixed.g};
  s.fixed.validate();
  return s;
}

ModelParams fixed_model(const ModelArgs& m) {
  ModelParams p{parse_real(m.delta), parse_real(m.epsilon), parse_real(m.omega), parse_real(m.g)};
  p.validate();
  return p;
}

std::string fmt(double v, const RunConfig& c) { return format_real(v, c.precision); }

int run_spectrum(const RunConfig& c, const ExecOptions& o, Report& r) {
  const SpectrumArgs& a = c.spectrum;
  if (a.levels < 1) throw std::invalid_argument("--levels must be >= 1");
  const SweepSetup s = sweep_setup(a.model);
  const LevelSweep sweep = sweep_levels(s.fixed, s.swept, s.grid, std::max(2, a.levels),
                                        {c.tol, ConvergenceOptions::from_environment(), o.threads});
  r.meta.push_back("swept: " + std::string(to_string(s.swept)));
  r.meta.push_back("n_fock: " + std::to_string(sweep.max_n_fock));
  r.body << "swept_value";
  for (int k = 1; k <= a.levels; ++k) r.body << ",E" << k << "_rel";
  r.body << '\n';
  for (std::size_t j = 0; j < s.grid.size(); ++j) {
    r.body << fmt(s.grid[j], c);
    for (int k = 0; k < a.levels; ++k) r.body << ',' << fmt(sweep.levels(j, k), c);
    r.body << '\n';
  }
  return kExitOk;
}

int run_gapcurve(const RunConfig& c, const ExecOptions& o, Report& r) {
  const GapCurveArgs& a = c.gapcurve;
  const SweepSetup s = sweep_setup(a.model);
  const auto gaps = gap_curve(s.fixed, s.swept, s.grid, a.k,
                              {c.tol, ConvergenceOptions::from_environment(), o.threads});
  r.meta.push_back("swept: " + std::string(to_string(s.swept)));
  r.meta.push_back("levels: " + std::to_string(a.k) + "," + std::to_string(a.k + 1));
  r.body << "swept_value,gap\n";
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    r.body << fmt(s.grid[j], c) << ',' << fmt(gaps[j], c) << '\n';
  }
  return kExitOk;
}

int run_crossing(const RunConfig& c, const ExecOptions&, Report& r) {
  const CrossingArgs& a = c.crossing;
  const ModelParams fixed = fixed_model(a.model);
  const SweptParam swept = parse_swept_param(a.sweep);
  const auto bracket = parse_bracket(a.bracket);
  RefineOptions ro;
  ro.tol = c.tol;
  ro.convergence = ConvergenceOptions::from_environment();
  int k = 0;
  if (a.pair == "auto") {
    k = find_crossing_pair(fixed, swept, bracket, a.levels, ro);
  } else {
    k = static_cast<int>(parse_real(a.pair));
    if (k < 1 || k != parse_real(a.pair)) throw std::invalid_argument("--pair must be auto or a level number");
  }
  const CrossingReport rep = refine_crossing(fixed, swept, bracket, k, ro);
  r.meta.push_back("swept: " + std::string(to_string(swept)));
  r.meta.push_back("n_fock: " + std::to_string(rep.n_fock));
  r.body << "lower_level,upper_level,location,gap_at_star,relative_energy,certified\n";
  // The location needs more digits than the table default to be meaningful.
  const int loc_digits = std::max(c.precision, 12);
  r.body << rep.lower_level << ',' << rep.lower_level + 1 << ','
         << format_real(rep.location, loc_digits) << ',' << fmt(rep.gap_at_star, c) << ','
         << format_real(rep.relative_energy, loc_digits) << ','
         << (rep.certified ? "true" : "false") << '\n';
  return kExitOk;
}

int run_overlap(const RunConfig& c, const ExecOptions&, Report& r, bool table) {
  const OverlapArgs& a = c.overlap;
  if (a.row.empty() || a.col.empty()) throw std::invalid_argument("--row and --col are required");
  const ModelParams pr = parse_triple(a.row);
  const ModelParams pc = parse_triple(a.col);
  const auto [er, ec] = matched_eigensystems(pr, pc, a.levels, c.tol,
                                             ConvergenceOptions::from_environment());
  const OverlapMatrix m = classify_zeros(overlap_matrix(er, ec, a.levels), a.threshold);
  r.meta.push_back("n_fock: " + std::to_string(er.n_fock));
  r.meta.push_back("largest_ignored: " + format_real(m.largest_ignored, 3) +
                   ", smallest_retained: " + format_real(m.smallest_retained, 3) +
                   ", separation: " + format_real(m.separation(), 3) +
                   (m.valid() ? "" : " (UNCERTIFIED)"));
  if (!m.degenerate_rows.empty() || !m.degenerate_cols.empty()) {
    r.meta.push_back("degenerate subspace overlaps substituted");
  }
  if (table) write_overlap_table(r.body, m, c.precision);
  if (!m.valid()) {
    if (!table || a.partition) r.body << "partition: UNCERTIFIED\n";
    return kExitUncertified;
  }
  if (!table || a.partition) write_partition(r.body, find_partition(m));
  return kExitOk;
}

int run_perturb(const RunConfig& c, const ExecOptions&, Report& r) {
  const PerturbArgs& a = c.perturb;
  const auto [m, n] = parse_pair(a.pair);
  const SweepSetup s = sweep_setup(a.model);
  if (s.swept != SweptParam::G) throw std::invalid_argument("perturb sweeps --g only");
  const auto rows =
      compare_with_exact(s.fixed, m, n, s.grid, c.tol, ConvergenceOptions::from_environment());
  const int counted = pair_lower_level(m, n);
  r.meta.push_back("pair (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                   "): levels " + std::to_string(counted) + "," + std::to_string(counted + 1) +
                   " when epsilon = n omega");
  if (m > n && std::abs(s.fixed.epsilon - n * s.fixed.omega) <= 1e-12 * s.fixed.omega * std::max(1, n)) {
    std::string roots = "predicted_crossings:";
    for (double g : predicted_crossings(s.fixed, m, n)) roots += " " + format_real(g, 12);
    r.meta.push_back(roots);
  }
  r.body << "g,lower_level,upper_level,exact_gap,effective_splitting,dtilde,detuning\n";
  for (const auto& row : rows) {
    r.body << fmt(row.value, c) << ',' << row.lower_level << ',' << row.lower_level + 1 << ','
           << fmt(row.exact_gap, c) << ',' << fmt(row.effective.splitting, c) << ','
           << fmt(row.effective.dtilde, c) << ',' << fmt(row.effective.detuning, c) << '\n';
  }
  return kExitOk;
}

int run_scan(const RunConfig& c, const ExecOptions& o, Report& r) {
  const ScanArgs& a = c.scan;
  GridSpec grid;
  grid.delta_range = parse_span(a.delta_range);
  grid.g_range = parse_span(a.g_range);
  grid.step = a.step;
  const auto eps = parse_value_list(a.epsilon);
  ScanOptions so;
  so.threads = o.threads;
  so.tol = c.tol;
  so.convergence = ConvergenceOptions::from_environment();
  const auto results = epsilon_sweep(eps, grid, a.levels, so);
  int n_fock = 0;
  for (const auto& s : results) n_fock = std::max(n_fock, s.max_n_fock);
  r.meta.push_back("n_fock: " + std::to_string(n_fock));
  r.meta.push_back("mesh: " + std::to_string(grid.delta_count()) + "x" +
                   std::to_string(grid.g_count()));
  r.body << "epsilon_over_omega,min_gap,argmin_delta,argmin_g,argmin_k\n";
  for (const auto& s : results) {
    r.body << fmt(s.epsilon_over_omega, c) << ',' << fmt(s.min_gap, c) << ','
           << fmt(s.argmin_delta, c) << ',' << fmt(s.argmin_g, c) << ',' << s.argmin_k << '\n';
  }
  return kExitOk;
}

}  // namespace

int execute(const RunConfig& c, const ExecOptions& opts, std::ostream& out) {
  if (c.precision < 1 || c.precision > 17) throw std::invalid_argument("precision must be 1..17");
  if (!(c.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  Report r;
  int status = kExitOk;
  if (c.command == "spectrum") {
    status = run_spectrum(c, opts, r);
  } else if (c.command == "gapcurve") {
    status = run_gapcurve(c, opts, r);
  } else if (c.command == "crossing") {
    status = run_crossing(c, opts, r);
  } else if (c.command == "overlap") {
    status = run_overlap(c, opts, r, true);
  } else if (c.command == "partition") {
    status = run_overlap(c, opts, r, false);
  } else if (c.command == "perturb") {
    status = run_perturb(c, opts, r);
  } else if (c.command == "scan") {
    status = run_scan(c, opts, r);
  } else {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }
  emit(c, r, out);
  return status;
}

namespace {

void add_model_options(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--eps", m.epsilon, "qubit bias epsilon (value or lo:hi:step)");
  sub->add_option("--delta", m.delta, "qubit gap delta, e.g. 0.7 or pi^-1/3");
  sub->add_option("--omega", m.omega, "oscillator frequency");
  sub->add_option("--g", m.g, "coupling strength (value or lo:hi:step)");
}

void add_common_options(CLI::App* sub, RunConfig& c, bool& full_precision,
                        std::string& save_config) {
  sub->add_option("-o,--output", c.output_path, "output file (default stdout)");
  sub->add_option("--precision", c.precision, "significant digits in output")
      ->check(CLI::Range(1, 17));
  sub->add_flag("--full-precision", full_precision, "write 17 significant digits");
  sub->add_option("--tol", c.tol, "truncation convergence tolerance in units of omega");
  sub->add_option("--save-config", save_config, "also write the run configuration as JSON");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymmetric quantum Rabi model spectra, overlaps and gap scans", "qrm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QRM_VERSION);

  RunConfig c;
  ExecOptions opts;
  bool full_precision = false;
  std::string save_config;
  std::string config_path;

  auto* spectrum = app.add_subcommand("spectrum", "lowest levels relative to the ground state");
  add_model_options(spectrum, c.spectrum.model);
  spectrum->add_option("--levels", c.spectrum.levels, "number of levels K");

  auto* gapcurve = app.add_subcommand("gapcurve", "E_{k+1} - E_k along a sweep");
  add_model_options(gapcurve, c.gapcurve.model);
  gapcurve->add_option("--k", c.gapcurve.k, "1-based lower level");

  auto* crossing = app.add_subcommand("crossing", "refine and certify a level crossing");
  add_model_options(crossing, c.crossing.model);
  crossing->add_option("--sweep", c.crossing.sweep, "swept parameter: g, delta or eps");
  crossing->add_option("--bracket", c.crossing.bracket, "lo:hi")->required();
  crossing->add_option("--pair", c.crossing.pair, "auto or 1-based lower level");
  crossing->add_option("--levels", c.crossing.levels, "levels searched by --pair auto");

  auto* overlap = app.add_subcommand("overlap", "eigenbasis overlap table");
  auto* partition = app.add_subcommand("partition", "symmetry partition search");
  for (auto* sub : {overlap, partition}) {
    sub->add_option("--row", c.overlap.row, "row parameters eps,delta,g[,omega]")->required();
    sub->add_option("--col", c.overlap.col, "column parameters eps,delta,g[,omega]")->required();
    sub->add_option("--levels", c.overlap.levels, "number of levels");
    sub->add_option("--threshold", c.overlap.threshold, "zero classification threshold");
  }
  overlap->add_flag("--partition", c.overlap.partition, "append the partition search result");

  auto* perturb = app.add_subcommand("perturb", "two-level prediction against exact gaps");
  add_model_options(perturb, c.perturb.model);
  perturb->add_option("--pair", c.perturb.pair, "m,n");

  auto* scan = app.add_subcommand("scan", "minimum adjacent gap over the (delta, g) mesh");
  scan->add_option("--eps", c.scan.epsilon, "epsilon/omega: value, a,b,c or lo:hi:step");
  scan->add_option("--delta-range", c.scan.delta_range, "lo:hi");
  scan->add_option("--g-range", c.scan.g_range, "lo:hi");
  scan->add_option("--step", c.scan.step, "mesh spacing");
  scan->add_option("--levels", c.scan.levels, "levels considered");

  auto* run_cmd = app.add_subcommand("run", "execute a saved JSON run configuration");
  run_cmd->add_option("config", config_path, "configuration file")->required();
  run_cmd->add_option("-o,--output", c.output_path, "override the output file");

  for (auto* sub : {spectrum, gapcurve, crossing, overlap, partition, perturb, scan}) {
    add_common_options(sub, c, full_precision, save_config);
  }
  for (auto* sub : {spectrum, gapcurve, scan, run_cmd}) {
    sub->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      const std::string override_path = c.output_path;
      c = load_run_config(config_path);
      if (!override_path.empty()) c.output_path = override_path;
    } else {
      c.command = app.get_subcommands().front()->get_name();
      if (full_precision) c.precision = 17;
      if (!save_config.empty()) save_run_config(c, save_config);
    }
    return execute(c, opts, out);
  } catch (const std::invalid_argument& e) {
    err << "qrm: " << e.what() << "\n";
    err << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const ClassificationError& e) {
    err << "qrm: " << e.what() << "\n";
    return kExitUncertified;
  } catch (const std::exception& e) {
    err << "qrm: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace qrm::cli
