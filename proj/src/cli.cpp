#include "graphon/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "graphon/csv.hpp"
#include "graphon/errors.hpp"
#include "graphon/graphon.hpp"
#include "graphon/hilbert.hpp"
#include "graphon/holder.hpp"
#include "graphon/psi.hpp"
#include "graphon/sampler.hpp"
#include "graphon/spec.hpp"
#include "graphon/verify.hpp"

namespace graphon::cli {

namespace {

// Write through `path` when given, else through the fallback stream.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file: " + path);
  writer(file);
  file.flush();
  if (!file) throw IoError("failed writing output file: " + path);
}

double parse_number(const std::string& token, const std::string& descriptor) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + token + "' in grid descriptor: " + descriptor);
  }
  if (pos != token.size())
    throw ParseError("bad number '" + token + "' in grid descriptor: " + descriptor);
  return v;
}

void print_verdict(std::ostream& out, const TruncatedPsiResult& r) {
  out << to_string(r.verdict.kind) << "\n";
  if (r.verdict.kind == PsiVerdictKind::Finite) {
    out << "psi_estimate " << format_double(r.verdict.psi_estimate) << "\n";
    out << "psi_stderr " << format_double(r.verdict.psi_stderr) << "\n";
  }
  out << "log_slope " << format_double(r.verdict.log_slope) << "\n";
  out << "slope_stderr " << format_double(r.verdict.slope_stderr) << "\n";
  out << "zero_mass " << format_double(r.zero_mass) << "\n";
  out << "n_pairs " << r.n_pairs << " n_z " << r.n_z << " seed " << r.seed << "\n";
}

struct CommonArgs {
  std::string spec_path;
  double q = 0.5;
  int pairs = 20000;
  int inner = 1000;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string grid = "geometric:0.0001:0.1:7";
};

}  // namespace

std::vector<double> parse_delta_grid(const std::string& descriptor) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t colon = descriptor.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(descriptor.substr(start));
      break;
    }
    parts.push_back(descriptor.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() != 4 || parts[0] != "geometric")
    throw ParseError("grid descriptor must look like geometric:<min>:<max>:<count>, got: " +
                     descriptor);
  const double lo = parse_number(parts[1], descriptor);
  const double hi = parse_number(parts[2], descriptor);
  int count = 0;
  try {
    std::size_t pos = 0;
    count = std::stoi(parts[3], &pos);
    if (pos != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::exception&) {
    throw ParseError("bad count '" + parts[3] + "' in grid descriptor: " + descriptor);
  }
  if (!(lo > 0.0)) throw ParseError("grid minimum must be positive, got " + format_double(lo));
  if (!(lo < hi)) throw ParseError("grid needs min < max, got min=" + format_double(lo) +
                                   " max=" + format_double(hi));
  if (count < 2) throw ParseError("grid needs at least 2 points, got " + std::to_string(count));

  std::vector<double> grid(static_cast<std::size_t>(count));
  const double log_hi = std::log(hi);
  const double log_lo = std::log(lo);
  for (int j = 0; j < count; ++j) {
    const double frac = static_cast<double>(j) / static_cast<double>(count - 1);
    grid[static_cast<std::size_t>(j)] = std::exp(log_hi + (log_lo - log_hi) * frac);
  }
  grid.front() = hi;
  grid.back() = lo;
  return grid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"kernel smoothness toolkit: divergence scans, exponent scans, and graph sampling"};
  app.require_subcommand(1);

  CommonArgs psi_args;
  CLI::App* psi_cmd = app.add_subcommand("psi", "truncated divergence scan, written as CSV");
  psi_cmd->add_option("--spec", psi_args.spec_path, "kernel spec JSON file")->required();
  psi_cmd->add_option("--q", psi_args.q, "inverse-distance exponent")->required();
  psi_cmd->add_option("--pairs", psi_args.pairs, "outer pair budget");
  psi_cmd->add_option("--inner", psi_args.inner, "inner samples per pair");
  psi_cmd->add_option("--grid", psi_args.grid, "geometric:<min>:<max>:<count> truncation grid");
  psi_cmd->add_option("--seed", psi_args.seed, "random seed (echoed in the CSV)");
  psi_cmd->add_option("--threads", psi_args.threads, "worker threads (0 = GRAPHON_THREADS, then hardware)");
  psi_cmd->add_option("--out", psi_args.out_path, "CSV path (default: stdout)");

  CommonArgs cls_args;
  CLI::App* cls_cmd = app.add_subcommand("classify", "verdict for one kernel and exponent");
  cls_cmd->add_option("--spec", cls_args.spec_path, "kernel spec JSON file")->required();
  cls_cmd->add_option("--q", cls_args.q, "inverse-distance exponent")->required();
  cls_cmd->add_option("--pairs", cls_args.pairs, "outer pair budget");
  cls_cmd->add_option("--inner", cls_args.inner, "inner samples per pair");
  cls_cmd->add_option("--seed", cls_args.seed, "random seed");
  cls_cmd->add_option("--threads", cls_args.threads, "worker threads");
  cls_cmd->add_option("--out", cls_args.out_path, "also write the scan CSV here");

  std::string hol_spec, hol_scales, hol_out;
  int hol_n = 2000, hol_threads = 0, hol_curve_dim = 0, hol_curve_bits = 0;
  std::uint64_t hol_seed = 0;
  CLI::App* hol_cmd = app.add_subcommand("holder", "multi-scale oscillation scan, written as CSV");
  hol_cmd->add_option("--spec", hol_spec, "kernel spec JSON file (scan the kernel)");
  hol_cmd->add_option("--curve-dim", hol_curve_dim, "scan the curve map instead: dimension");
  hol_cmd->add_option("--curve-bits", hol_curve_bits, "scan the curve map instead: bits per axis");
  hol_cmd->add_option("--scales", hol_scales, "geometric:<min>:<max>:<count> scale grid (default 2^-14..2^-3)");
  hol_cmd->add_option("--n", hol_n, "pairs per scale");
  hol_cmd->add_option("--seed", hol_seed, "random seed");
  hol_cmd->add_option("--threads", hol_threads, "worker threads");
  hol_cmd->add_option("--out", hol_out, "CSV path (default: stdout)");

  std::string pb_spec, pb_out;
  int pb_bits = 20;
  CLI::App* pb_cmd = app.add_subcommand("pullback", "wrap a spec in a curve reparameterization");
  pb_cmd->add_option("--spec", pb_spec, "inner kernel spec JSON file")->required();
  pb_cmd->add_option("--bits", pb_bits, "curve resolution per axis");
  pb_cmd->add_option("--out", pb_out, "spec JSON path (default: stdout)");

  std::string smp_spec, smp_out;
  int smp_n = 0;
  std::uint64_t smp_seed = 0;
  CLI::App* smp_cmd = app.add_subcommand("sample", "draw a random graph, written as an edge list");
  smp_cmd->add_option("--spec", smp_spec, "kernel spec JSON file")->required();
  smp_cmd->add_option("--n", smp_n, "number of vertices")->required();
  smp_cmd->add_option("--seed", smp_seed, "random seed");
  smp_cmd->add_option("--out", smp_out, "edge list path (default: stdout)");

  int cd_dim = 0, cd_dirs = 200, cd_inner = 20000;
  std::uint64_t cd_seed = 0;
  CLI::App* cd_cmd = app.add_subcommand("cd", "minimum mean absolute projection over directions");
  cd_cmd->add_option("--dim", cd_dim, "ambient dimension")->required();
  cd_cmd->add_option("--dirs", cd_dirs, "random directions to try");
  cd_cmd->add_option("--inner", cd_inner, "Monte Carlo samples");
  cd_cmd->add_option("--seed", cd_seed, "random seed");

  int ver_threads = 0;
  CLI::App* ver_cmd = app.add_subcommand("verify", "run the full acceptance suite");
  ver_cmd->add_option("--threads", ver_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(psi_cmd)) {
      const Graphon w = build(load_spec_file(psi_args.spec_path));
      const auto grid = parse_delta_grid(psi_args.grid);
      const PsiBudget budget{psi_args.pairs, psi_args.inner, psi_args.threads};
      const auto result = psi_truncated(w, psi_args.q, grid, budget, psi_args.seed);
      with_output(psi_args.out_path, out,
                  [&](std::ostream& os) { write_psi_csv(result, os); });
      if (!psi_args.out_path.empty()) print_verdict(out, result);
    } else if (app.got_subcommand(cls_cmd)) {
      const Graphon w = build(load_spec_file(cls_args.spec_path));
      const PsiBudget budget{cls_args.pairs, cls_args.inner, cls_args.threads};
      const auto result = classify_divergence(w, cls_args.q, budget, cls_args.seed);
      if (!cls_args.out_path.empty())
        with_output(cls_args.out_path, out,
                    [&](std::ostream& os) { write_psi_csv(result, os); });
      print_verdict(out, result);
    } else if (app.got_subcommand(hol_cmd)) {
      const bool curve_mode = hol_curve_dim != 0 || hol_curve_bits != 0;
      if (curve_mode == !hol_spec.empty())
        throw InvalidSpec("pass exactly one target: --spec, or --curve-dim with --curve-bits");
      ScanBudget budget;
      budget.n_per_scale = hol_n;
      budget.threads = hol_threads;
      if (!hol_scales.empty()) budget.scales = parse_delta_grid(hol_scales);
      const HolderScanTable table =
          curve_mode ? curve_exponent(CurveMap(hol_curve_dim, hol_curve_bits), budget, hol_seed)
                     : graphon_exponent(build(load_spec_file(hol_spec)), budget, hol_seed);
      with_output(hol_out, out, [&](std::ostream& os) { write_holder_csv(table, os); });
      if (!hol_out.empty())
        out << "alpha_hat " << format_double(table.alpha_hat) << "\nr2 "
            << format_double(table.r2) << "\n";
    } else if (app.got_subcommand(pb_cmd)) {
      GraphonSpec inner = load_spec_file(pb_spec);
      GraphonSpec wrapped{PullbackSpec{pb_bits, std::make_shared<GraphonSpec>(std::move(inner))}};
      wrapped.check();
      const std::string text = spec_to_json_text(wrapped, 2) + "\n";
      with_output(pb_out, out, [&](std::ostream& os) { os << text; });
    } else if (app.got_subcommand(smp_cmd)) {
      const Graphon w = build(load_spec_file(smp_spec));
      const SampledGraph g = sample_graph(w, smp_n, smp_seed);
      with_output(smp_out, out, [&](std::ostream& os) { write_edge_list(g, os); });
    } else if (app.got_subcommand(cd_cmd)) {
      const CdEstimate est = estimate_cd(cd_dim, cd_dirs, cd_inner, cd_seed);
      out << "value " << format_double(est.value) << "\n";
      out << "direction";
      for (double c : est.direction) out << ' ' << format_double(c);
      out << "\n";
      out << "n_dirs " << est.n_dirs << " n_z " << est.n_z << " seed " << est.seed << "\n";
    } else if (app.got_subcommand(ver_cmd)) {
      const auto results = run_acceptance(ver_threads, out);
      for (const auto& r : results)
        if (!r.passed) return 2;
      return 0;
    }
    return 0;
  } catch (const DegenerateFit& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientSamples& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace graphon::cli
