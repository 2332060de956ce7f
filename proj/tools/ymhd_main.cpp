// Command-line driver: invariant checks, flows, concentration scans,
// rescaling, gauge fixing and plot-data export over snapshot files.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "ymhd/blowup.hpp"
#include "ymhd/checks.hpp"
#include "ymhd/coulomb.hpp"
#include "ymhd/generators.hpp"
#include "ymhd/io.hpp"
#include "ymhd/solver.hpp"

namespace {

using namespace ymhd;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  long seed = -1;  // -1: keep the config seed
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (key = value)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the configured seed");
}

RunConfig load_config(const CommonArgs& args) {
  RunConfig cfg =
      args.config_path.empty() ? RunConfig{} : parse_config_file(args.config_path);
  if (args.seed >= 0) {
    cfg.seed = std::uint64_t(args.seed);
    cfg.flow.seed = cfg.seed;
  }
  return cfg;
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int cmd_check_invariants(const CommonArgs& args) {
  RunConfig cfg = load_config(args);
  CheckOptions opt;
  opt.seed = cfg.seed;
  opt.corrupt_gamma = cfg.corrupt_gamma;
  opt.action = cfg.action;
  std::vector<CheckResult> results = run_invariant_battery(opt);
  int passed = 0;
  for (const CheckResult& r : results) {
    std::printf("CHECK %-36s measured=%-13.5g %s%-11.4g %s\n", r.name.c_str(),
                r.measured, r.larger_is_better ? "min=" : "tol=", r.tolerance,
                r.pass ? "PASS" : "FAIL");
    if (r.pass) ++passed;
  }
  std::printf("SUMMARY %d/%zu checks passed\n", passed, results.size());
  return all_pass(results) ? kExitOk : kExitNumerical;
}

int cmd_flow(const CommonArgs& args, const std::string& init_snapshot) {
  RunConfig cfg = load_config(args);
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);

  DiscreteDomain dom(cfg.n_side, cfg.length);
  FieldState state0;
  if (!init_snapshot.empty()) {
    auto [d, s] = read_snapshot(init_snapshot);
    dom = std::move(d);
    state0 = std::move(s);
    if (state0.A.group != cfg.group)
      throw StructuralError("initial snapshot group differs from the configured group");
  } else {
    state0 = make_initial_state(dom, cfg);
  }

  int last_written = -1;
  SnapshotHook hook = [&](int step, const FieldState& s) {
    const bool due =
        step == 0 || (cfg.snapshot_interval > 0 && step % cfg.snapshot_interval == 0);
    if (!due) return;
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06d.snap", step);
    write_snapshot((fs::path(args.out_dir) / name).string(), dom, s, cfg.binary);
    last_written = step;
  };

  FlowResult result;
  switch (cfg.flow.mode) {
    case FlowMode::HarmonicSectionFlow:
      result = heat_flow_harmonic_section(dom, state0.A, state0.u, cfg.flow, hook);
      break;
    case FlowMode::CoupledFlow:
      result = coupled_flow(dom, state0, cfg.flow, hook);
      break;
    case FlowMode::AlternatingDirac:
      result = alternating_search(dom, state0, cfg.flow, hook);
      break;
  }

  const int final_step = result.trace.rows.back().step;
  if (final_step != last_written) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06d.snap", final_step);
    write_snapshot((fs::path(args.out_dir) / name).string(), dom, result.state,
                   cfg.binary);
  }
  write_trace_csv((fs::path(args.out_dir) / "trace.csv").string(), result.trace);

  std::printf("flow %s: steps=%d converged=%d stagnated=%d resU=%.3e resA=%.3e\n",
              flow_mode_name(cfg.flow.mode).c_str(), final_step,
              int(result.trace.converged), int(result.trace.stagnated),
              result.trace.rows.back().res_u, result.trace.rows.back().res_a);
  return result.trace.stagnated ? kExitNumerical : kExitOk;
}

int cmd_scan(const CommonArgs& args, std::vector<std::string> files) {
  RunConfig cfg = load_config(args);
  if (files.size() < 2)
    throw StructuralError("scan needs at least 2 snapshots");
  std::sort(files.begin(), files.end());

  DiscreteDomain dom;
  std::vector<FieldState> snapshots;
  for (size_t q = 0; q < files.size(); ++q) {
    auto [d, s] = read_snapshot(files[q]);
    if (q == 0) {
      dom = std::move(d);
    } else if (d.n_side != dom.n_side || d.length != dom.length ||
               s.A.group != snapshots.front().A.group) {
      throw StructuralError("snapshot '" + files[q] +
                            "' has a different header than the first snapshot");
    }
    snapshots.push_back(std::move(s));
  }

  ConcentrationReport rep =
      concentration_scan(dom, snapshots, cfg.epsilon0, cfg.radii, cfg.stride);
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  write_report_csv((fs::path(args.out_dir) / "concentration.csv").string(), rep);
  std::fputs(report_summary(rep).c_str(), stdout);
  return kExitOk;
}

int cmd_rescale(const CommonArgs& args, const std::string& snapshot) {
  RunConfig cfg = load_config(args);
  auto [dom, s] = read_snapshot(snapshot);
  auto [tdom, ts] = rescale(dom, s, cfg.rescale_center_i, cfg.rescale_center_j,
                            cfg.rescale_ratio, cfg.rescale_target_n);
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  write_snapshot((fs::path(args.out_dir) / "rescaled.snap").string(), tdom, ts,
                 cfg.binary);

  const double r = cfg.rescale_ratio;
  const double ym_t = yang_mills_energy(tdom, ts.A, cfg.action);
  const double ym_s = yang_mills_energy(dom, s.A, cfg.action);
  const double hg_t = higgs_energy(tdom, ts.A, ts.u);
  const double hg_s = higgs_energy(dom, s.A, s.u);
  std::printf("rescale r=%g center=(%d,%d) target_n=%d\n", r, cfg.rescale_center_i,
              cfg.rescale_center_j, cfg.rescale_target_n);
  std::printf("  curvature: target=%.6e  r^2*source=%.6e\n", ym_t, r * r * ym_s);
  std::printf("  section:   target=%.6e  source=%.6e\n", hg_t, hg_s);
  return kExitOk;
}

int cmd_gauge_fix(const CommonArgs& args, const std::string& snapshot) {
  RunConfig cfg = load_config(args);
  auto [dom, s] = read_snapshot(snapshot);
  CoulombResult res;
  if (s.A.group == GroupKind::U1) {
    if (!is_pow2(dom.n_side))
      throw ConfigError("the Fourier gauge fixer needs n_side to be a power of two");
    res = coulomb_fix_abelian(dom, s.A);
  } else {
    DescentOptions dopt;
    dopt.tol = 1e-6;
    res = coulomb_fix_descent(dom, s.A, dopt);
  }
  FieldState fixed = apply_gauge(dom, res.g, s);
  fixed.A = res.A;  // divergence-free representative
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  write_snapshot((fs::path(args.out_dir) / "gaugefixed.snap").string(), dom, fixed,
                 cfg.binary);
  std::printf("gauge-fix: |d*A|_inf = %.3e after %d iteration(s), |A|_L2 %.6e -> %.6e\n",
              res.final_residual, res.iterations, l2_norm(dom, s.A),
              l2_norm(dom, res.A));
  if (!res.converged) {
    std::fprintf(stderr, "gauge-fix did not reach tolerance\n");
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_plotdata(const CommonArgs& args, const std::string& snapshot) {
  RunConfig cfg = load_config(args);
  auto [dom, s] = read_snapshot(snapshot);
  write_plotdata(args.out_dir, dom, s, cfg.action);
  std::printf("plotdata written to %s\n", args.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for a coupled gauge/section/spinor model on the flat 2-torus"};
  app.require_subcommand(1);

  CommonArgs check_args, flow_args, scan_args, rescale_args, fix_args, plot_args;
  std::string flow_init, rescale_snap, fix_snap, plot_snap;
  std::vector<std::string> scan_files;

  CLI::App* c_check = app.add_subcommand("check-invariants", "run the property battery");
  attach_common(c_check, check_args);

  CLI::App* c_flow = app.add_subcommand("flow", "run the configured flow");
  attach_common(c_flow, flow_args);
  c_flow->add_option("--init", flow_init, "initial snapshot (otherwise init.kind)");

  CLI::App* c_scan = app.add_subcommand("scan", "concentration scan over snapshots");
  attach_common(c_scan, scan_args);
  c_scan->add_option("snapshots", scan_files, "snapshot files")->required();

  CLI::App* c_rescale = app.add_subcommand("rescale", "zoom into a snapshot");
  attach_common(c_rescale, rescale_args);
  c_rescale->add_option("snapshot", rescale_snap, "snapshot file")->required();

  CLI::App* c_fix = app.add_subcommand("gauge-fix", "Coulomb gauge fixing");
  attach_common(c_fix, fix_args);
  c_fix->add_option("snapshot", fix_snap, "snapshot file")->required();

  CLI::App* c_plot = app.add_subcommand("plotdata", "export density grids");
  attach_common(c_plot, plot_args);
  c_plot->add_option("snapshot", plot_snap, "snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_check->parsed()) return cmd_check_invariants(check_args);
    if (c_flow->parsed()) return cmd_flow(flow_args, flow_init);
    if (c_scan->parsed()) return cmd_scan(scan_args, scan_files);
    if (c_rescale->parsed()) return cmd_rescale(rescale_args, rescale_snap);
    if (c_fix->parsed()) return cmd_gauge_fix(fix_args, fix_snap);
    if (c_plot->parsed()) return cmd_plotdata(plot_args, plot_snap);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const StructuralError& e) {
    std::fprintf(stderr, "structural error: %s\n", e.what());
    return kExitIo;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
