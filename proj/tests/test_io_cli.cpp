#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ymhd/checks.hpp"
#include "ymhd/generators.hpp"
#include "ymhd/io.hpp"

using namespace ymhd;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("ymhd_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(YMHD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string run_cli_capture(const std::string& args, int* exit_code) {
  const fs::path out = fs::temp_directory_path() / "ymhd_cli_capture.txt";
  const std::string cmd =
      std::string(YMHD_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  *exit_code = WEXITSTATUS(rc);
  return slurp(out);
}

}  // namespace

TEST_CASE("config parsing: values, comments, diagnostics") {
  const std::string text =
      "# a comment\n"
      "domain.n_side = 48\n"
      "domain.length = 2.0   # trailing comment\n"
      "group = su2\n"
      "flow.mode = coupled_flow\n"
      "flow.dt = 0.01\n"
      "diag.radii = 0.05, 0.1, 0.25\n"
      "seed = 99\n";
  RunConfig cfg = parse_config_text(text, "inline");
  CHECK(cfg.n_side == 48);
  CHECK(cfg.length == 2.0);
  CHECK(cfg.group == GroupKind::SU2);
  CHECK(cfg.flow.mode == FlowMode::CoupledFlow);
  CHECK(cfg.flow.dt == 0.01);
  CHECK(cfg.radii.size() == 3);
  CHECK(cfg.seed == 99);

  // unknown key names the line
  try {
    parse_config_text("domain.n_side = 16\nbogus.key = 1\n", "inline");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
    CHECK(std::string(e.what()).find("bogus.key") != std::string::npos);
  }

  // malformed number names the field
  try {
    parse_config_text("domain.length = fast\n", "inline");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("domain.length") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("group = su5\n", "inline"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("domain.n_side = 2\n", "inline"), ConfigError);
}

TEST_CASE("snapshot round trip in both modes") {
  const fs::path dir = temp_dir("roundtrip");
  DiscreteDomain dom(16, 1.5);
  FieldState s = random_smooth_state(dom, GroupKind::SU2, 5);

  for (bool binary : {true, false}) {
    const fs::path p = dir / (binary ? "s.bin" : "s.txt");
    write_snapshot(p.string(), dom, s, binary);
    auto [d2, s2] = read_snapshot(p.string());
    CHECK(d2.n_side == 16);
    CHECK(d2.length == 1.5);
    CHECK(s2.A.group == GroupKind::SU2);
    double worst = 0.0;
    for (size_t k = 0; k < s.u.u.size(); ++k) {
      worst = std::max(worst, (s2.u.u.v[k] - s.u.u.v[k]).cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (s2.psi.psi.v[k] - s.psi.psi.v[k]).cwiseAbs().maxCoeff());
      for (int dir = 0; dir < 2; ++dir)
        worst = std::max(worst,
                         (s2.A.a.c[dir].v[k] - s.A.a.c[dir].v[k]).cwiseAbs().maxCoeff());
    }
    CHECK(worst == 0.0);  // %.17g round-trips doubles exactly
  }

  // truncated payload is rejected with the file named
  {
    const fs::path p = dir / "trunc.txt";
    write_snapshot(p.string(), dom, s, false);
    std::string body = slurp(p);
    std::ofstream out(p, std::ios::binary);
    out << body.substr(0, body.size() / 2);
    out.close();
    try {
      read_snapshot(p.string());
      FAIL("expected StructuralError");
    } catch (const StructuralError& e) {
      CHECK(std::string(e.what()).find("trunc.txt") != std::string::npos);
    }
  }
}

TEST_CASE("initial state generators") {
  DiscreteDomain dom(32, 1.0);
  RunConfig cfg;
  cfg.n_side = 32;

  cfg.init_kind = "constant";
  FieldState c = make_initial_state(dom, cfg);
  CHECK(higgs_energy(dom, c.A, c.u) == 0.0);

  cfg.init_kind = "random-smooth";
  cfg.seed = 4;
  FieldState r1 = make_initial_state(dom, cfg);
  FieldState r2 = make_initial_state(dom, cfg);
  CHECK((r1.u.u.v[100] - r2.u.u.v[100]).norm() == 0.0);  // deterministic

  cfg.init_kind = "synthetic-bubble";
  cfg.bubble_lambda = 0.05;
  FieldState b = make_initial_state(dom, cfg);
  CHECK(higgs_energy(dom, b.A, b.u) == doctest::Approx(8.0 * M_PI).epsilon(0.2));
}

TEST_CASE("plotdata grids re-integrate to the action breakdown") {
  const fs::path dir = temp_dir("plotdata");
  DiscreteDomain dom(16, 1.0);
  FieldState s = random_smooth_state(dom, GroupKind::SU2, 7);
  ActionParams p;
  write_plotdata(dir.string(), dom, s, p);

  auto sum_grid = [&](const std::string& name) {
    std::ifstream in(dir / name);
    REQUIRE(in);
    double total = 0.0;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      std::stringstream ss(line);
      std::string tok;
      int cols = 0;
      while (std::getline(ss, tok, ',')) {
        total += std::stod(tok);
        ++cols;
      }
      CHECK(cols == 16);
    }
    CHECK(rows == 16);
    return total * dom.h * dom.h;
  };

  ActionBreakdown b = action_total(dom, s, p);
  CHECK(sum_grid("curvature_density.csv") == doctest::Approx(b.yang_mills).epsilon(1e-12));
  CHECK(sum_grid("higgs_density.csv") == doctest::Approx(b.higgs).epsilon(1e-12));
  CHECK(sum_grid("psi4_density.csv") == doctest::Approx(b.spinor_l4).epsilon(1e-12));
  CHECK(sum_grid("dirac_density.csv") == doctest::Approx(b.dirac).epsilon(1e-12));
}

TEST_CASE("invariant battery passes and the fault hook trips it") {
  CheckOptions opt;
  opt.seed = 1;
  std::vector<CheckResult> rs = run_invariant_battery(opt);
  CHECK(rs.size() >= 20);
  for (const CheckResult& r : rs) {
    INFO(r.name, " measured=", r.measured, " tol=", r.tolerance);
    CHECK(r.pass);
  }

  opt.corrupt_gamma = true;
  std::vector<CheckResult> bad = run_invariant_battery(opt);
  bool clifford_failed = false;
  for (const CheckResult& r : bad)
    if (r.name == "clifford_relation") clifford_failed = !r.pass;
  CHECK(clifford_failed);
  CHECK_FALSE(all_pass(bad));
}

TEST_CASE("cli: check-invariants exit codes and report") {
  int code = 0;
  std::string out = run_cli_capture("check-invariants --seed 2", &code);
  CHECK(code == 0);
  int check_rows = 0;
  std::stringstream ss(out);
  std::string line;
  while (std::getline(ss, line))
    if (line.rfind("CHECK ", 0) == 0) ++check_rows;
  CHECK(check_rows >= 20);
  CHECK(out.find("FAIL") == std::string::npos);

  const fs::path dir = temp_dir("cli_bad_gamma");
  const fs::path cfgp = dir / "bad.cfg";
  std::ofstream(cfgp) << "test_hooks.corrupt_gamma = 1\n";
  out = run_cli_capture("check-invariants --config " + cfgp.string(), &code);
  CHECK(code == 3);
  CHECK(out.find("clifford_relation") != std::string::npos);
  CHECK(out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: flow determinism and zero data short-circuit") {
  const fs::path dir = temp_dir("cli_flow");
  const fs::path cfgp = dir / "flow.cfg";
  std::ofstream(cfgp) << "domain.n_side = 16\n"
                      << "group = u1\n"
                      << "flow.mode = harmonic_section_flow\n"
                      << "flow.dt = 0.001\n"
                      << "flow.max_steps = 400\n"
                      << "flow.tol_residual = 1e-5\n"
                      << "flow.record_interval = 10\n"
                      << "init.kind = random-smooth\n"
                      << "init.amplitude_u = 0.1\n"
                      << "seed = 12\n";

  const fs::path o1 = dir / "run1", o2 = dir / "run2";
  CHECK(run_cli("flow --config " + cfgp.string() + " --out " + o1.string()) == 0);
  CHECK(run_cli("flow --config " + cfgp.string() + " --out " + o2.string()) == 0);
  CHECK(slurp(o1 / "trace.csv") == slurp(o2 / "trace.csv"));  // byte identical

  // header of the trace file is the pinned column list
  std::string trace = slurp(o1 / "trace.csv");
  CHECK(trace.rfind("step,ym,higgs,dirac,total,resA,resU,resPsi,maxHiggsDensity,"
                    "maxPsi4Density\n", 0) == 0);

  // zero initial data: converged immediately, one snapshot, one trace row
  const fs::path cfg0 = dir / "zero.cfg";
  std::ofstream(cfg0) << "domain.n_side = 16\ngroup = u1\n"
                      << "flow.mode = harmonic_section_flow\ninit.kind = constant\n";
  const fs::path o0 = dir / "zero_out";
  CHECK(run_cli("flow --config " + cfg0.string() + " --out " + o0.string()) == 0);
  int snapshots = 0, rows = 0;
  for (auto& e : fs::directory_iterator(o0)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("snapshot_", 0) == 0) ++snapshots;
  }
  std::stringstream ts(slurp(o0 / "trace.csv"));
  std::string line;
  std::getline(ts, line);  // header
  while (std::getline(ts, line))
    if (!line.empty()) ++rows;
  CHECK(snapshots == 1);
  CHECK(rows == 1);
  CHECK(line.rfind("0,0,0,", 0) == 0);  // zero action and residuals
}

TEST_CASE("cli: scan, rescale, gauge-fix, plotdata round trip") {
  const fs::path dir = temp_dir("cli_pipeline");
  DiscreteDomain dom(32, 1.0);

  // two snapshots with a bubble, one coarser snapshot for the mismatch test
  FieldState s1 = zero_state(GroupKind::U1, 32);
  s1.u = bubble_section(dom, 0.1, 16, 16);
  FieldState s2 = zero_state(GroupKind::U1, 32);
  s2.u = bubble_section(dom, 0.05, 16, 16);
  write_snapshot((dir / "a_0.snap").string(), dom, s1, false);
  write_snapshot((dir / "a_1.snap").string(), dom, s2, true);
  DiscreteDomain coarse(16, 1.0);
  write_snapshot((dir / "c.snap").string(), coarse, zero_state(GroupKind::U1, 16), false);

  const fs::path cfgp = dir / "scan.cfg";
  std::ofstream(cfgp) << "domain.n_side = 32\ngroup = u1\n"
                      << "diag.epsilon0 = 1.0\ndiag.radii = 0.08, 0.2\ndiag.stride = 2\n";

  int code = 0;
  std::string out = run_cli_capture("scan --config " + cfgp.string() + " --out " +
                                        (dir / "scan_out").string() + " " +
                                        (dir / "a_0.snap").string() + " " +
                                        (dir / "a_1.snap").string(),
                                    &code);
  CHECK(code == 0);
  CHECK(out.find("S1") != std::string::npos);
  std::string csv = slurp(dir / "scan_out" / "concentration.csv");
  CHECK(csv.rfind("center_i,center_j,radius,type,energy,flagged\n", 0) == 0);

  // mixed resolutions are a structural error naming the offender
  out = run_cli_capture("scan --config " + cfgp.string() + " --out " +
                            (dir / "scan_bad").string() + " " +
                            (dir / "a_0.snap").string() + " " + (dir / "c.snap").string(),
                        &code);
  CHECK(code == 2);
  CHECK(out.find("c.snap") != std::string::npos);

  // rescale
  const fs::path rcfg = dir / "rescale.cfg";
  std::ofstream(rcfg) << "rescale.center_i = 16\nrescale.center_j = 16\n"
                      << "rescale.ratio = 0.5\nrescale.target_n = 16\n";
  CHECK(run_cli("rescale --config " + rcfg.string() + " --out " +
                (dir / "rs_out").string() + " " + (dir / "a_0.snap").string()) == 0);
  auto [rd, rs] = read_snapshot((dir / "rs_out" / "rescaled.snap").string());
  CHECK(rd.n_side == 16);

  // gauge-fix on a u1 snapshot
  FieldState g = zero_state(GroupKind::U1, 32, Vec3::UnitX());
  std::mt19937_64 rng(3);
  g.A = sample_gauge(dom, SmoothGauge::random(rng, GroupKind::U1, 1.0, 2, 0.7));
  write_snapshot((dir / "g.snap").string(), dom, g, false);
  out = run_cli_capture("gauge-fix --out " + (dir / "fix_out").string() + " " +
                            (dir / "g.snap").string(),
                        &code);
  CHECK(code == 0);
  auto [fd, fsnap] = read_snapshot((dir / "fix_out" / "gaugefixed.snap").string());
  CoeffField div = codiff1(fd, fsnap.A.a);
  double worst = 0.0;
  for (const Vec3& c : div.v) worst = std::max(worst, c.norm());
  CHECK(worst <= 1e-9);

  // plotdata
  CHECK(run_cli("plotdata --out " + (dir / "plot_out").string() + " " +
                (dir / "a_0.snap").string()) == 0);
  CHECK(fs::exists(dir / "plot_out" / "higgs_density.csv"));

  // usage errors exit with 1
  CHECK(run_cli("flow --config " + (dir / "missing.cfg").string()) == 2);
  CHECK(run_cli("definitely-not-a-command") == 1);
}
