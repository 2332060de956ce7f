#include "ymhd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ymhd/generators.hpp"

namespace ymhd {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

struct KeyValue {
  std::string value;
  int line = 0;
  bool used = false;
};

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

class ConfigMap {
 public:
  ConfigMap(const std::string& text, const std::string& source) : source_(source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(source_ + ":" + std::to_string(lineno) +
                          ": expected key = value");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError(source_ + ":" + std::to_string(lineno) + ": empty key");
      kv_[key] = {value, lineno, false};
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& dflt) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    it->second.used = true;
    return it->second.value;
  }

  double get_double(const std::string& key, double dflt) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    it->second.used = true;
    try {
      size_t pos = 0;
      double v = std::stod(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(source_ + ":" + std::to_string(it->second.line) + ": field '" +
                        key + "' needs a number, got '" + it->second.value + "'");
    }
  }

  long get_int(const std::string& key, long dflt) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    it->second.used = true;
    try {
      size_t pos = 0;
      long v = std::stol(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(source_ + ":" + std::to_string(it->second.line) + ": field '" +
                        key + "' needs an integer, got '" + it->second.value + "'");
    }
  }

  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& dflt) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    it->second.used = true;
    std::vector<double> out;
    std::stringstream ss(it->second.value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      try {
        out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError(source_ + ":" + std::to_string(it->second.line) + ": field '" +
                          key + "' has a bad list entry '" + tok + "'");
      }
    }
    if (out.empty())
      throw ConfigError(source_ + ":" + std::to_string(it->second.line) + ": field '" +
                        key + "' is an empty list");
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, kv] : kv_)
      if (!kv.used)
        throw ConfigError(source_ + ":" + std::to_string(kv.line) + ": unknown key '" +
                          key + "'");
  }

 private:
  std::string source_;
  std::map<std::string, KeyValue> kv_;
};

}  // namespace

void RunConfig::validate() const {
  if (n_side < 4) throw ConfigError("domain.n_side must be at least 4");
  if (length <= 0.0) throw ConfigError("domain.length must be positive");
  if (fiber_dim != 2) throw ConfigError("fiber.dim must be 2 (sphere fiber)");
  if (epsilon0 <= 0.0) throw ConfigError("diag.epsilon0 must be positive");
  if (stride < 1) throw ConfigError("diag.stride must be >= 1");
  for (double r : radii)
    if (r <= 0.0 || r > 0.5 * length)
      throw ConfigError("diag.radii entries must lie in (0, length/2]");
  if (init_kind != "constant" && init_kind != "random-smooth" &&
      init_kind != "synthetic-bubble")
    throw ConfigError("init.kind must be constant|random-smooth|synthetic-bubble");
  flow.validate();
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
  ConfigMap m(text, source_name);
  RunConfig c;
  c.n_side = int(m.get_int("domain.n_side", c.n_side));
  c.length = m.get_double("domain.length", c.length);
  c.group = group_from_name(m.get_string("group", group_name(c.group)));
  c.fiber_dim = int(m.get_int("fiber.dim", c.fiber_dim));

  c.action.ym_scale = m.get_double("action.ym_scale", c.action.ym_scale);

  c.flow.mode = flow_mode_from_name(
      m.get_string("flow.mode", flow_mode_name(c.flow.mode)));
  c.flow.dt = m.get_double("flow.dt", c.flow.dt);
  c.flow.max_steps = int(m.get_int("flow.max_steps", c.flow.max_steps));
  c.flow.tol_residual = m.get_double("flow.tol_residual", c.flow.tol_residual);
  c.flow.psi_norm = m.get_double("flow.psi_norm", c.flow.psi_norm);
  c.flow.record_interval = int(m.get_int("flow.record_interval", c.flow.record_interval));
  c.flow.spot_check_interval =
      int(m.get_int("flow.spot_check_interval", c.flow.spot_check_interval));
  c.flow.outer_iterations =
      int(m.get_int("flow.outer_iterations", c.flow.outer_iterations));
  c.flow.inner_steps = int(m.get_int("flow.inner_steps", c.flow.inner_steps));
  c.flow.action = c.action;

  c.epsilon0 = m.get_double("diag.epsilon0", c.epsilon0);
  c.radii = m.get_double_list("diag.radii", c.radii);
  c.stride = int(m.get_int("diag.stride", c.stride));

  c.seed = std::uint64_t(m.get_int("seed", long(c.seed)));
  c.flow.seed = c.seed;
  const std::string mode = m.get_string("io.mode", c.binary ? "binary" : "text");
  if (mode != "text" && mode != "binary")
    throw ConfigError("io.mode must be text or binary");
  c.binary = mode == "binary";
  c.snapshot_interval = int(m.get_int("io.snapshot_interval", c.snapshot_interval));

  c.init_kind = m.get_string("init.kind", c.init_kind);
  c.init_amplitude_a = m.get_double("init.amplitude_a", c.init_amplitude_a);
  c.init_amplitude_u = m.get_double("init.amplitude_u", c.init_amplitude_u);
  c.init_amplitude_psi = m.get_double("init.amplitude_psi", c.init_amplitude_psi);
  c.bubble_lambda = m.get_double("init.bubble_lambda", c.bubble_lambda);
  c.bubble_center_i = int(m.get_int("init.bubble_center_i", c.bubble_center_i));
  c.bubble_center_j = int(m.get_int("init.bubble_center_j", c.bubble_center_j));

  c.rescale_center_i = int(m.get_int("rescale.center_i", c.rescale_center_i));
  c.rescale_center_j = int(m.get_int("rescale.center_j", c.rescale_center_j));
  c.rescale_ratio = m.get_double("rescale.ratio", c.rescale_ratio);
  c.rescale_target_n = int(m.get_int("rescale.target_n", c.rescale_target_n));

  c.corrupt_gamma = m.get_int("test_hooks.corrupt_gamma", 0) != 0;

  m.reject_unknown();
  c.validate();
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

FieldState make_initial_state(const DiscreteDomain& dom, const RunConfig& cfg) {
  if (cfg.init_kind == "constant") return zero_state(cfg.group, dom.n_side);
  if (cfg.init_kind == "random-smooth") {
    FieldState s = random_smooth_state(dom, cfg.group, cfg.seed, cfg.init_amplitude_a,
                                       cfg.init_amplitude_u, cfg.init_amplitude_psi);
    if (cfg.flow.psi_norm == 0.0) s.psi = TwistedSpinorField(dom.n_side);
    return s;
  }
  // synthetic-bubble
  const int ci = cfg.bubble_center_i < 0 ? dom.n_side / 2 : cfg.bubble_center_i;
  const int cj = cfg.bubble_center_j < 0 ? dom.n_side / 2 : cfg.bubble_center_j;
  FieldState s = zero_state(cfg.group, dom.n_side);
  s.u = bubble_section(dom, cfg.bubble_lambda, ci, cj);
  return s;
}

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

namespace {

size_t values_per_node(GroupKind g) {
  return 2 * Group::get(g).dim() + 3 + 12;
}

void collect_node(const FieldState& s, GroupKind g, size_t k, std::vector<double>& out) {
  const int dim = Group::get(g).dim();
  for (int dir = 0; dir < 2; ++dir)
    for (int a = 0; a < dim; ++a) out.push_back(s.A.a.c[dir].v[k][a]);
  for (int c = 0; c < 3; ++c) out.push_back(s.u.u.v[k][c]);
  for (int sp = 0; sp < 2; ++sp)
    for (int c = 0; c < 3; ++c) {
      out.push_back(s.psi.psi.v[k](sp, c).real());
      out.push_back(s.psi.psi.v[k](sp, c).imag());
    }
}

}  // namespace

void write_snapshot(const std::string& path, const DiscreteDomain& dom,
                    const FieldState& s, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "YMHD1 " << dom.n_side << " " << format_g17(dom.length) << " "
      << group_name(s.A.group) << " 2\n";

  const size_t per = values_per_node(s.A.group);
  std::vector<double> row;
  row.reserve(per);
  for (size_t k = 0; k < dom.nodes(); ++k) {
    row.clear();
    collect_node(s, s.A.group, k, row);
    if (binary) {
      out.write(reinterpret_cast<const char*>(row.data()),
                std::streamsize(row.size() * sizeof(double)));
    } else {
      for (size_t q = 0; q < row.size(); ++q) {
        if (q) out << ' ';
        out << format_g17(row[q]);
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::pair<DiscreteDomain, FieldState> read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  std::string header;
  if (!std::getline(in, header))
    throw StructuralError("snapshot '" + path + "': missing header");
  std::istringstream hs(header);
  std::string tag, group_str;
  int n = 0, fiber = 0;
  double length = 0.0;
  hs >> tag >> n >> length >> group_str >> fiber;
  if (!hs || tag != "YMHD1")
    throw StructuralError("snapshot '" + path + "': bad header '" + header + "'");
  if (fiber != 2)
    throw StructuralError("snapshot '" + path + "': unsupported fiber dimension");
  const GroupKind g = group_from_name(group_str);
  if (n < 4 || length <= 0.0)
    throw StructuralError("snapshot '" + path + "': bad grid parameters");

  DiscreteDomain dom(n, length);
  FieldState s = zero_state(g, n);
  const size_t per = values_per_node(g);
  const size_t count = dom.nodes() * per;

  const std::streampos payload_start = in.tellg();
  in.seekg(0, std::ios::end);
  const size_t remaining = size_t(in.tellg() - payload_start);
  in.seekg(payload_start);

  std::vector<double> vals(count);
  if (remaining == count * sizeof(double)) {
    in.read(reinterpret_cast<char*>(vals.data()), std::streamsize(count * sizeof(double)));
    if (!in) throw StructuralError("snapshot '" + path + "': truncated binary payload");
  } else {
    for (size_t q = 0; q < count; ++q)
      if (!(in >> vals[q]))
        throw StructuralError("snapshot '" + path + "': payload has " +
                              std::to_string(q) + " values, expected " +
                              std::to_string(count));
    double extra;
    if (in >> extra)
      throw StructuralError("snapshot '" + path + "': payload longer than expected");
  }

  const int dim = Group::get(g).dim();
  size_t q = 0;
  for (size_t k = 0; k < dom.nodes(); ++k) {
    for (int dir = 0; dir < 2; ++dir)
      for (int a = 0; a < dim; ++a) s.A.a.c[dir].v[k][a] = vals[q++];
    for (int c = 0; c < 3; ++c) s.u.u.v[k][c] = vals[q++];
    for (int sp = 0; sp < 2; ++sp)
      for (int c = 0; c < 3; ++c) {
        const double re = vals[q++];
        const double im = vals[q++];
        s.psi.psi.v[k](sp, c) = Complex(re, im);
      }
  }
  if (max_unit_violation(s.u) > 1e-6)
    throw DomainError("snapshot '" + path + "': section is not unit length");
  return {std::move(dom), std::move(s)};
}

void write_trace_csv(const std::string& path, const FlowTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "step,ym,higgs,dirac,total,resA,resU,resPsi,maxHiggsDensity,maxPsi4Density\n";
  for (const TraceRow& r : trace.rows) {
    out << r.step << ',' << format_g17(r.action.yang_mills) << ','
        << format_g17(r.action.higgs) << ',' << format_g17(r.action.dirac) << ','
        << format_g17(r.action.total) << ',' << format_g17(r.res_a) << ','
        << format_g17(r.res_u) << ',' << format_g17(r.res_psi) << ','
        << format_g17(r.max_higgs_density) << ',' << format_g17(r.max_psi4_density)
        << '\n';
  }
}

void write_report_csv(const std::string& path, const ConcentrationReport& rep) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "center_i,center_j,radius,type,energy,flagged\n";
  for (const auto& r : rep.rows)
    out << r.i << ',' << r.j << ',' << format_g17(r.radius) << ','
        << energy_kind_name(r.kind) << ',' << format_g17(r.energy) << ','
        << (r.flagged ? 1 : 0) << '\n';
}

std::string report_summary(const ConcentrationReport& rep) {
  std::ostringstream os;
  os << "concentration scan: epsilon0 = " << rep.epsilon0 << ", smallest radius = "
     << *std::min_element(rep.radii.begin(), rep.radii.end()) << "\n";
  os << "  S1 (section energy):   " << rep.s1.size() << " point(s)\n";
  os << "  S2 (spinor energy):    " << rep.s2.size() << " point(s)\n";
  os << "  S3 (curvature energy): " << rep.s3.size() << " point(s)\n";
  os << "  S2 subset of S1: " << (rep.s2_subset_s1 ? "yes" : "VIOLATED") << "\n";
  os << "  S3 empty: " << (rep.s3_empty ? "yes" : "VIOLATED") << "\n";
  for (const std::string& w : rep.warnings) os << "  warning: " << w << "\n";
  return os.str();
}

void write_plotdata(const std::string& dir, const DiscreteDomain& dom,
                    const FieldState& s, const ActionParams& p) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto dump = [&](const std::string& name, const ScalarField& f) {
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw IoError("cannot open plotdata file '" + name + "'");
    for (int j = 0; j < dom.n_side; ++j) {
      for (int i = 0; i < dom.n_side; ++i) {
        if (i) out << ',';
        out << format_g17(f.at(i, j));
      }
      out << '\n';
    }
  };
  dump("curvature_density.csv", ym_density(dom, s.A, p));
  dump("higgs_density.csv", higgs_density(dom, s.A, s.u));
  dump("psi4_density.csv", psi4_density(dom, s.psi));
  dump("dirac_density.csv", dirac_density(dom, s.A, s.u, s.psi));
}

}  // namespace ymhd
