#include "kinwave/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "kinwave/errors.hpp"

namespace kinwave {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view v, int line, const std::string& key) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError(line, key + ": expected a number, got '" + std::string(v) + "'");
  return out;
}

int parse_int(std::string_view v, int line, const std::string& key) {
  int out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end)
    throw ConfigError(line, key + ": expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool parse_bool(std::string_view v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(line, key + ": expected true or false, got '" + std::string(v) + "'");
}

std::string parse_string(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

void require(bool ok, int line, const std::string& what) {
  if (!ok) throw ConfigError(line, what);
}

using Setter = std::function<void(std::string_view value, int line)>;

struct KeySpec {
  Setter set;
  bool required = false;
};

// Flat "section.key" table bound to a Config under construction.
std::map<std::string, KeySpec> key_table(Config& c) {
  std::map<std::string, KeySpec> t;
  auto number = [](double& field, std::function<bool(double)> ok = {}, std::string rule = {}) {
    return [&field, ok, rule](std::string_view v, int line) {
      field = parse_double(v, line, "value");
      if (ok) require(ok(field), line, rule);
    };
  };
  auto positive = [](double z) { return z > 0.0; };

  t["run.mode"] = {[&c](std::string_view v, int line) {
    if (v == "evolve") c.mode = RunMode::Evolve;
    else if (v == "picard") c.mode = RunMode::Picard;
    else if (v == "division-lemma") c.mode = RunMode::DivisionLemma;
    else if (v == "convergence") c.mode = RunMode::Convergence;
    else throw ConfigError(line, "mode must be evolve, picard, division-lemma or convergence");
  }};

  t["grid.x_min"] = {number(c.grid.x_min), true};
  t["grid.x_max"] = {number(c.grid.x_max), true};
  t["grid.v_min"] = {number(c.grid.v_min), true};
  t["grid.v_max"] = {number(c.grid.v_max), true};
  t["grid.nx"] = {[&c](std::string_view v, int line) {
    c.grid.nx = parse_int(v, line, "nx");
    require(c.grid.nx >= 2, line, "nx must be >= 2");
  }, true};
  t["grid.nv"] = {[&c](std::string_view v, int line) {
    c.grid.nv = parse_int(v, line, "nv");
    require(c.grid.nv >= 2, line, "nv must be >= 2");
  }, true};
  t["grid.t_final"] = {number(c.grid.t_final, positive, "t_final must be > 0"), true};

  t["physics.coupling"] = {[&c](std::string_view v, int line) {
    c.physics.coupling = parse_bool(v, line, "coupling");
  }};
  t["physics.transport"] = {[&c](std::string_view v, int line) {
    if (v == "analytic") c.physics.transport = TransportMode::Analytic;
    else if (v == "depth_one") c.physics.transport = TransportMode::DepthOne;
    else throw ConfigError(line, "transport must be analytic or depth_one");
  }};
  t["physics.clamp"] = {[&c](std::string_view v, int line) {
    c.physics.clamp = parse_bool(v, line, "clamp");
  }};

  auto& f0 = c.data.f0;
  t["f0.preset"] = {[&f0](std::string_view v, int line) {
    if (v == "zero") f0.kind = Profile2DKind::Zero;
    else if (v == "bump2d") f0.kind = Profile2DKind::Bump2D;
    else if (v == "shifted_bump") f0.kind = Profile2DKind::ShiftedBump;
    else throw ConfigError(line, "f0 preset must be zero, bump2d or shifted_bump");
  }, true};
  t["f0.x_center"] = {number(f0.x_center)};
  t["f0.x_radius"] = {number(f0.x_radius, positive, "x_radius must be > 0")};
  t["f0.v_center"] = {number(f0.v_center)};
  t["f0.v_radius"] = {number(f0.v_radius, positive, "v_radius must be > 0")};
  t["f0.height"] = {number(f0.height, [](double h) { return h >= 0.0; }, "f0 height must be >= 0")};
  t["f0.shift"] = {number(f0.shift)};

  for (auto [name, p] : {std::pair{"a0", &c.data.a0}, std::pair{"a1", &c.data.a1}}) {
    const std::string s = name;
    Profile1D* prof = p;
    t[s + ".preset"] = {[prof, s](std::string_view v, int line) {
      if (v == "zero") prof->kind = Profile1DKind::Zero;
      else if (v == "bump") prof->kind = Profile1DKind::Bump;
      else if (v == "shifted_bump") prof->kind = Profile1DKind::ShiftedBump;
      else throw ConfigError(line, s + " preset must be zero, bump or shifted_bump");
    }};
    t[s + ".center"] = {number(prof->center)};
    t[s + ".radius"] = {number(prof->radius, positive, "radius must be > 0")};
    t[s + ".height"] = {number(prof->height)};
    t[s + ".shift"] = {number(prof->shift)};
  }

  t["output.directory"] = {[&c](std::string_view v, int line) {
    c.output.directory = parse_string(v);
    require(!c.output.directory.empty(), line, "directory must not be empty");
  }};
  t["output.snapshot_every"] = {[&c](std::string_view v, int line) {
    c.output.snapshot_every = parse_int(v, line, "snapshot_every");
    require(c.output.snapshot_every >= 0, line, "snapshot_every must be >= 0");
  }};
  t["output.csv"] = {[&c](std::string_view v, int line) { c.output.csv = parse_bool(v, line, "csv"); }};
  t["output.json"] = {[&c](std::string_view v, int line) { c.output.json = parse_bool(v, line, "json"); }};
  t["output.history_cap_mb"] = {number(c.output.history_cap_mb, positive, "history_cap_mb must be > 0")};

  t["picard.T"] = {number(c.picard.T, positive, "T must be > 0")};
  t["picard.max_iter"] = {[&c](std::string_view v, int line) {
    c.picard.max_iter = parse_int(v, line, "max_iter");
    require(c.picard.max_iter >= 1, line, "max_iter must be >= 1");
  }};
  t["picard.tol"] = {number(c.picard.tol, positive, "tol must be > 0")};
  t["picard.sweep_T_max"] = {number(c.picard.sweep_T_max, [](double z) { return z >= 0.0; },
                                    "sweep_T_max must be >= 0")};

  t["tolerances.support_eps"] = {number(c.tolerances.support_eps, positive,
                                        "support_eps must be > 0")};
  return t;
}

std::string num(double z) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", z);
  return buf;
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

Config parse_config(std::string_view text) {
  Config c;
  c.data.f0 = Profile2D::zero();
  auto table = key_table(c);
  std::map<std::string, int> seen;
  std::string section;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError(line_no, "malformed section header '" + std::string(line) + "'");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const char* known[] = {"run", "grid", "physics", "f0", "a0", "a1",
                                    "output", "picard", "tolerances"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    if (section.empty()) throw ConfigError(line_no, "key outside of any [section]");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    const std::string full = section + "." + key;
    const auto it = table.find(full);
    if (it == table.end()) throw ConfigError(line_no, "unknown key '" + key + "' in [" + section + "]");
    if (const auto prev = seen.find(full); prev != seen.end()) {
      throw ConfigError(line_no, "duplicate key '" + key + "' in [" + section + "] (lines " +
                                     std::to_string(prev->second) + " and " +
                                     std::to_string(line_no) + ")");
    }
    seen[full] = line_no;
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    it->second.set(value, line_no);
  }

  for (const auto& [name, spec] : table)
    if (spec.required && !seen.count(name))
      throw ConfigError(0, "missing required key '" + name + "'");
  if (!(c.grid.x_max > c.grid.x_min)) throw ConfigError(seen["grid.x_max"], "x_max must exceed x_min");
  if (!(c.grid.v_max > c.grid.v_min)) throw ConfigError(seen["grid.v_max"], "v_max must exceed v_min");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Evolve: return "evolve";
    case RunMode::Picard: return "picard";
    case RunMode::DivisionLemma: return "division-lemma";
    case RunMode::Convergence: return "convergence";
  }
  return "evolve";
}

std::string to_string(TransportMode mode) {
  return mode == TransportMode::Analytic ? "analytic" : "depth_one";
}

std::string render_config(const Config& c) {
  std::ostringstream o;
  o << "[run]\nmode = " << to_string(c.mode) << "\n\n";
  o << "[grid]\n"
    << "x_min = " << num(c.grid.x_min) << "\nx_max = " << num(c.grid.x_max) << "\n"
    << "v_min = " << num(c.grid.v_min) << "\nv_max = " << num(c.grid.v_max) << "\n"
    << "nx = " << c.grid.nx << "\nnv = " << c.grid.nv << "\n"
    << "t_final = " << num(c.grid.t_final) << "\n\n";
  o << "[physics]\ncoupling = " << boolean(c.physics.coupling)
    << "\ntransport = " << to_string(c.physics.transport)
    << "\nclamp = " << boolean(c.physics.clamp) << "\n\n";
  const auto& f = c.data.f0;
  o << "[f0]\npreset = " << f.preset_name() << "\nx_center = " << num(f.x_center)
    << "\nx_radius = " << num(f.x_radius) << "\nv_center = " << num(f.v_center)
    << "\nv_radius = " << num(f.v_radius) << "\nheight = " << num(f.height)
    << "\nshift = " << num(f.shift) << "\n\n";
  for (auto [name, p] : {std::pair{"a0", &c.data.a0}, std::pair{"a1", &c.data.a1}}) {
    o << "[" << name << "]\npreset = " << p->preset_name() << "\ncenter = " << num(p->center)
      << "\nradius = " << num(p->radius) << "\nheight = " << num(p->height)
      << "\nshift = " << num(p->shift) << "\n\n";
  }
  o << "[output]\ndirectory = \"" << c.output.directory << "\"\nsnapshot_every = "
    << c.output.snapshot_every << "\ncsv = " << boolean(c.output.csv)
    << "\njson = " << boolean(c.output.json)
    << "\nhistory_cap_mb = " << num(c.output.history_cap_mb) << "\n\n";
  o << "[picard]\nT = " << num(c.picard.T) << "\nmax_iter = " << c.picard.max_iter
    << "\ntol = " << num(c.picard.tol) << "\nsweep_T_max = " << num(c.picard.sweep_T_max)
    << "\n\n";
  o << "[tolerances]\nsupport_eps = " << num(c.tolerances.support_eps) << "\n";
  return o.str();
}

PhaseGrid make_grid(const Config& c) {
  GridSpec spec{c.grid.x_min, c.grid.x_max, c.grid.v_min, c.grid.v_max, c.grid.nx, c.grid.nv};
  return build_grid(spec, c.grid.t_final, c.data.x_support());
}

Config desk_config() {
  Config c;
  c.grid = {-6.0, 6.0, -4.0, 4.0, 256, 256, 5.0};
  c.data.f0 = Profile2D::bump2d(0.0, 1.0, 0.5, 1.0, 1.0);
  c.data.a0 = Profile1D::zero();
  c.data.a1 = Profile1D::zero();
  return c;
}

}  // namespace kinwave
