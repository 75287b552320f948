#include "srh/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "srh/errors.hpp"
#include "srh/snapshot.hpp"

namespace srh {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    fail(line, "key '" + key + "': '" + v + "' is not a number");
  if (!std::isfinite(out)) fail(line, "key '" + key + "': must be finite");
  return out;
}

long long parse_int(const std::string& v, int line, const std::string& key) {
  long long out = 0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    fail(line, "key '" + key + "': '" + v + "' is not an integer");
  return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, "key '" + key + "': '" + v + "' is not a boolean");
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& v, int line,
                          const std::string& key, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "key '" + key + "': empty list entry");
    out.push_back(parse(item, line, key));
  }
  if (out.empty()) fail(line, "key '" + key + "': empty list");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      static const std::set<std::string> known{
          "grid",     "evolution",   "initial", "scattering",
          "lindecay", "diagnostics", "output",  "run"};
      if (!known.count(section)) fail(line, "unknown section [" + section + "]");
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (value.empty()) fail(line, "key '" + key + "': empty value");
    if (section.empty()) fail(line, "key '" + key + "' outside any section");
    if (!seen.insert(section + "." + key).second)
      fail(line, "duplicate key '" + key + "' in [" + section + "]");

    if (section == "grid") {
      cfg.has_grid = true;
      if (key == "kind") {
        if (value == "radial")
          cfg.grid.kind = GridKind::Radial3D;
        else if (value == "periodic")
          cfg.grid.kind = GridKind::Periodic3D;
        else
          fail(line, "key 'kind': expected radial or periodic");
      } else if (key == "n") {
        const long long n = parse_int(value, line, key);
        if (n < 8 || n > (1 << 20)) fail(line, "key 'n': out of range");
        cfg.grid.n = static_cast<int>(n);
      } else if (key == "extent") {
        const double e = parse_double(value, line, key);
        if (!(e > 0.0)) fail(line, "key 'extent': must be positive");
        cfg.grid.extent = e;
      } else {
        fail(line, "unknown key '" + key + "' in [grid]");
      }
    } else if (section == "evolution") {
      if (key == "gamma") {
        const double g = parse_double(value, line, key);
        if (!(g > 0.0 && g < 3.0))
          fail(line, "key 'gamma': must lie in (0, 3)");
        cfg.evolution.gamma = g;
      } else if (key == "lambda") {
        cfg.evolution.lambda = parse_double(value, line, key);
      } else if (key == "dt") {
        const double dt = parse_double(value, line, key);
        if (!(dt > 0.0 && dt <= 0.1))
          fail(line, "key 'dt': must lie in (0, 0.1]");
        cfg.evolution.dt = dt;
      } else if (key == "t_end") {
        const double te = parse_double(value, line, key);
        if (!(te > 0.0)) fail(line, "key 't_end': must be positive");
        cfg.evolution.t_end = te;
      } else if (key == "sample_every") {
        const long long se = parse_int(value, line, key);
        if (se < 1) fail(line, "key 'sample_every': must be >= 1");
        cfg.evolution.sample_every = static_cast<int>(se);
      } else if (key == "blowup_factor") {
        const double bf = parse_double(value, line, key);
        if (!(bf > 1.0)) fail(line, "key 'blowup_factor': must exceed 1");
        cfg.evolution.blowup_factor = bf;
      } else if (key == "dealias") {
        cfg.evolution.dealias = parse_bool(value, line, key);
      } else {
        fail(line, "unknown key '" + key + "' in [evolution]");
      }
    } else if (section == "initial") {
      if (key == "kind") {
        if (value != "gaussian" && value != "file")
          fail(line, "key 'kind': expected gaussian or file");
        cfg.initial.kind = value;
      } else if (key == "amplitude") {
        const double a = parse_double(value, line, key);
        if (!(a > 0.0)) fail(line, "key 'amplitude': must be positive");
        cfg.initial.amplitude = a;
      } else if (key == "width") {
        const double w = parse_double(value, line, key);
        if (!(w > 0.0)) fail(line, "key 'width': must be positive");
        cfg.initial.width = w;
      } else if (key == "path") {
        cfg.initial.path = value;
      } else {
        fail(line, "unknown key '" + key + "' in [initial]");
      }
    } else if (section == "scattering") {
      if (key == "enabled") {
        cfg.scattering.enabled = parse_bool(value, line, key);
      } else if (key == "alpha") {
        const double a = parse_double(value, line, key);
        if (!(a > 0.0)) fail(line, "key 'alpha': must be positive");
        cfg.scattering.alpha = a;
      } else if (key == "weight_w") {
        const double w = parse_double(value, line, key);
        if (!(w >= 0.0)) fail(line, "key 'weight_w': must be >= 0");
        cfg.scattering.weight_w = w;
      } else if (key == "snapshot_times") {
        cfg.scattering.snapshot_times =
            parse_list<double>(value, line, key, parse_double);
        for (std::size_t i = 0; i + 1 < cfg.scattering.snapshot_times.size();
             ++i)
          if (!(cfg.scattering.snapshot_times[i] <
                cfg.scattering.snapshot_times[i + 1]))
            fail(line, "key 'snapshot_times': must strictly increase");
        if (!(cfg.scattering.snapshot_times.front() > 0.0))
          fail(line, "key 'snapshot_times': must be positive");
      } else if (key == "probe_xi") {
        const double p = parse_double(value, line, key);
        if (!(p > 0.0)) fail(line, "key 'probe_xi': must be positive");
        cfg.scattering.probe_xi = p;
      } else {
        fail(line, "unknown key '" + key + "' in [scattering]");
      }
    } else if (section == "lindecay") {
      if (key == "mode") {
        if (value != "decay" && value != "kernel")
          fail(line, "key 'mode': expected decay or kernel");
        cfg.lindecay.mode = value;
      } else if (key == "t_lo") {
        cfg.lindecay.t_lo = parse_double(value, line, key);
      } else if (key == "t_hi") {
        cfg.lindecay.t_hi = parse_double(value, line, key);
      } else if (key == "points") {
        const long long p = parse_int(value, line, key);
        if (p < 5 || p > 100000) fail(line, "key 'points': need 5..100000");
        cfg.lindecay.points = static_cast<int>(p);
      } else if (key == "ls") {
        cfg.lindecay.ls = parse_list<int>(
            value, line, key, [](const std::string& v, int ln,
                                 const std::string& k) {
              const long long x = parse_int(v, ln, k);
              if (x < -60 || x > 40) fail(ln, "key 'ls': entry out of range");
              return static_cast<int>(x);
            });
      } else if (key == "xs") {
        cfg.lindecay.xs = parse_list<double>(
            value, line, key,
            [](const std::string& v, int ln, const std::string& k) {
              const double x = parse_double(v, ln, k);
              if (!(x > 0.0)) fail(ln, "key 'xs': entries must be positive");
              return x;
            });
      } else {
        fail(line, "unknown key '" + key + "' in [lindecay]");
      }
    } else if (section == "diagnostics") {
      if (key == "sobolev_order") {
        const long long o = parse_int(value, line, key);
        if (o < 0 || o > 60) fail(line, "key 'sobolev_order': need 0..60");
        cfg.diagnostics.sobolev_order = static_cast<int>(o);
      } else if (key == "weight_w") {
        const double w = parse_double(value, line, key);
        if (!(w >= 0.0)) fail(line, "key 'weight_w': must be >= 0");
        cfg.diagnostics.weight_w = w;
      } else {
        fail(line, "unknown key '" + key + "' in [diagnostics]");
      }
    } else if (section == "output") {
      if (key == "dir") {
        cfg.outputs.dir = value;
      } else if (key == "csv") {
        cfg.outputs.csv = parse_bool(value, line, key);
      } else if (key == "snapshots") {
        cfg.outputs.snapshots = parse_bool(value, line, key);
      } else {
        fail(line, "unknown key '" + key + "' in [output]");
      }
    } else if (section == "run") {
      if (key == "seed") {
        cfg.seed = static_cast<long>(parse_int(value, line, key));
      } else {
        fail(line, "unknown key '" + key + "' in [run]");
      }
    }
  }

  if (cfg.has_grid) {
    try {
      cfg.grid.validate();
    } catch (const contract_error& e) {
      throw config_error(std::string("config [grid]: ") + e.what());
    }
  }
  if (!(cfg.lindecay.t_lo < cfg.lindecay.t_hi))
    throw config_error("config [lindecay]: need t_lo < t_hi");
  if (!(cfg.lindecay.t_lo >= 0.0))
    throw config_error("config [lindecay]: need t_lo >= 0");
  if (cfg.initial.kind == "file" && cfg.initial.path.empty())
    throw config_error("config [initial]: kind = file needs a path");
  return cfg;
}

namespace {

struct Preset {
  const char* name;
  const char* text;
};

constexpr Preset presets[] = {
    {"conservation", R"(# Mass and energy drift of the full nonlinear flow.
[grid]
kind = radial
n = 4096
extent = 200

[evolution]
gamma = 1
lambda = -1
dt = 0.01
t_end = 50
sample_every = 500

[initial]
kind = gaussian
amplitude = 0.1
width = 1
)"},
    {"decay", R"(# Free-flow sup-norm decay against the t^{-3/2} law.
[grid]
kind = radial
n = 1024
extent = 120

[initial]
kind = gaussian
amplitude = 0.5
width = 1.15

[lindecay]
mode = decay
t_lo = 5
t_hi = 80
points = 25
)"},
    {"modified-scattering-g1", R"(# Long-range regime: corrected profile converges, naive profile drifts.
[grid]
kind = radial
n = 4096
extent = 200

[evolution]
gamma = 1
lambda = -1
dt = 0.01
t_end = 160
sample_every = 10

[initial]
kind = gaussian
amplitude = 0.1
width = 1

[scattering]
enabled = true
alpha = 0.003333333333333333
weight_w = 4
snapshot_times = 10, 20, 40, 80, 160
probe_xi = 0.6
)"},
    {"linear-scattering-g2", R"(# Short-range regime: the plain profile is already Cauchy in t.
[grid]
kind = radial
n = 4096
extent = 200

[evolution]
gamma = 2
lambda = -1
dt = 0.01
t_end = 160
sample_every = 10

[initial]
kind = gaussian
amplitude = 0.1
width = 1

[scattering]
enabled = true
alpha = 0.003333333333333333
weight_w = 4
snapshot_times = 10, 20, 40, 80, 160
probe_xi = 0.6
)"},
    {"kernel-asymptotics", R"(# Truncated Riesz kernel against its 2 pi^2 / |x| limit.
[lindecay]
mode = kernel
ls = 2, 3, 4, 5, 6, 7, 8
xs = 1, 4, 16
)"},
};

}  // namespace

std::string preset_text(const std::string& name) {
  for (const auto& p : presets)
    if (name == p.name) return p.text;
  std::string known;
  for (const auto& p : presets) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  throw config_error("unknown preset '" + name + "' (have: " + known + ")");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : presets) out.emplace_back(p.name);
  return out;
}

SpectralField build_initial_data(const RunConfig& cfg) {
  if (cfg.initial.kind == "file") {
    SpectralField f = read_bsfs(cfg.initial.path);
    if (cfg.has_grid && !(f.grid == cfg.grid))
      throw config_error(
          "initial: BSFS grid differs from the [grid] section");
    return f;
  }
  if (!cfg.has_grid)
    throw config_error("initial: gaussian data needs a [grid] section");
  const GridSpec& g = cfg.grid;
  SpectralField f = SpectralField::zeros(g, Space::Physical);
  const double w2 = 2.0 * cfg.initial.width * cfg.initial.width;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.kind == GridKind::Radial3D ? g.radial_r(i)
                                                  : g.min_image_radius(i);
    f.data[i] = cfg.initial.amplitude * std::exp(-r * r / w2);
  }
  if (g.kind == GridKind::Radial3D) f.data.back() = 0.0;  // boundary slot
  return f;
}

}  // namespace srh
