#include "srh/runner.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "srh/errors.hpp"
#include "srh/kernels.hpp"
#include "srh/oracle.hpp"
#include "srh/snapshot.hpp"
#include "srh/transforms.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srh {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

constexpr const char* kCodeVersion = "srh 1.0.0";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Creates the output directory and takes an exclusive lockfile in it so two
// runs never interleave writes; the lock is released on scope exit.
class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) {
    if (dir.empty())
      throw config_error("output dir is empty; set [output] dir or pass --out");
    dir_ = fs::path(dir);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
      throw config_error("cannot create output dir '" + dir +
                         "': " + ec.message());
    lock_ = dir_ / ".srh.lock";
    fd_ = ::open(lock_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0)
      throw config_error("output dir '" + dir +
                         "' is locked by another run (remove " +
                         lock_.string() + " if stale)");
  }
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;
  ~OutputDir() {
    if (fd_ >= 0) {
      ::close(fd_);
      ::unlink(lock_.c_str());
    }
  }
  fs::path file(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
  fs::path lock_;
  int fd_ = -1;
};

void write_text_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("cannot open '" + p.string() + "' for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out) throw config_error("short write to '" + p.string() + "'");
}

std::string csv_table(const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string body = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) body += ',';
      body += g17(row[i]);
    }
    body += '\n';
  }
  return body;
}

// Canonical rendering of the parsed configuration; the manifest's config
// hash digests this, so equivalent configs hash alike regardless of input
// formatting. outputs.dir is deliberately excluded: relocating a run must
// not change its identity.
std::string canonical_config_text(const RunConfig& cfg) {
  std::ostringstream s;
  s << "grid has=" << cfg.has_grid
    << " kind=" << (cfg.grid.kind == GridKind::Radial3D ? "radial" : "periodic")
    << " n=" << cfg.grid.n << " extent=" << g17(cfg.grid.extent) << "\n";
  const auto& e = cfg.evolution;
  s << "evolution gamma=" << g17(e.gamma) << " lambda=" << g17(e.lambda)
    << " dt=" << g17(e.dt) << " t_end=" << g17(e.t_end)
    << " sample_every=" << e.sample_every
    << " blowup_factor=" << g17(e.blowup_factor) << " dealias=" << e.dealias
    << "\n";
  s << "initial kind=" << cfg.initial.kind
    << " amplitude=" << g17(cfg.initial.amplitude)
    << " width=" << g17(cfg.initial.width) << " path=" << cfg.initial.path
    << "\n";
  s << "scattering enabled=" << cfg.scattering.enabled
    << " alpha=" << g17(cfg.scattering.alpha)
    << " weight_w=" << g17(cfg.scattering.weight_w)
    << " probe_xi=" << g17(cfg.scattering.probe_xi) << " snapshot_times=";
  for (std::size_t i = 0; i < cfg.scattering.snapshot_times.size(); ++i)
    s << (i ? "," : "") << g17(cfg.scattering.snapshot_times[i]);
  s << "\n";
  s << "lindecay mode=" << cfg.lindecay.mode
    << " t_lo=" << g17(cfg.lindecay.t_lo) << " t_hi=" << g17(cfg.lindecay.t_hi)
    << " points=" << cfg.lindecay.points << " ls=";
  for (std::size_t i = 0; i < cfg.lindecay.ls.size(); ++i)
    s << (i ? "," : "") << cfg.lindecay.ls[i];
  s << " xs=";
  for (std::size_t i = 0; i < cfg.lindecay.xs.size(); ++i)
    s << (i ? "," : "") << g17(cfg.lindecay.xs[i]);
  s << "\n";
  s << "diagnostics sobolev_order=" << cfg.diagnostics.sobolev_order
    << " weight_w=" << g17(cfg.diagnostics.weight_w) << "\n";
  s << "outputs csv=" << cfg.outputs.csv << " snapshots=" << cfg.outputs.snapshots
    << "\n";
  s << "seed " << cfg.seed << "\n";
  return s.str();
}

std::uint64_t hash_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw config_error("cannot reopen '" + p.string() + "' for hashing");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fnv1a64(bytes);
}

std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const OutputDir& out, const RunConfig& cfg,
                    const std::vector<std::string>& files,
                    double wall_seconds) {
  std::ostringstream m;
  m << "srh-manifest v1\n";
  m << "code_version " << kCodeVersion << "\n";
  m << "config_hash fnv1a64:" << hex64(fnv1a64(canonical_config_text(cfg)))
    << "\n";
  m << "phi smoothstep plateau=1.25 support=1.6 alpha="
    << g17(cfg.scattering.alpha) << "\n";
  m << "seed " << cfg.seed << "\n";
#ifdef _OPENMP
  m << "omp_threads " << omp_get_max_threads() << "\n";
#else
  m << "omp_threads 1\n";
#endif
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", wall_seconds);
  m << "wall_seconds " << wall << "\n";
  for (const auto& name : files) {
    const fs::path p = out.file(name);
    m << "file " << name << " fnv1a64:" << hex64(hash_file(p)) << " bytes="
      << fs::file_size(p) << "\n";
  }
  write_text_file(out.file("manifest.txt"), m.str());
}

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void require_grid(const RunConfig& cfg) {
  if (!cfg.has_grid) throw config_error("this run needs a [grid] section");
}

// Fourier-space slot closest in |xi| to the requested probe radius; the
// pinned radial boundary slot never qualifies.
std::size_t probe_index(const GridSpec& g, double probe_xi) {
  const std::size_t limit =
      g.kind == GridKind::Radial3D ? g.size() - 1 : g.size();
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < limit; ++i) {
    const double gap = std::abs(g.mode_radius(i) - probe_xi);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

std::vector<double> geometric_times(double t_lo, double t_hi, int points) {
  std::vector<double> t(points);
  for (int i = 0; i < points; ++i)
    t[i] = t_lo * std::pow(t_hi / t_lo, double(i) / double(points - 1));
  return t;
}

}  // namespace

SimulateResult run_simulate(const RunConfig& cfg) {
  WallClock clock;
  require_grid(cfg);
  OutputDir out(cfg.outputs.dir);
  const SpectralField u0 = build_initial_data(cfg);

  const std::vector<TrajectorySample> samples = evolve(u0, cfg.evolution);
  SimulateResult res;
  res.records.reserve(samples.size());
  for (const auto& s : samples)
    res.records.push_back(make_record(s, cfg.evolution,
                                      cfg.diagnostics.sobolev_order,
                                      cfg.diagnostics.weight_w));

  if (cfg.outputs.csv) {
    std::vector<std::vector<double>> rows;
    rows.reserve(res.records.size());
    for (const auto& r : res.records)
      rows.push_back({r.t, r.mass, r.energy, r.linf_u, r.sobolev_hN,
                      r.weight1_h2, r.weight2_h2, r.fourier_sup,
                      r.fourier_sup_w4, r.xnorm});
    write_text_file(
        out.file("diagnostics.csv"),
        csv_table("t,mass,energy,linf_u,sobolev_hN,weight1_h2,weight2_h2,"
                  "fourier_sup,fourier_sup_w4,xnorm",
                  rows));
    res.files.push_back("diagnostics.csv");
  }
  if (cfg.outputs.snapshots) {
    write_bsfs(out.file("profile_final.bsfs").string(),
               samples.back().profile);
    res.files.push_back("profile_final.bsfs");
  }
  write_manifest(out, cfg, res.files, clock.seconds());
  return res;
}

ScatteringResult run_scattering(const RunConfig& cfg) {
  WallClock clock;
  require_grid(cfg);
  if (!cfg.scattering.enabled)
    throw config_error("scattering run needs [scattering] enabled = true");
  const auto& T = cfg.scattering.snapshot_times;
  if (T.size() < 3)
    throw config_error("scattering needs >= 3 snapshot_times for the monitor");
  const double stride = cfg.evolution.sample_every * cfg.evolution.dt;
  for (double t : T) {
    if (t > cfg.evolution.t_end + 1e-9)
      throw config_error("snapshot time " + g17(t) + " exceeds t_end");
    if (std::abs(t / stride - std::round(t / stride)) > 1e-6)
      throw config_error("snapshot time " + g17(t) +
                         " does not land on a sample instant (stride " +
                         g17(stride) + ")");
  }
  OutputDir out(cfg.outputs.dir);
  const SpectralField u0 = build_initial_data(cfg);

  ScatteringResult res;
  res.corrected = cfg.evolution.gamma == 1.0;
  const std::size_t probe = probe_index(cfg.grid, cfg.scattering.probe_xi);
  res.probe_rho = cfg.grid.mode_radius(probe);
  const double lambda = cfg.evolution.lambda;
  const double alpha = cfg.scattering.alpha;

  const std::vector<TrajectorySample> samples = evolve(u0, cfg.evolution);

  ScatteringState st = ScatteringState::create(cfg.grid, alpha);
  std::vector<std::pair<double, SpectralField>> monitored, raw;
  std::vector<double> b_probe;
  std::size_t next = 0;
  for (const auto& s : samples) {
    if (res.corrected) accumulate_B(st, s);
    if (next < T.size() && std::abs(s.t - T[next]) <= 1e-6 * (1.0 + T[next])) {
      if (res.corrected) {
        // modified_profile is the lambda = -1 rotation e^{-iB}; the drift of
        // arg fhat is -lambda B, so other couplings rotate by e^{i lambda B}.
        if (lambda == -1.0) {
          monitored.emplace_back(s.t, modified_profile(s.profile, st));
        } else {
          SpectralField g = s.profile;
          kernels::phase_rotate(g.data, st.B, lambda);
          monitored.emplace_back(s.t, std::move(g));
        }
        b_probe.push_back(st.B[probe]);
      } else {
        monitored.emplace_back(s.t, inverse_transform(s.profile));
      }
      raw.emplace_back(s.t, s.profile);
      ++next;
    }
  }
  if (next != T.size())
    throw invariant_error("evolution did not visit every snapshot time");

  res.monitor = res.corrected
                    ? scattering_monitor(monitored, cfg.scattering.weight_w)
                    : linear_scattering_monitor(monitored);
  res.drift = naive_profile_drift(raw, probe);

  if (res.corrected) {
    const auto& [t_last, f_last] = raw.back();
    const double phi = phi_s(res.probe_rho, t_last, alpha);
    const double d_last = correction_density(f_last, probe, t_last, alpha);
    res.predicted_slope = phi > 0.0 ? (t_last + 1.0) * d_last / phi : 0.0;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
      const auto& [t1, f1] = raw[i];
      const auto& [t2, f2] = raw[i + 1];
      const double phi2 = phi_s(res.probe_rho, t2, alpha);
      const double rate =
          phi2 > 0.0
              ? (t2 + 1.0) * correction_density(f2, probe, t2, alpha) / phi2
              : 0.0;
      const double denom = std::log(t2 / t1) * rate;
      res.b_consistency.push_back(
          {t1, t2, denom > 0.0 ? (b_probe[i + 1] - b_probe[i]) / denom : 0.0});
    }
  }

  if (cfg.outputs.csv) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : res.monitor.rows) rows.push_back({r.t1, r.t2, r.value});
    const std::string name =
        res.corrected ? "supdiff.csv" : "weighted_l2_diff.csv";
    const std::string col = res.corrected ? "supdiff" : "weighted_l2_diff";
    write_text_file(out.file(name), csv_table("t1,t2," + col, rows));
    res.files.push_back(name);

    rows.clear();
    for (std::size_t i = 0; i < raw.size(); ++i)
      rows.push_back({raw[i].first, res.drift.phases[i]});
    write_text_file(out.file("naive_drift.csv"), csv_table("t,theta", rows));
    res.files.push_back("naive_drift.csv");

    if (res.corrected) {
      rows.clear();
      for (const auto& r : res.b_consistency)
        rows.push_back({r.t1, r.t2, r.value});
      write_text_file(out.file("b_consistency.csv"),
                      csv_table("t1,t2,ratio", rows));
      res.files.push_back("b_consistency.csv");
    }
  }
  if (cfg.outputs.snapshots && res.corrected) {
    write_bsfs_real(out.file("b_final.bsfs").string(), st.B, cfg.grid,
                    Space::Fourier);
    res.files.push_back("b_final.bsfs");
  }
  write_manifest(out, cfg, res.files, clock.seconds());
  return res;
}

LindecayResult run_lindecay(const RunConfig& cfg) {
  WallClock clock;
  OutputDir out(cfg.outputs.dir);
  LindecayResult res;

  if (cfg.lindecay.mode == "kernel") {
    for (int l : cfg.lindecay.ls) {
      for (double radius : cfg.lindecay.xs) {
        KernelRow row;
        row.radius = radius;
        row.l = l;
        row.value = truncated_riesz_kernel(radius, l);
        const double limit = 2.0 * M_PI * M_PI / radius;
        row.normalized_error =
            std::abs(row.value - limit) * radius * radius * std::ldexp(1.0, l);
        res.kernel_rows.push_back(row);
      }
    }
    if (cfg.outputs.csv) {
      std::vector<std::vector<double>> rows;
      for (const auto& r : res.kernel_rows)
        rows.push_back(
            {r.radius, double(r.l), r.value, r.normalized_error});
      write_text_file(
          out.file("kernel.csv"),
          csv_table("radius,l,kernel_value,error_bound_ratio", rows));
      res.files.push_back("kernel.csv");
    }
  } else {
    require_grid(cfg);
    const SpectralField u0 = build_initial_data(cfg);
    const std::vector<double> times =
        geometric_times(cfg.lindecay.t_lo, cfg.lindecay.t_hi,
                        cfg.lindecay.points);
    res.decay_rows = decay_bound_check(u0, times);
    std::vector<std::pair<double, double>> series;
    for (const auto& r : res.decay_rows) series.emplace_back(r.t, r.sup);
    res.decay_fit =
        decay_rate_fit(series, cfg.lindecay.t_lo, cfg.lindecay.t_hi);
    if (cfg.outputs.csv) {
      std::vector<std::vector<double>> rows;
      for (const auto& r : res.decay_rows)
        rows.push_back({r.t, r.sup, r.c_of_t, r.second_term});
      write_text_file(out.file("decay.csv"),
                      csv_table("t,sup,c_of_t,second_term", rows));
      res.files.push_back("decay.csv");
    }
  }
  write_manifest(out, cfg, res.files, clock.seconds());
  return res;
}

bool run_oracle_suite(long seed, std::ostream& log) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed) ^
                      0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  bool all_ok = true;
  const auto report = [&](const char* name, double err, double tol) {
    const bool ok = std::isfinite(err) && err <= tol;
    all_ok = all_ok && ok;
    char line[128];
    std::snprintf(line, sizeof line, "%-4s %-28s max_err %.3e  tol %.0e\n",
                  ok ? "ok" : "FAIL", name, err, tol);
    log << line;
  };

  {  // closed-form angular average
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const std::array<double, 3> a{unit(rng), unit(rng), unit(rng)};
      const double b = 0.05 + std::abs(unit(rng));
      const double A = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
      worst = std::max(worst, std::abs(oracle::spherical_average(a, b) -
                                       1.0 / std::max(A, b)));
    }
    report("spherical-average", worst, 1e-8);
  }

  GridSpec g{GridKind::Periodic3D, 8, 7.0, false};
  SpectralField u = SpectralField::zeros(g, Space::Physical);
  for (auto& z : u.data) z = {0.2 * unit(rng), 0.2 * unit(rng)};

  {  // O(N^2) convolution against the spectral fast path
    std::vector<double> density(g.size());
    kernels::modulus_squared(u.data, density);
    double worst = 0.0;
    for (double gamma : {1.0, 1.5, 2.0}) {
      const std::vector<double> pot =
          oracle::direct_convolution(density, g, gamma);
      const SpectralField fast = hartree_nonlinearity(u, gamma, -1.0);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < u.data.size(); ++i) {
        num = std::max(num, std::abs(-pot[i] * u.data[i] - fast.data[i]));
        den = std::max(den, std::abs(fast.data[i]));
      }
      worst = std::max(worst, num / den);
    }
    report("hartree-convolution", worst, 1e-10);
  }

  SpectralField fhat = forward_transform(u);
  {  // double lattice sum against the production Duhamel right side
    EvolutionParams p;
    p.gamma = 1.0;
    p.lambda = -1.0;
    const SpectralField rhs = profile_rhs(fhat, 0.7, p);
    const double scale = kernels::sup_abs(rhs.data);
    double worst = 0.0;
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int k = 0; k < 8; ++k) {
      const std::size_t idx = pick(rng);
      const std::complex<double> want =
          oracle::direct_duhamel(fhat, 0.7, idx, p.gamma);
      worst = std::max(worst, std::abs(want - rhs.data[idx]) / scale);
    }
    report("duhamel-lattice-sum", worst, 1e-10);
  }

  {  // all-pass cutoff collapses the restricted sum onto the full one
    double worst = 0.0;
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int k = 0; k < 4; ++k) {
      const std::size_t idx = pick(rng);
      const auto lt = oracle::leading_term_check(fhat, 0.8, idx, 1e9);
      const auto full = oracle::direct_duhamel(fhat, 0.8, idx);
      const double den = std::max(std::abs(full), 1e-300);
      worst = std::max(worst, std::abs(lt.restricted - full) / den);
    }
    report("leading-term-allpass", worst, 1e-12);
  }

  {  // Parseval across the transform pair on both grid kinds
    double worst = 0.0;
    for (GridSpec spec : {GridSpec{GridKind::Radial3D, 64, 15.0, false}, g}) {
      SpectralField w = SpectralField::zeros(spec, Space::Physical);
      for (std::size_t i = 0; i + 1 < w.data.size(); ++i)
        w.data[i] = {unit(rng), unit(rng)};
      if (spec.kind == GridKind::Periodic3D) w.data.back() = {unit(rng), 0.0};
      const double m_phys = mass(w);
      const SpectralField what = forward_transform(w);
      worst = std::max(worst, std::abs(mass(what) - m_phys) / m_phys);
      const SpectralField back = inverse_transform(what);
      double diff = 0.0;
      for (std::size_t i = 0; i < w.data.size(); ++i)
        diff = std::max(diff, std::abs(back.data[i] - w.data[i]));
      worst = std::max(worst, diff);
    }
    report("parseval-roundtrip", worst, 1e-12);
  }

  {  // stationary point of the phase solves grad Lambda(xi) = -x/t
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double t = 0.5 + 40.0 * std::abs(unit(rng));
      std::array<double, 3> x{unit(rng), unit(rng), unit(rng)};
      const double norm =
          std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) + 1e-12;
      const double m = 0.93 * std::abs(unit(rng));
      for (auto& c : x) c *= m * t / norm;
      const auto xi = stationary_point(x, t);
      const double len =
          std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
      for (int c = 0; c < 3; ++c)
        worst = std::max(worst, std::abs(xi[c] / len + x[c] / t));
    }
    report("stationary-point", worst, 1e-12);
  }

  return all_ok;
}

namespace {

void usage(std::ostream& os) {
  os << "usage: srh <simulate|scattering|lindecay|oracle> [options]\n"
        "  --preset NAME   shipped configuration (";
  const auto names = preset_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    os << (i ? ", " : "") << names[i];
  os << ")\n"
        "  --config PATH   configuration file (mutually exclusive with "
        "--preset)\n"
        "  --out DIR       output directory (overrides [output] dir)\n"
        "  --seed N        recorded in the manifest; drives the oracle RNG\n"
        "exit codes: 0 ok, 2 config error, 3 invariant violation, 4 diverged\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    usage(std::cerr);
    return 2;
  }
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    usage(std::cout);
    return 0;
  }
  const std::string cmd = args[0];
  std::string config_path, preset, out_dir;
  std::optional<long> seed;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto value = [&](const char* flag) -> std::string {
      if (i + 1 >= args.size())
        throw config_error(std::string(flag) + " needs a value");
      return args[++i];
    };
    if (args[i] == "--config") {
      config_path = value("--config");
    } else if (args[i] == "--preset") {
      preset = value("--preset");
    } else if (args[i] == "--out") {
      out_dir = value("--out");
    } else if (args[i] == "--seed") {
      const std::string v = value("--seed");
      try {
        std::size_t used = 0;
        seed = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw config_error("--seed needs an integer, got '" + v + "'");
      }
    } else if (args[i] == "--help" || args[i] == "-h") {
      usage(std::cout);
      return 0;
    } else {
      throw config_error("unknown argument '" + args[i] + "'");
    }
  }

  if (cmd == "oracle") {
    if (!config_path.empty() || !preset.empty() || !out_dir.empty())
      throw config_error("oracle takes only --seed");
    return run_oracle_suite(seed.value_or(0), std::cout) ? 0 : 3;
  }
  if (cmd != "simulate" && cmd != "scattering" && cmd != "lindecay")
    throw config_error("unknown subcommand '" + cmd + "'");

  if (!config_path.empty() && !preset.empty())
    throw config_error("--config and --preset are mutually exclusive");
  if (config_path.empty() && preset.empty())
    throw config_error("pass --config PATH or --preset NAME");
  RunConfig cfg =
      parse_config(preset.empty() ? slurp(config_path) : preset_text(preset));
  if (!out_dir.empty()) cfg.outputs.dir = out_dir;
  if (seed) cfg.seed = *seed;

  char line[256];
  if (cmd == "simulate") {
    const SimulateResult r = run_simulate(cfg);
    double m_lo = r.records.front().mass, m_hi = m_lo;
    double e_lo = r.records.front().energy, e_hi = e_lo;
    for (const auto& rec : r.records) {
      m_lo = std::min(m_lo, rec.mass);
      m_hi = std::max(m_hi, rec.mass);
      e_lo = std::min(e_lo, rec.energy);
      e_hi = std::max(e_hi, rec.energy);
    }
    std::snprintf(line, sizeof line,
                  "simulate: %zu samples, mass span %.3e, energy span %.3e\n",
                  r.records.size(), (m_hi - m_lo) / m_hi,
                  (e_hi - e_lo) / std::max(std::abs(e_lo), 1e-300));
    std::cout << line;
  } else if (cmd == "scattering") {
    const ScatteringResult r = run_scattering(cfg);
    std::snprintf(line, sizeof line,
                  "scattering (%s): monitor slope %.4f (r2 %.4f), drift slope "
                  "%.4e, predicted %.4e\n",
                  r.corrected ? "corrected" : "linear", r.monitor.fit.slope,
                  r.monitor.fit.r2, r.drift.slope, r.predicted_slope);
    std::cout << line;
  } else {
    const LindecayResult r = run_lindecay(cfg);
    if (!r.kernel_rows.empty()) {
      double worst = 0.0;
      for (const auto& row : r.kernel_rows)
        worst = std::max(worst, row.normalized_error);
      std::snprintf(line, sizeof line,
                    "lindecay kernel: %zu rows, max normalized error %.4f\n",
                    r.kernel_rows.size(), worst);
    } else {
      std::snprintf(line, sizeof line,
                    "lindecay decay: %zu rows, fitted rate %.4f (r2 %.4f)\n",
                    r.decay_rows.size(), r.decay_fit.slope, r.decay_fit.r2);
    }
    std::cout << line;
  }
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const diverged_error& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return 4;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const contract_error& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace srh
