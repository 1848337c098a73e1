#include "biortho_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <thread>
#include <sstream>

#include "biortho/biortho.hpp"

namespace biortho::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Command> kCommands = {
    {"verify", Command::verify},           {"kg-density", Command::kg_density},
    {"photon-density", Command::photon_density}, {"emission", Command::emission},
    {"boost-check", Command::boost_check}, {"transverse-delta", Command::transverse_delta},
};

const std::map<std::string, std::string> kDescriptions = {
    {"verify", "run invariant suites and write a JSON report"},
    {"kg-density", "Klein-Gordon probability density of a seeded random state"},
    {"photon-density", "photon probability density or field of a seeded random state"},
    {"emission", "spontaneous emission profiles (radial, number, map)"},
    {"boost-check", "scalar product before and after a Lorentz boost"},
    {"transverse-delta", "transverse projector residual over random momenta"},
};

FrequencySign eps_of(int e) { return e >= 0 ? FrequencySign::positive : FrequencySign::negative; }
Helicity hel_of(int h) { return h >= 0 ? Helicity::plus : Helicity::minus; }

CVec3 dipole_of(const RunConfig& c) {
  return {Complex(c.dipole[0], c.dipole[1]), Complex(c.dipole[2], c.dipole[3]), Complex(c.dipole[4], c.dipole[5])};
}

template <class T>
void take(const json& j, const char* key, T& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

void validate(const RunConfig& c) {
  if (c.grid < 4 || c.grid % 2) throw ConfigError("grid must be even and at least 4");
  if (!(c.dk > 0.0)) throw ConfigError("dk must be positive");
  if (!(c.mass >= 0.0)) throw ConfigError("mass must be nonnegative");
  if (!(c.t >= 0.0)) throw ConfigError("t must be nonnegative");
  if (c.states < 1) throw ConfigError("states must be positive");
  if (c.dipole.size() != 6) throw ConfigError("dipole needs six numbers (re, im per axis)");
  if (c.axis.size() != 3) throw ConfigError("axis needs three numbers");
  if (!(c.omega0 > 0.0) || !(c.window > 0.0) || c.window >= c.omega0)
    throw ConfigError("emission window must satisfy 0 < W < omega0");
  if (!(c.dr > 0.0)) throw ConfigError("dr must be positive");
  if (c.export_kind != "density" && c.export_kind != "field") throw ConfigError("export must be density or field");
  if (c.profile != "radial" && c.profile != "number" && c.profile != "map")
    throw ConfigError("profile must be radial, number or map");
  for (const auto& s : c.suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) throw ConfigError("unknown suite: " + s);
  }
  if (c.command == Command::verify && c.suites.empty() && !c.all)
    throw ConfigError("verify needs --suite NAME or --all");
}

void write_row(std::ostream& os, std::initializer_list<double> v) {
  bool first = true;
  for (double x : v) {
    os << (first ? "" : ",") << format_double(x);
    first = false;
  }
  os << '\n';
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// Every grid point, or the x axis through the origin when slicing.
std::vector<std::size_t> points_of(const GridSpec& g, bool slice) {
  std::vector<std::size_t> idx;
  if (!slice) {
    idx.resize(g.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
  }
  for (int i = -g.n() / 2; i < g.n() / 2; ++i) idx.push_back(g.flat_signed(i, 0, 0));
  return idx;
}

KGState random_kg(const RunConfig& c, const MomentumLayout& layout, const char* label) {
  Rng rng(derive_seed(c.seed, label));
  Dispersion d(c.mass);
  KGState s = KGState::zeros(layout, d);
  for (auto e : kFrequencySigns) s.component(e).samples = wavepacket_samples(layout, random_packets(rng, {}));
  return KGState(s.c_plus(), s.c_minus(), d);
}

PhotonState random_photon(const RunConfig& c, const MomentumLayout& layout, const char* label) {
  Rng rng(derive_seed(c.seed, label));
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.emplace_back(layout, wavepacket_samples(layout, random_packets(rng, {})), e, h);
  return PhotonState(std::move(f));
}

int kg_density(const RunConfig& c, std::ostream& out) {
  GridSpec g(c.grid, c.dk);
  MomentumLayout layout(g);
  auto s = random_kg(c, layout, "kg-density");
  auto p = probability_density(s, c.t);
  if (c.format == Format::json) {
    double plus = 0, minus = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      plus += g.dx3() * p.p_plus[i];
      minus += g.dx3() * p.p_minus[i];
    }
    out << json{{"schema_version", 1}, {"command", "kg-density"}, {"t", c.t}, {"grid", c.grid}, {"dk", c.dk},
                {"mass", c.mass}, {"seed", c.seed}, {"norm", {{"plus", plus}, {"minus", minus}, {"total", plus + minus}}}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << (c.slice ? "x,p_plus,p_minus\n" : "x,y,z,p_plus,p_minus\n");
  for (std::size_t i : points_of(g, c.slice)) {
    const Vec3 x = g.x_at(i);
    if (c.slice)
      write_row(out, {x[0], p.p_plus[i], p.p_minus[i]});
    else
      write_row(out, {x[0], x[1], x[2], p.p_plus[i], p.p_minus[i]});
  }
  return kExitOk;
}

int photon_density(const RunConfig& c, std::ostream& out) {
  GridSpec g(c.grid, c.dk);
  MomentumLayout layout(g);
  auto s = random_photon(c, layout, "photon-density");
  if (c.format == Format::json) {
    auto p = photon_probability_density(s, c.t);
    json by = json::object();
    double total = 0.0;
    for (auto e : kFrequencySigns)
      for (auto h : kHelicities) {
        double v = 0.0;
        for (double x : p.at(e, h)) v += g.dx3() * x;
        by[std::string(e == FrequencySign::positive ? "+" : "-") + "," + (h == Helicity::plus ? "+" : "-")] = v;
        total += v;
      }
    out << json{{"schema_version", 1}, {"command", "photon-density"}, {"t", c.t}, {"grid", c.grid}, {"dk", c.dk},
                {"seed", c.seed}, {"norm", total}, {"by_epsilon_lambda", by}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  const auto idx = points_of(g, c.slice);
  if (c.export_kind == "field") {
    auto psi = photon_wavefunction(s, eps_of(c.epsilon), hel_of(c.helicity), c.t);
    out << "x,y,z,re_psi_x,im_psi_x,re_psi_y,im_psi_y,re_psi_z,im_psi_z\n";
    for (std::size_t i : idx) {
      const Vec3 x = g.x_at(i);
      write_row(out, {x[0], x[1], x[2], psi[0][i].real(), psi[0][i].imag(), psi[1][i].real(), psi[1][i].imag(),
                      psi[2][i].real(), psi[2][i].imag()});
    }
    return kExitOk;
  }
  auto p = photon_probability_density(s, c.t);
  out << "x,y,z,p_plus_plus,p_plus_minus,p_minus_plus,p_minus_minus\n";
  for (std::size_t i : idx) {
    const Vec3 x = g.x_at(i);
    write_row(out, {x[0], x[1], x[2], p.p[0][i], p.p[1][i], p.p[2][i], p.p[3][i]});
  }
  return kExitOk;
}

int emission(const RunConfig& c, std::ostream& out) {
  const double r_max = c.profile == "number" ? 0.0 : 2.0 * c.t;
  const int nr = c.n_radial > 0 ? c.n_radial : EmissionModel::radial_nodes_for(c.window, c.t, r_max);
  auto m = EmissionModel::with_window(c.omega0, dipole_of(c), c.g0, c.window, nr, c.n_theta, c.n_phi);
  if (c.t > 0.0 && c.profile != "number" && !check_resolution(m, c.t, r_max).ok)
    throw QuadratureWindow("emission: radial rule too coarse for radii up to " + format_double(r_max));

  if (c.profile == "number") {
    if (c.format == Format::json) {
      auto r = norm_ratio(m, c.t);
      out << json{{"schema_version", 1}, {"command", "emission"}, {"omega0", c.omega0}, {"t", c.t},
                  {"photon_number", r.photon_number}, {"covariant_norm", r.covariant_norm}, {"ratio", r.ratio}}
                 .dump(2)
          << '\n';
      return kExitOk;
    }
    out << "t,n\n";
    const int steps = 100;
    for (int i = 0; i <= steps; ++i) {
      const double t = c.t * i / steps;
      write_row(out, {t, photon_number(m, t)});
    }
    return kExitOk;
  }
  if (!(c.t > 0.0)) throw ConfigError("emission profiles need t > 0");
  if (c.profile == "radial") {
    std::vector<double> radii;
    for (int i = 0; i * c.dr <= r_max; ++i) radii.push_back(i * c.dr);
    auto d = radial_density(m, c.t, radii);
    if (c.format == Format::json) {
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < radii.size(); ++i) total += 0.5 * (d[i] + d[i + 1]) * (radii[i + 1] - radii[i]);
      out << json{{"schema_version", 1}, {"command", "emission"}, {"omega0", c.omega0}, {"t", c.t},
                  {"photon_number", photon_number(m, c.t)}, {"wavefront_radius", wavefront_radius(radii, d)},
                  {"ball_probability", total}}
                 .dump(2)
          << '\n';
      return kExitOk;
    }
    out << "r,radial_density\n";
    for (std::size_t i = 0; i < radii.size(); ++i) write_row(out, {radii[i], d[i]});
    return kExitOk;
  }
  // map: the x-z plane through the atom
  const int n = 81;
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pts.emplace_back(r_max * (2.0 * i / (n - 1) - 1.0), 0.0, r_max * (2.0 * j / (n - 1) - 1.0));
  auto p = detection_probability(m, c.t, pts);
  if (c.format == Format::json) throw ConfigError("the map profile is CSV only");
  out << "x,y,z,density\n";
  for (std::size_t i = 0; i < pts.size(); ++i) write_row(out, {pts[i][0], pts[i][1], pts[i][2], p[i]});
  return kExitOk;
}

int boost_check(const RunConfig& c, std::ostream& out) {
  Dispersion d(c.mass);
  const Vec3 axis(c.axis[0], c.axis[1], c.axis[2]);
  Rng rng(derive_seed(c.seed, "boost-check"));
  auto state = [&] {
    const Vec3 k0 = 0.5 * rng.normal3(), x0 = 0.5 * rng.normal3();
    const double sigma = rng.uniform(0.4, 0.7);
    const Complex amp = rng.complex_normal();
    return ProfileState{d, gaussian_profile(k0, sigma, x0, amp), gaussian_profile(-k0, sigma, -x0, std::conj(amp)),
                        gaussian_support(k0, sigma), gaussian_support(-k0, sigma)};
  };
  auto a = state();
  auto b = state();
  auto r = invariance_check(Boost(c.rapidity, axis), a, b);
  const Vec3 n = axis.normalized();
  if (c.format == Format::json) {
    out << json{{"schema_version", 1}, {"command", "boost-check"}, {"rapidity", c.rapidity},
                {"axis", {n[0], n[1], n[2]}}, {"original", complex_json(r.original)},
                {"boosted", complex_json(r.boosted)}, {"rel_err", r.rel_err}, {"drift", r.drift},
                {"converged", r.converged}}
               .dump(2)
        << '\n';
  } else {
    out << "rapidity,axis_x,axis_y,axis_z,original_re,original_im,boosted_re,boosted_im,rel_err,drift\n";
    write_row(out, {c.rapidity, n[0], n[1], n[2], r.original.real(), r.original.imag(), r.boosted.real(),
                    r.boosted.imag(), r.rel_err, r.drift});
  }
  return r.converged ? kExitOk : kExitFailed;
}

int transverse_delta(const RunConfig& c, std::ostream& out) {
  Rng rng(derive_seed(c.seed, "transverse-delta"));
  std::vector<Vec3> ks;
  while (int(ks.size()) < c.samples) {
    const Vec3 k = rng.normal3() * rng.uniform(0.01, 10.0);
    if (!on_polar_axis(k)) ks.push_back(k);
  }
  const double residual = transverse_delta_check(ks);
  const double grid_residual = transverse_delta_check(MomentumLayout(GridSpec(c.grid, c.dk)));
  const bool pass = residual < 1e-12 && grid_residual < 1e-12;
  if (c.format == Format::json) {
    out << json{{"schema_version", 1}, {"command", "transverse-delta"}, {"samples", c.samples},
                {"residual", residual}, {"grid_residual", grid_residual}, {"threshold", 1e-12}, {"pass", pass}}
               .dump(2)
        << '\n';
  } else {
    out << "samples,residual,grid_residual\n";
    write_row(out, {double(c.samples), residual, grid_residual});
  }
  return pass ? kExitOk : kExitFailed;
}

int verify(const RunConfig& c, std::ostream& out) {
  std::vector<std::string> names = c.all ? suite_names() : c.suites;
  std::vector<std::vector<CheckResult>> results(names.size());
  // Suites are independent; run them in batches of at most thread_cap().
  const std::size_t cap = std::max(1u, thread_cap());
  for (std::size_t start = 0; start < names.size(); start += cap) {
    std::vector<std::future<std::vector<CheckResult>>> jobs;
    const std::size_t stop = std::min(names.size(), start + cap);
    for (std::size_t i = start; i < stop; ++i)
      jobs.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred,
                                [&, i] { return run_suite(names[i], c); }));
    for (std::size_t i = start; i < stop; ++i) results[i] = jobs[i - start].get();
  }
  json rows = json::array(), failures = json::array();
  for (const auto& suite : results)
    for (const auto& r : suite) {
      json row{{"suite", r.suite}, {"check", r.check}, {"value", r.value}, {"threshold", r.threshold},
               {"pass", r.pass}};
      if (!r.pass) failures.push_back(row);
      rows.push_back(std::move(row));
    }
  if (c.format == Format::json) {
    out << json{{"schema_version", 1}, {"command", "verify"}, {"seed", c.seed}, {"grid", c.grid}, {"dk", c.dk},
                {"mass", c.mass}, {"results", rows}, {"failures", failures}, {"pass", failures.empty()}}
               .dump(2)
        << '\n';
  } else {
    out << "suite,check,value,threshold,pass\n";
    for (const auto& suite : results)
      for (const auto& r : suite)
        out << r.suite << ',' << r.check << ',' << format_double(r.value) << ',' << format_double(r.threshold) << ','
            << (r.pass ? 1 : 0) << '\n';
  }
  return failures.empty() ? kExitOk : kExitFailed;
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name;
  return "?";
}

std::string usage() {
  return "usage: biortho <command> [options]\n"
         "commands: verify, kg-density, photon-density, emission, boost-check, transverse-delta\n"
         "common options: --grid N --dk X --mass M --t T --seed S --out PATH --format csv|json --config FILE\n"
         "run 'biortho <command> --help' for the full option list\n";
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("command")) {
      auto it = kCommands.find(j.at("command").get<std::string>());
      if (it == kCommands.end()) throw ConfigError("unknown command in config");
      cfg.command = it->second;
    }
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f != "csv" && f != "json") throw ConfigError("format must be csv or json");
      cfg.format = f == "csv" ? Format::csv : Format::json;
    }
    if (j.contains("dipole")) {
      // [[re, im], [re, im], [re, im]]
      const auto& d = j.at("dipole");
      if (!d.is_array() || d.size() != 3) throw ConfigError("dipole must be three [re, im] pairs");
      cfg.dipole.clear();
      for (const auto& p : d) {
        if (!p.is_array() || p.size() != 2) throw ConfigError("dipole must be three [re, im] pairs");
        cfg.dipole.push_back(p[0].get<double>());
        cfg.dipole.push_back(p[1].get<double>());
      }
    }
    take(j, "grid", cfg.grid);
    take(j, "dk", cfg.dk);
    take(j, "mass", cfg.mass);
    take(j, "t", cfg.t);
    take(j, "seed", cfg.seed);
    take(j, "out", cfg.out);
    take(j, "suites", cfg.suites);
    take(j, "all", cfg.all);
    take(j, "states", cfg.states);
    take(j, "slice", cfg.slice);
    take(j, "export", cfg.export_kind);
    take(j, "epsilon", cfg.epsilon);
    take(j, "helicity", cfg.helicity);
    take(j, "omega0", cfg.omega0);
    take(j, "g0", cfg.g0);
    take(j, "W", cfg.window);
    take(j, "n_radial", cfg.n_radial);
    take(j, "n_theta", cfg.n_theta);
    take(j, "n_phi", cfg.n_phi);
    take(j, "profile", cfg.profile);
    take(j, "dr", cfg.dr);
    take(j, "rapidity", cfg.rapidity);
    take(j, "axis", cfg.axis);
    take(j, "samples", cfg.samples);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig parse_args(int argc, const char* const* argv) {
  if (argc < 2) throw ConfigError("no command given");
  RunConfig cfg;
  CLI::App app{"Biorthogonal relativistic wave mechanics toolkit", "biortho"};
  app.require_subcommand(1, 1);
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : kCommands) subs[name] = app.add_subcommand(name, kDescriptions.at(name))->fallthrough();

  std::string format = "json", config;
  app.add_option("--grid", cfg.grid, "points per axis (even, >= 4)");
  app.add_option("--dk", cfg.dk, "momentum spacing");
  app.add_option("--mass", cfg.mass, "particle mass");
  app.add_option("--t", cfg.t, "time");
  app.add_option("--seed", cfg.seed, "seed for random states");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config, "JSON config file; its keys override flags");
  app.add_option("--suite", cfg.suites, "verify: suite name (repeatable)");
  app.add_flag("--all", cfg.all, "verify: run every suite");
  app.add_option("--states", cfg.states, "verify: random states per check");
  app.add_flag("--slice", cfg.slice, "densities: x axis through the origin only");
  app.add_option("--export", cfg.export_kind, "photon-density: density or field");
  app.add_option("--epsilon", cfg.epsilon, "frequency sign (+1 or -1)");
  app.add_option("--helicity", cfg.helicity, "helicity (+1 or -1)");
  app.add_option("--omega0", cfg.omega0, "emission: level separation");
  app.add_option("--dipole", cfg.dipole, "emission: re,im per axis")->expected(6)->delimiter(',');
  app.add_option("--g0", cfg.g0, "emission: coupling");
  app.add_option("--W", cfg.window, "emission: half width of the frequency window");
  app.add_option("--n-radial", cfg.n_radial, "emission: radial nodes (0 picks from t)");
  app.add_option("--n-theta", cfg.n_theta, "emission: polar nodes");
  app.add_option("--n-phi", cfg.n_phi, "emission: azimuthal nodes");
  app.add_option("--profile", cfg.profile, "emission: radial, number or map");
  app.add_option("--dr", cfg.dr, "emission: radial step");
  app.add_option("--rapidity", cfg.rapidity, "boost-check: rapidity");
  app.add_option("--axis", cfg.axis, "boost-check: boost axis x,y,z")->expected(3)->delimiter(',');
  app.add_option("--samples", cfg.samples, "transverse-delta: random momenta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cfg.command = kCommands.at(name);
  cfg.format = format == "csv" ? Format::csv : Format::json;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw ConfigError("cannot read config file " + config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    apply_json(cfg, j);
  }
  validate(cfg);
  return cfg;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("BIORTHO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return unsigned(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::verify: return verify(cfg, out);
      case Command::kg_density: return kg_density(cfg, out);
      case Command::photon_density: return photon_density(cfg, out);
      case Command::emission: return emission(cfg, out);
      case Command::boost_check: return boost_check(cfg, out);
      case Command::transverse_delta: return transverse_delta(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "biortho: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalGuard& e) {
    err << json{{"error", "numerical_guard"}, {"message", e.what()}}.dump() << '\n';
    return kExitGuard;
  } catch (const Error& e) {
    err << "biortho: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpRequested& e) {
    out << e.what();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "biortho: " << e.what() << '\n' << usage();
    return kExitConfig;
  }
  if (cfg.out.empty()) return run(cfg, out, err);
  // Render fully before touching the file so a failed run leaves no partial artifact.
  std::ostringstream buf;
  const int code = run(cfg, buf, err);
  if (code != kExitOk && code != kExitFailed) return code;
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    err << "biortho: cannot write " << cfg.out << '\n';
    return kExitConfig;
  }
  file << buf.str();
  return code;
}

}  // namespace biortho::cli
