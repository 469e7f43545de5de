#include "rtnsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "rtnsim/bloch.hpp"
#include "rtnsim/montecarlo.hpp"
#include "rtnsim/noise_core.hpp"
#include "rtnsim/parallel.hpp"
#include "rtnsim/single_qubit.hpp"

namespace rtn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------
// config text parsing

struct ConfigMap {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& sec, const std::string& key) const {
    auto s = sections.find(sec);
    return s != sections.end() && s->second.count(key) > 0;
  }
  std::string get(const std::string& sec, const std::string& key) const {
    if (!has(sec, key))
      throw ConfigError("missing config key [" + sec + "] " + key);
    return sections.at(sec).at(key);
  }
  std::string get_or(const std::string& sec, const std::string& key,
                     const std::string& fallback) const {
    return has(sec, key) ? sections.at(sec).at(key) : fallback;
  }
  double get_double(const std::string& sec, const std::string& key) const {
    const std::string v = get(sec, key);
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError("config key [" + sec + "] " + key +
                        " is not a number: '" + v + "'");
    }
  }
  double get_double_or(const std::string& sec, const std::string& key,
                       double fallback) const {
    return has(sec, key) ? get_double(sec, key) : fallback;
  }
  long get_long(const std::string& sec, const std::string& key) const {
    const double d = get_double(sec, key);
    if (d != std::floor(d))
      throw ConfigError("config key [" + sec + "] " + key + " must be an integer");
    return static_cast<long>(d);
  }
  long get_long_or(const std::string& sec, const std::string& key, long fallback) const {
    return has(sec, key) ? get_long(sec, key) : fallback;
  }
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    if (section.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    cfg.sections[section][key] = value;
  }
  return cfg;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      const std::string item = trim(cur);
      if (!item.empty()) out.push_back(item);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

QubitSpec parse_qubit(const ConfigMap& cfg, const std::string& sec) {
  if (cfg.sections.find(sec) == cfg.sections.end())
    throw ConfigError("missing config section [" + sec + "]");
  const double b0 = cfg.get_double_or(sec, "b0", 1.0);
  const double g = cfg.get_double_or(sec, "g", 0.0);
  try {
    if (g == 0.0) return QubitSpec(b0);
    RtnSource src(g, cfg.get_double_or(sec, "theta", 0.0),
                  cfg.get_double_or(sec, "phi", 0.0), cfg.get_double(sec, "gamma"));
    return QubitSpec(b0, src);
  } catch (const InvalidArgument& e) {
    throw ConfigError("section [" + sec + "]: " + e.what());
  }
}

InitialState parse_state(const ConfigMap& cfg) {
  const std::string fam = cfg.get_or("initial_state", "family", "phi");
  StateFamily family;
  if (fam == "phi")
    family = StateFamily::Phi;
  else if (fam == "psi")
    family = StateFamily::Psi;
  else
    throw ConfigError("initial_state family must be 'phi' or 'psi'");
  try {
    return InitialState(family, cfg.get_double_or("initial_state", "alpha", kInvSqrt2),
                        cfg.get_double_or("initial_state", "delta", 0.0),
                        cfg.get_double_or("initial_state", "r", 1.0));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("section [initial_state]: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------
// engines

CurveSet engine_analytic(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.grid.points();
  const std::size_t np = grid.size();
  const std::vector<double> za = zeta_curve(cfg.qubit_a, grid, cfg.zeta_source);
  const std::vector<double> zb = zeta_curve(cfg.qubit_b, grid, cfg.zeta_source);
  const double g1a =
      cfg.qubit_a.noisy() ? gamma1(*cfg.qubit_a.source, cfg.qubit_a.b0) : 0.0;
  const double g1b =
      cfg.qubit_b.noisy() ? gamma1(*cfg.qubit_b.source, cfg.qubit_b.b0) : 0.0;

  CurveSet out;
  out.t = grid;
  out.n.resize(np);
  out.lambdas.resize(np);
  out.n_norm.resize(np);
  out.c.resize(np);
  out.xi.resize(np);
  out.zeta_ab.resize(np);
  for (std::size_t i = 0; i < np; ++i) {
    const ModelRates rates{g1a, g1b, za[i], zb[i], grid[i]};
    const bloch::BlochVector n =
        analytic_bloch(cfg.state, rates, cfg.qubit_a.b0, cfg.qubit_b.b0);
    out.n[i] = n.data();
    out.zeta_ab[i] = za[i] * zb[i];
    out.n_norm[i] = cfg.model == Model::TwoTwo
                        ? purity_norm_analytic(cfg.state, rates)
                        : n.norm();
    if (cfg.state.degenerate()) {
      const ConcurrenceResult w = concurrence_wootters(bloch::from_bloch(n));
      out.c[i] = w.concurrence;
      out.lambdas[i] = w.spectrum.lambdas;
      out.xi[i] = kNaN;
    } else {
      const AnalyticSpectrum sp = lambda_spectrum_analytic(cfg.state, cfg.model, rates);
      out.c[i] = std::max(0.0, sp.spectrum.q);
      out.lambdas[i] = sp.spectrum.lambdas;
      out.xi[i] = sp.xi;
    }
  }
  return out;
}

// xi and |zeta_ab| recovered from an eigenvalue-route spectrum:
// lambda_3 = r alpha |beta| xi and q = 2 r alpha |beta| (|zeta_ab| - xi)
void derive_decomposition(const InitialState& state,
                          const std::array<double, 4>& lambdas, double q,
                          double& xi, double& zeta_ab_mag) {
  const double c1 = state.r * state.alpha * std::abs(state.beta);
  if (c1 < 1e-12) {
    xi = kNaN;
    zeta_ab_mag = kNaN;
    return;
  }
  xi = lambdas[2] / c1;
  zeta_ab_mag = q / (2.0 * c1) + xi;
}

CurveSet engine_quasi(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.grid.points();
  const std::size_t np = grid.size();
  const Vector16d n0 = bloch::to_bloch(cfg.state.density_matrix()).data();

  CurveSet out;
  out.t = grid;
  out.n.resize(np);
  out.lambdas.resize(np);
  out.n_norm.resize(np);
  out.c.resize(np);
  out.xi.resize(np);
  out.zeta_ab.resize(np);

  struct PerQubit {
    bool noisy = false;
    QuasiHamiltonian hq;
  };
  PerQubit qa{cfg.qubit_a.noisy(), {}};
  PerQubit qb{cfg.qubit_b.noisy(), {}};
  if (qa.noisy) qa.hq = QuasiHamiltonian::build(cfg.qubit_a);
  if (qb.noisy) qb.hq = QuasiHamiltonian::build(cfg.qubit_b);

  parallel_for(static_cast<std::int64_t>(np), [&](std::int64_t i) {
    const double t = grid[i];
    Matrix4d ra = qa.noisy ? [&] {
      Matrix4d r = Matrix4d::Zero();
      r(0, 0) = 1.0;
      r.block<3, 3>(1, 1) = qa.hq.contracted(t);
      return r;
    }()
                           : free_transfer(cfg.qubit_a.b0, t);
    Matrix4d rb = qb.noisy ? [&] {
      Matrix4d r = Matrix4d::Zero();
      r(0, 0) = 1.0;
      r.block<3, 3>(1, 1) = qb.hq.contracted(t);
      return r;
    }()
                           : free_transfer(cfg.qubit_b.b0, t);
    Vector16d n;
    // kron(ra, rb) applied without materializing the 16x16 product
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) {
        double acc = 0.0;
        for (int u = 0; u < 4; ++u)
          for (int v = 0; v < 4; ++v) acc += ra(x, u) * rb(y, v) * n0(4 * u + v);
        n(4 * x + y) = acc;
      }
    out.n[i] = n;
    out.n_norm[i] = n.tail<15>().norm();
    const ConcurrenceResult w = concurrence_wootters(bloch::from_bloch(bloch::BlochVector(n)));
    out.c[i] = w.concurrence;
    out.lambdas[i] = w.spectrum.lambdas;
    double xi, zab;
    derive_decomposition(cfg.state, w.spectrum.lambdas, w.spectrum.q, xi, zab);
    out.xi[i] = xi;
    out.zeta_ab[i] = zab;
  });
  return out;
}

CurveSet engine_monte_carlo(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.grid.points();
  EnsembleOptions opt;
  opt.n_runs = cfg.effective_mc_runs();
  opt.seed = cfg.mc_seed;
  const EnsembleResult ens =
      ensemble_average(cfg.qubit_a, cfg.qubit_b, cfg.state, grid, opt);

  const std::size_t np = grid.size();
  CurveSet out;
  out.t = grid;
  out.n.resize(np);
  out.lambdas.resize(np);
  out.n_norm.resize(np);
  out.c.resize(np);
  out.xi.resize(np);
  out.zeta_ab.resize(np);
  parallel_for(static_cast<std::int64_t>(np), [&](std::int64_t i) {
    out.n[i] = ens.n_mean[i];
    out.n_norm[i] = ens.n_mean[i].tail<15>().norm();
    const ConcurrenceResult w = concurrence_wootters(ens.rho_mean[i]);
    out.c[i] = w.concurrence;
    out.lambdas[i] = w.spectrum.lambdas;
    double xi, zab;
    derive_decomposition(cfg.state, w.spectrum.lambdas, w.spectrum.q, xi, zab);
    out.xi[i] = xi;
    out.zeta_ab[i] = zab;
  });
  return out;
}

bool exact_pair(const ExperimentConfig& cfg) {
  // analytic vs quasi-Hamiltonian agree to roundoff when every noisy
  // qubit sits at the pure dephasing point and the exact dephasing
  // function feeds the analytic side
  if (cfg.zeta_source != ZetaSource::Exact) return false;
  for (const QubitSpec* q : {&cfg.qubit_a, &cfg.qubit_b})
    if (q->noisy() && q->source->theta != 0.0) return false;
  return true;
}

double pair_tolerance(const ExperimentConfig& cfg, Engine a, Engine b,
                      bool eigenvalue_route_quantity) {
  if (a == Engine::MonteCarlo || b == Engine::MonteCarlo)
    return cfg.tier == ToleranceTier::Full ? 0.02 : 0.07;
  if (!exact_pair(cfg)) return 0.02;
  // lambda = sqrt(eigenvalue): at an exact zero the square root turns
  // 1e-16 eigenvalue roundoff into 1e-8, so eigenvalue-route quantities
  // cannot be held to the Bloch-component tolerance
  return eigenvalue_route_quantity ? 1e-7 : 1e-10;
}

void write_curve_csv(const std::string& path, const CurveSet& cs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << "t";
  for (int k = 1; k <= 15; ++k) out << ",n" << k;
  out << ",n_norm,lambda1,lambda2,lambda3,lambda4,concurrence,xi,zeta_ab\n";
  for (std::size_t i = 0; i < cs.t.size(); ++i) {
    out << fmt(cs.t[i]);
    for (int k = 1; k <= 15; ++k) out << ',' << fmt(cs.n[i](k));
    out << ',' << fmt(cs.n_norm[i]);
    for (int k = 0; k < 4; ++k) out << ',' << fmt(cs.lambdas[i][k]);
    out << ',' << fmt(cs.c[i]) << ',' << fmt(cs.xi[i]) << ',' << fmt(cs.zeta_ab[i])
        << '\n';
  }
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::QuasiHamiltonian: return "quasi_hamiltonian";
    case Engine::MonteCarlo: return "monte_carlo";
  }
  throw InvalidArgument("unknown engine");
}

Engine engine_from_name(const std::string& name) {
  if (name == "analytic") return Engine::Analytic;
  if (name == "quasi_hamiltonian") return Engine::QuasiHamiltonian;
  if (name == "monte_carlo") return Engine::MonteCarlo;
  throw ConfigError("unknown engine '" + name +
                    "' (expected analytic, quasi_hamiltonian or monte_carlo)");
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> g(n_points);
  for (int i = 0; i < n_points; ++i)
    g[i] = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
  return g;
}

long ExperimentConfig::effective_mc_runs() const {
  if (mc_runs > 0) return mc_runs;
  return tier == ToleranceTier::Full ? 40000 : 4000;
}

void ExperimentConfig::validate() const {
  qubit_a.validate();
  qubit_b.validate();
  if (model == Model::TwoOne && (!qubit_a.noisy() || qubit_b.noisy()))
    throw ConfigError("two-one model: attach the noise source to qubit A only");
  if (model == Model::TwoTwo && (!qubit_a.noisy() || !qubit_b.noisy()))
    throw ConfigError("two-two model: both qubits need a noise source");
  if (!(grid.t_max > 0.0)) throw ConfigError("grid t_max must be positive");
  if (grid.n_points < 3) throw ConfigError("grid needs at least 3 points");
  if (engines.empty()) throw ConfigError("no engines selected");
  for (std::size_t i = 0; i < engines.size(); ++i)
    for (std::size_t j = i + 1; j < engines.size(); ++j)
      if (engines[i] == engines[j]) throw ConfigError("duplicate engine selected");
  if (mc_runs < 0) throw ConfigError("monte_carlo runs must be positive");

  const double dt = grid.dt();
  if (state.family == StateFamily::Phi) {
    const double f = 0.5 * (qubit_a.b0 + qubit_b.b0);
    if (dt > kPi / (10.0 * f) * (1.0 + 1e-12))
      throw ConfigError("grid too coarse for the coherence oscillation: need dt <= pi/(5 (b0_a + b0_b))");
  }
  for (const QubitSpec* q : {&qubit_a, &qubit_b}) {
    if (!q->noisy()) continue;
    const double gc = q->source->g * std::cos(q->source->theta);
    if (q->source->gamma < gc && dt > kPi / (10.0 * gc) * (1.0 + 1e-12))
      throw ConfigError("grid too coarse for the strong-coupling oscillation: need dt <= pi/(10 g cos theta)");
  }
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& name_hint) {
  const ConfigMap cfg = parse_config_text(text);
  ExperimentConfig ec;
  ec.name = cfg.get_or("experiment", "name", name_hint);
  const std::string model = cfg.get_or("experiment", "model", "two_one");
  if (model == "two_one")
    ec.model = Model::TwoOne;
  else if (model == "two_two")
    ec.model = Model::TwoTwo;
  else
    throw ConfigError("experiment model must be 'two_one' or 'two_two'");

  ec.qubit_a = parse_qubit(cfg, "qubit_a");
  ec.qubit_b = parse_qubit(cfg, "qubit_b");
  ec.state = parse_state(cfg);
  ec.grid.t_max = cfg.get_double("grid", "t_max");
  ec.grid.n_points = static_cast<int>(cfg.get_long("grid", "n_points"));

  ec.engines.clear();
  for (const std::string& e :
       split_list(cfg.get_or("experiment", "engines", "analytic, quasi_hamiltonian")))
    ec.engines.push_back(engine_from_name(e));

  const std::string tier = cfg.get_or("experiment", "tolerance_tier", "smoke");
  if (tier == "full")
    ec.tier = ToleranceTier::Full;
  else if (tier == "smoke")
    ec.tier = ToleranceTier::Smoke;
  else
    throw ConfigError("tolerance_tier must be 'full' or 'smoke'");

  const std::string zs = cfg.get_or("experiment", "zeta_source", "exact");
  if (zs == "exact")
    ec.zeta_source = ZetaSource::Exact;
  else if (zs == "closed_form")
    ec.zeta_source = ZetaSource::ClosedForm;
  else
    throw ConfigError("zeta_source must be 'exact' or 'closed_form'");

  ec.mc_runs = cfg.get_long_or("monte_carlo", "runs", 0);
  ec.mc_seed = static_cast<std::uint64_t>(cfg.get_long_or("monte_carlo", "seed", 20240817));
  ec.output_dir = cfg.get_or("output", "dir", ".");
  ec.validate();
  return ec;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path),
                                 std::filesystem::path(path).stem().string());
}

PhaseScanConfig parse_phase_scan_config(const std::string& text,
                                        const std::string& name_hint) {
  const ConfigMap cfg = parse_config_text(text);
  PhaseScanConfig pc;
  pc.name = name_hint;
  PhaseScanSettings& s = pc.settings;
  s.n_theta = static_cast<int>(cfg.get_long_or("phase_scan", "n_theta", 20));
  s.theta_min = cfg.get_double_or("phase_scan", "theta_min", 0.0);
  s.theta_max = cfg.get_double_or("phase_scan", "theta_max", 1.4);
  s.n_ratio = static_cast<int>(cfg.get_long_or("phase_scan", "n_ratio", 20));
  s.ratio_min = cfg.get_double_or("phase_scan", "ratio_min", 0.2);
  s.ratio_max = cfg.get_double_or("phase_scan", "ratio_max", 20.0);
  s.g = cfg.get_double_or("phase_scan", "g", 0.1);
  s.b0 = cfg.get_double_or("phase_scan", "b0", 1.0);
  if (cfg.sections.count("initial_state")) {
    const InitialState st = parse_state(cfg);
    if (st.family != StateFamily::Phi)
      throw ConfigError("phase scan classifies the phi family");
    s.alpha = st.alpha;
    s.r = st.r;
  }
  pc.output_path = cfg.get_or("output", "path", pc.name + ".csv");
  if (!(s.theta_max < kPi / 2.0))
    throw ConfigError("phase scan theta_max must stay below pi/2 (sec theta diverges)");
  return pc;
}

PhaseScanConfig load_phase_scan_config(const std::string& path) {
  return parse_phase_scan_config(read_file(path),
                                 std::filesystem::path(path).stem().string());
}

CurveSet run_engine(const ExperimentConfig& cfg, Engine engine) {
  switch (engine) {
    case Engine::Analytic: return engine_analytic(cfg);
    case Engine::QuasiHamiltonian: return engine_quasi(cfg);
    case Engine::MonteCarlo: return engine_monte_carlo(cfg);
  }
  throw InvalidArgument("unknown engine");
}

std::vector<ComparisonRow> compare_curves(const ExperimentConfig& cfg,
                                          const std::map<Engine, CurveSet>& curves) {
  std::vector<ComparisonRow> rows;
  const std::size_t np = cfg.grid.points().size();

  // Pairs involving the analytic engine are gated only when the printed
  // forms are exact (all noisy qubits at theta = 0). At intermediate
  // working points they are leading-order expansions: the exact dynamics
  // carries O(g sin(theta)/b0) transverse-longitudinal components and a
  // secular frequency shift that the closed forms drop, so those rows are
  // reported but do not gate the run. The exact reference for Monte Carlo
  // is the quasi-Hamiltonian engine.
  const bool analytic_enforceable = exact_pair(cfg);

  auto add = [&](Engine a, Engine b, const std::string& qty, auto getter,
                 bool enforced) {
    const CurveSet& ca = curves.at(a);
    const CurveSet& cb = curves.at(b);
    ComparisonRow row;
    row.quantity = qty;
    row.engine_a = a;
    row.engine_b = b;
    const bool eigen_route = qty == "concurrence" || qty.rfind("lambda", 0) == 0 ||
                             qty == "xi" || qty == "abs_zeta_ab";
    row.tolerance = pair_tolerance(cfg, a, b, eigen_route);
    if ((a == Engine::Analytic || b == Engine::Analytic) && !analytic_enforceable)
      enforced = false;
    row.enforced = enforced;
    for (std::size_t i = 0; i < np; ++i) {
      const double da = getter(ca, i), db = getter(cb, i);
      if (std::isnan(da) || std::isnan(db)) continue;
      const double dev = std::abs(da - db);
      if (dev > row.max_abs_deviation) {
        row.max_abs_deviation = dev;
        row.at_time = ca.t[i];
      }
    }
    row.pass = !row.enforced || row.max_abs_deviation <= row.tolerance;
    rows.push_back(row);
  };

  std::vector<Engine> engines;
  for (const auto& [e, _] : curves) engines.push_back(e);
  for (std::size_t i = 0; i < engines.size(); ++i) {
    for (std::size_t j = i + 1; j < engines.size(); ++j) {
      const Engine a = engines[i], b = engines[j];
      for (int k = 1; k <= 15; ++k)
        add(a, b, "n" + std::to_string(k),
            [k](const CurveSet& cs, std::size_t idx) { return cs.n[idx](k); }, true);
      add(a, b, "n_norm",
          [](const CurveSet& cs, std::size_t idx) { return cs.n_norm[idx]; }, true);
      add(a, b, "concurrence",
          [](const CurveSet& cs, std::size_t idx) { return cs.c[idx]; }, true);
      for (int k = 0; k < 4; ++k)
        add(a, b, "lambda" + std::to_string(k + 1),
            [k](const CurveSet& cs, std::size_t idx) { return cs.lambdas[idx][k]; },
            false);
      add(a, b, "xi", [](const CurveSet& cs, std::size_t idx) { return cs.xi[idx]; },
          false);
      add(a, b, "abs_zeta_ab",
          [](const CurveSet& cs, std::size_t idx) { return std::abs(cs.zeta_ab[idx]); },
          false);
    }
  }
  return rows;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  std::map<Engine, CurveSet> curves;
  for (Engine e : cfg.engines) curves[e] = run_engine(cfg, e);

  ExperimentReport report;
  for (const Engine e : cfg.engines) {
    const std::string path =
        (std::filesystem::path(cfg.output_dir) / (cfg.name + "_" + engine_name(e) + ".csv"))
            .string();
    write_curve_csv(path, curves.at(e));
    report.files_written.push_back(path);
  }

  if (curves.size() >= 2) {
    report.comparisons = compare_curves(cfg, curves);
    const std::string path =
        (std::filesystem::path(cfg.output_dir) / (cfg.name + "_comparison.csv")).string();
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << "quantity,engine_a,engine_b,max_abs_deviation,at_time,tolerance,enforced,status\n";
    for (const auto& row : report.comparisons) {
      out << row.quantity << ',' << engine_name(row.engine_a) << ','
          << engine_name(row.engine_b) << ',' << fmt(row.max_abs_deviation) << ','
          << fmt(row.at_time) << ',' << fmt(row.tolerance) << ','
          << (row.enforced ? 1 : 0) << ','
          << (row.enforced ? (row.pass ? "pass" : "fail") : "info") << '\n';
      if (!row.pass) report.tolerances_ok = false;
    }
    report.files_written.push_back(path);
  }
  return report;
}

void run_phase_scan(const PhaseScanConfig& cfg) {
  const std::vector<PhaseScanPoint> points = phase_scan(cfg.settings);
  if (!cfg.output_path.empty()) {
    const auto dir = std::filesystem::path(cfg.output_path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw Error("cannot open output file: " + cfg.output_path);
  out << "theta,g_over_gamma,label,boundary_distance\n";
  for (const auto& pt : points) {
    const char* label = pt.label.label == RegionKind::EsdWithRevival ? "esd_with_revival"
                        : pt.label.label == RegionKind::SingleDeath  ? "single_death"
                                                                     : "no_esd";
    out << fmt(pt.theta) << ',' << fmt(pt.g_over_gamma) << ',' << label << ','
        << fmt(pt.label.boundary_distance) << '\n';
  }
}

// ---------------------------------------------------------------------
// figure presets

namespace {

ExperimentConfig preset_base(const std::string& name, double gamma_a, double theta,
                             double phi, double r, double t_max, int n_points) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.model = Model::TwoOne;
  cfg.qubit_a = QubitSpec(1.0, RtnSource(0.1, theta, phi, gamma_a));
  cfg.qubit_b = QubitSpec(1.0);
  cfg.state = InitialState(StateFamily::Phi, kInvSqrt2, 0.0, r);
  cfg.grid.t_max = t_max;
  cfg.grid.n_points = n_points;
  cfg.engines = {Engine::Analytic, Engine::QuasiHamiltonian, Engine::MonteCarlo};
  return cfg;
}

ExperimentConfig preset_two_two(const std::string& name, double gamma, double t_max,
                                int n_points) {
  ExperimentConfig cfg = preset_base(name, gamma, 0.0, 0.0, 1.0, t_max, n_points);
  cfg.model = Model::TwoTwo;
  cfg.qubit_b = QubitSpec(1.0, RtnSource(0.1, 0.0, 0.0, gamma));
  return cfg;
}

std::vector<Preset> make_presets() {
  constexpr double kTheta = kPi / 3.0;
  constexpr double kPhi = kPi / 2.0;
  std::vector<Preset> out;

  auto panel = [](const std::string& label, ExperimentConfig cfg) {
    cfg.name += label.empty() ? "" : "_" + label;
    return PresetPanel{label, std::move(cfg)};
  };

  out.push_back({"fig1a",
                 "two-one, pure dephasing, Bell state, strong coupling (gamma = 0.005)",
                 {panel("", preset_base("fig1a", 0.005, 0.0, 0.0, 1.0, 300.0, 1001))}});
  out.push_back({"fig1b", "alias of fig1a (same curves)",
                 {panel("", preset_base("fig1b", 0.005, 0.0, 0.0, 1.0, 300.0, 1001))}});
  out.push_back({"fig1c",
                 "two-one, pure dephasing, Bell state, weak coupling (gamma = 0.5)",
                 {panel("", preset_base("fig1c", 0.5, 0.0, 0.0, 1.0, 300.0, 1001))}});
  out.push_back({"fig1d", "alias of fig1c (same curves)",
                 {panel("", preset_base("fig1d", 0.5, 0.0, 0.0, 1.0, 300.0, 1001))}});
  out.push_back(
      {"fig2",
       "two-one, intermediate working point (theta = pi/3), Bell state; strong and weak panels",
       {panel("strong", preset_base("fig2", 0.005, kTheta, kPhi, 1.0, 1000.0, 3335)),
        panel("weak", preset_base("fig2", 0.5, kTheta, kPhi, 1.0, 1000.0, 3335))}});
  out.push_back(
      {"fig3",
       "two-one, pure dephasing, Werner state r = 0.5; strong and weak panels",
       {panel("strong", preset_base("fig3", 0.005, 0.0, 0.0, 0.5, 400.0, 1335)),
        panel("weak", preset_base("fig3", 0.5, 0.0, 0.0, 0.5, 400.0, 1335))}});
  out.push_back(
      {"fig4",
       "two-one, intermediate working point, Werner state r = 0.5; strong and weak panels",
       {panel("strong", preset_base("fig4", 0.005, kTheta, kPhi, 0.5, 1000.0, 3335)),
        panel("weak", preset_base("fig4", 0.5, kTheta, kPhi, 0.5, 1000.0, 3335))}});
  out.push_back(
      {"fig5",
       "two-two, pure dephasing, Bell state; strong and weak panels",
       {panel("strong", preset_two_two("fig5", 0.005, 150.0, 501)),
        panel("weak", preset_two_two("fig5", 0.5, 150.0, 501))}});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> p = make_presets();
  return p;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace rtn
