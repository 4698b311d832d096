// qte: command-line front end for the qubit-engine library.
//
// Subcommands: cycle, sweep, protocol, dephase, formulas. All read a flat
// key=value config file and write CSV artifacts with a trailing # key=value
// metadata block (config hash, tolerances). Numeric output goes through
// format_sig12, so identical configs produce byte-identical files.
//
// Exit codes: 0 success, 2 config error, 3 convergence failure,
// 4 protocol infeasible, 5 I/O failure.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qte/bloch.hpp"
#include "qte/cycles.hpp"
#include "qte/formulas.hpp"
#include "qte/open.hpp"
#include "qte/protocols.hpp"
#include "qte/schedule.hpp"
#include "qte/thermo.hpp"
#include "qte/unitary.hpp"

namespace fs = std::filesystem;
using namespace qte;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Flat key = value config. '#' starts a comment; keys are consumed on read so
// leftovers (typos) can be rejected after dispatch.
struct Config {
  std::map<std::string, std::string> kv;
  mutable std::set<std::string> used;

  static Config load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open config file: " + path);
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty() || val.empty())
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": empty key or value");
      if (!c.kv.emplace(key, val).second)
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": duplicate key '" + key + "'");
    }
    return c;
  }

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string str(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw config_error("missing config key '" + key + "'");
    used.insert(key);
    return it->second;
  }
  std::string str(const std::string& key, const std::string& def) const {
    return has(key) ? str(key) : def;
  }

  double num(const std::string& key) const {
    const std::string v = str(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      throw config_error("config key '" + key + "': not a number: " + v);
    return x;
  }
  double num(const std::string& key, double def) const {
    return has(key) ? num(key) : def;
  }

  int integer(const std::string& key, int def) const {
    if (!has(key)) return def;
    const double x = num(key);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
      throw config_error("config key '" + key + "': not an integer");
    return i;
  }

  // Comma-separated list of numbers.
  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      char* end = nullptr;
      const double x = std::strtod(item.c_str(), &end);
      if (end == item.c_str() || *end != '\0')
        throw config_error("config key '" + key + "': bad list entry: " + item);
      out.push_back(x);
    }
    return out;
  }

  void reject_unused() const {
    std::vector<std::string> extra;
    for (const auto& [k, v] : kv)
      if (!used.count(k)) extra.push_back(k);
    if (!extra.empty()) {
      std::string msg = "unrecognized config key(s):";
      for (const auto& k : extra) msg += " " + k;
      throw config_error(msg);
    }
  }

  // FNV-1a over the sorted canonical "key=value\n" lines; recorded in every
  // output so artifacts can be traced back to their exact configuration.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
      for (unsigned char b : s) {
        h ^= b;
        h *= 1099511628211ull;
      }
    };
    for (const auto& [k, v] : kv) {  // std::map iterates in key order
      mix(k);
      mix("=");
      mix(v);
      mix("\n");
    }
    return h;
  }
};

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int workers = 0;  // 0 -> hardware concurrency
  double tol = 1e-9;
  bool strict = false;
};

std::ofstream open_output(const CommonOpts& opts, const std::string& name) {
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec) throw io_error("cannot create output directory: " + opts.out_dir);
  const fs::path p = fs::path(opts.out_dir) / name;
  std::ofstream f(p);
  if (!f) throw io_error("cannot open output file: " + p.string());
  return f;
}

void finish_output(std::ofstream& f, const std::string& what) {
  f.flush();
  if (!f.good()) throw io_error("write failure on " + what);
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_metadata(std::ostream& out, const Config& cfg, const CommonOpts& opts,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
  out << "# config_hash=" << hash_hex(cfg.hash()) << "\n";
  out << "# cycle_tol=" << format_sig12(opts.tol) << "\n";
  out << "# units=model (hbar = k_B = 1)\n";
  for (const auto& [k, v] : extra) out << "# " << k << "=" << v << "\n";
}

std::string bath_tag_name(BathTag t) {
  switch (t) {
    case BathTag::Hot: return "hot";
    case BathTag::Cold: return "cold";
    default: return "none";
  }
}

CycleParams cycle_params(const Config& c) {
  CycleParams p;
  const std::string kind = c.str("kind");
  const auto k = cycle_kind_from_name(kind);
  if (!k) throw config_error("unknown cycle kind '" + kind + "'");
  p.kind = *k;
  p.T_h = c.num("T_h", p.T_h);
  p.T_c = c.num("T_c", p.T_c);
  p.Omega1 = c.num("Omega_1", p.Omega1);
  p.Omega2 = c.num("Omega_2", p.Omega2);
  p.Omega3 = c.num("Omega_3", p.Omega3);
  p.Omega4 = c.num("Omega_4", p.Omega4);
  p.A = c.num("A", p.A);
  p.spectral_n = c.num("spectral_n", p.spectral_n);
  p.tau_cyc = c.num("tau_cyc", p.tau_cyc);
  p.Phi = c.num("Phi", p.Phi);
  p.l = c.integer("l", p.l);
  p.k_d = c.num("k_d", p.k_d);
  p.dt = c.num("dt", p.dt);
  p.dT = c.num("dT", p.dT);
  p.Gamma_tau = c.num("Gamma_tau", p.Gamma_tau);
  p.Gamma_sudden = c.num("Gamma_sudden", p.Gamma_sudden);
  p.open_split = c.num("open_split", p.open_split);
  p.unitary_fraction = c.num("unitary_fraction", p.unitary_fraction);
  return p;
}

// Entropy production rate of a dynamical-frame sample against its bath.
double sample_sigma(const BlochState& s, const FrameParams& fp, const BathSpec& bath) {
  if (bath.A <= 0.0) return 0.0;
  const BlochState g = frame_rotate(s, Frame::Eigen, fp);
  const DissipatorRates r = name_rates(fp.alpha, fp.kappa, bath);
  return entropy_production_rate(g.c, fp.alpha, r.Gamma(), bath.T);
}

int cmd_cycle(const Config& cfg, const CommonOpts& opts) {
  const CycleParams params = cycle_params(cfg);
  cfg.reject_unused();
  const CycleSpec spec = build_cycle(params);
  const LimitCycle lc = run_cycle(spec, 400, opts.tol);
  if (!lc.converged)
    throw convergence_error("limit cycle did not converge in " +
                            std::to_string(lc.iterations) + " iterations");

  auto traj = open_output(opts, "cycle_trajectory.csv");
  traj << "t,H,L,C,Omega,phi,mu,alpha,sigma_u,stroke\n";
  double t0 = 0.0;
  for (std::size_t si = 0; si < spec.strokes.size(); ++si) {
    const Stroke& st = spec.strokes[si];
    const StrokeRun& run = lc.strokes[si];
    const bool on_grid = !st.affine && run.t.size() == st.sched.size();
    const std::string tag =
        stroke_kind_name(st.kind) +
        (st.bath == BathTag::None ? "" : ":" + bath_tag_name(st.bath));
    for (std::size_t i = 0; i < run.t.size(); ++i) {
      FrameParams fp;
      if (on_grid)
        fp = FrameParams::from_polar(st.sched.Omega[i], st.sched.phi[i],
                                     st.sched.mu[i]);
      else
        fp = (i == 0) ? st.p_start : st.p_end;
      const BlochState& s = run.states[i];
      traj << format_sig12(t0 + run.t[i]) << ',' << format_sig12(s.c[0]) << ','
           << format_sig12(s.c[1]) << ',' << format_sig12(s.c[2]) << ','
           << format_sig12(fp.Omega) << ',' << format_sig12(fp.phi) << ','
           << format_sig12(fp.mu) << ',' << format_sig12(fp.alpha) << ','
           << format_sig12(sample_sigma(s, fp, st.bath_spec)) << ',' << tag
           << '\n';
    }
    t0 += st.duration;
  }
  write_metadata(traj, cfg, opts, {{"tau_cyc", format_sig12(spec.tau_cyc)}});
  finish_output(traj, "cycle_trajectory.csv");

  auto led = open_output(opts, "cycle_ledger.csv");
  led << "stroke,kind,bath,W,Q,dE,dS_vn,dS_energy,Sigma\n";
  for (std::size_t si = 0; si < lc.strokes.size(); ++si) {
    const StrokeLedger& l = lc.strokes[si].ledger;
    led << si << ',' << stroke_kind_name(l.kind) << ',' << bath_tag_name(l.bath)
        << ',' << format_sig12(l.W) << ',' << format_sig12(l.Q) << ','
        << format_sig12(l.dE) << ',' << format_sig12(l.dS_vn) << ','
        << format_sig12(l.dS_energy) << ',' << format_sig12(l.Sigma) << '\n';
  }
  write_metadata(led, cfg, opts,
                 {{"W", format_sig12(lc.ledger.W)},
                  {"Q_h", format_sig12(lc.ledger.Q_h)},
                  {"Q_c", format_sig12(lc.ledger.Q_c)},
                  {"eta", format_sig12(lc.ledger.eta)},
                  {"power", format_sig12(lc.ledger.power)},
                  {"sigma_cyc", format_sig12(lc.ledger.sigma_cyc)},
                  {"mode", cycle_mode_name(lc.ledger.mode)},
                  {"iterations", std::to_string(lc.iterations)}});
  finish_output(led, "cycle_ledger.csv");
  return 0;
}

std::vector<double> sweep_taus(const Config& cfg) {
  std::vector<double> taus;
  if (cfg.has("tau_list")) {
    taus = cfg.list("tau_list");
  } else if (cfg.has("tau_min")) {
    const double lo = cfg.num("tau_min");
    const double hi = cfg.num("tau_max");
    const int n = cfg.integer("tau_count", 0);
    const std::string spacing = cfg.str("tau_spacing", "linear");
    if (n < 2 || hi <= lo || lo <= 0.0)
      throw config_error("sweep range needs tau_min < tau_max, tau_count >= 2");
    for (int i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) / (n - 1);
      if (spacing == "log")
        taus.push_back(lo * std::pow(hi / lo, s));
      else if (spacing == "linear")
        taus.push_back(lo + (hi - lo) * s);
      else
        throw config_error("tau_spacing must be linear or log");
    }
  }
  if (taus.empty()) throw config_error("sweep config selects no cycle times");
  return taus;
}

int cmd_sweep(const Config& cfg, const CommonOpts& opts) {
  const CycleParams params = cycle_params(cfg);
  const std::vector<double> taus = sweep_taus(cfg);
  cfg.reject_unused();
  const int workers = opts.workers > 0
                          ? opts.workers
                          : std::max(1u, std::thread::hardware_concurrency());
  const auto rows = sweep_cycle_time(params, taus, workers);

  int failed = 0;
  auto out = open_output(opts, "sweep.csv");
  out << "tau_cyc,eta,eta_over_etaC,P,P_diss,sigma_cyc,mode\n";
  for (const auto& r : rows) {
    const bool ok = r.error.empty() && r.converged;
    if (!ok) ++failed;
    out << format_sig12(r.tau_cyc) << ',' << format_sig12(r.eta) << ','
        << format_sig12(r.eta_over_etaC) << ',' << format_sig12(r.P) << ','
        << format_sig12(r.P_diss) << ',' << format_sig12(r.sigma_cyc) << ','
        << (ok ? cycle_mode_name(r.mode) : std::string("failed")) << '\n';
  }
  write_metadata(out, cfg, opts, {{"failed_rows", std::to_string(failed)}});
  finish_output(out, "sweep.csv");
  if (failed > 0 && opts.strict)
    throw convergence_error(std::to_string(failed) + " sweep row(s) failed");
  return 0;
}

int cmd_dephase(const Config& cfg, const CommonOpts& opts) {
  CycleParams params = cycle_params(cfg);
  const std::vector<double> kds = cfg.list("k_d_list");
  const std::vector<double> taus = cfg.list("tau_list");
  cfg.reject_unused();
  if (kds.empty() || taus.empty())
    throw config_error("dephase config needs non-empty k_d_list and tau_list");

  int failed = 0;
  auto out = open_output(opts, "dephase.csv");
  out << "tau_cyc,k_d,eta\n";
  for (double tau : taus) {
    for (double kd : kds) {
      params.tau_cyc = tau;
      params.k_d = kd;
      const LimitCycle lc = run_cycle(build_cycle(params), 400, opts.tol);
      if (!lc.converged) ++failed;
      out << format_sig12(tau) << ',' << format_sig12(kd) << ','
          << format_sig12(lc.ledger.eta) << '\n';
    }
  }
  write_metadata(out, cfg, opts, {{"failed_rows", std::to_string(failed)}});
  finish_output(out, "dephase.csv");
  if (failed > 0 && opts.strict)
    throw convergence_error(std::to_string(failed) + " dephase point(s) failed");
  return 0;
}

int cmd_protocol(const Config& cfg, const CommonOpts& opts) {
  const std::string which = cfg.str("protocol");
  if (which == "ste") {
    STERequest req;
    req.Omega_i = cfg.num("Omega_i");
    req.Omega_f = cfg.num("Omega_f");
    req.tau = cfg.num("tau");
    req.bath = BathSpec{cfg.num("T"), cfg.num("A", 0.01), cfg.num("spectral_n", 1.0)};
    req.Phi = cfg.num("Phi", kPi / 2);
    req.dt = cfg.num("dt", 1e-3);
    const std::string prof = cfg.str("profile", "smoothstep");
    if (prof == "smoothstep") {
      req.profile = PhiProfileKind::CubicSmoothstep;
    } else if (prof == "quadratic") {
      req.profile = PhiProfileKind::QuadraticLegacy;
      req.quadratic_a = cfg.num("quadratic_a", 0.0);
    } else {
      throw config_error("profile must be smoothstep or quadratic");
    }
    cfg.reject_unused();
    const Schedule s = synthesize_ste(req);
    auto out = open_output(opts, "protocol_schedule.csv");
    schedule_export(s, out);
    write_metadata(out, cfg, opts, {{"protocol", "ste"}});
    finish_output(out, "protocol_schedule.csv");
    return 0;
  }
  if (which == "const_mu") {
    const Schedule s = const_mu_schedule(cfg.num("Omega_i"), cfg.num("Omega_f"),
                                         cfg.num("phi_i", 0.0), cfg.num("phi_f"),
                                         cfg.num("tau"), cfg.num("dt", 1e-3));
    cfg.reject_unused();
    auto out = open_output(opts, "protocol_schedule.csv");
    schedule_export(s, out);
    write_metadata(out, cfg, opts,
                   {{"protocol", "const_mu"}, {"mu", format_sig12(s.mu.front())}});
    finish_output(out, "protocol_schedule.csv");
    return 0;
  }
  if (which == "feat") {
    const double wi = cfg.num("omega_i"), wf = cfg.num("omega_f");
    const double eps = cfg.num("epsilon");
    cfg.reject_unused();
    const FeatTimes ft = feat_times(wi, wf, eps);
    // Bang-bang: hold the final field, then the initial field.
    auto out = open_output(opts, "protocol_feat.csv");
    out << "segment,duration,omega,epsilon\n";
    out << "1," << format_sig12(ft.tau1) << ',' << format_sig12(wf) << ','
        << format_sig12(eps) << '\n';
    out << "2," << format_sig12(ft.tau2) << ',' << format_sig12(wi) << ','
        << format_sig12(eps) << '\n';
    write_metadata(out, cfg, opts,
                   {{"protocol", "feat"},
                    {"zeta", format_sig12(ft.zeta)},
                    {"clamped", ft.clamped ? "1" : "0"},
                    {"total", format_sig12(ft.tau1 + ft.tau2)}});
    finish_output(out, "protocol_feat.csv");
    return 0;
  }
  throw config_error("protocol must be ste, const_mu, or feat");
}

int cmd_formulas(const Config* cfg) {
  if (!cfg || !cfg->has("formula")) {
    if (cfg) cfg->reject_unused();
    for (const auto& e : formula_registry()) {
      std::string line = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i)
        line += (i ? ", " : "") + e.args[i];
      std::printf("%s)\n", line.c_str());
    }
    return 0;
  }
  const std::string name = cfg->str("formula");
  std::map<std::string, double> args;
  for (const auto& [k, v] : cfg->kv)
    if (k != "formula") args[k] = cfg->num(k);
  const double val = eval_formula(name, args);
  std::printf("%s = %s\n", name.c_str(), format_sig12(val).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qubit heat engine toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::array<CLI::App*, 5> subs{
      app.add_subcommand("cycle", "solve one limit cycle, write trajectory and ledger"),
      app.add_subcommand("sweep", "performance vs cycle time"),
      app.add_subcommand("protocol", "synthesize a control schedule"),
      app.add_subcommand("dephase", "efficiency vs dephasing rate"),
      app.add_subcommand("formulas", "evaluate or list closed-form results")};
  for (CLI::App* s : subs) {
    const bool need_config = s->get_name() != "formulas";
    auto* c = s->add_option("--config", opts.config_path, "key = value config file");
    if (need_config) c->required();
    s->add_option("--out", opts.out_dir, "output directory (created if absent)");
    s->add_option("--workers", opts.workers, "sweep parallelism (0 = cores)");
    s->add_option("--tol", opts.tol, "limit-cycle convergence tolerance");
    s->add_flag("--strict-validity", opts.strict,
                "treat any non-converged point as a failure");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (subs[4]->parsed()) {
      if (opts.config_path.empty()) return cmd_formulas(nullptr);
      const Config cfg = Config::load(opts.config_path);
      return cmd_formulas(&cfg);
    }
    const Config cfg = Config::load(opts.config_path);
    if (subs[0]->parsed()) return cmd_cycle(cfg, opts);
    if (subs[1]->parsed()) return cmd_sweep(cfg, opts);
    if (subs[2]->parsed()) return cmd_protocol(cfg, opts);
    return cmd_dephase(cfg, opts);
  } catch (const protocol_infeasible& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const convergence_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    // config parsing, parameter validation, registry lookups
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
