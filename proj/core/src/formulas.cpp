#include "qte/formulas.hpp"

#include <cmath>

#include "qte/rootfind.hpp"

namespace qte {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw formula_error(msg);
}

}  // namespace

double eta_carnot(double T_h, double T_c) {
  require(T_h > 0.0 && T_c > 0.0, "eta_carnot: temperatures must be positive");
  return 1.0 - T_c / T_h;
}

double work_carnot(double T_h, double T_c, double dS_vn) {
  return (T_h - T_c) * dS_vn;
}

double work_carnot_max(double T_h, double T_c) {
  return (T_h - T_c) * std::log(2.0);
}

double work_carnot_high_T(double T_h, double T_c, double S1, double S2) {
  return (T_h - T_c) * 2.0 * (S2 * S2 - S1 * S1);
}

double eta_ca(double T_h, double T_c) {
  require(T_h > 0.0 && T_c > 0.0, "eta_ca: temperatures must be positive");
  return 1.0 - std::sqrt(T_c / T_h);
}

double power_endo(double Gamma, double T_h, double T_c, double S1, double S2) {
  require(S1 / S2 > 0.0 && S1 != S2, "power_endo: polarizations must share sign");
  const double dr = std::sqrt(T_h) - std::sqrt(T_c);
  return Gamma * dr * dr * 2.0 * (S2 * S2 - S1 * S1) / std::log(S2 / S1);
}

double sigma_rate_endo(double Gamma, double T_h, double T_c, double S1, double S2) {
  require(S1 / S2 > 0.0 && S1 != S2, "sigma_rate_endo: polarizations must share sign");
  return Gamma * (T_h - T_c) / std::sqrt(T_c * T_h) * 2.0 * (S2 * S2 - S1 * S1) /
         std::log(S2 / S1);
}

double work_otto(double dOmega, double dS) { return dOmega * dS; }

double eta_otto(double Omega_c, double Omega_h) {
  require(Omega_h > 0.0 && Omega_c > 0.0, "eta_otto: frequencies must be positive");
  return 1.0 - Omega_c / Omega_h;
}

double sigma_otto(double Omega_h, double T_h, double Omega_c, double T_c, double dS) {
  return (Omega_h / T_h - Omega_c / T_c) * dS;
}

double work_otto_max(double Omega_4, double T_h, double T_c) {
  const double r = T_c / T_h;
  return Omega_4 * Omega_4 / T_h * (1.0 - r * r);
}

double eta_otto_max_work(double T_h, double T_c) {
  return 1.0 - 2.0 * T_c / (T_h + T_c);
}

double power_otto_bb(double Gamma, double dOmega, double dS) {
  return 0.25 * Gamma * dOmega * dS;
}

double thermalization_factor(double x, double y) {
  require(x * y != 1.0, "thermalization_factor: x*y = 1 is singular");
  return (1.0 - x) * (1.0 - y) / (1.0 - x * y);
}

double sinh_condition_solve(double g) {
  require(g > 0.0, "sinh_condition_solve: Gamma*tau_adi must be positive");
  // sinh(x) - x grows monotonically from 0; bracket the root from above.
  double hi = 1.0;
  while (std::sinh(hi) - hi < g) hi *= 2.0;
  const auto r = solve_bracketed([g](double x) { return std::sinh(x) - x - g; }, 0.0,
                                 hi, 1e-15, 1e-14);
  if (!r) throw formula_error("sinh_condition_solve: bracketing failed");
  return *r;
}

double tau_open_small(double Gamma, double g) {
  require(Gamma > 0.0 && g > 0.0, "tau_open_small: arguments must be positive");
  return std::cbrt(g / 3.0) / Gamma;
}

double power_otto_local(double Gamma, double dOmega, double dS, double g) {
  return power_otto_bb(Gamma, dOmega, dS) / std::cbrt(g / 3.0);
}

const std::vector<FormulaEntry>& formula_registry() {
  static const std::vector<FormulaEntry> reg = {
      {"eta_carnot", {"T_h", "T_c"}, [](const auto& a) { return eta_carnot(a[0], a[1]); }},
      {"work_carnot",
       {"T_h", "T_c", "dS_vn"},
       [](const auto& a) { return work_carnot(a[0], a[1], a[2]); }},
      {"work_carnot_max",
       {"T_h", "T_c"},
       [](const auto& a) { return work_carnot_max(a[0], a[1]); }},
      {"work_carnot_high_T",
       {"T_h", "T_c", "S1", "S2"},
       [](const auto& a) { return work_carnot_high_T(a[0], a[1], a[2], a[3]); }},
      {"eta_ca", {"T_h", "T_c"}, [](const auto& a) { return eta_ca(a[0], a[1]); }},
      {"power_endo",
       {"Gamma", "T_h", "T_c", "S1", "S2"},
       [](const auto& a) { return power_endo(a[0], a[1], a[2], a[3], a[4]); }},
      {"sigma_rate_endo",
       {"Gamma", "T_h", "T_c", "S1", "S2"},
       [](const auto& a) { return sigma_rate_endo(a[0], a[1], a[2], a[3], a[4]); }},
      {"work_otto",
       {"dOmega", "dS"},
       [](const auto& a) { return work_otto(a[0], a[1]); }},
      {"eta_otto",
       {"Omega_c", "Omega_h"},
       [](const auto& a) { return eta_otto(a[0], a[1]); }},
      {"sigma_otto",
       {"Omega_h", "T_h", "Omega_c", "T_c", "dS"},
       [](const auto& a) { return sigma_otto(a[0], a[1], a[2], a[3], a[4]); }},
      {"work_otto_max",
       {"Omega_4", "T_h", "T_c"},
       [](const auto& a) { return work_otto_max(a[0], a[1], a[2]); }},
      {"eta_otto_max_work",
       {"T_h", "T_c"},
       [](const auto& a) { return eta_otto_max_work(a[0], a[1]); }},
      {"power_otto_bb",
       {"Gamma", "dOmega", "dS"},
       [](const auto& a) { return power_otto_bb(a[0], a[1], a[2]); }},
      {"thermalization_factor",
       {"x", "y"},
       [](const auto& a) { return thermalization_factor(a[0], a[1]); }},
      {"sinh_condition_solve",
       {"g"},
       [](const auto& a) { return sinh_condition_solve(a[0]); }},
      {"tau_open_small",
       {"Gamma", "g"},
       [](const auto& a) { return tau_open_small(a[0], a[1]); }},
      {"power_otto_local",
       {"Gamma", "dOmega", "dS", "g"},
       [](const auto& a) { return power_otto_local(a[0], a[1], a[2], a[3]); }},
  };
  return reg;
}

double eval_formula(const std::string& name,
                    const std::map<std::string, double>& args) {
  for (const auto& f : formula_registry()) {
    if (f.name != name) continue;
    std::vector<double> vals;
    for (const auto& an : f.args) {
      auto it = args.find(an);
      if (it == args.end())
        throw formula_error("formula " + name + ": missing argument " + an);
      vals.push_back(it->second);
    }
    return f.eval(vals);
  }
  throw formula_error("unknown formula: " + name);
}

}  // namespace qte
