#pragma once

// Closed-form performance results for the elementary cycles, collected in a
// named registry so the CLI can evaluate any of them from named arguments.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qte {

struct formula_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double eta_carnot(double T_h, double T_c);
// Reversible work: Delta T times the isotherm entropy change (nats).
double work_carnot(double T_h, double T_c, double dS_vn);
// ln 2 entropy bound.
double work_carnot_max(double T_h, double T_c);
// High-temperature limit: Delta T * 2 (S2^2 - S1^2).
double work_carnot_high_T(double T_h, double T_c, double S1, double S2);
// Efficiency at maximum power, Curzon-Ahlborn form.
double eta_ca(double T_h, double T_c);
// Optimal endoreversible power at high temperature.
double power_endo(double Gamma, double T_h, double T_c, double S1, double S2);
// Matching optimal entropy production rate.
double sigma_rate_endo(double Gamma, double T_h, double T_c, double S1, double S2);

double work_otto(double dOmega, double dS);
double eta_otto(double Omega_c, double Omega_h);
double sigma_otto(double Omega_h, double T_h, double Omega_c, double T_c, double dS);
// Work-optimal Otto at high temperature (over the top frequency), plus its
// efficiency.
double work_otto_max(double Omega_4, double T_h, double T_c);
double eta_otto_max_work(double T_h, double T_c);
// Sudden bang-bang optimum.
double power_otto_bb(double Gamma, double dOmega, double dS);

// Partial-thermalization interpolation factor (1-x)(1-y)/(1-xy).
double thermalization_factor(double x, double y);
// Positive root of x + g = sinh(x) (g = Gamma * tau_adi).
double sinh_condition_solve(double g);
// Small-g solution of the same condition as printed: (g/3)^(1/3) / Gamma.
double tau_open_small(double Gamma, double g);
// Local Otto optimal power: bang-bang power divided by (g/3)^(1/3).
double power_otto_local(double Gamma, double dOmega, double dS, double g);

struct FormulaEntry {
  std::string name;
  std::vector<std::string> args;
  std::function<double(const std::vector<double>&)> eval;
};

// Registry keyed by formula name; argument order matches FormulaEntry::args.
const std::vector<FormulaEntry>& formula_registry();

double eval_formula(const std::string& name,
                    const std::map<std::string, double>& args);

}  // namespace qte
