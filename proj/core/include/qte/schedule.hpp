#pragma once

// Time-sampled control records for one stroke, plus their tabular export
// format. Synthesis of specific schedules lives in protocols.hpp.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qte {

enum class StrokeKind { Unitary, Open, Isochore };

std::string stroke_kind_name(StrokeKind k);

struct schedule_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform-grid control record. Field components (omega, epsilon) and the polar
// pair (Omega, phi) are kept in sync; alpha^2 = Omega^2 + phidot^2.
struct Schedule {
  StrokeKind kind = StrokeKind::Unitary;
  std::vector<double> t;
  std::vector<double> omega, epsilon;
  std::vector<double> Omega, phi, phidot;
  std::vector<double> mu, kappa, alpha;
  std::vector<double> upsilon;  // counter-diabatic Sy drive; empty means zero

  std::size_t size() const { return t.size(); }
  double tau() const { return t.empty() ? 0.0 : t.back(); }
  bool has_upsilon() const { return !upsilon.empty(); }

  // Piecewise-linear interpolants on the grid.
  double Omega_at(double time) const;
  double Omega_dot_at(double time) const;
  double phidot_at(double time) const;
  double upsilon_at(double time) const;
  double upsilon_dot_at(double time) const;

  // Largest |d(mu)/dt| / Omega over the grid; small values justify treating
  // the eigenframe as slowly varying.
  double inertial_measure() const;
};

// Sample Omega(t), phi(t), phidot(t) on a uniform grid of step dt (last point
// clamped to tau) and derive the remaining columns.
Schedule make_schedule(StrokeKind kind, double tau, double dt,
                       const std::function<double(double)>& Omega_of_t,
                       const std::function<double(double)>& phi_of_t,
                       const std::function<double(double)>& phidot_of_t);

// Constant controls held for tau.
Schedule constant_schedule(StrokeKind kind, double tau, double dt, double Omega,
                           double phi = 0.0);

// Recompute Omega/phi/phidot/mu/kappa/alpha from the (omega, epsilon) columns;
// phidot by central differences. Used after editing field columns directly.
void derive_polar_columns(Schedule& s);

// Fill omega/epsilon/mu/kappa/alpha from already-set Omega/phi/phidot columns.
void derive_field_columns(Schedule& s);

// Tabular export: header "t,omega,epsilon,Omega,phi,mu,alpha", 12 significant
// digits, no locale. Round-trips through import reproduce the same bytes.
void schedule_export(const Schedule& s, std::ostream& out);
void schedule_export_file(const Schedule& s, const std::string& path);
Schedule schedule_import(std::istream& in, StrokeKind kind = StrokeKind::Unitary);
Schedule schedule_import_file(const std::string& path,
                              StrokeKind kind = StrokeKind::Unitary);

// Fixed numeric formatting shared by every tabular writer: 12 significant
// digits, shortest form, "C" locale semantics.
std::string format_sig12(double x);

}  // namespace qte
