#include "qte/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qte {

std::string stroke_kind_name(StrokeKind k) {
  switch (k) {
    case StrokeKind::Unitary: return "unitary";
    case StrokeKind::Open: return "open";
    case StrokeKind::Isochore: return "isochore";
  }
  return "?";
}

namespace {

// Interval index i with t[i] <= time <= t[i+1], clamped to the grid.
std::size_t interval_index(const std::vector<double>& t, double time) {
  if (t.size() < 2) return 0;
  auto it = std::upper_bound(t.begin(), t.end(), time);
  std::size_t i = (it == t.begin()) ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  return std::min(i, t.size() - 2);
}

double lerp_column(const std::vector<double>& t, const std::vector<double>& col,
                   double time) {
  if (col.empty()) return 0.0;
  if (t.size() < 2) return col.front();
  const std::size_t i = interval_index(t, time);
  const double h = t[i + 1] - t[i];
  const double w = (h > 0.0) ? std::clamp((time - t[i]) / h, 0.0, 1.0) : 0.0;
  return col[i] + w * (col[i + 1] - col[i]);
}

}  // namespace

double Schedule::Omega_at(double time) const { return lerp_column(t, Omega, time); }

double Schedule::Omega_dot_at(double time) const {
  if (t.size() < 2) return 0.0;
  const std::size_t i = interval_index(t, time);
  const double h = t[i + 1] - t[i];
  return (h > 0.0) ? (Omega[i + 1] - Omega[i]) / h : 0.0;
}

double Schedule::phidot_at(double time) const { return lerp_column(t, phidot, time); }

double Schedule::upsilon_at(double time) const { return lerp_column(t, upsilon, time); }

double Schedule::upsilon_dot_at(double time) const {
  if (upsilon.empty() || t.size() < 2) return 0.0;
  const std::size_t i = interval_index(t, time);
  const double h = t[i + 1] - t[i];
  return (h > 0.0) ? (upsilon[i + 1] - upsilon[i]) / h : 0.0;
}

double Schedule::inertial_measure() const {
  if (t.size() < 2) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    if (h <= 0.0) continue;
    const double mudot = (mu[i + 1] - mu[i]) / h;
    const double Om = 0.5 * (Omega[i] + Omega[i + 1]);
    worst = std::max(worst, std::abs(mudot) / Om);
  }
  return worst;
}

namespace {

std::vector<double> uniform_grid(double tau, double dt) {
  if (tau < 0.0 || dt <= 0.0)
    throw schedule_error("schedule grid: tau must be >= 0 and dt > 0");
  const auto n = static_cast<std::size_t>(std::ceil(tau / dt - 1e-9));
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = std::min(static_cast<double>(i) * dt, tau);
  t.back() = tau;
  return t;
}

void derive_from_polar(Schedule& s) {
  const std::size_t n = s.size();
  s.omega.resize(n);
  s.epsilon.resize(n);
  s.mu.resize(n);
  s.kappa.resize(n);
  s.alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.Omega[i] <= 0.0) throw schedule_error("schedule: Omega must stay positive");
    s.omega[i] = s.Omega[i] * std::cos(s.phi[i]);
    s.epsilon[i] = s.Omega[i] * std::sin(s.phi[i]);
    s.mu[i] = -s.phidot[i] / s.Omega[i];
    s.kappa[i] = std::sqrt(1.0 + s.mu[i] * s.mu[i]);
    s.alpha[i] = s.kappa[i] * s.Omega[i];
  }
}

}  // namespace

Schedule make_schedule(StrokeKind kind, double tau, double dt,
                       const std::function<double(double)>& Omega_of_t,
                       const std::function<double(double)>& phi_of_t,
                       const std::function<double(double)>& phidot_of_t) {
  Schedule s;
  s.kind = kind;
  s.t = uniform_grid(tau, dt);
  const std::size_t n = s.size();
  s.Omega.resize(n);
  s.phi.resize(n);
  s.phidot.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.Omega[i] = Omega_of_t(s.t[i]);
    s.phi[i] = phi_of_t(s.t[i]);
    s.phidot[i] = phidot_of_t(s.t[i]);
  }
  derive_from_polar(s);
  return s;
}

void derive_field_columns(Schedule& s) {
  if (s.Omega.size() != s.size() || s.phi.size() != s.size() ||
      s.phidot.size() != s.size())
    throw schedule_error("derive_field_columns: polar columns missing");
  derive_from_polar(s);
}

Schedule constant_schedule(StrokeKind kind, double tau, double dt, double Omega,
                           double phi) {
  return make_schedule(
      kind, tau, dt, [Omega](double) { return Omega; }, [phi](double) { return phi; },
      [](double) { return 0.0; });
}

void derive_polar_columns(Schedule& s) {
  const std::size_t n = s.size();
  if (s.omega.size() != n || s.epsilon.size() != n)
    throw schedule_error("derive_polar_columns: field columns missing");
  s.Omega.resize(n);
  s.phi.resize(n);
  s.phidot.resize(n);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s.Omega[i] = std::hypot(s.omega[i], s.epsilon[i]);
    double p = std::atan2(s.epsilon[i], s.omega[i]);
    if (i > 0) {  // unwrap to a continuous branch
      while (p - prev > M_PI) p -= 2.0 * M_PI;
      while (p - prev < -M_PI) p += 2.0 * M_PI;
    }
    s.phi[i] = p;
    prev = p;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (n < 2) {
      s.phidot[i] = 0.0;
    } else if (i == 0) {
      s.phidot[i] = (s.phi[1] - s.phi[0]) / (s.t[1] - s.t[0]);
    } else if (i == n - 1) {
      s.phidot[i] = (s.phi[i] - s.phi[i - 1]) / (s.t[i] - s.t[i - 1]);
    } else {
      s.phidot[i] = (s.phi[i + 1] - s.phi[i - 1]) / (s.t[i + 1] - s.t[i - 1]);
    }
  }
  derive_from_polar(s);
}

std::string format_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void schedule_export(const Schedule& s, std::ostream& out) {
  out << "t,omega,epsilon,Omega,phi,mu,alpha\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_sig12(s.t[i]) << ',' << format_sig12(s.omega[i]) << ','
        << format_sig12(s.epsilon[i]) << ',' << format_sig12(s.Omega[i]) << ','
        << format_sig12(s.phi[i]) << ',' << format_sig12(s.mu[i]) << ','
        << format_sig12(s.alpha[i]) << '\n';
  }
}

void schedule_export_file(const Schedule& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw schedule_error("schedule export: cannot open " + path);
  schedule_export(s, f);
  if (!f.good()) throw schedule_error("schedule export: write failure on " + path);
}

Schedule schedule_import(std::istream& in, StrokeKind kind) {
  std::string line;
  if (!std::getline(in, line) || line != "t,omega,epsilon,Omega,phi,mu,alpha")
    throw schedule_error("schedule import: bad or missing header row");
  Schedule s;
  s.kind = kind;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double v[7];
    const char* p = line.c_str();
    for (int c = 0; c < 7; ++c) {
      char* end = nullptr;
      v[c] = std::strtod(p, &end);
      if (end == p) throw schedule_error("schedule import: malformed row: " + line);
      p = end;
      if (c < 6) {
        if (*p != ',') throw schedule_error("schedule import: expected 7 columns: " + line);
        ++p;
      }
    }
    s.t.push_back(v[0]);
    s.omega.push_back(v[1]);
    s.epsilon.push_back(v[2]);
    s.Omega.push_back(v[3]);
    s.phi.push_back(v[4]);
    s.mu.push_back(v[5]);
    s.alpha.push_back(v[6]);
  }
  if (s.size() < 1) throw schedule_error("schedule import: no samples");
  // phidot and kappa are derived, not stored.
  s.phidot.resize(s.size());
  s.kappa.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.phidot[i] = -s.mu[i] * s.Omega[i];
    s.kappa[i] = std::sqrt(1.0 + s.mu[i] * s.mu[i]);
  }
  return s;
}

Schedule schedule_import_file(const std::string& path, StrokeKind kind) {
  std::ifstream f(path);
  if (!f) throw schedule_error("schedule import: cannot open " + path);
  return schedule_import(f, kind);
}

}  // namespace qte
