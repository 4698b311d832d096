// Microbenchmarks for the hot paths: closed-system ODE propagation, STE
// schedule synthesis, and limit-cycle solving. Run with --benchmark_filter=...
// to select a subset.

#include <benchmark/benchmark.h>

#include "qte/bloch.hpp"
#include "qte/cycles.hpp"
#include "qte/open.hpp"
#include "qte/protocols.hpp"
#include "qte/schedule.hpp"
#include "qte/unitary.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

void BM_evolve_unitary(benchmark::State& state) {
  const double tau = static_cast<double>(state.range(0));
  const qte::Schedule s = qte::const_mu_schedule(8.0, 6.0, 0.0, kPi / 2, tau, 1e-3);
  const qte::BlochState init = qte::thermal_state(8.0, 10.0);
  for (auto _ : state) {
    auto traj = qte::evolve_unitary(init, s);
    benchmark::DoNotOptimize(traj.back().c[0]);
  }
}
BENCHMARK(BM_evolve_unitary)->Arg(1)->Arg(4)->Arg(16);

void BM_evolve_open(benchmark::State& state) {
  const double tau = static_cast<double>(state.range(0));
  const qte::Schedule s =
      qte::const_mu_schedule(8.0, 6.0, 0.0, kPi / 2, tau, 1e-3, qte::StrokeKind::Open);
  const qte::BathSpec bath{10.0, 0.005, 1.0};
  const qte::BlochState init = qte::thermal_state(8.0, 10.0);
  for (auto _ : state) {
    auto traj = qte::evolve_open(init, s, bath);
    benchmark::DoNotOptimize(traj.states.back().c[0]);
  }
}
BENCHMARK(BM_evolve_open)->Arg(4)->Arg(16);

void BM_synthesize_ste(benchmark::State& state) {
  qte::STERequest req;
  req.Omega_i = 12.0;
  req.Omega_f = 8.0;
  req.tau = static_cast<double>(state.range(0));
  req.bath = qte::BathSpec{10.0, 0.01, 1.0};
  for (auto _ : state) {
    qte::Schedule s = qte::synthesize_ste(req);
    benchmark::DoNotOptimize(s.Omega.back());
  }
}
BENCHMARK(BM_synthesize_ste)->Arg(10)->Arg(30);

void BM_run_cycle(benchmark::State& state) {
  qte::CycleParams p;
  p.A = 0.005;
  switch (state.range(0)) {
    case 0:
      p.kind = qte::CycleKind::LocalOtto;  // fully affine, direct solve
      p.tau_cyc = 30.0;
      break;
    case 1:
      p.kind = qte::CycleKind::LocalCarnot;
      p.tau_cyc = 24.0 * 2.0 * kPi / 4.0;
      break;
    default:
      p.kind = qte::CycleKind::GlobalCarnot;
      p.tau_cyc = 60.0 * 2.0 * kPi / 6.0;
      break;
  }
  const qte::CycleSpec spec = qte::build_cycle(p);
  for (auto _ : state) {
    auto lc = qte::run_cycle(spec);
    benchmark::DoNotOptimize(lc.ledger.eta);
  }
}
BENCHMARK(BM_run_cycle)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
