#include <benchmark/benchmark.h>

#include "clift/defun.hpp"
#include "clift/oracle.hpp"

using namespace clift;

namespace {

Instance instance(std::uint64_t seed) {
  InstanceSpec spec;
  spec.seed = seed;
  spec.p = seed % 2 ? 3 : 2;
  spec.tower = static_cast<TowerKind>((seed / 2) % 3);
  spec.algebra = (seed / 6) % 2 ? AlgebraKind::Custom : AlgebraKind::Trivial;
  return gen_instance(spec);
}

FpMatrix random_matrix(int p, int n, std::uint64_t seed) {
  Rng rng(seed);
  FpMatrix m(p, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = rand_below(rng, p);
  return m;
}

}  // namespace

static void BM_RowReduce(benchmark::State& state) {
  const FpMatrix m = random_matrix(3, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(row_reduce(m));
}
BENCHMARK(BM_RowReduce)->Arg(16)->Arg(64)->Arg(128);

static void BM_ObstructDifferential(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::uint64_t>(state.range(0)));
  const DifferentialProblem P(inst.A, inst.C);
  for (auto _ : state) benchmark::DoNotOptimize(obstruct_differential(P));
}
BENCHMARK(BM_ObstructDifferential)->DenseRange(20, 26);

static void BM_ClassifyLifts(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::uint64_t>(state.range(0)));
  const DifferentialProblem P(inst.A, inst.C);
  if (!obstruct_differential(P).is_zero()) {
    state.SkipWithError("obstructed instance");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(classify_lifts(P));
}
BENCHMARK(BM_ClassifyLifts)->Arg(2)->Arg(9)->Arg(13);

static void BM_Oracle(benchmark::State& state) {
  const Instance inst = instance(1);
  const DifferentialProblem P(inst.A, inst.C);
  OracleOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_differential(P, opt));
  state.counters["space"] = static_cast<double>(KernelEnumerator(inst.A, inst.C.obj, inst.C.obj, 1).size());
}
BENCHMARK(BM_Oracle)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_CrudeLift(benchmark::State& state) {
  Rng rng(11);
  const DeformedAlgebra A = random_algebra(rng, random_tower(rng, 2, TowerKind::ZMod), AlgebraKind::Trivial);
  HomotopyEquivData E = random_homotopy_equivalence(rng, A, random_complex(rng, A, 1, 3));
  const LiftReport r = lift_differential(DifferentialProblem(A, E.D));
  for (auto _ : state) benchmark::DoNotOptimize(crude_lift(A, E, *r.witness));
}
BENCHMARK(BM_CrudeLift);

static void BM_FunctorEval(benchmark::State& state) {
  const DeformedAlgebra A = mk_scalar_algebra(mk_tower(TowerKind::TruncPoly, 2, {1, 1, 0}));
  const GradedObject obj{0, {1, 1, 1}};
  const BaseComplex bc = make_base_complex(2, 1, {1}, GradedMap::zero(A, Level::Base, obj, obj, 1));
  const ArtinRing R = artin_ring(state.range(0) == 2 ? trunc_poly_ring(2, 2) : trunc_poly_ring(2, 3));
  for (auto _ : state) benchmark::DoNotOptimize(functor_eval(FunctorTag::F, R, bc));
}
BENCHMARK(BM_FunctorEval)->Arg(2)->Arg(3);
