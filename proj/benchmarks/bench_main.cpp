#include <benchmark/benchmark.h>

#include "dieudet/integrality.hpp"
#include "dieudet/lambda_quotient.hpp"
#include "dieudet/max_order.hpp"
#include "dieudet/rng.hpp"

namespace {

using namespace dieudet;
using QS = Quat<PAdicScalar>;

GroupRingElem<PAdicScalar> random_d2p(Rng& rng, const GroupPtr& g, std::uint32_t prec) {
    std::uint32_t p = g->p_param();
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
    auto out = GroupRingElem<PAdicScalar>::zero(g, PAdicScalar::zero(p, prec));
    for (std::uint16_t i = 0; i < g->size(); ++i)
        out.coeff(i) = PAdicScalar(p, prec, static_cast<std::int64_t>(rng.below(mod)));
    return out;
}

void BM_padic_mul(benchmark::State& state) {
    Rng rng(1);
    PAdicScalar a(3, 16, static_cast<std::int64_t>(rng.below(43046721)));
    PAdicScalar b(3, 16, static_cast<std::int64_t>(rng.below(43046721)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_padic_mul);

void BM_group_ring_mul_d2p5(benchmark::State& state) {
    Rng rng(2);
    GroupPtr g = FiniteGroup::dihedral(5);
    auto a = random_d2p(rng, g, 16), b = random_d2p(rng, g, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_group_ring_mul_d2p5);

void BM_det_class_d2p3(benchmark::State& state) {
    Rng rng(3);
    GroupPtr g = FiniteGroup::dihedral(3);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<GroupRingElem<PAdicScalar>> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_d2p(rng, g, 8));
    Matrix<GroupRingElem<PAdicScalar>> m(n, std::move(e));
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(det_class(m));
        } catch (const Error&) {
        }
    }
}
BENCHMARK(BM_det_class_d2p3)->Arg(2)->Arg(3)->Arg(4);

void BM_dihedral_representative(benchmark::State& state) {
    Rng rng(4);
    GroupPtr g = FiniteGroup::dihedral(3);
    std::vector<GroupRingElem<PAdicScalar>> e;
    for (std::size_t i = 0; i < 9; ++i) e.push_back(random_d2p(rng, g, 8));
    Matrix<GroupRingElem<PAdicScalar>> m(3, std::move(e));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dihedral_integral_representative(m));
    }
}
BENCHMARK(BM_dihedral_representative);

void BM_weierstrass_prepare(benchmark::State& state) {
    Rng rng(5);
    std::vector<QS> c;
    for (int i = 0; i < 12; ++i) {
        std::array<PAdicScalar, 4> q = {PAdicScalar(2, 12, static_cast<std::int64_t>(rng.below(4096))),
                                        PAdicScalar(2, 12, static_cast<std::int64_t>(rng.below(4096))),
                                        PAdicScalar(2, 12, static_cast<std::int64_t>(rng.below(4096))),
                                        PAdicScalar(2, 12, static_cast<std::int64_t>(rng.below(4096)))};
        c.emplace_back(std::move(q));
    }
    TruncSeries<QS> f(std::move(c));
    for (auto _ : state) {
        benchmark::DoNotOptimize(weierstrass_prepare(f));
    }
}
BENCHMARK(BM_weierstrass_prepare);

void BM_det_mod_p2(benchmark::State& state) {
    Rng rng(6);
    const int m = 24;
    auto gen = [&] {
        std::vector<PAdicScalar> c;
        for (int i = 0; i < m; ++i) c.emplace_back(3, 2, static_cast<std::int64_t>(rng.below(9)));
        return LambdaModP2(std::move(c));
    };
    std::vector<LambdaModP2> e;
    for (int i = 0; i < 9; ++i) e.push_back(gen());
    Matrix<LambdaModP2> a(3, std::move(e));
    for (auto _ : state) {
        benchmark::DoNotOptimize(det_commutative(a));
    }
}
BENCHMARK(BM_det_mod_p2);

} // namespace

BENCHMARK_MAIN();
