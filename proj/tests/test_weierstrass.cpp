#include "doctest.h"

#include <optional>

#include "dieudet/max_order.hpp"
#include "dieudet/rng.hpp"

using namespace dieudet;

namespace {

using QS = Quat<PAdicScalar>;
using QSeries = TruncSeries<QS>;
using ZSeries = TruncSeries<PAdicScalar>;

QS random_quat(Rng& rng, std::uint32_t prec) {
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= 2;
    std::array<PAdicScalar, 4> c = {PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod))),
                                    PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod))),
                                    PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod))),
                                    PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod)))};
    return QS(std::move(c));
}

QSeries random_qseries(Rng& rng, std::uint32_t prec, int m) {
    std::vector<QS> c;
    for (int i = 0; i < m; ++i) c.push_back(random_quat(rng, prec));
    return QSeries(std::move(c));
}

ZSeries random_zseries(Rng& rng, std::uint64_t p, std::uint32_t prec, int m) {
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
    std::vector<PAdicScalar> c;
    for (int i = 0; i < m; ++i) c.emplace_back(p, prec, static_cast<std::int64_t>(rng.below(mod)));
    return ZSeries(std::move(c));
}

template <class C>
bool reconstructs(const TruncSeries<C>& f, const WeierstrassFactorization<C>& w) {
    TruncSeries<C> rebuilt = pi_pow_mul_left(w.unit * w.monic, static_cast<std::uint32_t>(w.mu));
    return rebuilt.equal_where_trusted(f);
}

} // namespace

TEST_CASE("reduced order on the fixed examples") {
    std::uint32_t prec = 10;
    PAdicScalar z = PAdicScalar::zero(2, prec);
    QS one = QS::constant(PAdicScalar::one(2, prec));
    QS pi = QS::pi(z);

    // f = x^3 + pi x: coefficient of x is not a unit, x^3 carries 1.
    std::vector<QS> c(6, zero_like(one));
    c[1] = pi;
    c[3] = one;
    CHECK(reduced_order(QSeries(c)) == 3);

    CHECK(reduced_order(QSeries::constant(one, 6)) == 0);

    // pi * (non-units) everywhere: no unit coefficient at all.
    std::vector<QS> d(6, zero_like(one));
    d[0] = pi;
    d[2] = pi * pi;
    CHECK(!reduced_order(QSeries(d)).has_value());
}

TEST_CASE("left and right division reconstruct the dividend") {
    Rng rng(71);
    std::uint32_t prec = 12;
    const int m = 12;
    int done = 0;
    while (done < 60) {
        QSeries f2 = random_qseries(rng, prec, m);
        auto ord = reduced_order(f2);
        if (!ord || *ord > 3) continue;
        QSeries f1 = random_qseries(rng, prec, m);
        SkewDivision<QS> left = weierstrass_divide_left(f1, f2);
        CHECK((left.quotient * f2 + left.remainder).equal_where_trusted(f1));
        for (int i = *ord; i < m; ++i) CHECK(left.remainder.coeff(i).is_zero());

        SkewDivision<QS> right = weierstrass_divide_right(f1, f2);
        CHECK((f2 * right.quotient + right.remainder).equal_where_trusted(f1));
        for (int i = *ord; i < m; ++i) CHECK(right.remainder.coeff(i).is_zero());
        ++done;
    }

    // dividing by x shifts; dividing f by itself gives quotient 1.
    QSeries f2 = QSeries::monomial(QS::constant(PAdicScalar::one(2, prec)), 1, m);
    QSeries f1 = random_qseries(rng, prec, m);
    SkewDivision<QS> d = weierstrass_divide_left(f1, f2);
    CHECK(d.remainder.coeff(0) == f1.coeff(0));
    for (int i = 0; i + 1 < m - 1; ++i) CHECK(d.quotient.coeff(i) == f1.coeff(i + 1));

    QSeries g = random_qseries(rng, prec, m);
    if (reduced_order(g)) {
        SkewDivision<QS> selfdiv = weierstrass_divide_left(g, g);
        CHECK(selfdiv.quotient.equal_where_trusted(one_like(g)));
        CHECK(selfdiv.remainder.is_zero());
    }
}

TEST_CASE("weierstrass preparation reconstructs and is monic") {
    Rng rng(72);
    std::uint32_t prec = 12;
    const int m = 12;

    // pi^2 (1 + x): the pi-free part is already a unit series, so the monic
    // factor is trivial.
    QS one = QS::constant(PAdicScalar::one(2, prec));
    QS pi = QS::pi(PAdicScalar::zero(2, prec));
    std::vector<QS> c(m, zero_like(one));
    c[0] = pi * pi;
    c[1] = pi * pi;
    QSeries f(c);
    WeierstrassFactorization<QS> w = weierstrass_prepare(f);
    CHECK(w.mu == 2);
    CHECK(reduced_order(w.monic) == 0);
    CHECK(w.monic.coeff(0) == one);
    CHECK(reconstructs(f, w));

    // a monic polynomial with unit-free lower terms prepares to itself
    std::vector<QS> jc(m, zero_like(one));
    jc[0] = pi;
    jc[2] = one;
    QSeries j(jc);
    WeierstrassFactorization<QS> wj = weierstrass_prepare(j);
    CHECK(wj.mu == 0);
    CHECK(wj.monic == j);
    CHECK(wj.unit.equal_where_trusted(one_like(j)));

    int done = 0;
    while (done < 100) {
        QSeries f = random_qseries(rng, prec, m);
        auto mu0 = rng.below(3);
        f = pi_pow_mul_left(f, static_cast<std::uint32_t>(mu0));
        std::optional<WeierstrassFactorization<QS>> w;
        try {
            w = weierstrass_prepare(f);
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::ZeroAtPrecision || e.kind() == ErrorKind::PrecisionTooLow));
            continue;
        }
        CHECK(reconstructs(f, *w));
        auto s = reduced_order(w->monic);
        REQUIRE(s.has_value());
        CHECK(w->monic.coeff(*s) == one_like(f.coeff(0)));
        for (int i = *s + 1; i < m; ++i) CHECK(w->monic.coeff(i).is_zero());
        CHECK(od_is_unit(w->unit.coeff(0)));

        // right-handed variant: H V pi^mu
        WeierstrassFactorization<QS> wr = weierstrass_prepare_right(f);
        TruncSeries<QS> rebuilt = pi_pow_mul_right(wr.monic * wr.unit, static_cast<std::uint32_t>(wr.mu));
        CHECK(rebuilt.equal_where_trusted(f));
        ++done;
    }
}

TEST_CASE("commutative degenerate preparation matches the classical contract") {
    Rng rng(73);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        std::uint32_t prec = 10;
        const int m = 10;
        int done = 0;
        while (done < 100) {
            ZSeries f = random_zseries(rng, p, prec, m);
            std::optional<WeierstrassFactorization<PAdicScalar>> ow;
            try {
                ow = weierstrass_prepare(f);
            } catch (const Error&) {
                continue;
            }
            const WeierstrassFactorization<PAdicScalar>& w = *ow;
            // classical Weierstrass data computed independently:
            // mu = min coefficient valuation; s = first unit index after the strip.
            std::uint32_t mu = prec;
            for (int i = 0; i < m; ++i) {
                Valuation v = f.coeff(i).valuation();
                if (!v.is_top() && v.value() < mu) mu = v.value();
            }
            CHECK(static_cast<std::uint32_t>(w.mu) == mu);
            int s = -1;
            for (int i = 0; i < m && s < 0; ++i) {
                Valuation v = f.coeff(i).valuation();
                if (!v.is_top() && v.value() == mu) s = i;
            }
            REQUIRE(s >= 0);
            CHECK(reduced_order(w.monic) == 0 + s);
            // distinguished: J = x^s mod p
            for (int i = 0; i < s; ++i) CHECK(w.monic.coeff(i).residue() % p == 0);
            CHECK(w.monic.coeff(s) == PAdicScalar::one(p, prec));
            CHECK(w.unit.coeff(0).is_unit());
            CHECK(reconstructs(f, w));
            ++done;
        }
    }

    // p + x prepares to U = 1, J = x + p.
    std::vector<PAdicScalar> c(8, PAdicScalar::zero(3, 8));
    c[0] = PAdicScalar(3, 8, 3);
    c[1] = PAdicScalar::one(3, 8);
    WeierstrassFactorization<PAdicScalar> w = weierstrass_prepare(ZSeries(c));
    CHECK(w.mu == 0);
    CHECK(w.monic.coeff(0).residue() == 3);
    CHECK(w.monic.coeff(1).residue() == 1);
    CHECK(w.unit.equal_where_trusted(one_like(ZSeries(c))));
}

TEST_CASE("reduced order is additive on pi-free series") {
    Rng rng(74);
    std::uint32_t prec = 10;
    const int m = 12;
    int done = 0;
    while (done < 100) {
        QSeries f = random_qseries(rng, prec, m);
        QSeries g = random_qseries(rng, prec, m);
        auto cf = detail::series_pi_content(f);
        auto cg = detail::series_pi_content(g);
        if (!cf || *cf != 0 || !cg || *cg != 0) continue;
        auto of = reduced_order(f), og = reduced_order(g);
        if (!of || !og || *of + *og >= m) continue;
        CHECK(reduced_order(f * g) == *of + *og);
        ++done;
    }
}

TEST_CASE("Nrd of a monic polynomial is monic of doubled degree") {
    Rng rng(75);
    std::uint32_t prec = 10;
    const int m = 12;
    int done = 0;
    while (done < 60) {
        int deg = 1 + static_cast<int>(rng.below(3));
        std::vector<QS> c(m, QS::constant(PAdicScalar::zero(2, prec)));
        for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = random_quat(rng, prec);
        c[static_cast<std::size_t>(deg)] = QS::constant(PAdicScalar::one(2, prec));
        Matrix<QSeries> j(1, {QSeries(c)});
        ZSeries nrd = nrd_integral(j);
        CHECK(nrd.coeff(2 * deg).residue() == 1);
        for (int i = 2 * deg + 1; i < m; ++i) CHECK(nrd.coeff(i).is_zero());
        ++done;
    }

    // Nrd(pi) = 2, the uniformizer downstairs; Nrd(identity) = 1.
    Matrix<QSeries> mpi(1, {QSeries::constant(QS::pi(PAdicScalar::zero(2, prec)), m)});
    ZSeries npi = nrd_integral(mpi);
    CHECK(npi.coeff(0).residue() == 2);
    for (int i = 1; i < m; ++i) CHECK(npi.coeff(i).is_zero());
    Matrix<QSeries> mid(1, {QSeries::constant(QS::constant(PAdicScalar::one(2, prec)), m)});
    CHECK(nrd_integral(mid).coeff(0).residue() == 1);
}

TEST_CASE("diagonal reduction reconstructs through its operation trace") {
    Rng rng(76);
    std::uint32_t prec = 14;
    const int m = 10;
    int done = 0;
    while (done < 40) {
        std::size_t n = 2;
        Matrix<QSeries> a = Matrix<QSeries>::filled(n, QSeries::constant(QS::constant(PAdicScalar::zero(2, prec)), m));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) = random_qseries(rng, prec, m);
        Matrix<Localized<QS>> loc = Matrix<Localized<QS>>::filled(n, Localized<QS>::zero_of(a.at(0, 0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) loc.at(i, j) = Localized<QS>(a.at(i, j), 0);
        std::optional<DiagonalReduction<QS>> ored;
        try {
            ored = diagonal_reduce(loc);
        } catch (const Error&) {
            continue;
        }
        const DiagonalReduction<QS>& red = *ored;
        // replaying the trace on A yields the diagonal
        Matrix<Localized<QS>> replay = loc;
        for (const auto& op : red.ops) apply_op(replay, op);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (i == j) {
                    if (replay.at(i, j) != red.diagonal.at(i, i)) ok = false;
                } else if (!replay.at(i, j).is_zero()) {
                    ok = false;
                }
            }
        CHECK(ok);
        // the trace uses only elementary, permutation, and scalar matrices
        for (const auto& op : red.ops) {
            bool structural = op.kind == OpKind::RowSwap || op.kind == OpKind::ColSwap ||
                              op.kind == OpKind::RowAddLeft || op.kind == OpKind::ColAddRight ||
                              op.kind == OpKind::ScaleRowLeft || op.kind == OpKind::ScaleColRight;
            CHECK(structural);
        }
        ++done;
    }

    // already diagonal: no operations at all
    Matrix<Localized<QS>> d = Matrix<Localized<QS>>::filled(
        2, Localized<QS>::zero_of(QSeries::constant(QS::constant(PAdicScalar::zero(2, prec)), m)));
    d.at(0, 0) = Localized<QS>(QSeries::monomial(QS::constant(PAdicScalar::one(2, prec)), 1, m), 0);
    d.at(1, 1) = Localized<QS>(QSeries::constant(QS::constant(PAdicScalar::one(2, prec)), m), 0);
    DiagonalReduction<QS> red = diagonal_reduce(d);
    CHECK(red.ops.empty());

    // 3x3 at a higher working precision; precision refusals are allowed but
    // most samples must reconstruct.
    Rng rng3(761);
    int done3 = 0, attempts = 0;
    while (done3 < 100 && attempts < 400) {
        ++attempts;
        Matrix<Localized<QS>> loc = Matrix<Localized<QS>>::filled(
            3, Localized<QS>::zero_of(QSeries::constant(QS::constant(PAdicScalar::zero(2, 20)), m)));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) loc.at(i, j) = Localized<QS>(random_qseries(rng3, 20, m), 0);
        std::optional<DiagonalReduction<QS>> ored;
        try {
            ored = diagonal_reduce(loc);
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::PrecisionTooLow || e.kind() == ErrorKind::SingularAtPrecision));
            continue;
        }
        Matrix<Localized<QS>> replay = loc;
        for (const auto& op : ored->ops) apply_op(replay, op);
        bool ok = true;
        for (std::size_t i = 0; i < 3 && ok; ++i)
            for (std::size_t j = 0; j < 3 && ok; ++j) {
                if (i == j && replay.at(i, j) != ored->diagonal.at(i, i)) ok = false;
                if (i != j && !replay.at(i, j).is_zero()) ok = false;
            }
        CHECK(ok);
        ++done3;
    }
    CHECK(done3 >= 60);
}

TEST_CASE("integral determinant representative has a non-negative exponent and the right norm") {
    Rng rng(77);
    std::uint32_t prec = 14;
    const int m = 10;

    // identity -> (1, 1, 0)
    Matrix<QSeries> mid =
        Matrix<QSeries>::identity(2, QSeries::constant(QS::constant(PAdicScalar::zero(2, prec)), m));
    auto rid = integral_det_representative(mid);
    CHECK(rid.pi_exponent == 0);
    CHECK(representative_nrd(rid).equal_where_trusted(nrd_integral(mid)));

    // diag(p) over 1x1: r = 2 with a unit beta, since p = u pi^2
    Matrix<QSeries> mp(1, {QSeries::constant(QS::constant(PAdicScalar(2, prec, 2)), m)});
    auto rp = integral_det_representative(mp);
    CHECK(rp.pi_exponent == 2);
    CHECK(od_is_unit(rp.beta.coeff(0)));
    CHECK(representative_nrd(rp).equal_where_trusted(nrd_integral(mp)));

    int done = 0;
    while (done < 50) {
        Matrix<QSeries> a = Matrix<QSeries>::filled(2, QSeries::constant(QS::constant(PAdicScalar::zero(2, prec)), m));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = random_qseries(rng, prec, m);
        ZSeries nrd = zero_like(nrd_integral(mid));
        try {
            nrd = nrd_integral(a); // also checks Step-1 integrality
        } catch (const Error& e) {
            FAIL("nrd_integral raised: ", e.what());
        }
        if (nrd.is_zero()) continue;
        std::optional<IntegralDetRepresentative<QS>> rep;
        try {
            rep = integral_det_representative(a);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PrecisionTooLow);
            continue;
        }
        CHECK(rep->pi_exponent >= 0);
        CHECK(representative_nrd(*rep).equal_where_trusted(nrd));
        ++done;
    }
}

TEST_CASE("commutative degenerate pipeline agrees with plain determinants") {
    Rng rng(78);
    std::uint64_t p = 3;
    std::uint32_t prec = 10;
    const int m = 10;
    int done = 0;
    while (done < 40) {
        Matrix<ZSeries> a = Matrix<ZSeries>::filled(2, ZSeries::constant(PAdicScalar::zero(p, prec), m));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = random_zseries(rng, p, prec, m);
        ZSeries det = nrd_integral(a);
        if (det.is_zero()) continue;
        std::optional<IntegralDetRepresentative<PAdicScalar>> rep;
        try {
            rep = integral_det_representative(a);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PrecisionTooLow);
            continue;
        }
        CHECK(rep->pi_exponent >= 0);
        CHECK(representative_nrd(*rep).equal_where_trusted(det));
        ++done;
    }
}
