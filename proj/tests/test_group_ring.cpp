#include "doctest.h"

#include <optional>

#include "dieudet/group_ring.hpp"
#include "dieudet/rng.hpp"

using namespace dieudet;

namespace {

GroupRingElem<Rational> h8_elem(std::initializer_list<std::pair<const char*, long>> terms) {
    GroupPtr g = FiniteGroup::h8();
    auto out = GroupRingElem<Rational>::zero(g, Rational());
    for (auto& [w, c] : terms) out.coeff(g->parse_word(w)) += Rational(c);
    return out;
}

GroupRingElem<PAdicScalar> d2p_elem(std::uint32_t p, std::uint32_t prec,
                                    std::initializer_list<std::pair<const char*, long>> terms) {
    GroupPtr g = FiniteGroup::dihedral(p);
    auto out = GroupRingElem<PAdicScalar>::zero(g, PAdicScalar::zero(p, prec));
    for (auto& [w, c] : terms) out.coeff(g->parse_word(w)) += PAdicScalar(p, prec, c);
    return out;
}

GroupRingElem<PAdicScalar> random_d2p(Rng& rng, GroupPtr g, std::uint32_t prec) {
    std::uint32_t p = g->p_param();
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
    auto out = GroupRingElem<PAdicScalar>::zero(g, PAdicScalar::zero(p, prec));
    for (std::uint16_t i = 0; i < g->size(); ++i)
        out.coeff(i) = PAdicScalar(p, prec, static_cast<std::int64_t>(rng.below(mod)));
    return out;
}

GroupRingElem<Rational> random_h8(Rng& rng) {
    GroupPtr g = FiniteGroup::h8();
    auto out = GroupRingElem<Rational>::zero(g, Rational());
    for (std::uint16_t i = 0; i < 8; ++i) out.coeff(i) = Rational(rng.range(-9, 9));
    return out;
}

// Oracle: solvability of a*b = 1 as a linear system over Z/p^N via Gaussian
// elimination on the regular representation, pivoting on units only.
std::optional<std::vector<PAdicScalar>> solve_regular_rep(const GroupRingElem<PAdicScalar>& a) {
    const GroupPtr& g = a.group();
    const std::size_t n = g->size();
    PAdicScalar zero = zero_like(a.coeff(0));
    // Column j of L_a is a * e_j.
    std::vector<PAdicScalar> m(n * (n + 1), zero);
    for (std::uint16_t j = 0; j < n; ++j)
        for (std::uint16_t k = 0; k < n; ++k) m[g->mul(k, j) * (n + 1) + j] += a.coeff(k);
    m[0 * (n + 1) + n] = one_like(zero); // rhs = e_identity
    std::vector<std::size_t> perm(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (m[r * (n + 1) + c].is_unit()) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        for (std::size_t k = 0; k <= n; ++k) std::swap(m[piv * (n + 1) + k], m[c * (n + 1) + k]);
        PAdicScalar inv = m[c * (n + 1) + c].inverse();
        for (std::size_t k = 0; k <= n; ++k) m[c * (n + 1) + k] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            PAdicScalar f = m[r * (n + 1) + c];
            if (f.is_zero()) continue;
            for (std::size_t k = 0; k <= n; ++k) m[r * (n + 1) + k] -= f * m[c * (n + 1) + k];
        }
    }
    std::vector<PAdicScalar> sol;
    for (std::size_t r = 0; r < n; ++r) sol.push_back(m[r * (n + 1) + n]);
    return sol;
}

} // namespace

TEST_CASE("group tables and word parsing") {
    GroupPtr h8 = FiniteGroup::h8();
    CHECK(h8->size() == 8);
    CHECK(h8->word(0) == "1");
    CHECK(h8->word(1) == "x");
    CHECK(h8->word(2) == "x^2");
    CHECK(h8->word(4) == "y");
    CHECK(h8->word(5) == "x*y");
    // x^2 = y^2 and y x y^{-1} = x^{-1}
    std::uint16_t x = h8->parse_word("x"), y = h8->parse_word("y");
    CHECK(h8->mul(x, x) == h8->mul(y, y));
    CHECK(h8->mul(h8->mul(y, x), h8->inverse(y)) == h8->inverse(x));

    GroupPtr d6 = FiniteGroup::dihedral(3);
    std::uint16_t dx = d6->parse_word("x"), dy = d6->parse_word("y");
    CHECK(d6->mul(dx, dx) == 0);
    CHECK(d6->mul(d6->mul(dx, dy), d6->inverse(dx)) == d6->inverse(dy));
    CHECK(d6->parse_word("x*y^2") == d6->mul(dx, d6->mul(dy, dy)));

    CHECK_THROWS_AS(d6->parse_word("x^"), Error);
    CHECK_THROWS_AS(d6->parse_word("z"), Error);
    CHECK_THROWS_AS(FiniteGroup::parse_spec("D2p:4"), Error);
}

TEST_CASE("group ring convolution on the fixed examples") {
    // (1 + y)(1 + xy) in Z2[H8] = 1 + xy + y + y*xy, and y*xy = x.
    auto a = h8_elem({{"1", 1}, {"y", 1}});
    auto b = h8_elem({{"1", 1}, {"x*y", 1}});
    auto prod = a * b;
    CHECK(prod == h8_elem({{"1", 1}, {"x", 1}, {"y", 1}, {"x*y", 1}}));

    GroupPtr c2 = FiniteGroup::c2();
    auto e = GroupRingElem<PAdicScalar>::basis(c2, 1, PAdicScalar::zero(5, 4));
    CHECK(e * e == GroupRingElem<PAdicScalar>::scalar(c2, PAdicScalar::one(5, 4)));

    Rng rng(1);
    auto r = random_d2p(rng, FiniteGroup::dihedral(5), 6);
    auto one = GroupRingElem<PAdicScalar>::scalar(r.group(), PAdicScalar::one(5, 6));
    CHECK(r * one == r);
}

TEST_CASE("wedderburn projections follow the fixed assignments") {
    // H8: 9 + x + 2y -> (9 + e + 2f, 9 + i + 2j)
    auto a = h8_elem({{"1", 9}, {"x", 1}, {"y", 2}});
    auto img = wedderburn_h8(a);
    GroupPtr k4 = FiniteGroup::klein4();
    CHECK(img.comm.coeff(0) == Rational(9));
    CHECK(img.comm.coeff(1) == Rational(1)); // e
    CHECK(img.comm.coeff(2) == Rational(2)); // f
    CHECK(img.comm.coeff(3) == Rational(0));
    Quat<Rational> expect = Quat<Rational>::constant(Rational(9)) + Quat<Rational>::unit_i(Rational(1)) +
                            Quat<Rational>::unit_j(Rational(1)).scaled(Rational(2));
    CHECK(img.div == expect);

    // D2p: y -> (1, zeta); identity -> (1, 1)
    auto y = d2p_elem(5, 6, {{"y", 1}});
    auto wy = wedderburn_d2p(y);
    CHECK(wy.comm.coeff(0).residue() == 1);
    CHECK(wy.comm.coeff(1).residue() == 0);
    CHECK(wy.div.c() == CycloZp::zeta_power(5, 1, PAdicScalar::one(5, 6)));
    CHECK(wy.div.d().is_zero());

    auto x = d2p_elem(5, 6, {{"x", 1}});
    auto wx = wedderburn_d2p(x);
    CHECK(wx.div.c().is_zero());
    CHECK(wx.div.d() == cyclo_one(5, 6));

    auto one = d2p_elem(5, 6, {{"1", 1}});
    auto wone = wedderburn_d2p(one);
    CHECK(wone.comm.coeff(0).residue() == 1);
    CHECK(wone.div.c() == cyclo_one(5, 6));
}

TEST_CASE("projections are ring homomorphisms and injective on integral elements") {
    Rng rng(10);
    GroupPtr d10 = FiniteGroup::dihedral(5);
    for (int t = 0; t < 250; ++t) {
        auto a = random_d2p(rng, d10, 5), b = random_d2p(rng, d10, 5);
        auto wa = wedderburn_d2p(a), wb = wedderburn_d2p(b), wab = wedderburn_d2p(a * b);
        CHECK(wab.comm == wa.comm * wb.comm);
        CHECK(wab.div == wa.div * wb.div);
        if (a != b) {
            bool distinct = wa.comm != wb.comm || wa.div != wb.div;
            CHECK(distinct);
        }
    }
    for (int t = 0; t < 250; ++t) {
        auto a = random_h8(rng), b = random_h8(rng);
        auto wa = wedderburn_h8(a), wb = wedderburn_h8(b), wab = wedderburn_h8(a * b);
        CHECK(wab.comm == wa.comm * wb.comm);
        CHECK(wab.div == wa.div * wb.div);
        if (a != b) {
            bool distinct = wa.comm != wb.comm || wa.div != wb.div;
            CHECK(distinct);
        }
    }
}

TEST_CASE("integral membership through the fiber product") {
    Rng rng(20);
    // Images of actual group ring elements are members; products stay members.
    for (int t = 0; t < 100; ++t) {
        auto a = random_h8(rng), b = random_h8(rng);
        CHECK(is_integral_member(wedderburn_h8(a)));
        auto wa = wedderburn_h8(a), wb = wedderburn_h8(b);
        H8Wedderburn<Rational> prod{wa.comm * wb.comm, wa.div * wb.div};
        CHECK(is_integral_member(prod));
    }
    GroupPtr d6 = FiniteGroup::dihedral(3);
    for (int t = 0; t < 100; ++t) {
        auto a = random_d2p(rng, d6, 6), b = random_d2p(rng, d6, 6);
        CHECK(is_integral_member(wedderburn_d2p(a)));
        auto wa = wedderburn_d2p(a), wb = wedderburn_d2p(b);
        DihedralWedderburn<PAdicScalar> prod{wa.comm * wb.comm, wa.div * wb.div};
        CHECK(is_integral_member(prod));
    }

    // (1, 0): a unit in one factor, zero in the other, violates 1 = 0 mod 2.
    GroupPtr k4 = FiniteGroup::klein4();
    H8Wedderburn<Rational> bad{GroupRingElem<Rational>::scalar(k4, Rational(1)),
                               zero_like(Quat<Rational>::constant(Rational()))};
    CHECK(!is_integral_member(bad));
}

TEST_CASE("unit detection against the residue ring") {
    // H8: 9 + x + 2y has even coefficient sum, hence not a unit.
    CHECK(!is_unit_h8(h8_elem({{"1", 9}, {"x", 1}, {"y", 2}})));
    CHECK(is_unit_h8(h8_elem({{"1", 1}})));
    CHECK(is_unit_d2p(d2p_elem(3, 6, {{"x", 1}})));
    CHECK(is_unit_d2p(d2p_elem(3, 6, {{"1", 1}})));

    // Exhaustive oracle over F_2[H8]: a is a unit iff some b has a*b = 1.
    GroupPtr h8 = FiniteGroup::h8();
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        bool invertible = false;
        for (std::uint32_t bm = 0; bm < 256 && !invertible; ++bm) {
            std::uint32_t prod = 0;
            for (int i = 0; i < 8; ++i) {
                if (!(mask & (1u << i))) continue;
                for (int j = 0; j < 8; ++j) {
                    if (!(bm & (1u << j))) continue;
                    prod ^= 1u << h8->mul(static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j));
                }
            }
            invertible = prod == 1;
        }
        auto a = GroupRingElem<Rational>::zero(h8, Rational());
        for (int i = 0; i < 8; ++i)
            if (mask & (1u << i)) a.coeff(static_cast<std::uint16_t>(i)) = Rational(1);
        CHECK(is_unit_h8(a) == invertible);
    }

    // D2p: 500 random samples against the linear-system oracle.
    Rng rng(30);
    GroupPtr d6 = FiniteGroup::dihedral(3);
    int units = 0;
    for (int t = 0; t < 500; ++t) {
        auto a = random_d2p(rng, d6, 5);
        auto sol = solve_regular_rep(a);
        CHECK(is_unit_d2p(a) == sol.has_value());
        if (!sol) continue;
        ++units;
        auto b = GroupRingElem<PAdicScalar>(d6, *sol);
        CHECK((a * b) == GroupRingElem<PAdicScalar>::scalar(d6, PAdicScalar::one(3, 5)));
    }
    CHECK(units > 100);
}

TEST_CASE("maximal ideal membership in Z_p[D_2p]") {
    for (std::uint32_t p : {3u, 5u}) {
        auto xm1 = d2p_elem(p, 6, {{"x", 1}, {"1", -1}});
        CHECK(maximal_ideal_membership(xm1) == std::pair<bool, bool>{true, false});
        auto xp1 = d2p_elem(p, 6, {{"x", 1}, {"1", 1}});
        CHECK(maximal_ideal_membership(xp1) == std::pair<bool, bool>{false, true});
        auto pp = d2p_elem(p, 6, {{"1", static_cast<long>(p)}});
        CHECK(maximal_ideal_membership(pp) == std::pair<bool, bool>{true, true});
    }
}

TEST_CASE("sum of complementary non-members is a unit") {
    Rng rng(40);
    GroupPtr d6 = FiniteGroup::dihedral(3);
    std::uint32_t p = 3, prec = 6;
    auto one_minus_x = d2p_elem(p, prec, {{"1", 1}, {"x", -1}});
    auto one_plus_x = d2p_elem(p, prec, {{"1", 1}, {"x", 1}});
    PAdicScalar inv2 = PAdicScalar(p, prec, 2).inverse();
    for (int t = 0; t < 200; ++t) {
        while (true) {
            auto a = random_d2p(rng, d6, prec);
            auto aprime = random_d2p(rng, d6, prec);
            // Force a into m' but not m, and a' into m but not m'.
            auto cha = dihedral_residue_characters(a);
            a -= one_minus_x.scaled(PAdicScalar(p, prec, static_cast<std::int64_t>(cha.minus)) * inv2);
            auto chp = dihedral_residue_characters(aprime);
            aprime -= one_plus_x.scaled(PAdicScalar(p, prec, static_cast<std::int64_t>(chp.plus)) * inv2);
            cha = dihedral_residue_characters(a);
            chp = dihedral_residue_characters(aprime);
            if (cha.plus == 0 || chp.minus == 0) continue;
            REQUIRE(cha.minus == 0);
            REQUIRE(chp.plus == 0);
            CHECK(is_unit_d2p(a + aprime));
            break;
        }
    }
}

TEST_CASE("constant-series embedding into Lambda[G]") {
    Rng rng(50);
    GroupPtr d6 = FiniteGroup::dihedral(3);
    const int m = 8;
    auto one = d2p_elem(3, 6, {{"1", 1}});
    auto emb = lambda_embed(one, m);
    CHECK(emb.coeff(0).coeff(0).residue() == 1);
    for (int k = 1; k < m; ++k) CHECK(emb.coeff(0).coeff(k).is_zero());

    for (int t = 0; t < 100; ++t) {
        auto a = random_d2p(rng, d6, 6), b = random_d2p(rng, d6, 6);
        CHECK(lambda_evaluate_at_zero(lambda_embed(a, m)) == a);
        // Embedding commutes with the convolution product.
        CHECK(lambda_embed(a, m) * lambda_embed(b, m) == lambda_embed(a * b, m));
    }
}
