#include "dieudet/selfcheck.hpp"

#include "dieudet/integrality.hpp"
#include "dieudet/lambda_quotient.hpp"
#include "dieudet/max_order.hpp"
#include "dieudet/rng.hpp"

namespace dieudet::checks {

namespace {

using QS = Quat<PAdicScalar>;

struct Suite {
    std::vector<CheckResult> results;

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        results.push_back({name, ok, detail});
    }

    // Runs the body and converts any escaped exception into a failure.
    template <class F>
    void guarded(const std::string& name, F body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
};

GroupRingElem<Rational> h8_elem(std::initializer_list<std::pair<const char*, long>> terms) {
    GroupPtr g = FiniteGroup::h8();
    auto out = GroupRingElem<Rational>::zero(g, Rational());
    for (auto& [w, c] : terms) out.coeff(g->parse_word(w)) += Rational(c);
    return out;
}

Matrix<GroupRingElem<Rational>> h8_paper_matrix() {
    return Matrix<GroupRingElem<Rational>>(
        2, {h8_elem({{"1", 9}, {"x", 1}, {"y", 2}}), h8_elem({{"1", 1}, {"y", 1}}),
            h8_elem({{"1", 1}, {"x*y", 1}}), h8_elem({{"1", 9}, {"x", 1}})});
}

GroupRingElem<PAdicScalar> random_d2p(Rng& rng, const GroupPtr& g, std::uint32_t prec) {
    std::uint32_t p = g->p_param();
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
    auto out = GroupRingElem<PAdicScalar>::zero(g, PAdicScalar::zero(p, prec));
    for (std::uint16_t i = 0; i < g->size(); ++i)
        out.coeff(i) = PAdicScalar(p, prec, static_cast<std::int64_t>(rng.below(mod)));
    return out;
}

GroupRingElem<Rational> random_h8(Rng& rng) {
    auto out = GroupRingElem<Rational>::zero(FiniteGroup::h8(), Rational());
    for (std::uint16_t i = 0; i < 8; ++i) out.coeff(i) = Rational(rng.range(-9, 9));
    return out;
}

CycloZp random_cyclo(Rng& rng, std::uint32_t p, std::uint32_t prec) {
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
    std::vector<PAdicScalar> c;
    for (std::uint32_t i = 0; i + 1 < p; ++i)
        c.emplace_back(p, prec, static_cast<std::int64_t>(rng.below(mod)));
    return CycloZp(p, std::move(c));
}

Quat<Rational> random_rat_quat(Rng& rng) {
    std::array<Rational, 4> c;
    for (auto& x : c) x = Rational(rng.range(-9, 9));
    return Quat<Rational>(std::move(c));
}

QS random_hurwitz(Rng& rng, std::uint32_t prec) {
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= 2;
    std::array<PAdicScalar, 4> c = {PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod))),
                                    PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod))),
                                    PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod))),
                                    PAdicScalar(2, prec, static_cast<std::int64_t>(rng.below(mod)))};
    return QS(std::move(c));
}

TruncSeries<QS> random_qseries(Rng& rng, std::uint32_t prec, int m) {
    std::vector<QS> c;
    for (int i = 0; i < m; ++i) c.push_back(random_hurwitz(rng, prec));
    return TruncSeries<QS>(std::move(c));
}

IwasawaSeries random_lambda(Rng& rng, std::uint64_t p, std::uint32_t prec, int m) {
    std::uint64_t mod = 1;
    for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
    std::vector<PAdicScalar> c;
    for (int i = 0; i < m; ++i) c.emplace_back(p, prec, static_cast<std::int64_t>(rng.below(mod)));
    return IwasawaSeries(std::move(c));
}

template <class Elem, class Gen>
Matrix<Elem> random_matrix(std::size_t n, Gen gen) {
    std::vector<Elem> e;
    e.reserve(n * n);
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(gen());
    return Matrix<Elem>(n, std::move(e));
}

} // namespace

std::vector<CheckResult> run_paper_checks() {
    Suite s;

    s.guarded("eg1-square-is-minus-two", [&] {
        Rational one(1);
        auto qi = Quat<Rational>::unit_i(one), qj = Quat<Rational>::unit_j(one);
        Matrix<Quat<Rational>> m(2, {qi, qj, qj, qi});
        auto sq = m * m;
        auto minus2 = Quat<Rational>::constant(Rational(-2));
        bool ok = sq.at(0, 0) == minus2 && sq.at(1, 1) == minus2 && sq.at(0, 1).is_zero() && sq.at(1, 0).is_zero();
        s.add("eg1-square-is-minus-two", ok);
    });

    s.guarded("eg1-closed-formula", [&] {
        Rational one(1);
        auto qi = Quat<Rational>::unit_i(one), qj = Quat<Rational>::unit_j(one);
        s.add("eg1-closed-formula", det_2x2_formula(qi, qj, qj, qi) == Quat<Rational>::constant(Rational(-2)));
    });

    s.guarded("eg1-naive-minors-vanish", [&] {
        Rational one(1);
        auto a = Quat<Rational>::unit_i(one), b = Quat<Rational>::unit_j(one);
        auto c = b, d = a;
        bool ok = (a * d - b * c).is_zero() && (d * a - b * c).is_zero() && (a * d - c * b).is_zero() &&
                  (d * a - c * b).is_zero();
        s.add("eg1-naive-minors-vanish", ok);
    });

    s.guarded("eg1-class-nrd-four", [&] {
        Rational one(1);
        auto qi = Quat<Rational>::unit_i(one), qj = Quat<Rational>::unit_j(one);
        Matrix<Quat<Rational>> m(2, {qi, qj, qj, qi});
        s.add("eg1-class-nrd-four", det_class(m).nrd == Rational(4));
    });

    s.guarded("h8-det1-components", [&] {
        H8DetClass cls = det_class(h8_paper_matrix());
        bool ok = cls.comm.coeff(0) == Rational(81) && cls.comm.coeff(1) == Rational(17) &&
                  cls.comm.coeff(2) == Rational(17) && cls.comm.coeff(3) == Rational(1);
        s.add("h8-det1-components", ok, "det1 = " + cls.comm.str());
    });

    s.guarded("h8-nrd-eight-times-857", [&] {
        H8DetClass cls = det_class(h8_paper_matrix());
        bool split = cls.nrd == Rational(6856);
        QuatDetClass det2 = det_division_ring(sigma2_matrix_h8(h8_paper_matrix()));
        s.add("h8-nrd-eight-times-857", split && det2.nrd == Rational(6856), "nrd = " + cls.nrd.str());
    });

    s.guarded("h8-mod8-obstruction", [&] {
        H8Obstruction res = h8_obstruction(h8_paper_matrix());
        bool ok = res.certificate.verdict == Verdict::NoIntegralRepresentative &&
                  res.attainable_nrd_mod8 == std::vector<int>{4} && res.actual_nrd_mod8 == 0;
        s.add("h8-mod8-obstruction", ok, res.certificate.reason);
    });

    s.guarded("h8-jacobson-membership", [&] {
        // every entry of the example matrix lies in the maximal ideal
        auto m = h8_paper_matrix();
        bool ok = !is_unit_h8(m.at(0, 0)) && !is_unit_h8(m.at(0, 1)) && !is_unit_h8(m.at(1, 0)) &&
                  !is_unit_h8(m.at(1, 1));
        s.add("h8-jacobson-membership", ok);
    });

    s.guarded("dihedral-nrd-one-minus-zeta", [&] {
        bool ok = true;
        for (std::uint32_t p : {3u, 5u}) {
            DihedralZp e(pi_L(p, 8), cyclo_zero(p, 8));
            ok = ok && nrd_dihedral(e).value() == pi_F(p, 8);
        }
        s.add("dihedral-nrd-one-minus-zeta", ok);
    });

    s.guarded("dihedral-embedding-assignments", [&] {
        std::uint32_t p = 5, prec = 8;
        auto tau = DihedralZp::tau_like(cyclo_one(p, prec));
        auto mt = embed_dihedral(tau);
        bool ok = mt[0].is_zero() && mt[1] == cyclo_one(p, prec) && mt[2] == cyclo_one(p, prec) && mt[3].is_zero();
        auto z = DihedralZp::from_cyclo(CycloZp::zeta_power(p, 1, PAdicScalar::one(p, prec)));
        auto mz = embed_dihedral(z);
        ok = ok && mz[0] == CycloZp::zeta_power(p, 1, PAdicScalar::one(p, prec)) &&
             mz[3] == CycloZp::zeta_power(p, -1, PAdicScalar::one(p, prec)) && mz[1].is_zero() && mz[2].is_zero();
        auto om = DihedralZp::from_cyclo(pi_L(p, prec));
        auto mo = embed_dihedral(om);
        ok = ok && (mo[0] * mo[3] - mo[1] * mo[2]) == pi_F(p, prec);
        s.add("dihedral-embedding-assignments", ok);
    });

    s.guarded("wedderburn-assignments", [&] {
        auto a = h8_elem({{"1", 9}, {"x", 1}, {"y", 2}});
        auto img = wedderburn_h8(a);
        Quat<Rational> expect = Quat<Rational>::constant(Rational(9)) + Quat<Rational>::unit_i(Rational(1)) +
                                Quat<Rational>::unit_j(Rational(1)).scaled(Rational(2));
        bool ok = img.comm.coeff(0) == Rational(9) && img.comm.coeff(1) == Rational(1) &&
                  img.comm.coeff(2) == Rational(2) && img.comm.coeff(3) == Rational(0) && img.div == expect;
        GroupPtr d10 = FiniteGroup::dihedral(5);
        auto y = GroupRingElem<PAdicScalar>::basis(d10, d10->parse_word("y"), PAdicScalar::zero(5, 8));
        auto wy = wedderburn_d2p(y);
        ok = ok && wy.comm.coeff(0).residue() == 1 && wy.comm.coeff(1).is_zero() &&
             wy.div.c() == CycloZp::zeta_power(5, 1, PAdicScalar::one(5, 8)) && wy.div.d().is_zero();
        s.add("wedderburn-assignments", ok);
    });

    s.guarded("h8-nonunit-nine-x-2y", [&] {
        s.add("h8-nonunit-nine-x-2y", !is_unit_h8(h8_elem({{"1", 9}, {"x", 1}, {"y", 2}})));
    });

    s.guarded("ppid-dprime-two", [&] {
        PAdicScalar one = PAdicScalar::one(2, 12);
        auto pi = QS::pi(one);
        auto i = QS::unit_i(one);
        auto two = QS::constant(PAdicScalar(2, 12, 2));
        bool ok = pi * pi == two * i;            // pi^2 = 2i
        ok = ok && quat_is_unit(-i) && ((-i) * (pi * pi)) == two; // p = u1 pi^2
        ok = ok && quat_w_valuation(two) == Valuation::of(2);
        s.add("ppid-dprime-two", ok);
    });

    s.guarded("nrd-pi-is-uniformizer", [&] {
        PAdicScalar one = PAdicScalar::one(2, 12);
        Matrix<TruncSeries<QS>> m(1, {TruncSeries<QS>::constant(QS::pi(one), 8)});
        TruncSeries<PAdicScalar> nrd = nrd_integral(m);
        bool ok = nrd.coeff(0).residue() == 2;
        for (int k = 1; k < 8; ++k) ok = ok && nrd.coeff(k).is_zero();
        s.add("nrd-pi-is-uniformizer", ok);
    });

    s.guarded("residue-field-collapse", [&] {
        bool ok = true;
        for (std::uint32_t p : {3u, 5u}) {
            for (std::uint64_t a = 0; a < p; ++a)
                ok = ok && cyclo_residue_mod_p(CycloZp::constant(p, PAdicScalar(p, 6, static_cast<std::int64_t>(a)))) == a;
            ok = ok && cyclo_residue_mod_p(pi_L(p, 6)) == 0 && cyclo_residue_mod_p(pi_F(p, 6)) == 0;
        }
        s.add("residue-field-collapse", ok);
    });

    s.guarded("lambda-embed-roundtrip", [&] {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        Rng rng(99);
        bool ok = true;
        for (int t = 0; t < 20; ++t) {
            auto a = random_d2p(rng, d6, 6);
            ok = ok && lambda_evaluate_at_zero(lambda_embed(a, 8)) == a;
        }
        s.add("lambda-embed-roundtrip", ok);
    });

    return s.results;
}

std::vector<CheckResult> run_property_checks(int cases, std::uint64_t seed) {
    Suite s;
    const int n_small = cases;

    auto run_counted = [&](const std::string& name, int count, auto body) {
        s.guarded(name, [&] {
            int pass = 0, total = 0;
            Rng rng(seed ^ std::hash<std::string>{}(name));
            for (int t = 0; t < count; ++t) {
                auto verdict = body(rng);
                if (!verdict.has_value()) continue; // sample skipped
                ++total;
                if (*verdict) ++pass;
            }
            s.add(name, total > 0 && pass == total, std::to_string(pass) + "/" + std::to_string(total));
        });
    };

    using Maybe = std::optional<bool>;

    run_counted("padic.arithmetic-oracle", n_small * 10, [](Rng& rng) -> Maybe {
        std::uint64_t p = rng.coin() ? 3 : 2;
        std::uint32_t prec = 8;
        std::uint64_t mod = 1;
        for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
        std::uint64_t ra = rng.below(mod), rb = rng.below(mod);
        PAdicScalar a(p, prec, static_cast<std::int64_t>(ra)), b(p, prec, static_cast<std::int64_t>(rb));
        bool ok = (a + b).residue() == (ra + rb) % mod;
        ok = ok && (a * b).residue() == static_cast<std::uint64_t>((static_cast<unsigned __int128>(ra) * rb) % mod);
        return ok;
    });

    run_counted("padic.inverse-involution", n_small * 4, [](Rng& rng) -> Maybe {
        PAdicScalar a(3, 8, static_cast<std::int64_t>(rng.below(6561)));
        if (!a.is_unit()) return std::nullopt;
        return a.inverse().inverse() == a && (a * a.inverse()).residue() == 1;
    });

    run_counted("padic.valuation-additive", n_small * 4, [](Rng& rng) -> Maybe {
        PAdicScalar a(3, 8, static_cast<std::int64_t>(rng.below(6561)));
        PAdicScalar b(3, 8, static_cast<std::int64_t>(rng.below(6561)));
        Valuation va = a.valuation(), vb = b.valuation(), vab = (a * b).valuation();
        if (va.is_top() || vb.is_top()) return vab.is_top();
        if (va.value() + vb.value() >= 8) return vab.is_top();
        return vab == Valuation::of(va.value() + vb.value());
    });

    run_counted("algebras.nrd-multiplicative", n_small * 5, [](Rng& rng) -> Maybe {
        auto a = random_rat_quat(rng), b = random_rat_quat(rng);
        bool ok = nrd_quaternion(a * b) == nrd_quaternion(a) * nrd_quaternion(b);
        std::uint32_t p = 5;
        DihedralZp da(random_cyclo(rng, p, 6), random_cyclo(rng, p, 6));
        DihedralZp db(random_cyclo(rng, p, 6), random_cyclo(rng, p, 6));
        ok = ok && nrd_dihedral_raw(da * db) == nrd_dihedral_raw(da) * nrd_dihedral_raw(db);
        return ok;
    });

    run_counted("algebras.embed-det-is-nrd", n_small * 2, [](Rng& rng) -> Maybe {
        auto q = random_rat_quat(rng);
        auto m = embed_quaternion(q);
        bool ok = (m[0] * m[3] - m[1] * m[2]) == Gaussian<Rational>::constant(nrd_quaternion(q));
        DihedralZp e(random_cyclo(rng, 3, 6), random_cyclo(rng, 3, 6));
        auto md = embed_dihedral(e);
        ok = ok && (md[0] * md[3] - md[1] * md[2]) == nrd_dihedral_raw(e);
        return ok;
    });

    run_counted("algebras.alpha-involution", n_small * 2, [](Rng& rng) -> Maybe {
        CycloZp x = random_cyclo(rng, 5, 6), y = random_cyclo(rng, 5, 6);
        bool ok = x.alpha().alpha() == x && (x * y).alpha() == x.alpha() * y.alpha();
        DihedralZp e(x, y);
        ok = ok && nrd_dihedral_raw(e).is_alpha_fixed();
        return ok;
    });

    run_counted("algebras.hurwitz-units", n_small * 2, [](Rng& rng) -> Maybe {
        auto q = random_hurwitz(rng, 10);
        bool unit = quat_is_unit(q);
        if (!unit) return q.nrd().is_unit() == false;
        auto r = q.inverse();
        return (q * r == one_like(q)) && (r * q == one_like(q));
    });

    run_counted("algebras.residue-collapse", 1, [](Rng&) -> Maybe {
        for (std::uint32_t p : {3u, 5u, 7u})
            for (std::uint64_t a = 0; a < p; ++a)
                if (cyclo_residue_mod_p(CycloZp::constant(p, PAdicScalar(p, 4, static_cast<std::int64_t>(a)))) != a)
                    return false;
        return true;
    });

    run_counted("group.wedderburn-injective", n_small * 5, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto a = random_d2p(rng, d6, 6), b = random_d2p(rng, d6, 6);
        if (a == b) return std::nullopt;
        auto wa = wedderburn_d2p(a), wb = wedderburn_d2p(b);
        return wa.comm != wb.comm || wa.div != wb.div;
    });

    run_counted("group.units-match-residue-ring", n_small * 3, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto a = random_d2p(rng, d6, 5);
        bool predicted = is_unit_d2p(a);
        try {
            auto inv = group_ring_inverse(a);
            return predicted && (a * inv) == GroupRingElem<PAdicScalar>::scalar(d6, PAdicScalar::one(3, 5));
        } catch (const Error&) {
            return !predicted;
        }
    });

    run_counted("group.fiber-product-closed", n_small * 2, [](Rng& rng) -> Maybe {
        auto a = random_h8(rng), b = random_h8(rng);
        auto wa = wedderburn_h8(a), wb = wedderburn_h8(b);
        H8Wedderburn<Rational> prod{wa.comm * wb.comm, wa.div * wb.div};
        return is_integral_member(prod) && is_integral_member(wedderburn_h8(a));
    });

    run_counted("group.complementary-sum-is-unit", n_small * 2, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        std::uint32_t p = 3, prec = 6;
        auto minus_x = GroupRingElem<PAdicScalar>::scalar(d6, PAdicScalar::one(p, prec)) -
                       GroupRingElem<PAdicScalar>::basis(d6, d6->parse_word("x"), PAdicScalar::zero(p, prec));
        auto plus_x = GroupRingElem<PAdicScalar>::scalar(d6, PAdicScalar::one(p, prec)) +
                      GroupRingElem<PAdicScalar>::basis(d6, d6->parse_word("x"), PAdicScalar::zero(p, prec));
        PAdicScalar inv2 = PAdicScalar(p, prec, 2).inverse();
        auto a = random_d2p(rng, d6, prec);
        auto ch = dihedral_residue_characters(a);
        a -= minus_x.scaled(PAdicScalar(p, prec, static_cast<std::int64_t>(ch.minus)) * inv2);
        auto ap = random_d2p(rng, d6, prec);
        auto chp = dihedral_residue_characters(ap);
        ap -= plus_x.scaled(PAdicScalar(p, prec, static_cast<std::int64_t>(chp.plus)) * inv2);
        ch = dihedral_residue_characters(a);
        chp = dihedral_residue_characters(ap);
        if (ch.plus == 0 || chp.minus == 0) return std::nullopt;
        return is_unit_d2p(a + ap);
    });

    run_counted("group.lambda-embed-multiplicative", n_small, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto a = random_d2p(rng, d6, 6), b = random_d2p(rng, d6, 6);
        return lambda_embed(a, 8) * lambda_embed(b, 8) == lambda_embed(a * b, 8);
    });

    run_counted("dieudonne.multiplicative", n_small * 3, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        std::size_t n = 1 + rng.below(2);
        auto a = random_matrix<GroupRingElem<PAdicScalar>>(n, [&] { return random_d2p(rng, d6, 8); });
        auto b = random_matrix<GroupRingElem<PAdicScalar>>(n, [&] { return random_d2p(rng, d6, 8); });
        try {
            return det_class(a * b) == det_class(a) * det_class(b);
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("dieudonne.h8-multiplicative", n_small * 2, [](Rng& rng) -> Maybe {
        std::size_t n = 1 + rng.below(2);
        auto a = random_matrix<GroupRingElem<Rational>>(n, [&] { return random_h8(rng); });
        auto b = random_matrix<GroupRingElem<Rational>>(n, [&] { return random_h8(rng); });
        try {
            return det_class(a * b) == det_class(a) * det_class(b);
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("dieudonne.elementary-invariance", n_small * 2, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto a = random_matrix<GroupRingElem<PAdicScalar>>(2, [&] { return random_d2p(rng, d6, 8); });
        try {
            auto base = det_class(a);
            apply_row_add(a, 0, 1, random_d2p(rng, d6, 8));
            apply_col_add(a, 1, 0, random_d2p(rng, d6, 8));
            return det_class(a) == base;
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("dieudonne.diag-rule", n_small * 2, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto a = random_matrix<GroupRingElem<PAdicScalar>>(2, [&] { return random_d2p(rng, d6, 8); });
        auto t = random_d2p(rng, d6, 8);
        try {
            auto base = det_class(a);
            for (std::size_t k = 0; k < 2; ++k) a.at(0, k) = t * a.at(0, k);
            auto wt = wedderburn_d2p(t);
            return det_class(a) == DihedralDetClass<PAdicScalar>{wt.comm, nrd_dihedral_raw(wt.div), 0} * base;
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("dieudonne.permutation-squares-to-one", 3, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        std::size_t n = 2 + rng.below(3);
        auto zero_e = GroupRingElem<PAdicScalar>::zero(d6, PAdicScalar::zero(3, 8));
        auto one_e = GroupRingElem<PAdicScalar>::scalar(d6, PAdicScalar::one(3, 8));
        auto perm = Matrix<GroupRingElem<PAdicScalar>>::filled(n, zero_e);
        for (std::size_t i = 0; i < n; ++i) perm.at(i, (i + 1) % n) = one_e;
        auto cls = det_class(perm);
        return (cls * cls).is_identity();
    });

    run_counted("dieudonne.triangular-rule", n_small, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto m = Matrix<GroupRingElem<PAdicScalar>>::filled(3, GroupRingElem<PAdicScalar>::zero(d6, PAdicScalar::zero(3, 8)));
        DihedralDetClass<PAdicScalar> expect{GroupRingElem<PAdicScalar>::scalar(FiniteGroup::c2(), PAdicScalar::one(3, 8)),
                                             cyclo_one(3, 8), 0};
        for (std::size_t i = 0; i < 3; ++i) {
            auto d = random_d2p(rng, d6, 8);
            if (!is_unit_d2p(d)) return std::nullopt;
            m.at(i, i) = d;
            auto w = wedderburn_d2p(d);
            expect = expect * DihedralDetClass<PAdicScalar>{w.comm, nrd_dihedral_raw(w.div), 0};
            for (std::size_t j = i + 1; j < 3; ++j) m.at(i, j) = random_d2p(rng, d6, 8);
        }
        return det_class(m) == expect;
    });

    run_counted("dieudonne.formula-2x2", n_small, [](Rng& rng) -> Maybe {
        GroupPtr d6 = FiniteGroup::dihedral(3);
        auto a = random_d2p(rng, d6, 8);
        if (!is_unit_d2p(a)) return std::nullopt;
        auto b = random_d2p(rng, d6, 8), c = random_d2p(rng, d6, 8), d = random_d2p(rng, d6, 8);
        Matrix<GroupRingElem<PAdicScalar>> m(2, {a, b, c, d});
        try {
            auto f = det_2x2_formula(a, b, c, d);
            auto w = wedderburn_d2p(f);
            return det_class(m) == DihedralDetClass<PAdicScalar>{w.comm, nrd_dihedral_raw(w.div), 0};
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("dieudonne.eg1-regression", 1, [](Rng&) -> Maybe {
        Rational one(1);
        auto qi = Quat<Rational>::unit_i(one), qj = Quat<Rational>::unit_j(one);
        bool zeros = (qi * qi - qj * qj).is_zero();
        Matrix<Quat<Rational>> m(2, {qi, qj, qj, qi});
        return zeros && det_class(m).nrd == Rational(4) &&
               det_2x2_formula(qi, qj, qj, qi) == Quat<Rational>::constant(Rational(-2));
    });

    run_counted("dieudonne.dihedral-representative", n_small, [](Rng& rng) -> Maybe {
        GroupPtr g = rng.coin() ? FiniteGroup::dihedral(3) : FiniteGroup::dihedral(5);
        std::size_t n = 1 + rng.below(3);
        auto a = random_matrix<GroupRingElem<PAdicScalar>>(n, [&] { return random_d2p(rng, g, 8); });
        try {
            det_class(a);
        } catch (const Error&) {
            return std::nullopt;
        }
        DihedralCertificate cert = dihedral_integral_representative(a);
        if (cert.verdict != Verdict::RepresentativeFound) return false;
        auto w = wedderburn_d2p(*cert.representative);
        return is_integral_member(w) &&
               DihedralDetClass<PAdicScalar>{w.comm, nrd_dihedral_raw(w.div), 0} == det_class(a);
    });

    run_counted("weierstrass.reduced-order-additive", n_small * 2, [](Rng& rng) -> Maybe {
        auto f = random_qseries(rng, 10, 12), g = random_qseries(rng, 10, 12);
        auto cf = detail::series_pi_content(f), cg = detail::series_pi_content(g);
        if (!cf || *cf != 0 || !cg || *cg != 0) return std::nullopt;
        auto of = reduced_order(f), og = reduced_order(g);
        if (!of || !og || *of + *og >= 12) return std::nullopt;
        return reduced_order(f * g) == *of + *og;
    });

    run_counted("weierstrass.nrd-monic-degree", n_small, [](Rng& rng) -> Maybe {
        int deg = 1 + static_cast<int>(rng.below(3));
        std::vector<QS> c(12, QS::constant(PAdicScalar::zero(2, 10)));
        for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = random_hurwitz(rng, 10);
        c[static_cast<std::size_t>(deg)] = QS::constant(PAdicScalar::one(2, 10));
        Matrix<TruncSeries<QS>> j(1, {TruncSeries<QS>(c)});
        TruncSeries<PAdicScalar> nrd = nrd_integral(j);
        bool ok = nrd.coeff(2 * deg).residue() == 1;
        for (int i = 2 * deg + 1; i < 12; ++i) ok = ok && nrd.coeff(i).is_zero();
        return ok;
    });

    run_counted("weierstrass.prepare-reconstruct", n_small * 2, [](Rng& rng) -> Maybe {
        auto f = random_qseries(rng, 12, 12);
        try {
            auto w = weierstrass_prepare(f);
            auto rebuilt = pi_pow_mul_left(w.unit * w.monic, static_cast<std::uint32_t>(w.mu));
            return rebuilt.equal_where_trusted(f);
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("weierstrass.diagonal-reduce-trace", n_small / 2 + 1, [](Rng& rng) -> Maybe {
        auto proto = TruncSeries<QS>::constant(QS::constant(PAdicScalar::zero(2, 14)), 10);
        Matrix<Localized<QS>> loc = Matrix<Localized<QS>>::filled(2, Localized<QS>::zero_of(proto));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) loc.at(i, j) = Localized<QS>(random_qseries(rng, 14, 10), 0);
        try {
            auto red = diagonal_reduce(loc);
            Matrix<Localized<QS>> replay = loc;
            for (const auto& op : red.ops) apply_op(replay, op);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    if (i == j && replay.at(i, j) != red.diagonal.at(i, i)) return false;
                    if (i != j && !replay.at(i, j).is_zero()) return false;
                }
            return true;
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("weierstrass.commutative-degenerate", n_small * 2, [](Rng& rng) -> Maybe {
        std::uint64_t p = 3;
        std::uint32_t prec = 10;
        std::vector<PAdicScalar> c;
        std::uint64_t mod = 1;
        for (std::uint32_t i = 0; i < prec; ++i) mod *= p;
        for (int i = 0; i < 10; ++i) c.emplace_back(p, prec, static_cast<std::int64_t>(rng.below(mod)));
        TruncSeries<PAdicScalar> f(std::move(c));
        try {
            auto w = weierstrass_prepare(f);
            bool ok = w.unit.coeff(0).is_unit();
            auto s = reduced_order(w.monic);
            if (!s) return false;
            for (int i = 0; i < *s; ++i) ok = ok && w.monic.coeff(i).residue() % p == 0;
            auto rebuilt = pi_pow_mul_left(w.unit * w.monic, static_cast<std::uint32_t>(w.mu));
            return ok && rebuilt.equal_where_trusted(f);
        } catch (const Error&) {
            return std::nullopt;
        }
    });

    run_counted("iwasawa.sigma-homomorphisms", n_small * 2, [](Rng& rng) -> Maybe {
        auto f = random_lambda(rng, 3, 4, 16), g = random_lambda(rng, 3, 4, 16);
        bool ok = sigma_p2(f * g) == sigma_p2(f) * sigma_p2(g);
        GroupPtr cp = FiniteGroup::cyclic(3);
        IsogenyCharacter chi(cp, PAdicScalar(3, 2, 4));
        auto a = GroupRingElem<IwasawaSeries>::zero(cp, IwasawaSeries::constant(PAdicScalar::zero(3, 4), 16));
        auto b = a;
        for (std::uint16_t i = 0; i < 3; ++i) {
            a.coeff(i) = random_lambda(rng, 3, 4, 16);
            b.coeff(i) = random_lambda(rng, 3, 4, 16);
        }
        ok = ok && sigma_char(a * b, chi) == sigma_char(a, chi) * sigma_char(b, chi);
        return ok;
    });

    run_counted("iwasawa.det-commutes-with-sigma", n_small * 2, [](Rng& rng) -> Maybe {
        std::size_t n = 1 + rng.below(3);
        auto a = random_matrix<IwasawaSeries>(n, [&] { return random_lambda(rng, 3, 4, 16); });
        Matrix<LambdaModP2> red = Matrix<LambdaModP2>::filled(n, sigma_p2(a.at(0, 0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) red.at(i, j) = sigma_p2(a.at(i, j));
        return det_commutative(red) == sigma_p2(det_commutative(a));
    });

    run_counted("iwasawa.fitting-block-triangular", n_small, [](Rng& rng) -> Maybe {
        auto gen = [&] { return sigma_p2(random_lambda(rng, 3, 4, 16)); };
        auto a = random_matrix<LambdaModP2>(2, gen), c = random_matrix<LambdaModP2>(2, gen);
        auto block = Matrix<LambdaModP2>::filled(4, LambdaModP2::constant(PAdicScalar::zero(3, 2), 16));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                block.at(i, j) = a.at(i, j);
                block.at(i + 2, j + 2) = c.at(i, j);
                block.at(i, j + 2) = gen();
            }
        LambdaModP2 da = det_commutative(a), dc = det_commutative(c);
        if (!first_unit_index(da) || !first_unit_index(dc)) return std::nullopt;
        return ideal_equal(det_commutative(block), da * dc).equal;
    });

    run_counted("iwasawa.ideal-equivalence", n_small, [](Rng& rng) -> Maybe {
        LambdaModP2 f = sigma_p2(random_lambda(rng, 3, 4, 16));
        LambdaModP2 g = sigma_p2(random_lambda(rng, 3, 4, 16));
        if (!first_unit_index(f) || !first_unit_index(g)) return std::nullopt;
        bool refl = ideal_equal(f, f).equal;
        bool sym = ideal_equal(f, g).equal == ideal_equal(g, f).equal;
        return refl && sym;
    });

    return s.results;
}

std::uint64_t fingerprint(const std::vector<CheckResult>& results) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    auto mix = [&](const std::string& str) {
        for (unsigned char c : str) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const CheckResult& r : results) {
        mix(r.name);
        mix(r.passed ? "1" : "0");
        mix(r.detail);
    }
    return h;
}

} // namespace dieudet::checks
