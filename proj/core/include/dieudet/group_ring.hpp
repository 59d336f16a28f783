#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dieudet/dihedral_algebra.hpp"
#include "dieudet/error.hpp"
#include "dieudet/group.hpp"
#include "dieudet/padic.hpp"
#include "dieudet/quaternion.hpp"
#include "dieudet/rational.hpp"
#include "dieudet/series.hpp"

namespace dieudet {

using IwasawaSeries = TruncSeries<PAdicScalar>;

// Element of the group algebra S[G], coefficients indexed by the canonical
// element codes of G.
template <class S>
class GroupRingElem {
public:
    GroupRingElem(GroupPtr g, std::vector<S> coeffs) : g_(std::move(g)), c_(std::move(coeffs)) {
        if (c_.size() != g_->size()) fail(ErrorKind::ContextMismatch, "coefficient count != group order");
    }

    static GroupRingElem zero(GroupPtr g, const S& proto) {
        std::vector<S> c(g->size(), zero_like(proto));
        return GroupRingElem(std::move(g), std::move(c));
    }
    static GroupRingElem scalar(GroupPtr g, const S& value) {
        GroupRingElem out = zero(g, value);
        out.c_[0] = value;
        return out;
    }
    static GroupRingElem basis(GroupPtr g, std::uint16_t code, const S& proto) {
        GroupRingElem out = zero(g, proto);
        out.c_[code] = one_like(proto);
        return out;
    }

    const GroupPtr& group() const { return g_; }
    const std::vector<S>& coeffs() const { return c_; }
    const S& coeff(std::uint16_t code) const { return c_[code]; }
    S& coeff(std::uint16_t code) { return c_[code]; }

    GroupRingElem operator+(const GroupRingElem& o) const {
        check(o);
        std::vector<S> c;
        c.reserve(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] + o.c_[i]);
        return GroupRingElem(g_, std::move(c));
    }
    GroupRingElem operator-(const GroupRingElem& o) const {
        check(o);
        std::vector<S> c;
        c.reserve(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] - o.c_[i]);
        return GroupRingElem(g_, std::move(c));
    }
    GroupRingElem operator-() const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(-x);
        return GroupRingElem(g_, std::move(c));
    }

    // Convolution with the left action convention.
    GroupRingElem operator*(const GroupRingElem& o) const {
        check(o);
        GroupRingElem out = zero(g_, c_[0]);
        for (std::uint16_t a = 0; a < c_.size(); ++a) {
            if (c_[a].is_zero()) continue;
            for (std::uint16_t b = 0; b < o.c_.size(); ++b) {
                if (o.c_[b].is_zero()) continue;
                out.c_[g_->mul(a, b)] += c_[a] * o.c_[b];
            }
        }
        return out;
    }
    GroupRingElem& operator+=(const GroupRingElem& o) { return *this = *this + o; }
    GroupRingElem& operator-=(const GroupRingElem& o) { return *this = *this - o; }
    GroupRingElem& operator*=(const GroupRingElem& o) { return *this = *this * o; }

    GroupRingElem scaled(const S& s) const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(x * s);
        return GroupRingElem(g_, std::move(c));
    }

    bool operator==(const GroupRingElem& o) const {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const GroupRingElem& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const S& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    S coefficient_sum() const {
        S acc = c_[0];
        for (std::size_t i = 1; i < c_.size(); ++i) acc += c_[i];
        return acc;
    }

    std::string str() const {
        std::string s;
        for (std::uint16_t g = 0; g < c_.size(); ++g) {
            if (c_[g].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += to_text(c_[g]) + "*" + g_->word(g);
        }
        return s.empty() ? "0" : s;
    }

private:
    void check(const GroupRingElem& o) const {
        if (!g_->same_group(*o.g_)) fail(ErrorKind::ContextMismatch, "elements of different group rings");
    }

    GroupPtr g_;
    std::vector<S> c_;
};

template <class S>
GroupRingElem<S> zero_like(const GroupRingElem<S>& x) {
    return GroupRingElem<S>::zero(x.group(), x.coeff(0));
}
template <class S>
GroupRingElem<S> one_like(const GroupRingElem<S>& x) {
    return GroupRingElem<S>::scalar(x.group(), one_like(x.coeff(0)));
}
template <class S>
bool is_zero(const GroupRingElem<S>& x) {
    return x.is_zero();
}
template <class S>
std::string to_text(const GroupRingElem<S>& x) {
    return x.str();
}

// ---- Wedderburn projections ---------------------------------------------

// D_2p -> Q_p[C2] x L<tau> through sigma1(x) = e, sigma1(y) = 1 and
// sigma2(x) = tau, sigma2(y) = zeta.
template <class S>
struct DihedralWedderburn {
    GroupRingElem<S> comm; // over C2
    DihedralElem<S> div;
};

template <class S>
DihedralWedderburn<S> wedderburn_d2p(const GroupRingElem<S>& a) {
    if (a.group()->kind() != FiniteGroup::Kind::Dihedral)
        fail(ErrorKind::UnsupportedGroup, "expected a dihedral group ring element");
    const std::uint32_t p = a.group()->p_param();
    GroupRingElem<S> comm = GroupRingElem<S>::zero(FiniteGroup::c2(), a.coeff(0));
    CyclotomicInt<S> c = CyclotomicInt<S>::constant(p, zero_like(a.coeff(0)));
    CyclotomicInt<S> d = c;
    for (std::uint32_t xa = 0; xa < 2; ++xa)
        for (std::uint32_t yb = 0; yb < p; ++yb) {
            const S& v = a.coeff(static_cast<std::uint16_t>(xa * p + yb));
            if (is_zero(v)) continue;
            comm.coeff(static_cast<std::uint16_t>(xa)) += v;
            if (xa == 0) {
                // y^b -> zeta^b
                c.add_zeta_power(yb, v);
            } else {
                // x y^b -> tau zeta^b = zeta^{-b} tau
                std::uint32_t e = (p - yb) % p;
                d.add_zeta_power(e, v);
            }
        }
    return DihedralWedderburn<S>{std::move(comm), DihedralElem<S>(std::move(c), std::move(d))};
}

// H8 -> Q[C2 x C2] x D through sigma1(x) = e, sigma1(y) = f and
// sigma2(x) = i, sigma2(y) = j.
template <class S>
struct H8Wedderburn {
    GroupRingElem<S> comm; // over Klein4
    Quat<S> div;
};

template <class S>
H8Wedderburn<S> wedderburn_h8(const GroupRingElem<S>& a) {
    if (a.group()->kind() != FiniteGroup::Kind::H8)
        fail(ErrorKind::UnsupportedGroup, "expected an H8 group ring element");
    GroupPtr k4 = FiniteGroup::klein4();
    GroupRingElem<S> comm = GroupRingElem<S>::zero(k4, a.coeff(0));
    Quat<S> div = zero_like(Quat<S>::constant(a.coeff(0)));
    Quat<S> xi = Quat<S>::unit_i(a.coeff(0));
    Quat<S> yj = Quat<S>::unit_j(a.coeff(0));
    for (std::uint32_t b = 0; b < 2; ++b)
        for (std::uint32_t xa = 0; xa < 4; ++xa) {
            const S& v = a.coeff(static_cast<std::uint16_t>(b * 4 + xa));
            if (is_zero(v)) continue;
            // sigma1: x -> e, y -> f
            std::uint16_t k4code = k4->identity();
            if (xa % 2 == 1) k4code = k4->mul(k4code, 1);
            if (b == 1) k4code = k4->mul(k4code, 2);
            comm.coeff(k4code) += v;
            // sigma2: x^a y^b -> i^a j^b
            Quat<S> img = one_like(div);
            for (std::uint32_t t = 0; t < xa; ++t) img *= xi;
            for (std::uint32_t t = 0; t < b; ++t) img *= yj;
            div += img.scaled(v);
        }
    return H8Wedderburn<S>{std::move(comm), std::move(div)};
}

// ---- unit tests, ideals, integral membership ------------------------------

inline bool divisible_by_p(const PAdicScalar& x) { return x.residue() % x.prime() == 0; }
inline bool divisible_by_p(const IwasawaSeries& x) {
    for (const PAdicScalar& c : x.coeffs())
        if (!divisible_by_p(c)) return false;
    return true;
}

// The two residue characters of Z_p[D_2p]: x -> +/-1, y -> 1, coefficients
// mod p. An element is a unit iff neither character kills it.
struct DihedralCharacterPair {
    std::uint64_t plus;  // character with x -> 1
    std::uint64_t minus; // character with x -> -1
};

inline DihedralCharacterPair dihedral_residue_characters(const GroupRingElem<PAdicScalar>& a) {
    if (a.group()->kind() != FiniteGroup::Kind::Dihedral)
        fail(ErrorKind::UnsupportedGroup, "expected a dihedral group ring element");
    const std::uint32_t p = a.group()->p_param();
    std::uint64_t sp = 0, sm = 0;
    for (std::uint32_t xa = 0; xa < 2; ++xa)
        for (std::uint32_t yb = 0; yb < p; ++yb) {
            std::uint64_t r = a.coeff(static_cast<std::uint16_t>(xa * p + yb)).residue() % p;
            sp = (sp + r) % p;
            sm = (sm + (xa ? p - r : r)) % p;
        }
    return DihedralCharacterPair{sp, sm % p};
}

// Membership in m = (p, y-1, x-1) and m' = (p, y-1, x+1).
inline std::pair<bool, bool> maximal_ideal_membership(const GroupRingElem<PAdicScalar>& a) {
    DihedralCharacterPair ch = dihedral_residue_characters(a);
    return {ch.plus == 0, ch.minus == 0};
}

inline bool is_unit_d2p(const GroupRingElem<PAdicScalar>& a) {
    DihedralCharacterPair ch = dihedral_residue_characters(a);
    return ch.plus != 0 && ch.minus != 0;
}

// Z_2[H8] is local; u is a unit iff the coefficient sum is odd.
inline bool is_unit_h8(const GroupRingElem<Rational>& a) {
    if (a.group()->kind() != FiniteGroup::Kind::H8)
        fail(ErrorKind::UnsupportedGroup, "expected an H8 group ring element");
    for (const Rational& c : a.coeffs())
        if (!c.is_p_integral(2)) return false;
    Rational s = a.coefficient_sum();
    return !s.is_zero() && s.valuation_signed(2) == 0;
}

// Fiber-product congruences for the dihedral image:
// a = c and b = d mod p_L, where sigma1 = a + b e and sigma2 = c + d tau.
template <class S>
bool is_integral_member(const DihedralWedderburn<S>& w) {
    return divisible_by_p(w.comm.coeff(0) - w.div.c().residue_sum()) &&
           divisible_by_p(w.comm.coeff(1) - w.div.d().residue_sum());
}

// Fiber-product congruences for the H8 image: the Klein-four coordinates and
// the 1, i, j, ij coordinates agree mod 2; the quaternion part must lie in
// Z_2 + Z_2 i + Z_2 j + Z_2 ij.
inline bool is_integral_member(const H8Wedderburn<Rational>& w) {
    std::array<Rational, 4> b = quat_to_b(w.div);
    for (int k = 0; k < 4; ++k)
        if (!b[static_cast<std::size_t>(k)].is_p_integral(2)) return false;
    for (int k = 0; k < 4; ++k) {
        const Rational& a = w.comm.coeff(static_cast<std::uint16_t>(k));
        if (!a.is_p_integral(2)) return false;
        if (a.residue_mod(2) != b[static_cast<std::size_t>(k)].residue_mod(2)) return false;
    }
    return true;
}

// ---- Lambda[G] ---------------------------------------------------------------

// Constant-series embedding S[G] -> Lambda[G] at truncation order m.
inline GroupRingElem<IwasawaSeries> lambda_embed(const GroupRingElem<PAdicScalar>& a, int m) {
    std::vector<IwasawaSeries> c;
    c.reserve(a.coeffs().size());
    for (const PAdicScalar& x : a.coeffs()) c.push_back(IwasawaSeries::constant(x, m));
    return GroupRingElem<IwasawaSeries>(a.group(), std::move(c));
}

// Evaluation at T = 0, the left inverse of lambda_embed.
inline GroupRingElem<PAdicScalar> lambda_evaluate_at_zero(const GroupRingElem<IwasawaSeries>& a) {
    std::vector<PAdicScalar> c;
    c.reserve(a.coeffs().size());
    for (const IwasawaSeries& x : a.coeffs()) c.push_back(x.coeff(0));
    return GroupRingElem<PAdicScalar>(a.group(), std::move(c));
}

} // namespace dieudet
