#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "dieudet/error.hpp"
#include "dieudet/gaussian.hpp"
#include "dieudet/padic.hpp"
#include "dieudet/rational.hpp"

namespace dieudet {

namespace detail {

// Structure constants of the order Z<1, i, j, w>, w = (1+i+j+ij)/2, in the
// basis e0=1, e1=i, e2=j, e3=w. Closure of the order makes every entry an
// integer, so multiplication never divides by 2.
//
// quat_table[a][b] = coordinates of e_a * e_b.
inline constexpr int quat_table[4][4][4] = {
    {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
    {{0, 1, 0, 0}, {-1, 0, 0, 0}, {-1, -1, -1, 2}, {-1, 0, -1, 1}},
    {{0, 0, 1, 0}, {1, 1, 1, -2}, {-1, 0, 0, 0}, {0, 1, 1, -1}},
    {{0, 0, 0, 1}, {0, 1, 1, -1}, {-1, -1, 0, 1}, {-1, 0, 0, 1}},
};

} // namespace detail

// Quaternion in the basis 1, i, j, w with w = (1+i+j+ij)/2. Over S = Rational
// this covers the classical rational quaternions (w-coordinate usage
// optional); over S = PAdicScalar with p = 2 the integral coordinates are
// exactly the maximal order of the 2-adic quaternion division algebra.
template <class S>
class Quat {
public:
    explicit Quat(std::array<S, 4> coords) : c_(std::move(coords)) {}

    static Quat constant(const S& value) {
        S z = zero_like(value);
        return Quat({value, z, z, z});
    }
    static Quat unit_i(const S& proto) {
        S z = zero_like(proto);
        return Quat({z, one_like(proto), z, z});
    }
    static Quat unit_j(const S& proto) {
        S z = zero_like(proto);
        return Quat({z, z, one_like(proto), z});
    }
    static Quat unit_omega(const S& proto) {
        S z = zero_like(proto);
        return Quat({z, z, z, one_like(proto)});
    }
    // ij = 2w - 1 - i - j.
    static Quat unit_k(const S& proto) {
        S one = one_like(proto);
        S two = one + one;
        return Quat({-one, -one, -one, two});
    }
    // The uniformizer pi = 1 + i.
    static Quat pi(const S& proto) {
        S z = zero_like(proto);
        S one = one_like(proto);
        return Quat({one, one, z, z});
    }

    const std::array<S, 4>& coords() const { return c_; }
    const S& coord(int k) const { return c_[static_cast<std::size_t>(k)]; }

    Quat operator+(const Quat& o) const {
        return Quat({c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]});
    }
    Quat operator-(const Quat& o) const {
        return Quat({c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]});
    }
    Quat operator-() const { return Quat({-c_[0], -c_[1], -c_[2], -c_[3]}); }

    Quat operator*(const Quat& o) const {
        std::array<S, 4> out = {zero_like(c_[0]), zero_like(c_[0]), zero_like(c_[0]), zero_like(c_[0])};
        for (int a = 0; a < 4; ++a) {
            if (c_[static_cast<std::size_t>(a)].is_zero()) continue;
            for (int b = 0; b < 4; ++b) {
                if (o.c_[static_cast<std::size_t>(b)].is_zero()) continue;
                S prod = c_[static_cast<std::size_t>(a)] * o.c_[static_cast<std::size_t>(b)];
                for (int k = 0; k < 4; ++k) {
                    int coef = detail::quat_table[a][b][k];
                    if (coef == 0) continue;
                    S term = prod;
                    if (coef < 0) term = -term;
                    for (int rep = 1; rep < (coef < 0 ? -coef : coef); ++rep) term += (coef < 0 ? -prod : prod);
                    out[static_cast<std::size_t>(k)] += term;
                }
            }
        }
        return Quat(std::move(out));
    }
    Quat& operator+=(const Quat& o) { return *this = *this + o; }
    Quat& operator-=(const Quat& o) { return *this = *this - o; }
    Quat& operator*=(const Quat& o) { return *this = *this * o; }

    bool operator==(const Quat& o) const {
        for (int k = 0; k < 4; ++k)
            if (c_[static_cast<std::size_t>(k)] != o.c_[static_cast<std::size_t>(k)]) return false;
        return true;
    }
    bool operator!=(const Quat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const S& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Sum-of-four-squares形 in these coordinates:
    // Nrd = c1^2 + c2^2 + c3^2 + c4(c1 + c2 + c3) + c4^2.
    S nrd() const {
        S s = c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2];
        s += c_[3] * (c_[0] + c_[1] + c_[2]);
        s += c_[3] * c_[3];
        return s;
    }

    // Standard conjugation: (c1 + c4, -c2, -c3, -c4); q * conj(q) = Nrd(q).
    Quat conj() const { return Quat({c_[0] + c_[3], -c_[1], -c_[2], -c_[3]}); }

    Quat inverse() const {
        S n = nrd();
        S ninv = n.inverse();
        Quat cj = conj();
        return Quat({cj.c_[0] * ninv, cj.c_[1] * ninv, cj.c_[2] * ninv, cj.c_[3] * ninv});
    }

    Quat scaled(const S& s) const { return Quat({c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s}); }

    // Coordinates doubled into the 1, i, j, ij basis: (2b1, 2b2, 2b3, 2b4).
    std::array<S, 4> b_doubled() const {
        return {c_[0] + c_[0] + c_[3], c_[1] + c_[1] + c_[3], c_[2] + c_[2] + c_[3], c_[3]};
    }

    std::string str() const {
        return "(" + to_text(c_[0]) + " + " + to_text(c_[1]) + " i + " + to_text(c_[2]) + " j + " +
               to_text(c_[3]) + " w)";
    }

private:
    std::array<S, 4> c_;
};

template <class S>
Quat<S> zero_like(const Quat<S>& x) {
    return Quat<S>::constant(zero_like(x.coord(0)));
}
template <class S>
Quat<S> one_like(const Quat<S>& x) {
    return Quat<S>::constant(one_like(x.coord(0)));
}
template <class S>
bool is_zero(const Quat<S>& x) {
    return x.is_zero();
}
template <class S>
std::string to_text(const Quat<S>& x) {
    return x.str();
}

// ---- constructors from 1, i, j, ij coordinates ------------------------------

inline Quat<Rational> quat_from_b(const std::array<Rational, 4>& b) {
    Rational two(2);
    return Quat<Rational>({b[0] - b[3], b[1] - b[3], b[2] - b[3], b[3] * two});
}

inline std::array<Rational, 4> quat_to_b(const Quat<Rational>& q) {
    Rational half(1, 2);
    Rational h4 = q.coord(3) * half;
    return {q.coord(0) + h4, q.coord(1) + h4, q.coord(2) + h4, h4};
}

// Doubled 1, i, j, ij coordinates (all four of one parity) over Z/2^N.
inline Quat<PAdicScalar> quat_from_b_doubled(const std::array<PAdicScalar, 4>& d) {
    for (const PAdicScalar& x : d)
        if (x.prime() != 2) fail(ErrorKind::PrimeMismatch, "Hurwitz coordinates need p = 2");
    std::uint64_t parity = d[0].residue() % 2;
    for (int k = 1; k < 4; ++k)
        if (d[static_cast<std::size_t>(k)].residue() % 2 != parity)
            fail(ErrorKind::NotInOrder, "doubled coordinates of mixed parity");
    return Quat<PAdicScalar>(
        {(d[0] - d[3]).divided_by_p(), (d[1] - d[3]).divided_by_p(), (d[2] - d[3]).divided_by_p(), d[3]});
}

// ---- reduced norm / order structure -----------------------------------------

template <class S>
S nrd_quaternion(const Quat<S>& q) {
    return q.nrd();
}

// In the maximal order, q is a unit iff Nrd(q) is odd.
inline bool quat_is_unit(const Quat<PAdicScalar>& q) { return q.nrd().is_unit(); }
inline bool quat_is_unit(const Quat<Rational>& q) {
    for (int k = 0; k < 4; ++k)
        if (!q.coord(k).is_p_integral(2)) return false;
    return !q.nrd().is_zero() && q.nrd().valuation_signed(2) == 0;
}

// w(q) = v_2(Nrd q), normalized so w(1 + i) = 1.
inline Valuation quat_w_valuation(const Quat<PAdicScalar>& q) { return q.nrd().valuation(); }
inline Valuation quat_w_valuation(const Quat<Rational>& q) {
    for (int k = 0; k < 4; ++k)
        if (!q.coord(k).is_p_integral(2)) fail(ErrorKind::NotInOrder, "coordinate " + q.coord(k).str() + " not 2-integral");
    return q.nrd().padic_valuation_nonneg(2);
}

// ---- splitting-field embedding ----------------------------------------------

// i -> diag(s, -s), j -> [[0,1],[-1,0]], ij -> [[0,s],[s,0]] with s^2 = -1.
// Row-major 2x2 matrix over the Gaussian extension; exact for rational input.
inline std::array<Gaussian<Rational>, 4> embed_quaternion(const Quat<Rational>& q) {
    std::array<Rational, 4> b = quat_to_b(q);
    Gaussian<Rational> b1 = Gaussian<Rational>::constant(b[0]);
    Gaussian<Rational> b2(Rational(), b[1]);
    Gaussian<Rational> b3 = Gaussian<Rational>::constant(b[2]);
    Gaussian<Rational> b4(Rational(), b[3]);
    return {b1 + b2, b3 + b4, -b3 + b4, b1 - b2};
}

// Twice the embedding; entries stay integral for every scalar ring, which is
// what the splitting-field determinants over Z/2^N need.
template <class S>
std::array<Gaussian<S>, 4> embed_quaternion_doubled(const Quat<S>& q) {
    const S& c1 = q.coord(0);
    const S& c2 = q.coord(1);
    const S& c3 = q.coord(2);
    const S& c4 = q.coord(3);
    Gaussian<S> a11(c1 + c1 + c4, c2 + c2 + c4); // 2c1 + c4 + (2c2 + c4)s
    Gaussian<S> a12(c3 + c3 + c4, c4);
    Gaussian<S> a21(-(c3 + c3 + c4), c4);
    Gaussian<S> a22(c1 + c1 + c4, -(c2 + c2 + c4));
    return {a11, a12, a21, a22};
}

// ---- conjugation and division by the uniformizer (2-adic order) --------------

// pi^{-1} q: defined when w(q) >= 1; costs one digit of 2-adic precision.
inline Quat<PAdicScalar> quat_pi_div_left(const Quat<PAdicScalar>& q) {
    Quat<PAdicScalar> t = Quat<PAdicScalar>::pi(q.coord(0)).conj() * q;
    std::array<PAdicScalar, 4> c = {t.coord(0).divided_by_p(), t.coord(1).divided_by_p(),
                                    t.coord(2).divided_by_p(), t.coord(3).divided_by_p()};
    return Quat<PAdicScalar>(std::move(c));
}

// q pi^{-1}.
inline Quat<PAdicScalar> quat_pi_div_right(const Quat<PAdicScalar>& q) {
    Quat<PAdicScalar> t = q * Quat<PAdicScalar>::pi(q.coord(0)).conj();
    std::array<PAdicScalar, 4> c = {t.coord(0).divided_by_p(), t.coord(1).divided_by_p(),
                                    t.coord(2).divided_by_p(), t.coord(3).divided_by_p()};
    return Quat<PAdicScalar>(std::move(c));
}

// pi^{-1} q pi; conjugation by the uniformizer preserves the order.
inline Quat<PAdicScalar> quat_conj_by_pi(const Quat<PAdicScalar>& q) {
    return quat_pi_div_left(q * Quat<PAdicScalar>::pi(q.coord(0)));
}

// pi q pi^{-1}.
inline Quat<PAdicScalar> quat_conj_by_pi_inv(const Quat<PAdicScalar>& q) {
    return quat_pi_div_right(Quat<PAdicScalar>::pi(q.coord(0)) * q);
}

} // namespace dieudet
