#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dieudet/error.hpp"
#include "dieudet/padic.hpp"
#include "dieudet/series.hpp"

namespace dieudet {

// Element of Z_p[zeta_p] (p odd) in the power basis 1, z, ..., z^{p-2};
// arithmetic reduces modulo 1 + t + ... + t^{p-1}. The scalar ring S is
// Z/p^N for the scalar theory and a truncated T-series for the Lambda side.
template <class S>
class CyclotomicInt {
public:
    CyclotomicInt(std::uint32_t p, std::vector<S> coords) : p_(p), c_(std::move(coords)) {
        if (p_ < 3 || p_ % 2 == 0) fail(ErrorKind::UnsupportedGroup, "cyclotomic ring needs an odd prime");
        if (c_.size() != p_ - 1) fail(ErrorKind::ContextMismatch, "cyclotomic element needs p-1 coordinates");
    }

    static CyclotomicInt constant(std::uint32_t p, const S& value) {
        std::vector<S> c(p - 1, zero_like(value));
        c[0] = value;
        return CyclotomicInt(p, std::move(c));
    }
    // zeta^k, any integer k (reduced mod p).
    static CyclotomicInt zeta_power(std::uint32_t p, long k, const S& proto) {
        std::vector<S> c(p - 1, zero_like(proto));
        long r = k % static_cast<long>(p);
        if (r < 0) r += p;
        CyclotomicInt out(p, std::move(c));
        out.add_zeta_power(static_cast<std::uint32_t>(r), one_like(proto));
        return out;
    }

    std::uint32_t p() const { return p_; }
    const std::vector<S>& coords() const { return c_; }
    const S& coord(std::size_t i) const { return c_[i]; }

    // Accumulate v * zeta^e with e in [0, p); e = p-1 folds through the
    // minimal polynomial.
    void add_zeta_power(std::uint32_t e, const S& v) {
        if (e < p_ - 1) {
            c_[e] += v;
        } else {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= v;
        }
    }

    CyclotomicInt operator+(const CyclotomicInt& o) const {
        check(o);
        std::vector<S> c;
        c.reserve(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] + o.c_[i]);
        return CyclotomicInt(p_, std::move(c));
    }
    CyclotomicInt operator-(const CyclotomicInt& o) const {
        check(o);
        std::vector<S> c;
        c.reserve(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] - o.c_[i]);
        return CyclotomicInt(p_, std::move(c));
    }
    CyclotomicInt operator-() const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(-x);
        return CyclotomicInt(p_, std::move(c));
    }
    CyclotomicInt operator*(const CyclotomicInt& o) const {
        check(o);
        CyclotomicInt out = zero_like_self();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                std::uint32_t e = static_cast<std::uint32_t>((i + j) % p_);
                out.add_zeta_power(e, c_[i] * o.c_[j]);
            }
        }
        return out;
    }
    CyclotomicInt& operator+=(const CyclotomicInt& o) { return *this = *this + o; }
    CyclotomicInt& operator-=(const CyclotomicInt& o) { return *this = *this - o; }
    CyclotomicInt& operator*=(const CyclotomicInt& o) { return *this = *this * o; }

    CyclotomicInt scaled(const S& s) const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(x * s);
        return CyclotomicInt(p_, std::move(c));
    }

    bool operator==(const CyclotomicInt& o) const {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const S& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Galois map zeta -> zeta^k, gcd(k, p) = 1.
    CyclotomicInt galois(std::uint32_t k) const {
        CyclotomicInt out = zero_like_self();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            std::uint32_t e = static_cast<std::uint32_t>((i * k) % p_);
            out.add_zeta_power(e, c_[i]);
        }
        return out;
    }

    // The conjugation zeta -> zeta^{-1}; an involutive ring automorphism.
    CyclotomicInt alpha() const { return galois(p_ - 1); }

    bool is_alpha_fixed() const { return alpha() == *this; }

    // Image under O_L -> O_L / p_L, identified with the scalar ring mod p:
    // evaluate at zeta = 1, i.e. sum the coordinates.
    S residue_sum() const {
        S acc = c_[0];
        for (std::size_t i = 1; i < c_.size(); ++i) acc += c_[i];
        return acc;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += to_text(c_[i]);
        }
        return s + "]";
    }

    CyclotomicInt zero_like_self() const {
        std::vector<S> c(c_.size(), zero_like(c_[0]));
        return CyclotomicInt(p_, std::move(c));
    }

private:
    void check(const CyclotomicInt& o) const {
        if (p_ != o.p_) fail(ErrorKind::PrimeMismatch, "cyclotomic elements for different primes");
    }

    std::uint32_t p_;
    std::vector<S> c_;
};

template <class S>
CyclotomicInt<S> zero_like(const CyclotomicInt<S>& x) {
    return x.zero_like_self();
}
template <class S>
CyclotomicInt<S> one_like(const CyclotomicInt<S>& x) {
    return CyclotomicInt<S>::constant(x.p(), one_like(x.coord(0)));
}
template <class S>
bool is_zero(const CyclotomicInt<S>& x) {
    return x.is_zero();
}
template <class S>
std::string to_text(const CyclotomicInt<S>& x) {
    return x.str();
}

// ---- scalar-only tools (S = PAdicScalar) -----------------------------------

using CycloZp = CyclotomicInt<PAdicScalar>;

inline CycloZp cyclo_zero(std::uint32_t p, std::uint32_t prec) {
    return CycloZp::constant(p, PAdicScalar::zero(p, prec));
}
inline CycloZp cyclo_one(std::uint32_t p, std::uint32_t prec) {
    return CycloZp::constant(p, PAdicScalar::one(p, prec));
}
// 1 - zeta, a generator of the prime above p in O_L.
inline CycloZp pi_L(std::uint32_t p, std::uint32_t prec) {
    return cyclo_one(p, prec) - CycloZp::zeta_power(p, 1, PAdicScalar::one(p, prec));
}
// 2 - zeta - zeta^{-1}, a generator of the prime above p in O_F.
inline CycloZp pi_F(std::uint32_t p, std::uint32_t prec) {
    PAdicScalar one = PAdicScalar::one(p, prec);
    return CycloZp::constant(p, PAdicScalar(p, prec, 2)) - CycloZp::zeta_power(p, 1, one) -
           CycloZp::zeta_power(p, -1, one);
}

// Field norm down to Z_p: product of all Galois conjugates; the non-constant
// coordinates cancel exactly.
inline PAdicScalar cyclo_norm(const CycloZp& x) {
    CycloZp acc = x;
    for (std::uint32_t k = 2; k < x.p(); ++k) acc *= x.galois(k);
    return acc.coord(0);
}

inline std::uint64_t cyclo_residue_mod_p(const CycloZp& x) { return x.residue_sum().residue() % x.p(); }

inline bool cyclo_is_unit(const CycloZp& x) { return cyclo_residue_mod_p(x) != 0; }

// (cyclo_valuation_L is defined below, after the division helpers.)

inline CycloZp cyclo_inverse(const CycloZp& x) {
    if (!cyclo_is_unit(x)) fail(ErrorKind::NotAUnit, "cyclotomic element lies in the maximal ideal");
    CycloZp prod = x.galois(2);
    for (std::uint32_t k = 3; k < x.p(); ++k) prod *= x.galois(k);
    PAdicScalar n = cyclo_norm(x);
    return prod.scaled(n.inverse());
}

namespace detail {

// (1-zeta)^{p-1} = p * u0 with u0 a unit; computed one digit above the target
// precision so the division by p keeps the full window.
inline CycloZp one_minus_zeta_unit_cofactor(std::uint32_t p, std::uint32_t prec) {
    CycloZp t = pi_L(p, prec + 1);
    CycloZp pw = cyclo_one(p, prec + 1);
    for (std::uint32_t i = 0; i < p - 1; ++i) pw *= t;
    std::vector<PAdicScalar> c;
    c.reserve(p - 1);
    for (const PAdicScalar& s : pw.coords()) c.push_back(s.divided_by_p());
    return CycloZp(p, std::move(c));
}

// pi_F^{(p-1)/2} = p * w0 with w0 a unit of O_F.
inline CycloZp pi_F_unit_cofactor(std::uint32_t p, std::uint32_t prec) {
    CycloZp t = pi_F(p, prec + 1);
    CycloZp pw = cyclo_one(p, prec + 1);
    for (std::uint32_t i = 0; i < (p - 1) / 2; ++i) pw *= t;
    std::vector<PAdicScalar> c;
    c.reserve(p - 1);
    for (const PAdicScalar& s : pw.coords()) c.push_back(s.divided_by_p());
    return CycloZp(p, std::move(c));
}

inline CycloZp coordwise_divided_by_p(const CycloZp& x) {
    std::vector<PAdicScalar> c;
    c.reserve(x.coords().size());
    for (const PAdicScalar& s : x.coords()) c.push_back(s.divided_by_p());
    return CycloZp(x.p(), std::move(c));
}

} // namespace detail

// Exact division by 1 - zeta; costs one digit of p-precision.
inline CycloZp cyclo_div_pi_L(const CycloZp& x) {
    std::uint32_t p = x.p(), prec = x.coord(0).precision();
    CycloZp u0 = detail::one_minus_zeta_unit_cofactor(p, prec);
    CycloZp t = pi_L(p, prec);
    CycloZp acc = x;
    for (std::uint32_t i = 0; i < p - 2; ++i) acc *= t;
    acc *= cyclo_inverse(u0);
    return detail::coordwise_divided_by_p(acc);
}

// Exact division by 2 - zeta - zeta^{-1}; costs one digit of p-precision.
inline CycloZp cyclo_div_pi_F(const CycloZp& x) {
    std::uint32_t p = x.p(), prec = x.coord(0).precision();
    CycloZp w0 = detail::pi_F_unit_cofactor(p, prec);
    CycloZp t = pi_F(p, prec);
    CycloZp acc = x;
    for (std::uint32_t i = 0; i + 1 < (p - 1) / 2; ++i) acc *= t;
    acc *= cyclo_inverse(w0);
    return detail::coordwise_divided_by_p(acc);
}

// Valuation at the prime of O_L. Coordinate-wise powers of p are stripped
// first (p is a unit times (1-zeta)^{p-1}), the leftover is resolved by
// residue checks and single divisions; top means the precision ran out
// before a unit was exposed.
inline Valuation cyclo_valuation_L(const CycloZp& x) {
    CycloZp work = x;
    std::uint32_t v = 0;
    const std::uint32_t p = x.p();
    while (true) {
        if (work.is_zero()) return Valuation::top();
        bool all_div = true;
        for (const PAdicScalar& c : work.coords())
            if (c.residue() % p != 0) all_div = false;
        if (all_div) {
            if (work.coord(0).precision() <= 1) return Valuation::top();
            work = detail::coordwise_divided_by_p(work);
            v += p - 1;
            continue;
        }
        if (cyclo_residue_mod_p(work) != 0) return Valuation::of(v);
        if (work.coord(0).precision() <= 1) return Valuation::top();
        work = cyclo_div_pi_L(work);
        v += 1;
    }
}

// Valuation at the prime of O_F for alpha-fixed x: half the O_L valuation.
inline Valuation cyclo_valuation_F(const CycloZp& x) {
    Valuation v = cyclo_valuation_L(x);
    if (v.is_top()) return v;
    if (v.value() % 2 != 0) fail(ErrorKind::NotInRealSubfield, "odd O_L-valuation on a claimed O_F element");
    return Valuation::of(v.value() / 2);
}

// Splits alpha-fixed w as pi_F^n * v with v a unit of O_F (at precision).
struct PiFSplit {
    std::uint32_t exponent;
    CycloZp unit;
};

inline PiFSplit split_pi_F_power(const CycloZp& w) {
    Valuation v = cyclo_valuation_F(w);
    if (v.is_top()) fail(ErrorKind::SingularAtPrecision, "element vanishes at working precision");
    const std::uint32_t p = w.p();
    const std::uint32_t chunk = (p - 1) / 2; // pi_F^chunk = p * unit
    CycloZp u = w;
    std::uint32_t left = v.value();
    while (left >= chunk) {
        bool all_div = true;
        for (const PAdicScalar& c : u.coords())
            if (c.residue() % p != 0) all_div = false;
        if (!all_div) break;
        std::uint32_t prec = u.coord(0).precision();
        u = detail::coordwise_divided_by_p(u) * cyclo_inverse(detail::pi_F_unit_cofactor(p, prec - 1));
        left -= chunk;
    }
    for (std::uint32_t i = 0; i < left; ++i) u = cyclo_div_pi_F(u);
    return PiFSplit{v.value(), u};
}

// Solves c * alpha(c) = t for t = 1 mod p_F. The defect t/(c alpha(c)) - 1 is
// alpha-fixed at every step, so x = defect/2 solves the linearized equation
// x + alpha(x) = defect on the nose and the iteration converges quadratically
// along the principal-unit filtration.
inline CycloZp nrd_principal_unit_preimage(const CycloZp& t) {
    std::uint32_t p = t.p(), prec = t.coord(0).precision();
    if (!t.is_alpha_fixed()) fail(ErrorKind::NotPrincipalUnit, "argument is not in the real subring");
    CycloZp one = cyclo_one(p, prec);
    if (cyclo_residue_mod_p(t - one) != 0) fail(ErrorKind::NotPrincipalUnit, "argument is not 1 mod p_F");
    PAdicScalar half = PAdicScalar(p, prec, 2).inverse();
    CycloZp c = one;
    for (std::uint32_t round = 0; round < 2 * prec + 8; ++round) {
        CycloZp nc = c * c.alpha();
        CycloZp defect = t * cyclo_inverse(nc) - one;
        if (defect.is_zero()) return c;
        c *= one + defect.scaled(half);
    }
    fail(ErrorKind::PrecisionTooLow, "principal-unit lifting did not converge");
}

// Alpha-fixed view; the wrapper only exists to carry the checked invariant.
class RealCyclo {
public:
    explicit RealCyclo(CycloZp v) : v_(std::move(v)) {
        if (!v_.is_alpha_fixed()) fail(ErrorKind::NotInRealSubfield, "element is moved by alpha");
    }
    const CycloZp& value() const { return v_; }
    bool operator==(const RealCyclo& o) const { return v_ == o.v_; }
    bool operator!=(const RealCyclo& o) const { return v_ != o.v_; }
    RealCyclo operator*(const RealCyclo& o) const { return RealCyclo(v_ * o.v_); }
    std::string str() const { return v_.str(); }

private:
    CycloZp v_;
};

} // namespace dieudet
