#pragma once

#include <cstdint>
#include <string>

#include "dieudet/error.hpp"

namespace dieudet {

namespace detail {

// p^e, guarded so residues and products always fit: p^e < 2^62.
inline std::uint64_t pow_checked(std::uint64_t p, std::uint32_t e) {
    constexpr std::uint64_t kLimit = 1ULL << 62;
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (r >= kLimit / p) fail(ErrorKind::InsufficientPrecision, "p^N exceeds the 2^62 residue limit");
        r *= p;
    }
    return r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline bool is_small_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace detail

// Non-negative valuation, or "top of precision": >= N, indistinguishable from
// infinity at this precision.
class Valuation {
public:
    static Valuation top() { return Valuation(0, true); }
    static Valuation of(std::uint32_t v) { return Valuation(v, false); }

    bool is_top() const { return top_; }
    std::uint32_t value() const {
        if (top_) fail(ErrorKind::InsufficientPrecision, "valuation is at top of precision");
        return v_;
    }

    bool operator==(const Valuation& o) const { return top_ == o.top_ && (top_ || v_ == o.v_); }
    bool operator!=(const Valuation& o) const { return !(*this == o); }

    std::string str() const { return top_ ? std::string("top") : std::to_string(v_); }

private:
    Valuation(std::uint32_t v, bool top) : v_(v), top_(top) {}
    std::uint32_t v_;
    bool top_;
};

// An element of Z/p^N, the working stand-in for a p-adic integer at precision
// N. Values carry their own effective precision; mixed-precision arithmetic
// truncates to the minimum.
class PAdicScalar {
public:
    PAdicScalar(std::uint64_t p, std::uint32_t prec, std::int64_t value) : p_(p), prec_(prec) {
        check_context();
        mod_ = detail::pow_checked(p, prec);
        std::int64_t r = value % static_cast<std::int64_t>(mod_);
        if (r < 0) r += static_cast<std::int64_t>(mod_);
        res_ = static_cast<std::uint64_t>(r);
    }

    static PAdicScalar zero(std::uint64_t p, std::uint32_t prec) { return PAdicScalar(p, prec, 0); }
    static PAdicScalar one(std::uint64_t p, std::uint32_t prec) { return PAdicScalar(p, prec, 1); }

    // Decimal string, optional leading '-'; reduced mod p^prec digit by digit.
    static PAdicScalar parse(std::uint64_t p, std::uint32_t prec, const std::string& text) {
        if (text.empty()) fail(ErrorKind::ParseError, "empty scalar literal");
        std::size_t i = 0;
        bool neg = false;
        if (text[0] == '-' || text[0] == '+') {
            neg = text[0] == '-';
            i = 1;
        }
        if (i == text.size()) fail(ErrorKind::ParseError, "sign without digits in scalar literal");
        PAdicScalar out(p, prec, 0);
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                fail(ErrorKind::ParseError, "bad digit '" + std::string(1, c) + "' at column " +
                                                std::to_string(i + 1) + " of scalar literal \"" + text + "\"");
            out.res_ = (static_cast<unsigned __int128>(out.res_) * 10 + (c - '0')) % out.mod_;
        }
        if (neg && out.res_ != 0) out.res_ = out.mod_ - out.res_;
        return out;
    }

    std::uint64_t prime() const { return p_; }
    std::uint32_t precision() const { return prec_; }
    std::uint64_t modulus() const { return mod_; }
    std::uint64_t residue() const { return res_; }

    bool is_zero() const { return res_ == 0; }

    // Canonical representative in [0, p^prec) as decimal text.
    std::string str() const { return std::to_string(res_); }

    PAdicScalar truncated(std::uint32_t prec) const {
        if (prec >= prec_) return *this;
        if (prec == 0) fail(ErrorKind::PrecisionTooLow, "cannot truncate below one digit");
        PAdicScalar out(p_, prec, 0);
        out.res_ = res_ % out.mod_;
        return out;
    }

    PAdicScalar operator+(const PAdicScalar& o) const {
        auto [a, b] = reconciled(o);
        a.res_ = (a.res_ + b.res_) % a.mod_;
        return a;
    }
    PAdicScalar operator-(const PAdicScalar& o) const {
        auto [a, b] = reconciled(o);
        a.res_ = (a.res_ + a.mod_ - b.res_) % a.mod_;
        return a;
    }
    PAdicScalar operator*(const PAdicScalar& o) const {
        auto [a, b] = reconciled(o);
        a.res_ = detail::mulmod(a.res_, b.res_, a.mod_);
        return a;
    }
    PAdicScalar operator-() const {
        PAdicScalar out = *this;
        if (out.res_ != 0) out.res_ = out.mod_ - out.res_;
        return out;
    }

    PAdicScalar& operator+=(const PAdicScalar& o) { return *this = *this + o; }
    PAdicScalar& operator-=(const PAdicScalar& o) { return *this = *this - o; }
    PAdicScalar& operator*=(const PAdicScalar& o) { return *this = *this * o; }

    // Equality of residues at the common (minimum) precision.
    bool operator==(const PAdicScalar& o) const {
        auto [a, b] = reconciled(o);
        return a.res_ == b.res_;
    }
    bool operator!=(const PAdicScalar& o) const { return !(*this == o); }

    // Largest k <= prec with p^k | residue; top when the residue is 0.
    Valuation valuation() const {
        if (res_ == 0) return Valuation::top();
        std::uint32_t v = 0;
        std::uint64_t r = res_;
        while (r % p_ == 0) {
            r /= p_;
            ++v;
        }
        return Valuation::of(v);
    }

    bool is_unit() const { return res_ % p_ != 0; }

    PAdicScalar inverse() const {
        if (!is_unit()) fail(ErrorKind::NotAUnit, "p divides " + str() + ", no inverse mod p^" + std::to_string(prec_));
        // Extended Euclid on (res, p^prec).
        std::int64_t r0 = static_cast<std::int64_t>(mod_), r1 = static_cast<std::int64_t>(res_);
        std::int64_t t0 = 0, t1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1;
            r0 = r1;
            r1 = r2;
            // t-coefficients stay bounded by mod_, but the product q*t1 needs care.
            __int128 t2 = static_cast<__int128>(t0) - static_cast<__int128>(q) * t1;
            t0 = t1;
            t1 = static_cast<std::int64_t>(t2 % static_cast<std::int64_t>(mod_));
        }
        std::int64_t t = t0 % static_cast<std::int64_t>(mod_);
        if (t < 0) t += static_cast<std::int64_t>(mod_);
        PAdicScalar out = *this;
        out.res_ = static_cast<std::uint64_t>(t);
        return out;
    }

    PAdicScalar pow(std::uint64_t e) const {
        PAdicScalar acc = PAdicScalar(p_, prec_, 1);
        PAdicScalar base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // Exact division by p: requires p | residue; result loses one digit.
    PAdicScalar divided_by_p() const {
        if (res_ % p_ != 0) fail(ErrorKind::PrecisionTooLow, "residue " + str() + " not divisible by p");
        if (prec_ <= 1) fail(ErrorKind::PrecisionTooLow, "division by p exhausts precision");
        PAdicScalar out(p_, prec_ - 1, 0);
        out.res_ = (res_ / p_) % out.mod_;
        return out;
    }

private:
    void check_context() const {
        if (!detail::is_small_prime(p_)) fail(ErrorKind::ParseError, std::to_string(p_) + " is not a prime");
        if (prec_ < 1) fail(ErrorKind::InsufficientPrecision, "precision must be at least 1");
    }

    std::pair<PAdicScalar, PAdicScalar> reconciled(const PAdicScalar& o) const {
        if (p_ != o.p_)
            fail(ErrorKind::PrimeMismatch,
                 "cannot combine scalars for p=" + std::to_string(p_) + " and p=" + std::to_string(o.p_));
        std::uint32_t prec = prec_ < o.prec_ ? prec_ : o.prec_;
        return {truncated(prec), o.truncated(prec)};
    }

    std::uint64_t p_;
    std::uint32_t prec_;
    std::uint64_t mod_;
    std::uint64_t res_;
};

// Prototype-based constructors used by the generic containers.
inline PAdicScalar zero_like(const PAdicScalar& x) { return PAdicScalar::zero(x.prime(), x.precision()); }
inline PAdicScalar one_like(const PAdicScalar& x) { return PAdicScalar::one(x.prime(), x.precision()); }
inline bool is_zero(const PAdicScalar& x) { return x.is_zero(); }
inline std::string to_text(const PAdicScalar& x) { return x.str(); }

} // namespace dieudet
