#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "dieudet/error.hpp"
#include "dieudet/padic.hpp"

namespace dieudet {

// Exact rational, backing the rational-quaternion and H8 paths where every
// value stays exact and no truncation is wanted.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) fail(ErrorKind::ParseError, "zero denominator");
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // "a", "-a", "a/b".
    static Rational parse(const std::string& text) {
        if (text.empty()) fail(ErrorKind::ParseError, "empty rational literal");
        try {
            mpq_class q(text, 10);
            if (q.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator in \"" + text + "\"");
            q.canonicalize();
            return Rational(std::move(q));
        } catch (const std::invalid_argument&) {
            fail(ErrorKind::ParseError, "bad rational literal \"" + text + "\"");
        }
    }

    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_integral() const { return q_.get_den() == 1; }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    Rational inverse() const {
        if (is_zero()) fail(ErrorKind::NotAUnit, "0 has no inverse");
        return Rational(mpq_class(1 / q_));
    }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }

    // v_p of a nonzero rational; Valuation::top() for 0.
    Valuation padic_valuation_nonneg(std::uint64_t p) const {
        long v = valuation_signed(p);
        if (is_zero()) return Valuation::top();
        if (v < 0) fail(ErrorKind::NotInOrder, "negative " + std::to_string(p) + "-adic valuation");
        return Valuation::of(static_cast<std::uint32_t>(v));
    }

    long valuation_signed(std::uint64_t p) const {
        if (is_zero()) fail(ErrorKind::ZeroAtPrecision, "valuation of 0");
        mpz_class num = q_.get_num(), den = q_.get_den();
        long v = 0;
        while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
            mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
            ++v;
        }
        while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
            mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
            --v;
        }
        return v;
    }

    bool is_p_integral(std::uint64_t p) const { return is_zero() || valuation_signed(p) >= 0; }

    // Residue mod m for p-integral rationals with denominator prime to m.
    std::uint64_t residue_mod(std::uint64_t m) const {
        mpz_class num = q_.get_num() % static_cast<long>(m);
        if (num < 0) num += static_cast<long>(m);
        mpz_class den = q_.get_den() % static_cast<long>(m);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(static_cast<long>(m)).get_mpz_t()) == 0)
            fail(ErrorKind::NotInOrder, "denominator of " + str() + " not invertible mod " + std::to_string(m));
        mpz_class r = (num * inv) % static_cast<long>(m);
        return r.get_ui();
    }

    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_;
};

inline Rational zero_like(const Rational&) { return Rational(); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline std::string to_text(const Rational& x) { return x.str(); }

} // namespace dieudet
