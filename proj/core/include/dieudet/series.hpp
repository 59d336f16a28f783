#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dieudet/error.hpp"

namespace dieudet {

// Truncated power series over a (possibly non-commutative) coefficient ring S;
// the variable is central, arithmetic drops every term at or beyond x^M.
//
// `trusted` counts how many leading coefficients are still meaningful; plain
// ring operations keep the full window, Weierstrass division shrinks it.
template <class S>
class TruncSeries {
public:
    TruncSeries(std::vector<S> coeffs, int trusted)
        : c_(std::move(coeffs)), trusted_(trusted) {
        if (c_.empty()) fail(ErrorKind::InsufficientPrecision, "series needs at least one coefficient");
        if (trusted_ > length()) trusted_ = length();
        if (trusted_ < 0) trusted_ = 0;
    }
    explicit TruncSeries(std::vector<S> coeffs) : c_(std::move(coeffs)), trusted_(0) {
        if (c_.empty()) fail(ErrorKind::InsufficientPrecision, "series needs at least one coefficient");
        trusted_ = length();
    }

    static TruncSeries constant(const S& value, int m) {
        std::vector<S> c(static_cast<std::size_t>(m), zero_like(value));
        c[0] = value;
        return TruncSeries(std::move(c), m);
    }
    static TruncSeries monomial(const S& value, int k, int m) {
        std::vector<S> c(static_cast<std::size_t>(m), zero_like(value));
        if (k < m) c[static_cast<std::size_t>(k)] = value;
        return TruncSeries(std::move(c), m);
    }

    int length() const { return static_cast<int>(c_.size()); }
    int trusted() const { return trusted_; }
    void set_trusted(int t) { trusted_ = t < 0 ? 0 : (t > length() ? length() : t); }

    const S& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    S& coeff(int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<S>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const S& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Lowest index with a nonzero coefficient, within the trusted window.
    int order_of_vanishing() const {
        for (int i = 0; i < trusted_; ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) return i;
        return trusted_;
    }

    TruncSeries operator+(const TruncSeries& o) const {
        check(o);
        std::vector<S> c;
        c.reserve(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] + o.c_[i]);
        return TruncSeries(std::move(c), std::min(trusted_, o.trusted_));
    }
    TruncSeries operator-(const TruncSeries& o) const {
        check(o);
        std::vector<S> c;
        c.reserve(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] - o.c_[i]);
        return TruncSeries(std::move(c), std::min(trusted_, o.trusted_));
    }
    TruncSeries operator-() const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(-x);
        return TruncSeries(std::move(c), trusted_);
    }
    TruncSeries operator*(const TruncSeries& o) const {
        check(o);
        const int m = length();
        std::vector<S> c(static_cast<std::size_t>(m), zero_like(c_[0]));
        for (int i = 0; i < m; ++i) {
            if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; i + j < m; ++j)
                c[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
        }
        return TruncSeries(std::move(c), std::min(trusted_, o.trusted_));
    }
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries scaled(const S& s) const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(s * x);
        return TruncSeries(std::move(c), trusted_);
    }
    TruncSeries scaled_right(const S& s) const {
        std::vector<S> c;
        c.reserve(c_.size());
        for (const S& x : c_) c.push_back(x * s);
        return TruncSeries(std::move(c), trusted_);
    }

    // Multiply by x^k.
    TruncSeries shifted(int k) const {
        std::vector<S> c(c_.size(), zero_like(c_[0]));
        for (int i = 0; i + k < length(); ++i) c[static_cast<std::size_t>(i + k)] = c_[static_cast<std::size_t>(i)];
        return TruncSeries(std::move(c), std::min(length(), trusted_ + k));
    }

    // Two-sided inverse; requires an invertible constant term.
    TruncSeries inverse() const {
        S g0 = c_[0].inverse();
        std::vector<S> g(c_.size(), zero_like(c_[0]));
        g[0] = g0;
        for (int m = 1; m < length(); ++m) {
            S acc = zero_like(c_[0]);
            for (int k = 1; k <= m; ++k) acc += c_[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(m - k)];
            g[static_cast<std::size_t>(m)] = -(g0 * acc);
        }
        return TruncSeries(std::move(g), trusted_);
    }

    bool operator==(const TruncSeries& o) const {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    // Coefficient-wise equality restricted to the common trusted window.
    bool equal_where_trusted(const TruncSeries& o) const {
        check(o);
        int t = std::min(trusted_, o.trusted_);
        for (int i = 0; i < t; ++i)
            if (c_[static_cast<std::size_t>(i)] != o.c_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += to_text(c_[i]);
        }
        return s + "]";
    }

private:
    void check(const TruncSeries& o) const {
        if (length() != o.length()) fail(ErrorKind::ContextMismatch, "series truncation orders differ");
    }

    std::vector<S> c_;
    int trusted_;
};

template <class S>
TruncSeries<S> zero_like(const TruncSeries<S>& x) {
    return TruncSeries<S>::constant(zero_like(x.coeff(0)), x.length());
}
template <class S>
TruncSeries<S> one_like(const TruncSeries<S>& x) {
    return TruncSeries<S>::constant(one_like(x.coeff(0)), x.length());
}
template <class S>
bool is_zero(const TruncSeries<S>& x) {
    return x.is_zero();
}
template <class S>
std::string to_text(const TruncSeries<S>& x) {
    return x.str();
}

} // namespace dieudet
