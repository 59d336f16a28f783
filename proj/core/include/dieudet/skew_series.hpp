#pragma once

#include <optional>

#include "dieudet/padic.hpp"
#include "dieudet/quaternion.hpp"
#include "dieudet/series.hpp"

namespace dieudet {

// Coefficient-ring hooks for power series over a complete local order O_D.
// Two instantiations: the 2-adic quaternion maximal order (pi = 1 + i,
// pi^2 = 2 * unit) and the commutative degenerate O_D = Z_p (pi = p).

inline bool od_is_unit(const Quat<PAdicScalar>& c) { return quat_is_unit(c); }
inline bool od_is_unit(const PAdicScalar& c) { return c.is_unit(); }

inline Valuation od_w(const Quat<PAdicScalar>& c) { return quat_w_valuation(c); }
inline Valuation od_w(const PAdicScalar& c) { return c.valuation(); }

inline std::uint32_t od_precision(const Quat<PAdicScalar>& c) { return c.coord(0).precision(); }
inline std::uint32_t od_precision(const PAdicScalar& c) { return c.precision(); }

inline Quat<PAdicScalar> od_pi(const Quat<PAdicScalar>& proto) { return Quat<PAdicScalar>::pi(proto.coord(0)); }
inline PAdicScalar od_pi(const PAdicScalar& proto) {
    return PAdicScalar(proto.prime(), proto.precision(), static_cast<std::int64_t>(proto.prime()));
}

// pi^{d'} = p * unit: d' = 2 for the quaternion order, 1 for Z_p.
inline int od_ramification(const Quat<PAdicScalar>&) { return 2; }
inline int od_ramification(const PAdicScalar&) { return 1; }

// Index of the division algebra: deg Nrd(J) = index * deg J.
inline int od_index(const Quat<PAdicScalar>&) { return 2; }
inline int od_index(const PAdicScalar&) { return 1; }

inline Quat<PAdicScalar> od_div_pi_left(const Quat<PAdicScalar>& c) { return quat_pi_div_left(c); }
inline PAdicScalar od_div_pi_left(const PAdicScalar& c) { return c.divided_by_p(); }
inline Quat<PAdicScalar> od_div_pi_right(const Quat<PAdicScalar>& c) { return quat_pi_div_right(c); }
inline PAdicScalar od_div_pi_right(const PAdicScalar& c) { return c.divided_by_p(); }

// pi^{-1} c pi and pi c pi^{-1}.
inline Quat<PAdicScalar> od_conj_by_pi(const Quat<PAdicScalar>& c) { return quat_conj_by_pi(c); }
inline PAdicScalar od_conj_by_pi(const PAdicScalar& c) { return c; }
inline Quat<PAdicScalar> od_conj_by_pi_inv(const Quat<PAdicScalar>& c) { return quat_conj_by_pi_inv(c); }
inline PAdicScalar od_conj_by_pi_inv(const PAdicScalar& c) { return c; }

// ---- reduced order -------------------------------------------------------------

// Least index whose coefficient is a unit of O_D; nullopt when no coefficient
// in the truncation window is one.
template <class C>
std::optional<int> reduced_order(const TruncSeries<C>& f) {
    for (int i = 0; i < f.length(); ++i)
        if (od_is_unit(f.coeff(i))) return i;
    return std::nullopt;
}

// ---- Weierstrass division --------------------------------------------------------

template <class C>
struct SkewDivision {
    TruncSeries<C> quotient;
    TruncSeries<C> remainder; // polynomial of degree < ord(f2)
};

namespace detail {

template <class C>
void skew_split(const TruncSeries<C>& f, int s, TruncSeries<C>& low, TruncSeries<C>& high) {
    const int m = f.length();
    std::vector<C> lo(static_cast<std::size_t>(m), zero_like(f.coeff(0)));
    std::vector<C> hi(static_cast<std::size_t>(m), zero_like(f.coeff(0)));
    for (int i = 0; i < m; ++i) {
        if (i < s)
            lo[static_cast<std::size_t>(i)] = f.coeff(i);
        else
            hi[static_cast<std::size_t>(i - s)] = f.coeff(i);
    }
    low = TruncSeries<C>(std::move(lo), f.trusted());
    high = TruncSeries<C>(std::move(hi), std::max(0, f.trusted() - s));
}

template <class C>
int division_trust(const TruncSeries<C>& f1, const TruncSeries<C>& f2, int s) {
    int t = std::min(f1.trusted(), f2.trusted()) - s;
    if (t < f1.length() / 2)
        fail(ErrorKind::PrecisionTooLow, "series trust fell below half the truncation window");
    return t;
}

} // namespace detail

// f1 = a*f2 + r with deg r < ord(f2); iterative, converging pi-adically.
template <class C>
SkewDivision<C> weierstrass_divide_left(const TruncSeries<C>& f1, const TruncSeries<C>& f2) {
    auto ord = reduced_order(f2);
    if (!ord) fail(ErrorKind::InfiniteOrder, "divisor has no unit coefficient in the window");
    const int s = *ord;
    const int trust = detail::division_trust(f1, f2, s);
    TruncSeries<C> low = zero_like(f1), high = zero_like(f1);
    detail::skew_split(f2, s, low, high);
    TruncSeries<C> hinv = high.inverse();

    TruncSeries<C> a = zero_like(f1);
    TruncSeries<C> g = f1;
    const int cap = static_cast<int>(od_precision(f1.coeff(0))) * od_ramification(f1.coeff(0)) + 2;
    for (int round = 0; round <= cap; ++round) {
        TruncSeries<C> glow = zero_like(f1), ghigh = zero_like(f1);
        detail::skew_split(g, s, glow, ghigh);
        if (ghigh.is_zero()) {
            a.set_trusted(trust);
            g.set_trusted(trust);
            return SkewDivision<C>{std::move(a), std::move(g)};
        }
        TruncSeries<C> da = ghigh * hinv;
        a += da;
        g = glow - da * low;
    }
    fail(ErrorKind::PrecisionTooLow, "left division did not converge");
}

// f1 = f2*b + s with deg s < ord(f2).
template <class C>
SkewDivision<C> weierstrass_divide_right(const TruncSeries<C>& f1, const TruncSeries<C>& f2) {
    auto ord = reduced_order(f2);
    if (!ord) fail(ErrorKind::InfiniteOrder, "divisor has no unit coefficient in the window");
    const int s = *ord;
    const int trust = detail::division_trust(f1, f2, s);
    TruncSeries<C> low = zero_like(f1), high = zero_like(f1);
    detail::skew_split(f2, s, low, high);
    TruncSeries<C> hinv = high.inverse();

    TruncSeries<C> b = zero_like(f1);
    TruncSeries<C> g = f1;
    const int cap = static_cast<int>(od_precision(f1.coeff(0))) * od_ramification(f1.coeff(0)) + 2;
    for (int round = 0; round <= cap; ++round) {
        TruncSeries<C> glow = zero_like(f1), ghigh = zero_like(f1);
        detail::skew_split(g, s, glow, ghigh);
        if (ghigh.is_zero()) {
            b.set_trusted(trust);
            g.set_trusted(trust);
            return SkewDivision<C>{std::move(b), std::move(g)};
        }
        TruncSeries<C> db = hinv * ghigh;
        b += db;
        g = glow - low * db;
    }
    fail(ErrorKind::PrecisionTooLow, "right division did not converge");
}

// ---- Weierstrass preparation ------------------------------------------------------

template <class C>
struct WeierstrassFactorization {
    int mu;               // power of pi split off on the left (right for the右 variant)
    TruncSeries<C> unit;  // invertible series
    TruncSeries<C> monic; // monic polynomial of degree = reduced order
};

namespace detail {

// Minimal w over the coefficients; nullopt when the series vanishes.
template <class C>
std::optional<std::uint32_t> series_pi_content(const TruncSeries<C>& f) {
    std::optional<std::uint32_t> mu;
    for (int i = 0; i < f.length(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        Valuation w = od_w(f.coeff(i));
        if (w.is_top()) continue;
        if (!mu || w.value() < *mu) mu = w.value();
    }
    return mu;
}

template <class C>
TruncSeries<C> strip_pi_left(const TruncSeries<C>& f, std::uint32_t mu) {
    std::vector<C> c;
    c.reserve(static_cast<std::size_t>(f.length()));
    for (int i = 0; i < f.length(); ++i) {
        C v = f.coeff(i);
        for (std::uint32_t k = 0; k < mu; ++k) v = od_div_pi_left(v);
        c.push_back(std::move(v));
    }
    return TruncSeries<C>(std::move(c), f.trusted());
}

template <class C>
TruncSeries<C> strip_pi_right(const TruncSeries<C>& f, std::uint32_t mu) {
    std::vector<C> c;
    c.reserve(static_cast<std::size_t>(f.length()));
    for (int i = 0; i < f.length(); ++i) {
        C v = f.coeff(i);
        for (std::uint32_t k = 0; k < mu; ++k) v = od_div_pi_right(v);
        c.push_back(std::move(v));
    }
    return TruncSeries<C>(std::move(c), f.trusted());
}

template <class C>
TruncSeries<C> monomial_like(const TruncSeries<C>& proto, int k) {
    return TruncSeries<C>::monomial(one_like(proto.coeff(0)), k, proto.length());
}

} // namespace detail

// f = pi^mu * U * J with U an invertible series and J monic of degree
// ord(pi^{-mu} f).
template <class C>
WeierstrassFactorization<C> weierstrass_prepare(const TruncSeries<C>& f) {
    auto mu = detail::series_pi_content(f);
    if (!mu) fail(ErrorKind::ZeroAtPrecision, "series vanishes at working precision");
    TruncSeries<C> f0 = detail::strip_pi_left(f, *mu);
    auto ord = reduced_order(f0);
    if (!ord) fail(ErrorKind::InfiniteOrder, "pi-free part exposes no unit coefficient");
    const int s = *ord;
    SkewDivision<C> div = weierstrass_divide_left(detail::monomial_like(f0, s), f0);
    // x^s = q f0 + r, so J := x^s - r = q f0 and U := q^{-1}.
    TruncSeries<C> j = detail::monomial_like(f0, s) - div.remainder;
    if (div.remainder.trusted() >= s) j.set_trusted(j.length());
    TruncSeries<C> u = div.quotient.inverse();
    return WeierstrassFactorization<C>{static_cast<int>(*mu), std::move(u), std::move(j)};
}

// f = H * V * pi^mu, the right-handed form.
template <class C>
WeierstrassFactorization<C> weierstrass_prepare_right(const TruncSeries<C>& f) {
    auto mu = detail::series_pi_content(f);
    if (!mu) fail(ErrorKind::ZeroAtPrecision, "series vanishes at working precision");
    TruncSeries<C> f0 = detail::strip_pi_right(f, *mu);
    auto ord = reduced_order(f0);
    if (!ord) fail(ErrorKind::InfiniteOrder, "pi-free part exposes no unit coefficient");
    const int s = *ord;
    SkewDivision<C> div = weierstrass_divide_right(detail::monomial_like(f0, s), f0);
    // x^s = f0 b + r, so H := x^s - r = f0 b and V := b^{-1}.
    TruncSeries<C> h = detail::monomial_like(f0, s) - div.remainder;
    if (div.remainder.trusted() >= s) h.set_trusted(h.length());
    TruncSeries<C> v = div.quotient.inverse();
    return WeierstrassFactorization<C>{static_cast<int>(*mu), std::move(v), std::move(h)};
}

// Left-multiply every coefficient by pi^k (the series-level pi^k * f).
template <class C>
TruncSeries<C> pi_pow_mul_left(const TruncSeries<C>& f, std::uint32_t k) {
    C pi = od_pi(f.coeff(0));
    std::vector<C> c;
    c.reserve(static_cast<std::size_t>(f.length()));
    for (int i = 0; i < f.length(); ++i) {
        C v = f.coeff(i);
        for (std::uint32_t t = 0; t < k; ++t) v = pi * v;
        c.push_back(std::move(v));
    }
    return TruncSeries<C>(std::move(c), f.trusted());
}

template <class C>
TruncSeries<C> pi_pow_mul_right(const TruncSeries<C>& f, std::uint32_t k) {
    C pi = od_pi(f.coeff(0));
    std::vector<C> c;
    c.reserve(static_cast<std::size_t>(f.length()));
    for (int i = 0; i < f.length(); ++i) {
        C v = f.coeff(i);
        for (std::uint32_t t = 0; t < k; ++t) v = v * pi;
        c.push_back(std::move(v));
    }
    return TruncSeries<C>(std::move(c), f.trusted());
}

} // namespace dieudet
