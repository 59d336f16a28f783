#pragma once

#include <string>
#include <vector>

#include "dieudet/gaussian.hpp"
#include "dieudet/matrix.hpp"
#include "dieudet/skew_series.hpp"

namespace dieudet {

// ---- the localized ring O_D[[x]][1/p] ------------------------------------------

// pi^power * body with the body pi-free (some coefficient a unit of O_D)
// unless the element is zero.
template <class C>
class Localized {
public:
    explicit Localized(TruncSeries<C> body, int power = 0) : body_(std::move(body)), power_(power) { normalize(); }

    static Localized zero_of(const TruncSeries<C>& proto) { return Localized(zero_like(proto), 0); }
    static Localized pi_power(const TruncSeries<C>& proto, int k) { return Localized(one_like(proto), k); }

    const TruncSeries<C>& body() const { return body_; }
    int power() const { return power_; }
    bool is_zero() const { return body_.is_zero(); }

    Localized operator*(const Localized& o) const {
        // (pi^s A)(pi^t B) = pi^{s+t} (pi^{-t} A pi^t) B
        TruncSeries<C> a = conj_series(body_, o.power_);
        return Localized(a * o.body_, power_ + o.power_);
    }
    Localized operator+(const Localized& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        int m = power_ < o.power_ ? power_ : o.power_;
        TruncSeries<C> a = pi_pow_mul_left(body_, static_cast<std::uint32_t>(power_ - m));
        TruncSeries<C> b = pi_pow_mul_left(o.body_, static_cast<std::uint32_t>(o.power_ - m));
        return Localized(a + b, m);
    }
    Localized operator-() const { return Localized(-body_, power_); }
    Localized operator-(const Localized& o) const { return *this + (-o); }
    Localized& operator+=(const Localized& o) { return *this = *this + o; }
    Localized& operator-=(const Localized& o) { return *this = *this - o; }
    Localized& operator*=(const Localized& o) { return *this = *this * o; }

    bool operator==(const Localized& o) const {
        return (*this - o).is_zero();
    }
    bool operator!=(const Localized& o) const { return !(*this == o); }

    std::string str() const { return "pi^" + std::to_string(power_) + " * " + body_.str(); }

private:
    void normalize() {
        if (body_.is_zero()) {
            power_ = 0;
            return;
        }
        auto mu = detail::series_pi_content(body_);
        if (mu && *mu > 0) {
            body_ = detail::strip_pi_left(body_, *mu);
            power_ += static_cast<int>(*mu);
        }
    }

    // pi^{-t} A pi^t coefficient-wise.
    static TruncSeries<C> conj_series(const TruncSeries<C>& a, int t) {
        if (t == 0) return a;
        std::vector<C> c;
        c.reserve(static_cast<std::size_t>(a.length()));
        for (int i = 0; i < a.length(); ++i) {
            C v = a.coeff(i);
            for (int k = 0; k < (t > 0 ? t : -t); ++k) v = t > 0 ? od_conj_by_pi(v) : od_conj_by_pi_inv(v);
            c.push_back(std::move(v));
        }
        return TruncSeries<C>(std::move(c), a.trusted());
    }

    TruncSeries<C> body_;
    int power_;
};

template <class C>
Localized<C> zero_like(const Localized<C>& x) {
    return Localized<C>::zero_of(x.body());
}
template <class C>
Localized<C> one_like(const Localized<C>& x) {
    return Localized<C>(one_like(x.body()), 0);
}
template <class C>
bool is_zero(const Localized<C>& x) {
    return x.is_zero();
}
template <class C>
std::string to_text(const Localized<C>& x) {
    return x.str();
}

// ---- diagonal reduction -----------------------------------------------------------

template <class C>
struct DiagonalReduction {
    Matrix<Localized<C>> diagonal;
    std::vector<ElemOp<Localized<C>>> ops; // applied to A in order: row ops from the left, column ops from the right
    int scale_pi_exponent = 0;             // det(applied row+col scalings) = pi^{-scale_pi_exponent} * units
    int swaps = 0;
};

// A = U B V over O_D[[x]][1/p] by elementary, permutation, and scalar
// matrices. Pivots are chosen with the smallest reduced order (then the
// smallest pi-power); the Euclidean measure drops strictly until the pivot
// row and column clear.
template <class C>
DiagonalReduction<C> diagonal_reduce(Matrix<Localized<C>> m) {
    DiagonalReduction<C> out{Matrix<Localized<C>>::filled(m.size(), zero_like(m.at(0, 0))), {}, 0, 0};
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        while (true) {
            // Already clear: keep the diagonal entry as is.
            bool clear = !m.at(k, k).is_zero();
            for (std::size_t t = k + 1; t < n && clear; ++t)
                if (!m.at(k, t).is_zero() || !m.at(t, k).is_zero()) clear = false;
            if (clear) break;
            // Pivot: minimal (reduced order of the body, pi-power).
            std::size_t pi_ = n, pj = n;
            int best_ord = 0, best_pow = 0;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j) {
                    const Localized<C>& e = m.at(i, j);
                    if (e.is_zero()) continue;
                    auto ord = reduced_order(e.body());
                    if (!ord) fail(ErrorKind::PrecisionTooLow, "pi-free body exposes no unit coefficient");
                    if (pi_ == n || *ord < best_ord || (*ord == best_ord && e.power() < best_pow)) {
                        pi_ = i;
                        pj = j;
                        best_ord = *ord;
                        best_pow = e.power();
                    }
                }
            if (pi_ == n) fail(ErrorKind::SingularAtPrecision, "zero block during diagonal reduction");
            if (pi_ != k) {
                apply_swap_rows(m, pi_, k);
                out.ops.push_back({OpKind::RowSwap, pi_, k, std::nullopt});
                ++out.swaps;
            }
            if (pj != k) {
                apply_swap_cols(m, pj, k);
                out.ops.push_back({OpKind::ColSwap, pj, k, std::nullopt});
                ++out.swaps;
            }
            // Normalize the pivot to pi-power zero by a scalar row operation.
            if (m.at(k, k).power() != 0) {
                int a = m.at(k, k).power();
                Localized<C> scale = Localized<C>::pi_power(m.at(k, k).body(), -a);
                for (std::size_t c = 0; c < n; ++c) m.at(k, c) = scale * m.at(k, c);
                out.ops.push_back({OpKind::ScaleRowLeft, k, k, scale});
                out.scale_pi_exponent += -a;
            }
            const TruncSeries<C>& pbody = m.at(k, k).body();
            bool dirty = false;
            for (std::size_t r = k + 1; r < n; ++r) {
                if (m.at(r, k).is_zero()) continue;
                SkewDivision<C> d = weierstrass_divide_left(m.at(r, k).body(), pbody);
                Localized<C> lambda = -Localized<C>(d.quotient, m.at(r, k).power());
                apply_row_add(m, r, k, lambda);
                out.ops.push_back({OpKind::RowAddLeft, r, k, lambda});
                if (!m.at(r, k).is_zero()) dirty = true;
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                if (m.at(k, c).is_zero()) continue;
                // entry = E~ pi^e with E~ = pi^e E pi^{-e}; right-divide E~ by the pivot body.
                int e = m.at(k, c).power();
                TruncSeries<C> tilde = m.at(k, c).body();
                {
                    std::vector<C> cc;
                    cc.reserve(static_cast<std::size_t>(tilde.length()));
                    for (int i = 0; i < tilde.length(); ++i) {
                        C v = tilde.coeff(i);
                        for (int t = 0; t < (e > 0 ? e : -e); ++t) v = e > 0 ? od_conj_by_pi_inv(v) : od_conj_by_pi(v);
                        cc.push_back(std::move(v));
                    }
                    tilde = TruncSeries<C>(std::move(cc), tilde.trusted());
                }
                SkewDivision<C> d = weierstrass_divide_right(tilde, pbody);
                Localized<C> mu = -(Localized<C>(d.quotient, 0) * Localized<C>::pi_power(pbody, e));
                apply_col_add(m, c, k, mu);
                out.ops.push_back({OpKind::ColAddRight, c, k, mu});
                if (!m.at(k, c).is_zero()) dirty = true;
            }
            if (!dirty) break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) out.diagonal.at(i, i) = m.at(i, i);
    return out;
}

// ---- integral reduced norms ---------------------------------------------------------

// Nrd of a matrix over O_D[[x]] for the quaternion order: the determinant of
// twice the splitting embedding, divided back by 2^{2n}. The exact division
// is the integrality claim and is checked, not assumed.
inline TruncSeries<PAdicScalar> nrd_integral(const Matrix<TruncSeries<Quat<PAdicScalar>>>& a) {
    const std::size_t n = a.size();
    const int m = a.at(0, 0).length();
    PAdicScalar sproto = a.at(0, 0).coeff(0).coord(0);
    Gaussian<PAdicScalar> gzero(PAdicScalar::zero(2, sproto.precision()), PAdicScalar::zero(2, sproto.precision()));
    using GSeries = TruncSeries<Gaussian<PAdicScalar>>;
    GSeries zs = GSeries::constant(gzero, m);
    Matrix<GSeries> big = Matrix<GSeries>::filled(2 * n, zs);
    int trust = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& entry = a.at(i, j);
            trust = std::min(trust, entry.trusted());
            GSeries b00 = zs, b01 = zs, b10 = zs, b11 = zs;
            for (int k = 0; k < m; ++k) {
                auto blk = embed_quaternion_doubled(entry.coeff(k));
                b00.coeff(k) = blk[0];
                b01.coeff(k) = blk[1];
                b10.coeff(k) = blk[2];
                b11.coeff(k) = blk[3];
            }
            big.at(2 * i, 2 * j) = b00;
            big.at(2 * i, 2 * j + 1) = b01;
            big.at(2 * i + 1, 2 * j) = b10;
            big.at(2 * i + 1, 2 * j + 1) = b11;
        }
    GSeries det = det_commutative(big); // = 2^{2n} Nrd(A)
    std::vector<PAdicScalar> c;
    c.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        if (!det.coeff(k).im().is_zero())
            fail(ErrorKind::NonIntegralNrd, "reduced norm picked up a sqrt(-1) component");
        PAdicScalar v = det.coeff(k).re();
        for (std::size_t t = 0; t < 2 * n; ++t) {
            if (v.residue() % 2 != 0) fail(ErrorKind::NonIntegralNrd, "reduced norm is not integral");
            v = v.divided_by_p();
        }
        c.push_back(v);
    }
    return TruncSeries<PAdicScalar>(std::move(c), trust);
}

// Commutative degenerate O_D = Z_p: the reduced norm is the determinant.
inline TruncSeries<PAdicScalar> nrd_integral(const Matrix<TruncSeries<PAdicScalar>>& a) {
    return det_commutative(a);
}

// ---- the integral representative pipeline --------------------------------------------

template <class C>
struct IntegralDetRepresentative {
    TruncSeries<C> beta;  // unit series (ordered product of the prepared units)
    TruncSeries<C> monic; // monic polynomial (ordered product of the prepared monics)
    int pi_exponent;      // non-negative by the reduced-norm argument
    std::vector<ElemOp<Localized<C>>> ops;
};

// Runs the diagonal reduction, prepares every diagonal entry, and assembles
// the class representative beta * J * pi^r. The exponent must come out
// non-negative; anything else indicates a broken invariant upstream.
template <class C>
IntegralDetRepresentative<C> integral_det_representative(const Matrix<TruncSeries<C>>& a) {
    Matrix<Localized<C>> loc = Matrix<Localized<C>>::filled(a.size(), Localized<C>::zero_of(a.at(0, 0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) loc.at(i, j) = Localized<C>(a.at(i, j), 0);
    DiagonalReduction<C> red = diagonal_reduce(std::move(loc));

    // det(applied ops) contributes pi^{scale}; undoing it means
    // det(A) = pi^{-scale} * prod(diagonal classes) up to commutators.
    int r = -red.scale_pi_exponent;
    TruncSeries<C> beta = one_like(a.at(0, 0));
    TruncSeries<C> monic = one_like(a.at(0, 0));
    bool negate = red.swaps % 2 != 0;
    int total_degree = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Localized<C>& d = red.diagonal.at(i, i);
        if (d.is_zero()) fail(ErrorKind::SingularAtPrecision, "zero diagonal entry after reduction");
        r += d.power();
        WeierstrassFactorization<C> w = weierstrass_prepare(d.body());
        r += w.mu; // zero for a normalized body, kept for safety
        auto deg = reduced_order(d.body());
        total_degree += deg ? *deg : 0;
        if (total_degree >= a.at(0, 0).length())
            fail(ErrorKind::PrecisionTooLow, "monic factor degree exceeds the truncation window");
        beta *= w.unit;
        monic *= w.monic;
    }
    if (negate) beta = -beta;
    if (r < 0) fail(ErrorKind::NegativeExponent, "representative exponent is negative");
    return IntegralDetRepresentative<C>{std::move(beta), std::move(monic), r, std::move(red.ops)};
}

// The series class value Nrd(beta * J * pi^r) of a representative, for
// comparison against nrd_integral of the original matrix.
inline TruncSeries<PAdicScalar> representative_nrd(const IntegralDetRepresentative<Quat<PAdicScalar>>& rep) {
    Matrix<TruncSeries<Quat<PAdicScalar>>> m1(1, {rep.beta * rep.monic});
    TruncSeries<PAdicScalar> nrd = nrd_integral(m1);
    // Nrd(pi)^r = 2^r.
    PAdicScalar two(2, rep.beta.coeff(0).coord(0).precision(), 2);
    for (int i = 0; i < rep.pi_exponent; ++i) nrd = nrd.scaled(two);
    return nrd;
}

inline TruncSeries<PAdicScalar> representative_nrd(const IntegralDetRepresentative<PAdicScalar>& rep) {
    TruncSeries<PAdicScalar> nrd = rep.beta * rep.monic;
    PAdicScalar p(rep.beta.coeff(0).prime(), rep.beta.coeff(0).precision(),
                  static_cast<std::int64_t>(rep.beta.coeff(0).prime()));
    for (int i = 0; i < rep.pi_exponent; ++i) nrd = nrd.scaled(p);
    return nrd;
}

} // namespace dieudet
