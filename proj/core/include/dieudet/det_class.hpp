#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dieudet/group_ring.hpp"
#include "dieudet/matrix.hpp"

namespace dieudet {

// ---- ring inverses used by the elimination paths ----------------------------

namespace detail {

// Dense linear solve A x = b over the scalar ring; pivots must be invertible
// (units for Z/p^N, nonzero for exact rationals).
template <class S, class Pivotable>
std::optional<std::vector<S>> gauss_solve(std::vector<S> m, std::size_t n, Pivotable pivotable) {
    // m is n x (n+1), row major, last column the rhs.
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (pivotable(m[r * (n + 1) + c])) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        for (std::size_t k = 0; k <= n; ++k) std::swap(m[piv * (n + 1) + k], m[c * (n + 1) + k]);
        S inv = m[c * (n + 1) + c].inverse();
        for (std::size_t k = 0; k <= n; ++k) m[c * (n + 1) + k] = inv * m[c * (n + 1) + k];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            S f = m[r * (n + 1) + c];
            if (f.is_zero()) continue;
            for (std::size_t k = 0; k <= n; ++k) m[r * (n + 1) + k] -= f * m[c * (n + 1) + k];
        }
    }
    std::vector<S> sol;
    sol.reserve(n);
    for (std::size_t r = 0; r < n; ++r) sol.push_back(m[r * (n + 1) + n]);
    return sol;
}

template <class S, class Pivotable>
std::optional<GroupRingElem<S>> regular_rep_inverse(const GroupRingElem<S>& a, Pivotable pivotable) {
    const GroupPtr& g = a.group();
    const std::size_t n = g->size();
    S zero = zero_like(a.coeff(0));
    std::vector<S> m(n * (n + 1), zero);
    for (std::uint16_t j = 0; j < n; ++j)
        for (std::uint16_t k = 0; k < n; ++k) m[g->mul(k, j) * (n + 1) + j] += a.coeff(k);
    m[n] = one_like(zero); // rhs = e_identity (row 0)
    auto sol = gauss_solve(std::move(m), n, pivotable);
    if (!sol) return std::nullopt;
    return GroupRingElem<S>(g, std::move(*sol));
}

} // namespace detail

inline GroupRingElem<PAdicScalar> group_ring_inverse(const GroupRingElem<PAdicScalar>& a) {
    auto inv = detail::regular_rep_inverse(a, [](const PAdicScalar& s) { return s.is_unit(); });
    if (!inv) fail(ErrorKind::NotAUnit, "group ring element is not invertible at precision");
    return *inv;
}

inline GroupRingElem<Rational> group_ring_inverse(const GroupRingElem<Rational>& a) {
    auto inv = detail::regular_rep_inverse(a, [](const Rational& s) { return !s.is_zero(); });
    if (!inv) fail(ErrorKind::NotAUnit, "group ring element is not invertible");
    return *inv;
}

// ---- determinant classes -----------------------------------------------------

// Determinant invariant over Q_p[D_2p] (or its Lambda form): the commutative
// component value in the C2 group ring and the reduced norm of the division
// component, with an optional power of p cleared out of the denominators.
template <class S>
struct DihedralDetClass {
    GroupRingElem<S> comm;   // over C2
    CyclotomicInt<S> nrd;    // alpha-fixed, coordinates of an O_F element
    int p_denom_exp = 0;     // the class stands for p^{-p_denom_exp} * (comm, nrd)

    DihedralDetClass operator*(const DihedralDetClass& o) const {
        return DihedralDetClass{comm * o.comm, nrd * o.nrd, p_denom_exp + o.p_denom_exp};
    }

    bool operator==(const DihedralDetClass& o) const {
        if (p_denom_exp == o.p_denom_exp) return comm == o.comm && nrd == o.nrd;
        // Bring both sides to the common denominator exponent.
        S one = one_like(comm.coeff(0));
        S p_scalar = zero_like(comm.coeff(0));
        for (std::uint32_t i = 0; i < nrd.p(); ++i) p_scalar += one;
        S pe = one, po = one;
        int d = p_denom_exp - o.p_denom_exp;
        for (int i = 0; i < (d > 0 ? d : -d); ++i) (d > 0 ? pe : po) *= p_scalar;
        return comm.scaled(po) == o.comm.scaled(pe) && nrd.scaled(po) == o.nrd.scaled(pe);
    }
    bool operator!=(const DihedralDetClass& o) const { return !(*this == o); }

    bool is_identity() const {
        return p_denom_exp == 0 && comm == one_like(comm) && nrd == one_like(nrd);
    }

    std::string str() const {
        return "{comm=" + comm.str() + ", nrd=" + nrd.str() +
               (p_denom_exp ? ", p_exp=-" + std::to_string(p_denom_exp) : "") + "}";
    }
};

// Determinant invariant over Q_2[H8], computed exactly over the rationals:
// the Klein-four component value and the reduced norm of the quaternion part.
struct H8DetClass {
    GroupRingElem<Rational> comm; // over Klein4
    Rational nrd;

    H8DetClass operator*(const H8DetClass& o) const { return H8DetClass{comm * o.comm, nrd * o.nrd}; }
    bool operator==(const H8DetClass& o) const { return comm == o.comm && nrd == o.nrd; }
    bool operator!=(const H8DetClass& o) const { return !(*this == o); }
    std::string str() const { return "{comm=" + comm.str() + ", nrd=" + nrd.str() + "}"; }
};

// Determinant invariant over the rational quaternions: a representative of
// the class in the abelianized unit group plus its canonical reduced norm.
struct QuatDetClass {
    Quat<Rational> rep;
    Rational nrd;

    QuatDetClass operator*(const QuatDetClass& o) const { return QuatDetClass{rep * o.rep, nrd * o.nrd}; }
    std::string str() const { return "{rep=" + rep.str() + ", nrd=" + nrd.str() + "}"; }
};

// ---- component maps on matrices ----------------------------------------------

template <class S>
Matrix<GroupRingElem<S>> sigma1_matrix_d2p(const Matrix<GroupRingElem<S>>& a) {
    Matrix<GroupRingElem<S>> out =
        Matrix<GroupRingElem<S>>::filled(a.size(), GroupRingElem<S>::zero(FiniteGroup::c2(), a.at(0, 0).coeff(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out.at(i, j) = wedderburn_d2p(a.at(i, j)).comm;
    return out;
}

template <class S>
Matrix<DihedralElem<S>> sigma2_matrix_d2p(const Matrix<GroupRingElem<S>>& a) {
    auto proto = wedderburn_d2p(a.at(0, 0)).div;
    Matrix<DihedralElem<S>> out = Matrix<DihedralElem<S>>::filled(a.size(), zero_like(proto));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out.at(i, j) = wedderburn_d2p(a.at(i, j)).div;
    return out;
}

inline Matrix<GroupRingElem<Rational>> sigma1_matrix_h8(const Matrix<GroupRingElem<Rational>>& a) {
    auto out = Matrix<GroupRingElem<Rational>>::filled(
        a.size(), GroupRingElem<Rational>::zero(FiniteGroup::klein4(), Rational()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out.at(i, j) = wedderburn_h8(a.at(i, j)).comm;
    return out;
}

inline Matrix<Quat<Rational>> sigma2_matrix_h8(const Matrix<GroupRingElem<Rational>>& a) {
    auto out = Matrix<Quat<Rational>>::filled(a.size(), Quat<Rational>::constant(Rational()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out.at(i, j) = wedderburn_h8(a.at(i, j)).div;
    return out;
}

// n x n over L<tau> -> 2n x 2n over L through the splitting embedding.
template <class S>
Matrix<CyclotomicInt<S>> dihedral_splitting_matrix(const Matrix<DihedralElem<S>>& a) {
    auto proto = a.at(0, 0).c();
    Matrix<CyclotomicInt<S>> out = Matrix<CyclotomicInt<S>>::filled(2 * a.size(), zero_like(proto));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            auto block = embed_dihedral(a.at(i, j));
            out.at(2 * i, 2 * j) = block[0];
            out.at(2 * i, 2 * j + 1) = block[1];
            out.at(2 * i + 1, 2 * j) = block[2];
            out.at(2 * i + 1, 2 * j + 1) = block[3];
        }
    return out;
}

// n x n over the rational quaternions -> 2n x 2n over Q(sqrt(-1)).
inline Matrix<Gaussian<Rational>> quaternion_splitting_matrix(const Matrix<Quat<Rational>>& a) {
    auto out = Matrix<Gaussian<Rational>>::filled(2 * a.size(), Gaussian<Rational>::constant(Rational()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            auto block = embed_quaternion(a.at(i, j));
            out.at(2 * i, 2 * j) = block[0];
            out.at(2 * i, 2 * j + 1) = block[1];
            out.at(2 * i + 1, 2 * j) = block[2];
            out.at(2 * i + 1, 2 * j + 1) = block[3];
        }
    return out;
}

// Reduced norm of a matrix over L<tau>: the splitting-field determinant.
template <class S>
CyclotomicInt<S> nrd_matrix_dihedral(const Matrix<DihedralElem<S>>& a) {
    CyclotomicInt<S> det = det_commutative(dihedral_splitting_matrix(a));
    if (det != det.alpha()) fail(ErrorKind::NotInRealSubfield, "matrix reduced norm escaped O_F");
    return det;
}

// Reduced norm of a matrix over the rational quaternions; exact.
inline Rational nrd_matrix_quaternion(const Matrix<Quat<Rational>>& a) {
    Gaussian<Rational> det = det_commutative(quaternion_splitting_matrix(a));
    if (!det.im().is_zero()) fail(ErrorKind::NonIntegralNrd, "matrix reduced norm has a sqrt(-1) part");
    return det.re();
}

// ---- det_class ---------------------------------------------------------------

// Component-wise Dieudonne determinant class over Q_p[D_2p] (scalar or
// Lambda coefficients): ordinary determinant on the commutative factor,
// splitting-field determinant (= reduced norm) on the division factor.
template <class S>
DihedralDetClass<S> det_class(const Matrix<GroupRingElem<S>>& a) {
    if (a.at(0, 0).group()->kind() != FiniteGroup::Kind::Dihedral)
        fail(ErrorKind::UnsupportedGroup, "det_class: expected a dihedral group ring matrix");
    GroupRingElem<S> comm = det_commutative(sigma1_matrix_d2p(a));
    // Invertibility over the fraction field: both characters of the C2 part
    // and the reduced norm must survive at precision.
    S cplus = comm.coeff(0) + comm.coeff(1);
    S cminus = comm.coeff(0) - comm.coeff(1);
    if (cplus.is_zero() || cminus.is_zero())
        fail(ErrorKind::SingularAtPrecision, "commutative component determinant vanishes at precision");
    CyclotomicInt<S> nrd = nrd_matrix_dihedral(sigma2_matrix_d2p(a));
    if (nrd.is_zero()) fail(ErrorKind::SingularAtPrecision, "reduced norm vanishes at precision");
    return DihedralDetClass<S>{std::move(comm), std::move(nrd), 0};
}

// Dieudonne determinant over the rational quaternion division algebra by
// unit-pivot elimination; every nonzero entry is invertible.
inline QuatDetClass det_division_ring(Matrix<Quat<Rational>> m) {
    const std::size_t n = m.size();
    Quat<Rational> rep = Quat<Rational>::constant(Rational(1));
    int swaps = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n, pj = n;
        for (std::size_t i = k; i < n && pi == n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (!m.at(i, j).is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == n) fail(ErrorKind::SingularAtPrecision, "zero block in quaternion elimination");
        if (pi != k) {
            apply_swap_rows(m, pi, k);
            ++swaps;
        }
        if (pj != k) {
            apply_swap_cols(m, pj, k);
            ++swaps;
        }
        Quat<Rational> pivot = m.at(k, k);
        Quat<Rational> pinv = pivot.inverse();
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m.at(r, k).is_zero()) continue;
            Quat<Rational> f = -(m.at(r, k) * pinv);
            apply_row_add(m, r, k, f);
        }
        for (std::size_t c = k + 1; c < n; ++c) {
            if (m.at(k, c).is_zero()) continue;
            Quat<Rational> f = -(pinv * m.at(k, c));
            apply_col_add(m, c, k, f);
        }
        rep *= pivot;
    }
    if (swaps % 2) rep = -rep;
    return QuatDetClass{rep, nrd_quaternion(rep)};
}

inline QuatDetClass det_class(const Matrix<Quat<Rational>>& a) { return det_division_ring(a); }

// Component-wise determinant class over Q_2[H8], exact over the rationals.
inline H8DetClass det_class(const Matrix<GroupRingElem<Rational>>& a) {
    if (a.at(0, 0).group()->kind() != FiniteGroup::Kind::H8)
        fail(ErrorKind::UnsupportedGroup, "det_class: expected an H8 group ring matrix");
    GroupRingElem<Rational> comm = det_commutative(sigma1_matrix_h8(a));
    // Klein-four characters e, f -> +/-1 must all be nonzero.
    const Rational& a1 = comm.coeff(0);
    const Rational& a2 = comm.coeff(1);
    const Rational& a3 = comm.coeff(2);
    const Rational& a4 = comm.coeff(3);
    for (int se = -1; se <= 1; se += 2)
        for (int sf = -1; sf <= 1; sf += 2) {
            Rational v = a1 + a2 * Rational(se) + a3 * Rational(sf) + a4 * Rational(se * sf);
            if (v.is_zero()) fail(ErrorKind::SingularAtPrecision, "Klein-four component determinant vanishes");
        }
    Rational nrd = nrd_matrix_quaternion(sigma2_matrix_h8(a));
    if (nrd.is_zero()) fail(ErrorKind::SingularAtPrecision, "quaternion reduced norm vanishes");
    return H8DetClass{std::move(comm), std::move(nrd)};
}

// ---- the 2x2 closed formula ---------------------------------------------------

// [a b; c d] with a invertible: the class of ad - a c a^{-1} b.
template <class T, class InvFn>
T det_2x2_formula(const T& a, const T& b, const T& c, const T& d, InvFn inv) {
    return a * d - a * c * inv(a) * b;
}

inline Quat<Rational> det_2x2_formula(const Quat<Rational>& a, const Quat<Rational>& b,
                                      const Quat<Rational>& c, const Quat<Rational>& d) {
    if (a.nrd().is_zero()) fail(ErrorKind::NotAUnit, "2x2 formula needs an invertible corner");
    return det_2x2_formula(a, b, c, d, [](const Quat<Rational>& q) { return q.inverse(); });
}

template <class S>
GroupRingElem<S> det_2x2_formula(const GroupRingElem<S>& a, const GroupRingElem<S>& b,
                                 const GroupRingElem<S>& c, const GroupRingElem<S>& d) {
    return det_2x2_formula(a, b, c, d, [](const GroupRingElem<S>& x) { return group_ring_inverse(x); });
}

// ---- unit-pivot elimination with a trace ---------------------------------------

template <class T>
struct PivotReduction {
    std::vector<T> pivots;          // pivots consumed, in order
    int swaps = 0;                  // row+column swaps performed
    std::vector<ElemOp<T>> trace;   // full elementary history
    std::optional<Matrix<T>> stuck; // remaining block without a unit entry
};

// Gaussian elimination where pivots must be units of the integral ring;
// stops (without failing) on the first block that has none.
template <class T, class IsUnitFn, class InvFn>
PivotReduction<T> unit_pivot_reduce(Matrix<T> m, IsUnitFn is_unit_fn, InvFn inv_fn) {
    PivotReduction<T> out;
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n, pj = n;
        for (std::size_t i = k; i < n && pi == n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (is_unit_fn(m.at(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == n) {
            std::size_t r = n - k;
            Matrix<T> rest = Matrix<T>::filled(r, zero_like(m.at(0, 0)));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) rest.at(i, j) = m.at(k + i, k + j);
            out.stuck = std::move(rest);
            return out;
        }
        if (pi != k) {
            apply_swap_rows(m, pi, k);
            out.trace.push_back({OpKind::RowSwap, pi, k, std::nullopt});
            ++out.swaps;
        }
        if (pj != k) {
            apply_swap_cols(m, pj, k);
            out.trace.push_back({OpKind::ColSwap, pj, k, std::nullopt});
            ++out.swaps;
        }
        T pivot = m.at(k, k);
        T pinv = inv_fn(pivot);
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m.at(r, k).is_zero()) continue;
            T f = -(m.at(r, k) * pinv);
            apply_row_add(m, r, k, f);
            out.trace.push_back({OpKind::RowAddLeft, r, k, f});
        }
        for (std::size_t c = k + 1; c < n; ++c) {
            if (m.at(k, c).is_zero()) continue;
            T f = -(pinv * m.at(k, c));
            apply_col_add(m, c, k, f);
            out.trace.push_back({OpKind::ColAddRight, c, k, f});
        }
        out.pivots.push_back(pivot);
    }
    return out;
}

// det_via_elimination over Z_p[D_2p]: the class of the pivot product times
// the sign class of the swaps; NoUnitPivot when the reduction gets stuck.
inline std::pair<DihedralDetClass<PAdicScalar>, std::vector<ElemOp<GroupRingElem<PAdicScalar>>>>
det_via_elimination(const Matrix<GroupRingElem<PAdicScalar>>& a) {
    auto red = unit_pivot_reduce(
        a, [](const GroupRingElem<PAdicScalar>& x) { return is_unit_d2p(x); },
        [](const GroupRingElem<PAdicScalar>& x) { return group_ring_inverse(x); });
    if (red.stuck) fail(ErrorKind::NoUnitPivot, "no unit pivot; fall back to det_class");
    GroupRingElem<PAdicScalar> prod = one_like(a.at(0, 0));
    for (const auto& p : red.pivots) prod *= p;
    if (red.swaps % 2) prod = -prod;
    auto w = wedderburn_d2p(prod);
    return {DihedralDetClass<PAdicScalar>{std::move(w.comm), nrd_dihedral_raw(w.div), 0}, std::move(red.trace)};
}

// Same over Z_2[H8].
inline std::pair<H8DetClass, std::vector<ElemOp<GroupRingElem<Rational>>>>
det_via_elimination(const Matrix<GroupRingElem<Rational>>& a) {
    auto red = unit_pivot_reduce(
        a, [](const GroupRingElem<Rational>& x) { return is_unit_h8(x); },
        [](const GroupRingElem<Rational>& x) { return group_ring_inverse(x); });
    if (red.stuck) fail(ErrorKind::NoUnitPivot, "no unit pivot; fall back to det_class");
    GroupRingElem<Rational> prod = one_like(a.at(0, 0));
    for (const auto& p : red.pivots) prod *= p;
    if (red.swaps % 2) prod = -prod;
    auto w = wedderburn_h8(prod);
    return {H8DetClass{std::move(w.comm), nrd_quaternion(w.div)}, std::move(red.trace)};
}

} // namespace dieudet
