#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dieudet/det_class.hpp"

namespace dieudet {

enum class Verdict { RepresentativeFound, NoIntegralRepresentative, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::RepresentativeFound: return "RepresentativeFound";
        case Verdict::NoIntegralRepresentative: return "NoIntegralRepresentative";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

// ---- rebuilding a dihedral group ring element from its components -------------

// Inverts the Wedderburn projection on pairs that satisfy the fiber-product
// congruences; costs one digit of p-precision.
inline GroupRingElem<PAdicScalar> d2p_from_wedderburn(const GroupPtr& g, const GroupRingElem<PAdicScalar>& comm,
                                                      const DihedralZp& div) {
    const std::uint32_t p = g->p_param();
    auto solve_part = [&](const CycloZp& gamma, const PAdicScalar& total) {
        // Coefficients t_b of sum_b t_b zeta^b with sum_b t_b = total and
        // power-basis coordinates gamma: t_b = gamma_b + t_{p-1},
        // p * t_{p-1} = total - sum(gamma).
        PAdicScalar acc = gamma.residue_sum();
        PAdicScalar tp = (total - acc).divided_by_p();
        std::vector<PAdicScalar> t;
        t.reserve(p);
        for (std::uint32_t b = 0; b + 1 < p; ++b) t.push_back(gamma.coord(b) + tp);
        t.push_back(tp);
        return t;
    };
    std::vector<PAdicScalar> cy = solve_part(div.c(), comm.coeff(0));
    std::vector<PAdicScalar> cx = solve_part(div.d(), comm.coeff(1));
    GroupRingElem<PAdicScalar> out = GroupRingElem<PAdicScalar>::zero(g, cy[0]);
    for (std::uint32_t b = 0; b < p; ++b) {
        out.coeff(static_cast<std::uint16_t>(b)) = cy[b];
        // sigma2(x y^b) = zeta^{-b} tau, so the d-coordinate at (p-b) mod p
        // came from the coefficient of x y^b.
        out.coeff(static_cast<std::uint16_t>(p + ((p - b) % p))) = cx[b];
    }
    return out;
}

// ---- certificates ---------------------------------------------------------------

template <class Elem>
struct Certificate {
    Verdict verdict;
    std::optional<Elem> representative;
    std::string reason;
    std::size_t trace_length = 0;
};

using DihedralCertificate = Certificate<GroupRingElem<PAdicScalar>>;
using H8Certificate = Certificate<GroupRingElem<Rational>>;

struct H8Obstruction {
    H8Certificate certificate;
    std::vector<int> attainable_nrd_mod8; // residues an integral element could real ize
    int actual_nrd_mod8 = -1;
};

// ---- the dihedral representative algorithm ---------------------------------------

namespace detail {

struct CharPos {
    std::size_t i = 0, j = 0;
    bool found = false;
};

// Creates a unit entry in m[k.., k..] by at most two elementary operations,
// assuming some entry escapes m and some entry escapes m'. The operations
// leave the Dieudonne determinant untouched.
inline bool create_unit_entry(Matrix<GroupRingElem<PAdicScalar>>& m, std::size_t k,
                              std::vector<ElemOp<GroupRingElem<PAdicScalar>>>& trace) {
    const std::size_t n = m.size();
    const std::uint32_t p = m.at(0, 0).group()->p_param();
    auto chars = [&](std::size_t i, std::size_t j) { return dihedral_residue_characters(m.at(i, j)); };

    CharPos alpha, beta;
    for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j) {
            auto ch = chars(i, j);
            if (ch.plus != 0 && !alpha.found) alpha = {i, j, true};
            if (ch.minus != 0 && !beta.found) beta = {i, j, true};
        }
    if (!alpha.found || !beta.found) return false;

    auto scalar_one = one_like(m.at(0, 0).coeff(0));
    auto scal = [&](std::uint64_t t) {
        return GroupRingElem<PAdicScalar>::scalar(m.at(0, 0).group(),
                                                  PAdicScalar(p, scalar_one.precision(), static_cast<std::int64_t>(t)));
    };

    // Prefer a beta sharing a row or column with alpha: one operation then.
    for (std::size_t j = k; j < n; ++j)
        if (j != alpha.j && chars(alpha.i, j).minus != 0) {
            apply_col_add(m, alpha.j, j, scal(1));
            trace.push_back({OpKind::ColAddRight, alpha.j, j, scal(1)});
            return true;
        }
    for (std::size_t i = k; i < n; ++i)
        if (i != alpha.i && chars(i, alpha.j).minus != 0) {
            apply_row_add(m, alpha.i, i, scal(1));
            trace.push_back({OpKind::RowAddLeft, alpha.i, i, scal(1)});
            return true;
        }

    // beta sits in a different row and column; pull its row into alpha's row
    // with a scalar multiple that keeps the alpha character alive. The next
    // scan then either finds a unit outright or a row-sharing pair.
    std::uint64_t s_alpha = chars(alpha.i, alpha.j).plus;
    std::uint64_t s_cross = chars(beta.i, alpha.j).plus;
    std::uint64_t t = 1;
    if (s_cross != 0) {
        // avoid t = -s_alpha / s_cross
        std::uint64_t bad =
            ((p - s_alpha % p) * PAdicScalar(p, 1, static_cast<std::int64_t>(s_cross)).inverse().residue()) % p;
        t = bad == 1 ? 2 : 1;
    }
    apply_row_add(m, alpha.i, beta.i, scal(t));
    trace.push_back({OpKind::RowAddLeft, alpha.i, beta.i, scal(t)});
    return true;
}

// Recipes for the block whose entries all lie in m (or all in m'): builds a
// group ring element whose class is (comm_det, pi_F-content of the block).
inline std::optional<DihedralZp> case3_division_part(const GroupRingElem<PAdicScalar>& comm_det,
                                                     const CycloZp& nrd, std::string& why) {
    const std::uint32_t p = nrd.p();
    PiFSplit split = split_pi_F_power(nrd);
    if (split.exponent == 0) {
        why = "reduced norm is a unit although the block avoids all units";
        return std::nullopt;
    }
    const PAdicScalar& a = comm_det.coeff(0);
    const PAdicScalar& b = comm_det.coeff(1);
    bool a_unit = a.is_unit(), b_unit = b.is_unit();
    if (!a_unit && !b_unit) {
        // (a + be) in Jac(Z_p[C_2]): epsilon = (a + be, (1-zeta)^n u).
        DihedralZp u = nrd_unit_preimage_dihedral(split.unit);
        CycloZp piL_n = cyclo_one(p, a.precision());
        for (std::uint32_t i = 0; i < split.exponent; ++i) piL_n *= pi_L(p, a.precision());
        return DihedralZp(piL_n * u.c(), piL_n * u.d());
    }
    if (a_unit && b_unit) {
        std::uint64_t ar = a.residue() % p, br = b.residue() % p;
        bool minus = (ar + p - br) % p == 0; // a = b mod p
        bool plus = (ar + br) % p == 0;      // a = -b mod p
        if (minus || plus) {
            PAdicScalar a2inv = (a * a).inverse();
            CycloZp target = cyclo_one(p, a.precision()) + nrd.scaled(a2inv);
            CycloZp u1 = nrd_principal_unit_preimage(target);
            CycloZp d = CycloZp::constant(p, minus ? a : -a);
            return DihedralZp(u1.scaled(a), std::move(d));
        }
    }
    why = "commutative determinant fits neither recipe";
    return std::nullopt;
}

} // namespace detail

// Finds an integral representative for the Dieudonne determinant class of a
// matrix over Z_p[D_2p]: unit pivots first, elementary operations to
// manufacture a unit in the mixed case, and the two explicit recipes when the
// whole block sits inside one maximal ideal.
inline DihedralCertificate dihedral_integral_representative(const Matrix<GroupRingElem<PAdicScalar>>& a) {
    const GroupPtr g = a.at(0, 0).group();
    if (g->kind() != FiniteGroup::Kind::Dihedral)
        fail(ErrorKind::UnsupportedGroup, "integral representative search expects Z_p[D_2p]");
    DihedralDetClass<PAdicScalar> target = det_class(a); // raises SingularAtPrecision when undefined

    Matrix<GroupRingElem<PAdicScalar>> m = a;
    std::vector<ElemOp<GroupRingElem<PAdicScalar>>> trace;
    GroupRingElem<PAdicScalar> eps = GroupRingElem<PAdicScalar>::scalar(g, one_like(a.at(0, 0).coeff(0)));
    int swaps = 0;
    const std::size_t n = m.size();
    std::size_t k = 0;
    while (k < n) {
        // Unit pivot within the active block.
        std::size_t pi = n, pj = n;
        for (std::size_t i = k; i < n && pi == n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (is_unit_d2p(m.at(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi != n) {
            if (pi != k) {
                apply_swap_rows(m, pi, k);
                trace.push_back({OpKind::RowSwap, pi, k, std::nullopt});
                ++swaps;
            }
            if (pj != k) {
                apply_swap_cols(m, pj, k);
                trace.push_back({OpKind::ColSwap, pj, k, std::nullopt});
                ++swaps;
            }
            GroupRingElem<PAdicScalar> pivot = m.at(k, k);
            GroupRingElem<PAdicScalar> pinv = group_ring_inverse(pivot);
            for (std::size_t r = k + 1; r < n; ++r) {
                if (m.at(r, k).is_zero()) continue;
                auto f = -(m.at(r, k) * pinv);
                apply_row_add(m, r, k, f);
                trace.push_back({OpKind::RowAddLeft, r, k, f});
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                if (m.at(k, c).is_zero()) continue;
                auto f = -(pinv * m.at(k, c));
                apply_col_add(m, c, k, f);
                trace.push_back({OpKind::ColAddRight, c, k, f});
            }
            eps *= pivot;
            ++k;
            continue;
        }
        // Mixed case: manufacture a unit by elementary operations.
        if (detail::create_unit_entry(m, k, trace)) continue;

        // Whole block inside m or inside m': the explicit recipes.
        std::size_t r = n - k;
        Matrix<GroupRingElem<PAdicScalar>> block = Matrix<GroupRingElem<PAdicScalar>>::filled(r, zero_like(m.at(0, 0)));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) block.at(i, j) = m.at(k + i, k + j);
        GroupRingElem<PAdicScalar> comm_det = det_commutative(sigma1_matrix_d2p(block));
        CycloZp nrd = nrd_matrix_dihedral(sigma2_matrix_d2p(block));
        if (nrd.is_zero())
            return DihedralCertificate{Verdict::Inconclusive, std::nullopt,
                                       "reduced norm of the residual block vanishes at precision", trace.size()};
        try {
            std::string why;
            auto z = detail::case3_division_part(comm_det, nrd, why);
            if (!z) return DihedralCertificate{Verdict::Inconclusive, std::nullopt, why, trace.size()};
            GroupRingElem<PAdicScalar> block_eps = d2p_from_wedderburn(g, comm_det, *z);
            eps *= block_eps;
        } catch (const Error& e) {
            return DihedralCertificate{Verdict::Inconclusive, std::nullopt, e.what(), trace.size()};
        }
        k = n;
    }
    if (swaps % 2) eps = -eps;

    // The certificate invariant: the representative's class matches.
    auto w = wedderburn_d2p(eps);
    DihedralDetClass<PAdicScalar> got{w.comm, nrd_dihedral_raw(w.div), 0};
    if (got != target)
        return DihedralCertificate{Verdict::Inconclusive, std::nullopt, "representative class mismatch", trace.size()};
    if (!is_integral_member(w))
        return DihedralCertificate{Verdict::Inconclusive, std::nullopt, "representative escaped the fiber product",
                                   trace.size()};
    return DihedralCertificate{Verdict::RepresentativeFound, std::move(eps), "", trace.size()};
}

// ---- the H8 obstruction -----------------------------------------------------------

// Decides whether the determinant class of a matrix over Z_2[H8] can be hit
// by an integral element: pivot reduction when a unit entry exists, otherwise
// the mod-8 square-parity certificate on the reduced norm.
inline H8Obstruction h8_obstruction(const Matrix<GroupRingElem<Rational>>& a) {
    H8Obstruction out;
    const GroupPtr g = a.at(0, 0).group();
    if (g->kind() != FiniteGroup::Kind::H8) fail(ErrorKind::UnsupportedGroup, "obstruction check expects Z_2[H8]");

    H8DetClass target{GroupRingElem<Rational>::zero(FiniteGroup::klein4(), Rational()), Rational()};
    try {
        target = det_class(a);
    } catch (const Error& e) {
        out.certificate = {Verdict::Inconclusive, std::nullopt,
                           std::string("determinant class undefined: ") + e.what(), 0};
        return out;
    }

    auto red = unit_pivot_reduce(
        a, [](const GroupRingElem<Rational>& x) { return is_unit_h8(x); },
        [](const GroupRingElem<Rational>& x) { return group_ring_inverse(x); });
    if (!red.stuck) {
        GroupRingElem<Rational> eps = GroupRingElem<Rational>::scalar(g, Rational(1));
        for (const auto& pvt : red.pivots) eps *= pvt;
        if (red.swaps % 2) eps = -eps;
        auto w = wedderburn_h8(eps);
        H8DetClass got{w.comm, nrd_quaternion(w.div)};
        if (got == target) {
            out.certificate = {Verdict::RepresentativeFound, std::move(eps), "", red.trace.size()};
            return out;
        }
        out.certificate = {Verdict::Inconclusive, std::nullopt, "pivot product class mismatch", red.trace.size()};
        return out;
    }

    // The fiber product pins the quaternion coordinates mod 2 to the
    // commutative component; squares mod 8 then bound the reduced norm.
    std::set<int> attainable = {0};
    for (int k = 0; k < 4; ++k) {
        std::uint64_t rk = target.comm.coeff(static_cast<std::uint16_t>(k)).residue_mod(2);
        std::set<int> next;
        for (int s : attainable)
            if (rk == 1) {
                next.insert((s + 1) % 8);
            } else {
                next.insert(s % 8);
                next.insert((s + 4) % 8);
            }
        attainable = std::move(next);
    }
    out.attainable_nrd_mod8.assign(attainable.begin(), attainable.end());
    out.actual_nrd_mod8 = static_cast<int>(target.nrd.residue_mod(8));
    if (!attainable.count(out.actual_nrd_mod8)) {
        std::string need;
        for (int s : out.attainable_nrd_mod8) need += (need.empty() ? "" : ",") + std::to_string(s);
        out.certificate = {Verdict::NoIntegralRepresentative, std::nullopt,
                           "integral candidates have Nrd in {" + need + "} mod 8, class has " +
                               std::to_string(out.actual_nrd_mod8) + " mod 8",
                           red.trace.size()};
        return out;
    }
    out.certificate = {Verdict::Inconclusive, std::nullopt, "mod-8 certificate does not obstruct", red.trace.size()};
    return out;
}

} // namespace dieudet
