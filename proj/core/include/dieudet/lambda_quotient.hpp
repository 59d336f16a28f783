#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dieudet/group_ring.hpp"
#include "dieudet/matrix.hpp"

namespace dieudet {

// Elements of Lambda/(p^2) truncated at T^M are series whose scalars carry
// two digits of p-precision.
using LambdaModP2 = TruncSeries<PAdicScalar>;

// Coefficient-wise reduction Lambda -> Lambda/(p^2).
inline LambdaModP2 sigma_p2(const IwasawaSeries& f) {
    std::vector<PAdicScalar> c;
    c.reserve(static_cast<std::size_t>(f.length()));
    for (int i = 0; i < f.length(); ++i) {
        if (f.coeff(i).precision() < 2)
            fail(ErrorKind::InsufficientPrecision, "sigma_p2 needs at least two digits of p-precision");
        c.push_back(f.coeff(i).truncated(2));
    }
    return LambdaModP2(std::move(c));
}

// A character of a cyclic group of order dividing p with values in
// (Z/p^2)^*; the generator value must be a genuine p-th root of unity there.
class IsogenyCharacter {
public:
    IsogenyCharacter(GroupPtr group, PAdicScalar generator_value)
        : g_(std::move(group)), gv_(generator_value.truncated(2)) {
        if (g_->kind() != FiniteGroup::Kind::Cyclic && g_->size() != 1)
            fail(ErrorKind::UnsupportedGroup, "isogeny characters live on cyclic p-groups");
        if (!gv_.is_unit()) fail(ErrorKind::NotAUnit, "character value must be a unit mod p^2");
        PAdicScalar acc = gv_;
        for (std::size_t i = 1; i < g_->size(); ++i) acc *= gv_;
        if (acc.residue() != 1)
            fail(ErrorKind::GroupMismatch, "character value is not killed by the group order");
    }

    const GroupPtr& group() const { return g_; }
    const PAdicScalar& generator_value() const { return gv_; }

    // chi(g^k) with the generator code convention of FiniteGroup::cyclic.
    PAdicScalar value_at(std::uint16_t code) const {
        PAdicScalar acc = PAdicScalar::one(gv_.prime(), 2);
        for (std::uint16_t i = 0; i < code; ++i) acc *= gv_;
        return acc;
    }

private:
    GroupPtr g_;
    PAdicScalar gv_;
};

// sigma_chi: Lambda[G] -> Lambda/(p^2), g -> chi(g), Lambda-linearly.
inline LambdaModP2 sigma_char(const GroupRingElem<IwasawaSeries>& a, const IsogenyCharacter& chi) {
    if (!a.group()->same_group(*chi.group())) fail(ErrorKind::GroupMismatch, "character for a different group");
    LambdaModP2 acc = sigma_p2(a.coeff(0)).scaled(chi.value_at(0));
    for (std::uint16_t g = 1; g < a.group()->size(); ++g)
        acc += sigma_p2(a.coeff(g)).scaled(chi.value_at(g));
    return acc;
}

// ---- principal ideals of Lambda/(p^2, T^M) -----------------------------------

// Canonical shape of a non-nilpotent f: f = unit * (T^k + p*w) with
// deg w < k; two such elements generate the same ideal iff the (k, w) data
// agree.
struct LambdaModP2Canonical {
    int k;                        // first unit coefficient index
    std::vector<std::uint64_t> w; // mod-p digits of the p-part below T^k
};

// Non-nilpotent test: some coefficient must be a unit mod p. In Lambda/(p^2)
// every zero divisor is nilpotent, so this is exactly the mu = 0 condition.
inline std::optional<int> first_unit_index(const LambdaModP2& f) {
    for (int i = 0; i < f.length(); ++i)
        if (f.coeff(i).is_unit()) return i;
    return std::nullopt;
}

inline LambdaModP2Canonical canonical_form(const LambdaModP2& f) {
    auto k = first_unit_index(f);
    if (!k) fail(ErrorKind::NilpotentDeterminant, "generator is nilpotent mod p^2");
    const std::uint64_t p = f.coeff(0).prime();
    const int m = f.length();
    // f = T^k h + p r with h invertible; w = (h^{-1} r) mod p, reduced below T^k.
    std::vector<PAdicScalar> hc(static_cast<std::size_t>(m), PAdicScalar::zero(p, 2));
    for (int i = *k; i < m; ++i) hc[static_cast<std::size_t>(i - *k)] = f.coeff(i);
    LambdaModP2 h(std::move(hc));
    std::vector<PAdicScalar> rc(static_cast<std::size_t>(m), PAdicScalar::zero(p, 2));
    for (int i = 0; i < *k; ++i) {
        std::uint64_t res = f.coeff(i).residue();
        rc[static_cast<std::size_t>(i)] = PAdicScalar(p, 2, static_cast<std::int64_t>(res / p));
    }
    LambdaModP2 r(std::move(rc));
    LambdaModP2 w = h.inverse() * r;
    LambdaModP2Canonical out;
    out.k = *k;
    out.w.reserve(static_cast<std::size_t>(*k));
    for (int i = 0; i < *k; ++i) out.w.push_back(w.coeff(i).residue() % p);
    return out;
}

// Divisibility of principal ideals: (a) subset of (b), i.e. b | a. Decides by
// the canonical forms and produces a verified witness quotient.
struct DivisibilityWitness {
    bool divides = false;
    std::optional<LambdaModP2> quotient;
};

inline DivisibilityWitness ideal_divides(const LambdaModP2& b, const LambdaModP2& a) {
    LambdaModP2Canonical ca = canonical_form(a), cb = canonical_form(b);
    if (ca.k < cb.k) return {};
    // Necessary and sufficient: w_a agrees with T^{ka-kb} w_b below T^{kb}.
    for (int i = 0; i < cb.k; ++i) {
        std::uint64_t lhs = ca.w[static_cast<std::size_t>(i)];
        int j = i - (ca.k - cb.k);
        std::uint64_t rhs = j >= 0 && j < cb.k ? cb.w[static_cast<std::size_t>(j)] : 0;
        if (lhs != rhs) return {};
    }
    // Back-substitution in two p-layers: with g := h_b^{-1} b = T^{kb} + p w,
    // solve g u = h_b^{-1} a =: x by u = u0 + p z, u0 = (x/T^{kb} mod p),
    // p z = (x - g u0) shifted down by T^{kb}.
    const std::uint64_t p = a.coeff(0).prime();
    const int m = a.length();
    std::vector<PAdicScalar> hc(static_cast<std::size_t>(m), PAdicScalar::zero(p, 2));
    for (int i = cb.k; i < m; ++i) hc[static_cast<std::size_t>(i - cb.k)] = b.coeff(i);
    LambdaModP2 hb(std::move(hc));
    LambdaModP2 hbinv = hb.inverse();
    LambdaModP2 g = hbinv * b;
    LambdaModP2 x = hbinv * a;

    std::vector<PAdicScalar> u0c(static_cast<std::size_t>(m), PAdicScalar::zero(p, 2));
    for (int i = 0; i + cb.k < m; ++i)
        u0c[static_cast<std::size_t>(i)] =
            PAdicScalar(p, 2, static_cast<std::int64_t>(x.coeff(i + cb.k).residue() % p));
    LambdaModP2 u0(std::move(u0c));
    LambdaModP2 rem = x - g * u0;
    std::vector<PAdicScalar> zc(static_cast<std::size_t>(m), PAdicScalar::zero(p, 2));
    for (int i = 0; i < m; ++i) {
        std::uint64_t res = rem.coeff(i).residue();
        if (res % p != 0) return {}; // the remainder must be divisible by p
        if (i < cb.k) {
            if (res != 0) return {}; // and vanish below T^{kb}
        } else if (i - cb.k < m) {
            zc[static_cast<std::size_t>(i - cb.k)] = PAdicScalar(p, 2, static_cast<std::int64_t>(res));
        }
    }
    LambdaModP2 u = u0 + LambdaModP2(std::move(zc));
    if (b * u != a) fail(ErrorKind::PrecisionTooLow, "divisibility witness failed at the truncation order");
    return {true, u};
}

struct IdealComparison {
    bool equal;
    bool a_divides_b;
    bool b_divides_a;
};

inline IdealComparison ideal_equal(const LambdaModP2& a, const LambdaModP2& b) {
    bool ab = ideal_divides(a, b).divides;
    bool ba = ideal_divides(b, a).divides;
    return {ab && ba, ab, ba};
}

// Commutative determinant over Lambda/(p^2, T^M) as an ideal generator; the
// nilpotence check is the mu = 0 hypothesis.
inline LambdaModP2 det_mod_p2(const Matrix<LambdaModP2>& a) {
    LambdaModP2 d = det_commutative(a);
    if (!first_unit_index(d)) fail(ErrorKind::NilpotentDeterminant, "determinant is nilpotent mod p^2");
    return d;
}

// ---- the isogeny identity checker ----------------------------------------------

struct IsogenyReport {
    bool holds = false;
    LambdaModP2 lhs;     // sigma_{p^2}(det A_E)
    LambdaModP2 rhs;     // sigma_phi(det A_phi) * sigma_phitilde(det A_phitilde)
    LambdaModP2 gen_phi; // sigma_phi(det A_phi)
    LambdaModP2 gen_phitilde;
    bool lhs_divides_rhs = false;
    bool rhs_divides_lhs = false;
    int truncation_order = 0;
    std::string assumption = "the condition L_phi cap Q_inf = Q is the caller's responsibility";
};

// Checks sigma_{p^2}((det A_E)) = sigma_phi((det A_phi)) sigma_phit((det A_phit))
// as ideals of Lambda/(p^2), at truncation order M.
inline IsogenyReport verify_isogeny_identity(const Matrix<IwasawaSeries>& a_e,
                                             const Matrix<GroupRingElem<IwasawaSeries>>& a_phi,
                                             const IsogenyCharacter& chi_phi,
                                             const Matrix<GroupRingElem<IwasawaSeries>>& a_phitilde,
                                             const IsogenyCharacter& chi_phitilde) {
    // Map entries first, then take determinants; det commutes with the maps.
    auto map_matrix = [](const Matrix<GroupRingElem<IwasawaSeries>>& m, const IsogenyCharacter& chi) {
        Matrix<LambdaModP2> out = Matrix<LambdaModP2>::filled(m.size(), sigma_char(m.at(0, 0), chi));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = sigma_char(m.at(i, j), chi);
        return out;
    };
    Matrix<LambdaModP2> me = Matrix<LambdaModP2>::filled(a_e.size(), sigma_p2(a_e.at(0, 0)));
    for (std::size_t i = 0; i < a_e.size(); ++i)
        for (std::size_t j = 0; j < a_e.size(); ++j) me.at(i, j) = sigma_p2(a_e.at(i, j));

    LambdaModP2 lhs = det_mod_p2(me);
    LambdaModP2 gphi = det_mod_p2(map_matrix(a_phi, chi_phi));
    LambdaModP2 gphit = det_mod_p2(map_matrix(a_phitilde, chi_phitilde));
    LambdaModP2 rhs = gphi * gphit;
    if (!first_unit_index(rhs)) fail(ErrorKind::NilpotentDeterminant, "product ideal is nilpotent mod p^2");

    IdealComparison cmp = ideal_equal(lhs, rhs);
    return IsogenyReport{cmp.equal,       std::move(lhs),   std::move(rhs), std::move(gphi), std::move(gphit),
                         cmp.a_divides_b, cmp.b_divides_a, a_e.at(0, 0).length()};
}

} // namespace dieudet
