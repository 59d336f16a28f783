#pragma once

#include <array>
#include <string>

#include "dieudet/cyclotomic.hpp"
#include "dieudet/error.hpp"

namespace dieudet {

// c + d*tau in L<tau>, with tau^2 = 1 and tau a = alpha(a) tau. Integral
// coordinates give the maximal order O_L + O_L*tau.
template <class S>
class DihedralElem {
public:
    DihedralElem(CyclotomicInt<S> c, CyclotomicInt<S> d) : c_(std::move(c)), d_(std::move(d)) {
        if (c_.p() != d_.p()) fail(ErrorKind::PrimeMismatch, "mismatched cyclotomic components");
    }

    static DihedralElem from_cyclo(CyclotomicInt<S> c) {
        CyclotomicInt<S> z = c.zero_like_self();
        return DihedralElem(std::move(c), std::move(z));
    }
    static DihedralElem tau_like(const CyclotomicInt<S>& proto) {
        return DihedralElem(proto.zero_like_self(), one_like(proto));
    }

    const CyclotomicInt<S>& c() const { return c_; }
    const CyclotomicInt<S>& d() const { return d_; }
    std::uint32_t p() const { return c_.p(); }

    DihedralElem operator+(const DihedralElem& o) const { return DihedralElem(c_ + o.c_, d_ + o.d_); }
    DihedralElem operator-(const DihedralElem& o) const { return DihedralElem(c_ - o.c_, d_ - o.d_); }
    DihedralElem operator-() const { return DihedralElem(-c_, -d_); }
    DihedralElem operator*(const DihedralElem& o) const {
        // (c1 + d1 t)(c2 + d2 t) = c1 c2 + d1 a(d2) + (c1 d2 + d1 a(c2)) t
        return DihedralElem(c_ * o.c_ + d_ * o.d_.alpha(), c_ * o.d_ + d_ * o.c_.alpha());
    }
    DihedralElem& operator+=(const DihedralElem& o) { return *this = *this + o; }
    DihedralElem& operator-=(const DihedralElem& o) { return *this = *this - o; }
    DihedralElem& operator*=(const DihedralElem& o) { return *this = *this * o; }

    bool operator==(const DihedralElem& o) const { return c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const DihedralElem& o) const { return !(*this == o); }

    bool is_zero() const { return c_.is_zero() && d_.is_zero(); }

    std::string str() const { return "{c=" + c_.str() + ", d=" + d_.str() + "}"; }

private:
    CyclotomicInt<S> c_, d_;
};

template <class S>
DihedralElem<S> zero_like(const DihedralElem<S>& x) {
    return DihedralElem<S>(zero_like(x.c()), zero_like(x.d()));
}
template <class S>
DihedralElem<S> one_like(const DihedralElem<S>& x) {
    return DihedralElem<S>(one_like(x.c()), zero_like(x.d()));
}
template <class S>
bool is_zero(const DihedralElem<S>& x) {
    return x.is_zero();
}
template <class S>
std::string to_text(const DihedralElem<S>& x) {
    return x.str();
}

// Nrd(c + d tau) = c alpha(c) - d alpha(d), landing in the fixed subring.
template <class S>
CyclotomicInt<S> nrd_dihedral_raw(const DihedralElem<S>& e) {
    return e.c() * e.c().alpha() - e.d() * e.d().alpha();
}

// Image under L<tau> -> M_2(L): zeta -> diag(zeta, zeta^{-1}), tau -> [[0,1],[1,0]].
// For c + d tau that is [[c, d], [alpha(d), alpha(c)]].
template <class S>
std::array<CyclotomicInt<S>, 4> embed_dihedral(const DihedralElem<S>& e) {
    return {e.c(), e.d(), e.d().alpha(), e.c().alpha()};
}

// ---- scalar-only tools ------------------------------------------------------

using DihedralZp = DihedralElem<PAdicScalar>;

inline RealCyclo nrd_dihedral(const DihedralZp& e) { return RealCyclo(nrd_dihedral_raw(e)); }

// Unit test in the maximal order O_L + O_L tau: Nrd must be a unit of O_F.
inline bool dihedral_is_unit(const DihedralZp& e) { return cyclo_is_unit(nrd_dihedral_raw(e)); }

// (c + d tau)^(-1) = (alpha(c) - d tau) * Nrd^(-1); two-sided.
inline DihedralZp dihedral_inverse(const DihedralZp& e) {
    CycloZp nrd = nrd_dihedral_raw(e);
    if (!cyclo_is_unit(nrd)) fail(ErrorKind::NotAUnit, "reduced norm lies in the maximal ideal");
    CycloZp ninv = cyclo_inverse(nrd);
    return DihedralZp(e.c().alpha() * ninv, -(e.d() * ninv));
}

// A preimage of a unit v of O_F under the reduced norm, which is surjective on
// units. Residues are matched by the first (c, d) in [0,p)^2 with
// c^2 - d^2 = v mod p; the principal-unit correction finishes the job.
inline DihedralZp nrd_unit_preimage_dihedral(const CycloZp& v) {
    std::uint32_t p = v.p(), prec = v.coord(0).precision();
    if (!v.is_alpha_fixed()) fail(ErrorKind::NotInRealSubfield, "target is not in O_F");
    std::uint64_t vbar = cyclo_residue_mod_p(v);
    if (vbar == 0) fail(ErrorKind::NotAUnit, "target is not a unit of O_F");

    std::uint64_t c0 = 0, d0 = 0;
    bool found = false;
    for (std::uint64_t c = 0; c < p && !found; ++c)
        for (std::uint64_t d = 0; d < p && !found; ++d)
            if ((c * c + (p * p - d * d)) % p == vbar) {
                c0 = c;
                d0 = d;
                found = true;
            }
    if (!found) fail(ErrorKind::NotAUnit, "no residue solution for c^2 - d^2");

    DihedralZp u0(CycloZp::constant(p, PAdicScalar(p, prec, static_cast<std::int64_t>(c0))),
                  CycloZp::constant(p, PAdicScalar(p, prec, static_cast<std::int64_t>(d0))));
    CycloZp t = v * cyclo_inverse(nrd_dihedral_raw(u0));
    CycloZp c1 = nrd_principal_unit_preimage(t);
    return DihedralZp(c1 * u0.c(), c1 * u0.d());
}

} // namespace dieudet
