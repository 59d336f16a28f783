#pragma once

#include <string>

#include "dieudet/error.hpp"

namespace dieudet {

// re + im*sqrt(-1) over a commutative scalar ring S. With S = Rational this is
// the exact splitting field Q(sqrt(-1)); with S = PAdicScalar (p = 2) it is
// the coefficient ring used for splitting-field determinants of 2-adic data.
template <class S>
class Gaussian {
public:
    Gaussian(S re, S im) : re_(std::move(re)), im_(std::move(im)) {}

    static Gaussian constant(const S& re) { return Gaussian(re, zero_like(re)); }
    static Gaussian root_of_minus_one(const S& proto) { return Gaussian(zero_like(proto), one_like(proto)); }

    const S& re() const { return re_; }
    const S& im() const { return im_; }

    Gaussian operator+(const Gaussian& o) const { return Gaussian(re_ + o.re_, im_ + o.im_); }
    Gaussian operator-(const Gaussian& o) const { return Gaussian(re_ - o.re_, im_ - o.im_); }
    Gaussian operator*(const Gaussian& o) const {
        return Gaussian(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    Gaussian operator-() const { return Gaussian(-re_, -im_); }
    Gaussian& operator+=(const Gaussian& o) { return *this = *this + o; }
    Gaussian& operator-=(const Gaussian& o) { return *this = *this - o; }
    Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }

    bool operator==(const Gaussian& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Gaussian& o) const { return !(*this == o); }

    Gaussian conj() const { return Gaussian(re_, -im_); }
    S norm() const { return re_ * re_ + im_ * im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    Gaussian inverse() const {
        S n = norm();
        if (n.is_zero()) fail(ErrorKind::NotAUnit, "gaussian element has zero norm");
        S ninv = n.inverse();
        return Gaussian(re_ * ninv, -(im_ * ninv));
    }

    std::string str() const { return "(" + to_text(re_) + ", " + to_text(im_) + ")"; }

private:
    S re_, im_;
};

template <class S>
Gaussian<S> zero_like(const Gaussian<S>& x) {
    return Gaussian<S>(zero_like(x.re()), zero_like(x.im()));
}
template <class S>
Gaussian<S> one_like(const Gaussian<S>& x) {
    return Gaussian<S>(one_like(x.re()), zero_like(x.im()));
}
template <class S>
bool is_zero(const Gaussian<S>& x) {
    return x.is_zero();
}
template <class S>
std::string to_text(const Gaussian<S>& x) {
    return x.str();
}

} // namespace dieudet
