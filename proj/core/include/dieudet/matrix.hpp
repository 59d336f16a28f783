#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dieudet/error.hpp"

namespace dieudet {

template <class T>
class Matrix {
public:
    Matrix(std::size_t n, std::vector<T> entries) : n_(n), e_(std::move(entries)) {
        if (n_ == 0 || e_.size() != n_ * n_) fail(ErrorKind::ContextMismatch, "matrix needs n*n entries, n >= 1");
    }

    static Matrix filled(std::size_t n, const T& value) { return Matrix(n, std::vector<T>(n * n, value)); }
    static Matrix identity(std::size_t n, const T& proto) {
        Matrix m = filled(n, zero_like(proto));
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one_like(proto);
        return m;
    }

    std::size_t size() const { return n_; }
    const T& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    T& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }

    Matrix operator*(const Matrix& o) const {
        if (n_ != o.n_) fail(ErrorKind::ContextMismatch, "matrix sizes differ");
        Matrix out = filled(n_, zero_like(e_[0]));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                if (is_zero(at(i, k))) continue;
                for (std::size_t j = 0; j < n_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
            }
        return out;
    }
    Matrix operator+(const Matrix& o) const {
        if (n_ != o.n_) fail(ErrorKind::ContextMismatch, "matrix sizes differ");
        Matrix out = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += o.e_[i];
        return out;
    }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? "; " : "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ", ";
                s += to_text(at(i, j));
            }
        }
        return s + "]";
    }

private:
    std::size_t n_;
    std::vector<T> e_;
};

// Elementary row/column history of a reduction; enough to replay the
// reduction or rebuild the transforming matrices.
enum class OpKind { RowAddLeft, ColAddRight, RowSwap, ColSwap, ScaleRowLeft, ScaleColRight };

template <class T>
struct ElemOp {
    OpKind kind;
    std::size_t i;
    std::size_t j;
    std::optional<T> coeff; // for the add/scale kinds

    std::string str() const {
        switch (kind) {
            case OpKind::RowAddLeft: return "R" + std::to_string(i) + " += c*R" + std::to_string(j);
            case OpKind::ColAddRight: return "C" + std::to_string(i) + " += C" + std::to_string(j) + "*c";
            case OpKind::RowSwap: return "R" + std::to_string(i) + " <-> R" + std::to_string(j);
            case OpKind::ColSwap: return "C" + std::to_string(i) + " <-> C" + std::to_string(j);
            case OpKind::ScaleRowLeft: return "R" + std::to_string(i) + " *= c (left)";
            case OpKind::ScaleColRight: return "C" + std::to_string(i) + " *= c (right)";
        }
        return "?";
    }
};

// row_i += c * row_j (left multiplication by an elementary matrix).
template <class T>
void apply_row_add(Matrix<T>& m, std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < m.size(); ++k) m.at(i, k) += c * m.at(j, k);
}
// col_i += col_j * c (right multiplication by an elementary matrix).
template <class T>
void apply_col_add(Matrix<T>& m, std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < m.size(); ++k) m.at(k, i) += m.at(k, j) * c;
}
template <class T>
void apply_swap_rows(Matrix<T>& m, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.size(); ++k) std::swap(m.at(i, k), m.at(j, k));
}
template <class T>
void apply_swap_cols(Matrix<T>& m, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.size(); ++k) std::swap(m.at(k, i), m.at(k, j));
}

template <class T>
void apply_op(Matrix<T>& m, const ElemOp<T>& op) {
    switch (op.kind) {
        case OpKind::RowAddLeft: apply_row_add(m, op.i, op.j, *op.coeff); break;
        case OpKind::ColAddRight: apply_col_add(m, op.i, op.j, *op.coeff); break;
        case OpKind::RowSwap: apply_swap_rows(m, op.i, op.j); break;
        case OpKind::ColSwap: apply_swap_cols(m, op.i, op.j); break;
        case OpKind::ScaleRowLeft:
            for (std::size_t k = 0; k < m.size(); ++k) m.at(op.i, k) = *op.coeff * m.at(op.i, k);
            break;
        case OpKind::ScaleColRight:
            for (std::size_t k = 0; k < m.size(); ++k) m.at(k, op.i) = m.at(k, op.i) * *op.coeff;
            break;
    }
}

// Division-free characteristic polynomial (Berkowitz); works over any
// commutative ring. Returns coefficients of det(lambda*I - A) from the
// leading 1 down to the constant term.
template <class T>
std::vector<T> berkowitz_charpoly(const Matrix<T>& a) {
    const std::size_t n = a.size();
    const T zero = zero_like(a.at(0, 0));
    const T one = one_like(a.at(0, 0));
    std::vector<T> v = {one, -a.at(0, 0)};
    for (std::size_t it = 1; it < n; ++it) {
        // Toeplitz column for the (it+1) x (it+1) principal block.
        std::vector<T> t;
        t.reserve(it + 2);
        t.push_back(one);
        t.push_back(-a.at(it, it));
        std::vector<T> w(it, zero);
        for (std::size_t r = 0; r < it; ++r) w[r] = a.at(r, it);
        for (std::size_t k = 2; k <= it + 1; ++k) {
            T dot = zero;
            for (std::size_t r = 0; r < it; ++r) dot += a.at(it, r) * w[r];
            t.push_back(-dot);
            if (k == it + 1) break;
            std::vector<T> w2(it, zero);
            for (std::size_t r = 0; r < it; ++r) {
                if (is_zero(w[r])) continue;
                for (std::size_t s = 0; s < it; ++s) w2[s] += a.at(s, r) * w[r];
            }
            w = std::move(w2);
        }
        std::vector<T> nv(it + 2, zero);
        for (std::size_t m = 0; m < nv.size(); ++m)
            for (std::size_t k = 0; k <= m && k < t.size(); ++k) {
                if (m - k >= v.size()) continue;
                nv[m] += t[k] * v[m - k];
            }
        v = std::move(nv);
    }
    return v;
}

// Determinant over a commutative ring, division-free.
template <class T>
T det_commutative(const Matrix<T>& a) {
    std::vector<T> cp = berkowitz_charpoly(a);
    T d = cp.back();
    if (a.size() % 2 != 0) d = -d;
    return d;
}

} // namespace dieudet
