#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "sigmadelta/errors.hpp"

namespace sigmadelta {

namespace detail {
template <class T>
bool entry_is_zero(const T& v) {
    return is_zero(v);
}
}  // namespace detail

/// Inverse in a field-like ring; nullopt for zero. Rings with non-invertible
/// nonzero elements provide their own overload (found by ADL).
template <class T>
std::optional<T> try_invert(const T& value) {
    if (is_zero(value)) return std::nullopt;
    return value.inverse();
}

/// Dense row-major matrix over a commutative ring T (T must be constructible
/// from long).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw ShapeError("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& entries) {
        Matrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!detail::entry_is_zero(v)) return false;
        return true;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    /// Removes row i and column j.
    Matrix minor(std::size_t i, std::size_t j) const {
        Matrix out(rows_ - 1, cols_ - 1);
        for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
            if (r == i) continue;
            for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
                if (c == j) continue;
                out(rr, cc++) = (*this)(r, c);
            }
            ++rr;
        }
        return out;
    }

    Matrix operator-() const { return map([](const T& v) { return -v; }); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) { return zip(a, b, std::plus<>{}); }
    friend Matrix operator-(const Matrix& a, const Matrix& b) { return zip(a, b, std::minus<>{}); }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (detail::entry_is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
            }
        return out;
    }
    friend Matrix operator*(const T& s, const Matrix& m) { return m.map([&](const T& v) { return s * v; }); }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_; }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            out += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out += ", ";
                out += (*this)(i, j).to_string();
            }
            out += "]";
        }
        return out + "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;

    template <class Op>
    static Matrix zip(const Matrix& a, const Matrix& b, Op op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix shape mismatch");
        Matrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = op(a.data_[k], b.data_[k]);
        return out;
    }
};

/// Division-free determinant (Berkowitz), valid over any commutative ring.
template <class T>
T determinant(const Matrix<T>& m) {
    if (!m.is_square()) throw ShapeError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);

    // Characteristic-polynomial coefficients of the leading principal
    // submatrices, built one border at a time.
    std::vector<T> poly = {T(1), -m(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // Border column C = m(0..r-1, r), row R = m(r, 0..r-1), A = leading r x r block.
        std::vector<T> col(r), row(r);
        for (std::size_t i = 0; i < r; ++i) {
            col[i] = m(i, r);
            row[i] = m(r, i);
        }
        // Toeplitz first column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        std::vector<T> toeplitz = {T(1), -m(r, r)};
        std::vector<T> v = col;
        for (std::size_t k = 0; k < r; ++k) {
            T dot(0);
            for (std::size_t i = 0; i < r; ++i) dot = dot + row[i] * v[i];
            toeplitz.push_back(-dot);
            std::vector<T> next(r, T(0));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + m(i, j) * v[j];
            v = std::move(next);
        }
        std::vector<T> updated(r + 2, T(0));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < poly.size(); ++j) updated[i] = updated[i] + toeplitz[i - j] * poly[j];
        poly = std::move(updated);
    }
    T det = poly.back();
    return (n % 2 == 0) ? det : -det;
}

/// Classical adjoint: adjugate(M) * M = det(M) * I.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw ShapeError("adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<T> out(n, n);
    if (n == 1) {
        out(0, 0) = T(1);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            T cof = determinant(m.minor(j, i));
            out(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return out;
}

template <class T>
struct DetInvAdj {
    T det;
    std::optional<Matrix<T>> inverse;
    Matrix<T> adjugate;
};

/// Determinant, adjugate, and the inverse when the determinant is invertible.
template <class T>
DetInvAdj<T> det_inv_adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw ShapeError("det_inv_adjugate needs a square matrix");
    T det = determinant(m);
    Matrix<T> adj = adjugate(m);
    std::optional<Matrix<T>> inv;
    if (auto d = try_invert(det)) inv = (*d) * adj;
    return {std::move(det), std::move(inv), std::move(adj)};
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    auto r = det_inv_adjugate(m);
    if (!r.inverse) throw DivisionByZero("matrix is singular");
    return *r.inverse;
}

}  // namespace sigmadelta
