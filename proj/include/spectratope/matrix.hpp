#pragma once

#include <spectratope/error.hpp>
#include <spectratope/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spectratope {

template <typename T>
using Vector = std::vector<T>;

using RatVector = Vector<Rational>;

/**
 * Dense row-major matrix with value semantics.
 *
 * Entries are fixed at construction; every operation in this library returns a
 * fresh matrix, so a shared `Matrix` can be read from any number of threads.
 */
template <typename T>
class Matrix {
public:
    using Scalar = T;

    Matrix() : rows_(1), cols_(1), data_(1, T(0)) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (rows_ == 0 || cols_ == 0) {
            throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
        }
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::ShapeMismatch,
                        "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                            std::to_string(data_.size()));
        }
    }

    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        if (rows_ == 0 || cols_ == 0) {
            throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
        }
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    template <typename F>
    static Matrix generate(std::size_t rows, std::size_t cols, F&& entry)
    {
        std::vector<T> data;
        data.reserve(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                data.push_back(T(entry(i, j)));
            }
        }
        return Matrix(rows, cols, std::move(data));
    }

    static Matrix zeros(std::size_t rows, std::size_t cols)
    {
        return Matrix(rows, cols, std::vector<T>(rows * cols, T(0)));
    }

    static Matrix identity(std::size_t n)
    {
        return generate(n, n, [](std::size_t i, std::size_t j) { return T(i == j ? 1 : 0); });
    }

    /// J, the all-ones matrix.
    static Matrix ones(std::size_t rows, std::size_t cols)
    {
        return Matrix(rows, cols, std::vector<T>(rows * cols, T(1)));
    }

    /// K = [e_n | ... | e_1], the exchange matrix.
    static Matrix exchange(std::size_t n)
    {
        return generate(n, n, [n](std::size_t i, std::size_t j) { return T(i + j == n - 1 ? 1 : 0); });
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> entries() const noexcept { return data_; }

    std::span<const T> row(std::size_t i) const
    {
        return std::span<const T>(data_).subspan(i * cols_, cols_);
    }

    Vector<T> column(std::size_t j) const
    {
        Vector<T> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out.push_back((*this)(i, j));
        }
        return out;
    }

    Matrix transpose() const
    {
        return generate(cols_, rows_, [this](std::size_t i, std::size_t j) { return (*this)(j, i); });
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;

namespace detail {

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::ShapeMismatch,
                    std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
}

template <typename T>
void require_square(const Matrix<T>& m, const char* op)
{
    if (!m.is_square()) {
        throw Error(ErrorCode::ShapeMismatch, std::string(op) + " needs a square matrix");
    }
}

} // namespace detail

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b)
{
    detail::require_same_shape(a, b, "add");
    return Matrix<T>::generate(a.rows(), a.cols(),
                               [&](std::size_t i, std::size_t j) { return T(a(i, j) + b(i, j)); });
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b)
{
    detail::require_same_shape(a, b, "subtract");
    return Matrix<T>::generate(a.rows(), a.cols(),
                               [&](std::size_t i, std::size_t j) { return T(a(i, j) - b(i, j)); });
}

template <typename T>
Matrix<T> operator*(const T& s, const Matrix<T>& a)
{
    return Matrix<T>::generate(a.rows(), a.cols(),
                               [&](std::size_t i, std::size_t j) { return T(s * a(i, j)); });
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "multiply: inner dimensions differ");
    }
    std::vector<T> out(a.rows() * b.cols(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out[i * b.cols() + j] += aik * b(k, j);
            }
        }
    }
    return Matrix<T>(a.rows(), b.cols(), std::move(out));
}

template <typename T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& x)
{
    if (a.cols() != x.size()) {
        throw Error(ErrorCode::LengthMismatch, "matrix-vector product: length mismatch");
    }
    Vector<T> out(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[i] += a(i, j) * x[j];
        }
    }
    return out;
}

template <typename T>
T dot(std::span<const T> a, std::span<const T> b)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LengthMismatch, "dot: length mismatch");
    }
    T sum(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

template <typename T>
bool is_nonnegative(const Matrix<T>& a)
{
    return std::ranges::all_of(a.entries(), [](const T& x) { return x >= 0; });
}

template <typename T>
bool is_nonnegative(const Vector<T>& v)
{
    return std::ranges::all_of(v, [](const T& x) { return x >= 0; });
}

template <typename T>
bool is_symmetric(const Matrix<T>& a)
{
    return a.is_square() && a == a.transpose();
}

/// Converts an exact matrix for display or numeric fallback paths.
inline Matrix<double> to_double(const RatMatrix& m)
{
    return Matrix<double>::generate(m.rows(), m.cols(),
                                    [&](std::size_t i, std::size_t j) { return to_double(m(i, j)); });
}

/**
 * A permutation stored as an index map: image[i] is the row that row i of the
 * identity moves to, so the matrix has a one at (image[i], i) and (P x)[image[i]] = x[i].
 */
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image))
    {
        std::vector<bool> seen(image_.size(), false);
        for (auto target : image_) {
            if (target >= image_.size() || seen[target]) {
                throw Error(ErrorCode::OutOfRange, "permutation image is not a bijection");
            }
            seen[target] = true;
        }
    }

    static Permutation identity(std::size_t n)
    {
        std::vector<std::size_t> image(n);
        for (std::size_t i = 0; i < n; ++i) {
            image[i] = i;
        }
        return Permutation(std::move(image));
    }

    std::size_t size() const noexcept { return image_.size(); }
    std::size_t operator[](std::size_t i) const { return image_[i]; }
    const std::vector<std::size_t>& image() const noexcept { return image_; }

    template <typename T = Rational>
    Matrix<T> to_matrix() const
    {
        const std::size_t n = image_.size();
        std::vector<T> data(n * n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            data[image_[i] * n + i] = T(1);
        }
        return Matrix<T>(n, n, std::move(data));
    }

    template <typename T>
    Vector<T> apply(const Vector<T>& x) const
    {
        if (x.size() != image_.size()) {
            throw Error(ErrorCode::LengthMismatch, "permutation applied to vector of wrong length");
        }
        Vector<T> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[image_[i]] = x[i];
        }
        return out;
    }

    Permutation inverse() const
    {
        std::vector<std::size_t> inv(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i) {
            inv[image_[i]] = i;
        }
        return Permutation(std::move(inv));
    }

    /// Composition as matrices: (*this) * other.
    Permutation compose(const Permutation& other) const
    {
        if (other.size() != size()) {
            throw Error(ErrorCode::LengthMismatch, "composing permutations of different sizes");
        }
        std::vector<std::size_t> out(size());
        for (std::size_t i = 0; i < size(); ++i) {
            out[i] = image_[other.image_[i]];
        }
        return Permutation(std::move(out));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> image_;
};

} // namespace spectratope
