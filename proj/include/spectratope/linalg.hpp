#pragma once

#include <spectratope/matrix.hpp>

#include <span>
#include <utility>
#include <vector>

namespace spectratope {

namespace detail {

inline Integer lcm_of_denominators(std::span<const Rational> row)
{
    Integer l = 1;
    for (const auto& q : row) {
        l = boost::multiprecision::lcm(l, denominator(q));
    }
    return l;
}

/// Integer rows r_i = L_i * m_i, so the integer matrix equals diag(L) * m.
inline std::vector<Integer> clear_row_denominators(const RatMatrix& m, std::vector<Integer>& scales)
{
    std::vector<Integer> out;
    out.reserve(m.rows() * m.cols());
    scales.assign(m.rows(), Integer(1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        scales[i] = lcm_of_denominators(m.row(i));
        for (const auto& q : m.row(i)) {
            out.push_back(numerator(q) * (scales[i] / denominator(q)));
        }
    }
    return out;
}

} // namespace detail

/// Bareiss fraction-free elimination on the row-scaled integer matrix.
inline Rational determinant(const RatMatrix& m)
{
    detail::require_square(m, "determinant");
    const std::size_t n = m.rows();
    std::vector<Integer> scales;
    std::vector<Integer> a = detail::clear_row_denominators(m, scales);
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && at(pivot, k) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return Rational(0);
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(at(pivot, j), at(k, j));
            }
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = (at(k, k) * at(i, j) - at(i, k) * at(k, j)) / prev;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    Integer scale = 1;
    for (const auto& s : scales) {
        scale *= s;
    }
    return Rational(Integer(sign) * prev, scale);
}

/**
 * Exact inverse by fraction-free Gauss-Jordan elimination on [D M | I], where D
 * clears the row denominators of M. Every division is exact; a column with no
 * nonzero candidate pivot means M is singular.
 */
inline RatMatrix inverse(const RatMatrix& m)
{
    detail::require_square(m, "inverse");
    const std::size_t n = m.rows();
    const std::size_t width = 2 * n;
    std::vector<Integer> scales;
    const std::vector<Integer> left = detail::clear_row_denominators(m, scales);
    std::vector<Integer> a(n * width, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * width + j] = left[i * n + j];
        }
        a[i * width + n + i] = 1;
    }
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * width + j]; };

    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && at(pivot, k) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw Error(ErrorCode::Singular, "matrix is not invertible (zero pivot in column " +
                                                 std::to_string(k + 1) + ")");
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < width; ++j) {
                std::swap(at(pivot, j), at(k, j));
            }
        }
        const Integer p = at(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                continue;
            }
            const Integer factor = at(i, k);
            for (std::size_t j = 0; j < width; ++j) {
                if (j == k) {
                    continue;
                }
                at(i, j) = (p * at(i, j) - factor * at(k, j)) / prev;
            }
            at(i, k) = 0;
        }
        prev = p;
    }
    // Left block is now prev * I and the right block is prev * (D M)^{-1}.
    // M^{-1} = (D M)^{-1} D.
    return RatMatrix::generate(n, n, [&](std::size_t i, std::size_t j) {
        return Rational(at(i, n + j) * scales[j], prev);
    });
}

/// Solves m x = b exactly.
inline RatVector solve(const RatMatrix& m, const RatVector& b)
{
    if (b.size() != m.rows()) {
        throw Error(ErrorCode::LengthMismatch, "solve: right-hand side has wrong length");
    }
    return inverse(m) * b;
}

/// Exact rank by Gaussian elimination over the rationals.
inline std::size_t rank(const RatMatrix& m)
{
    std::vector<Rational> a(m.entries().begin(), m.entries().end());
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot * cols + c] == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            std::swap(a[pivot * cols + j], a[r * cols + j]);
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i * cols + c] == 0) {
                continue;
            }
            const Rational f = a[i * cols + c] / a[r * cols + c];
            for (std::size_t j = c; j < cols; ++j) {
                a[i * cols + j] -= f * a[r * cols + j];
            }
        }
        ++r;
    }
    return r;
}

/**
 * Characteristic polynomial det(tI - M), highest degree first: the result
 * c has size n + 1 with c[0] = 1 and det(tI - M) = sum_k c[k] t^(n-k).
 *
 * Reduces M to upper Hessenberg form by exact similarity, then expands with
 * the standard three-term Hessenberg recurrence.
 */
inline RatVector char_poly(const RatMatrix& m)
{
    detail::require_square(m, "char_poly");
    const std::size_t n = m.rows();
    std::vector<Rational> h(m.entries().begin(), m.entries().end());
    auto at = [&](std::size_t i, std::size_t j) -> Rational& { return h[i * n + j]; };

    for (std::size_t col = 0; col + 2 < n; ++col) {
        const std::size_t sub = col + 1;
        std::size_t pivot = sub;
        while (pivot < n && at(pivot, col) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            continue;
        }
        if (pivot != sub) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(at(pivot, j), at(sub, j));
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::swap(at(i, pivot), at(i, sub));
            }
        }
        const Rational t = at(sub, col);
        for (std::size_t i = sub + 1; i < n; ++i) {
            if (at(i, col) == 0) {
                continue;
            }
            const Rational u = at(i, col) / t;
            for (std::size_t j = 0; j < n; ++j) {
                at(i, j) -= u * at(sub, j);
            }
            for (std::size_t r = 0; r < n; ++r) {
                at(r, sub) += u * at(r, i);
            }
        }
    }

    // polys[k] holds the characteristic polynomial of the leading k x k block,
    // ascending coefficients.
    std::vector<std::vector<Rational>> polys(n + 1);
    polys[0] = {Rational(1)};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> next(k + 2, Rational(0));
        for (std::size_t d = 0; d <= k; ++d) {
            next[d + 1] += polys[k][d];
            next[d] -= at(k, k) * polys[k][d];
        }
        Rational product = 1;
        for (std::size_t i = k; i-- > 0;) {
            product *= at(i + 1, i);
            if (product == 0) {
                break;
            }
            const Rational coeff = at(i, k) * product;
            for (std::size_t d = 0; d < polys[i].size(); ++d) {
                next[d] -= coeff * polys[i][d];
            }
        }
        polys[k + 1] = std::move(next);
    }
    return RatVector(polys[n].rbegin(), polys[n].rend());
}

/// Coefficients of prod_i (t - roots[i]), highest degree first.
inline RatVector poly_from_roots(std::span<const Rational> roots)
{
    RatVector c{Rational(1)};
    for (const auto& root : roots) {
        RatVector next(c.size() + 1, Rational(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += c[k];
            next[k + 1] -= root * c[k];
        }
        c = std::move(next);
    }
    return c;
}

template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b)
{
    const std::size_t p = b.rows();
    const std::size_t q = b.cols();
    return Matrix<T>::generate(a.rows() * p, a.cols() * q, [&](std::size_t i, std::size_t j) {
        return T(a(i / p, j / q) * b(i % p, j % q));
    });
}

template <typename T>
Matrix<T> direct_sum(std::span<const Matrix<T>> blocks)
{
    if (blocks.empty()) {
        throw Error(ErrorCode::ShapeMismatch, "direct sum of no blocks");
    }
    std::size_t n = 0;
    for (const auto& b : blocks) {
        detail::require_square(b, "direct_sum");
        n += b.rows();
    }
    std::vector<T> data(n * n, T(0));
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                data[(offset + i) * n + offset + j] = b(i, j);
            }
        }
        offset += b.rows();
    }
    return Matrix<T>(n, n, std::move(data));
}

template <typename T>
Matrix<T> direct_sum(std::initializer_list<Matrix<T>> blocks)
{
    return direct_sum(std::span<const Matrix<T>>(blocks.begin(), blocks.size()));
}

template <typename T>
Matrix<T> hadamard_product(const Matrix<T>& a, const Matrix<T>& b)
{
    detail::require_same_shape(a, b, "hadamard_product");
    return Matrix<T>::generate(a.rows(), a.cols(),
                               [&](std::size_t i, std::size_t j) { return T(a(i, j) * b(i, j)); });
}

/// D_v = diag(v).
template <typename T>
Matrix<T> diag_from(const Vector<T>& v)
{
    if (v.empty()) {
        throw Error(ErrorCode::LengthMismatch, "diag_from needs a nonempty vector");
    }
    return Matrix<T>::generate(v.size(), v.size(),
                               [&](std::size_t i, std::size_t j) { return i == j ? v[i] : T(0); });
}

/// Diag(M), the main diagonal as a vector.
template <typename T>
Vector<T> diag_of(const Matrix<T>& m)
{
    detail::require_square(m, "diag_of");
    Vector<T> out;
    out.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.push_back(m(i, i));
    }
    return out;
}

template <typename T>
T trace(const Matrix<T>& m)
{
    detail::require_square(m, "trace");
    T sum(0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        sum += m(i, i);
    }
    return sum;
}

/// S diag(x) S^{-1} with a precomputed inverse.
inline RatMatrix similarity(const RatMatrix& s, const RatVector& x, const RatMatrix& s_inv)
{
    if (x.size() != s.cols()) {
        throw Error(ErrorCode::LengthMismatch,
                    "diagonal has length " + std::to_string(x.size()) + ", basis has order " +
                        std::to_string(s.cols()));
    }
    // Scale the columns of S, then multiply.
    const RatMatrix scaled = RatMatrix::generate(
        s.rows(), s.cols(), [&](std::size_t i, std::size_t j) { return s(i, j) * x[j]; });
    return scaled * s_inv;
}

} // namespace spectratope
