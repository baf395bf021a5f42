#pragma once

#include <spectratope/linalg.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spectratope {

/// Largest Walsh or Hadamard order built by default.
inline constexpr std::size_t kDefaultMaxOrder = std::size_t{1} << 12;

struct WalshMatrix {
    unsigned exponent = 0;
    RatMatrix matrix;

    std::size_t order() const { return matrix.rows(); }
};

/// ±1 matrix with H H^T = order * I, first row and column all ones.
struct NormalizedHadamard {
    std::size_t order = 1;
    RatMatrix matrix;
};

/// The 2^n permutations P_{n,k} of the Walsh association scheme (k is 0-based here).
struct SchemeBasis {
    unsigned exponent = 0;
    std::vector<Permutation> perms;
};

/// The group matrix M_x = sum_k x_k P_{n,k}.
struct GroupMatrix {
    unsigned exponent = 0;
    RatVector coeffs;
};

namespace detail {

inline std::size_t order_of_exponent(unsigned n, std::size_t max_order)
{
    if (n >= 63 || (std::size_t{1} << n) > max_order) {
        throw Error(ErrorCode::ResourceLimit, "order 2^" + std::to_string(n) +
                                                  " exceeds the configured cap of " +
                                                  std::to_string(max_order));
    }
    return std::size_t{1} << n;
}

inline void check_index(unsigned n, std::size_t k)
{
    if (n >= 63 || k >= (std::size_t{1} << n)) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(k + 1) + " outside 1.." +
                        (n >= 63 ? std::string("2^n") : std::to_string(std::size_t{1} << n)));
    }
}

// Paley construction (q = 11), normalized by row and column sign flips.
inline constexpr std::array<std::string_view, 12> kHadamard12 = {
    "++++++++++++", //
    "+--+---+++-+", //
    "++--+---+++-", //
    "+-+--+---+++", //
    "++-+--+---++", //
    "+++-+--+---+", //
    "++++-+--+---", //
    "+-+++-+--+--", //
    "+--+++-+--+-", //
    "+---+++-+--+", //
    "++---+++-+--", //
    "+-+---+++-+-", //
};

} // namespace detail

/// H_n by the Sylvester recursion H_n = H_1 ⊗ H_{n-1}, H_0 = [1].
inline WalshMatrix walsh(unsigned n, std::size_t max_order = kDefaultMaxOrder)
{
    detail::order_of_exponent(n, max_order);
    const RatMatrix h1{{1, 1}, {1, -1}};
    RatMatrix h{{1}};
    for (unsigned i = 0; i < n; ++i) {
        h = kron(h1, h);
    }
    return WalshMatrix{n, std::move(h)};
}

/// True when every entry is ±1 and H H^T = order * I.
inline bool is_hadamard(const RatMatrix& h)
{
    if (!h.is_square()) {
        return false;
    }
    for (const auto& x : h.entries()) {
        if (x != 1 && x != -1) {
            return false;
        }
    }
    const std::size_t n = h.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Rational d = dot(h.row(i), h.row(j));
            if (d != (i == j ? Rational(n) : Rational(0))) {
                return false;
            }
        }
    }
    return true;
}

/// Flips row signs to make the first column e, then column signs to make the first row e.
inline NormalizedHadamard normalize_hadamard(const RatMatrix& h)
{
    if (!is_hadamard(h)) {
        throw Error(ErrorCode::NotHadamard, "matrix is not a ±1 matrix with H H^T = nI");
    }
    const std::size_t n = h.rows();
    std::vector<Rational> row_sign(n);
    for (std::size_t i = 0; i < n; ++i) {
        row_sign[i] = h(i, 0);
    }
    std::vector<Rational> col_sign(n);
    for (std::size_t j = 0; j < n; ++j) {
        col_sign[j] = row_sign[0] * h(0, j);
    }
    return NormalizedHadamard{
        n, RatMatrix::generate(n, n, [&](std::size_t i, std::size_t j) {
            return row_sign[i] * h(i, j) * col_sign[j];
        })};
}

/// The embedded order-12 constant, validated on every load.
inline RatMatrix hadamard12()
{
    const RatMatrix h = RatMatrix::generate(12, 12, [](std::size_t i, std::size_t j) {
        return detail::kHadamard12[i][j] == '+' ? 1 : -1;
    });
    if (!is_hadamard(h)) {
        throw Error(ErrorCode::NotHadamard, "embedded order-12 constant failed validation");
    }
    return h;
}

/// Orders with a shipped construction: 2^a * 12^b.
inline bool is_supported_hadamard_order(std::size_t m)
{
    if (m == 0) {
        return false;
    }
    while (m % 12 == 0) {
        m /= 12;
    }
    return (m & (m - 1)) == 0;
}

/// Smallest supported Hadamard order >= m.
inline std::size_t next_hadamard_order(std::size_t m)
{
    std::size_t candidate = m == 0 ? 1 : m;
    while (!is_supported_hadamard_order(candidate)) {
        ++candidate;
    }
    return candidate;
}

inline std::size_t previous_hadamard_order(std::size_t m)
{
    for (std::size_t candidate = m; candidate > 0; --candidate) {
        if (is_supported_hadamard_order(candidate)) {
            return candidate;
        }
    }
    return 0;
}

/// Kronecker product of a Walsh matrix with copies of the order-12 constant.
inline NormalizedHadamard hadamard_of_order(std::size_t m, std::size_t max_order = kDefaultMaxOrder)
{
    if (!is_supported_hadamard_order(m)) {
        const std::size_t below = previous_hadamard_order(m);
        throw Error(ErrorCode::UnsupportedOrder,
                    "no shipped Hadamard construction of order " + std::to_string(m) +
                        "; nearest supported orders: " +
                        (below > 0 ? std::to_string(below) + ", " : std::string()) +
                        std::to_string(next_hadamard_order(m)));
    }
    if (m > max_order) {
        throw Error(ErrorCode::ResourceLimit, "order " + std::to_string(m) +
                                                  " exceeds the configured cap of " +
                                                  std::to_string(max_order));
    }
    std::size_t rest = m;
    unsigned twelves = 0;
    while (rest % 12 == 0) {
        rest /= 12;
        ++twelves;
    }
    unsigned exponent = 0;
    while ((std::size_t{1} << exponent) < rest) {
        ++exponent;
    }
    RatMatrix h = walsh(exponent, max_order).matrix;
    if (twelves > 0) {
        const RatMatrix h12 = hadamard12();
        for (unsigned i = 0; i < twelves; ++i) {
            h = kron(h, h12);
        }
    }
    return normalize_hadamard(h);
}

/// P_{n,k} built by the block recursion P_{n,k} = P_{1,·} ⊗ P_{n-1,·}; k is 0-based.
inline Permutation perm_basis(unsigned n, std::size_t k)
{
    detail::check_index(n, k);
    std::vector<std::size_t> image{0};
    std::size_t size = 1;
    // Unroll from the innermost factor outward: bit b of k picks the swap at level b+1.
    for (unsigned level = 0; level < n; ++level) {
        const bool swap = ((k >> level) & 1U) != 0;
        std::vector<std::size_t> next(2 * size);
        for (std::size_t i = 0; i < size; ++i) {
            if (swap) {
                next[i] = size + image[i];
                next[size + i] = image[i];
            } else {
                next[i] = image[i];
                next[size + i] = size + image[i];
            }
        }
        image = std::move(next);
        size *= 2;
    }
    return Permutation(std::move(image));
}

inline SchemeBasis scheme_basis(unsigned n, std::size_t max_order = kDefaultMaxOrder)
{
    const std::size_t order = detail::order_of_exponent(n, max_order);
    SchemeBasis basis{n, {}};
    basis.perms.reserve(order);
    for (std::size_t k = 0; k < order; ++k) {
        basis.perms.push_back(perm_basis(n, k));
    }
    return basis;
}

/// 2^{-n} H_n D_v H_n with v^T = e_k^T H_n.
inline RatMatrix perm_from_walsh_row(unsigned n, std::size_t k)
{
    detail::check_index(n, k);
    const RatMatrix h = walsh(n).matrix;
    const RatVector v(h.row(k).begin(), h.row(k).end());
    const Rational scale(Integer(1), Integer(h.rows()));
    return scale * similarity(h, v, h);
}

/// Index j with P_{n,k} P_{n,l} = P_{n,j}: the group law of (Z_2)^n on 0-based indices.
inline std::size_t scheme_index_product(unsigned n, std::size_t k, std::size_t l)
{
    detail::check_index(n, k);
    detail::check_index(n, l);
    return k ^ l;
}

/// M_x = sum_k x_k P_{n,k}; entry (i, j) is the coefficient of the unique P with a one there.
inline RatMatrix group_matrix(unsigned n, const RatVector& x)
{
    const SchemeBasis basis = scheme_basis(n);
    const std::size_t order = basis.perms.size();
    if (x.size() != order) {
        throw Error(ErrorCode::LengthMismatch, "group matrix of order " + std::to_string(order) +
                                                   " needs " + std::to_string(order) +
                                                   " coefficients, got " + std::to_string(x.size()));
    }
    std::vector<Rational> data(order * order, Rational(0));
    for (std::size_t k = 0; k < order; ++k) {
        if (x[k] == 0) {
            continue;
        }
        const auto& p = basis.perms[k];
        for (std::size_t i = 0; i < order; ++i) {
            data[p[i] * order + i] += x[k];
        }
    }
    return RatMatrix(order, order, std::move(data));
}

inline RatMatrix to_matrix(const GroupMatrix& g) { return group_matrix(g.exponent, g.coeffs); }

/// Parses one row per line of '+'/'-' characters; blank lines are ignored.
inline RatMatrix parse_pm(std::string_view text)
{
    std::vector<Rational> data;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) {
            continue;
        }
        if (cols == 0) {
            cols = line.size();
        } else if (line.size() != cols) {
            throw Error(ErrorCode::Parse, "ragged +/- matrix at row " + std::to_string(rows + 1));
        }
        for (char c : line) {
            if (c == '+') {
                data.emplace_back(1);
            } else if (c == '-') {
                data.emplace_back(-1);
            } else {
                throw Error(ErrorCode::Parse, std::string("unexpected character '") + c +
                                                  "' in +/- matrix");
            }
        }
        ++rows;
    }
    if (rows == 0) {
        throw Error(ErrorCode::Parse, "empty +/- matrix");
    }
    return RatMatrix(rows, cols, std::move(data));
}

inline std::string format_pm(const RatMatrix& h)
{
    std::string out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (const auto& x : h.row(i)) {
            if (x == 1) {
                out += '+';
            } else if (x == -1) {
                out += '-';
            } else {
                throw Error(ErrorCode::NotHadamard, "entry " + to_string(x) + " is not ±1");
            }
        }
        out += '\n';
    }
    return out;
}

} // namespace spectratope
