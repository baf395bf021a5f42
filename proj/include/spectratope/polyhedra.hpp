#pragma once

#include <spectratope/hadamard.hpp>
#include <spectratope/linalg.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace spectratope {

/// Where an inequality came from: an entry (i, j) of S D_x S^{-1} ≥ 0, a box bound |x_i| ≤ 1,
/// or the slice x_1 = 1. Indices are 0-based.
struct InequalityTag {
    enum class Kind { Entry, Box, Slice };
    Kind kind = Kind::Entry;
    std::size_t i = 0;
    std::size_t j = 0;

    friend bool operator==(const InequalityTag&, const InequalityTag&) = default;
};

inline std::string to_string(const InequalityTag& tag)
{
    switch (tag.kind) {
    case InequalityTag::Kind::Entry:
        return "entry(" + std::to_string(tag.i + 1) + "," + std::to_string(tag.j + 1) + ")";
    case InequalityTag::Kind::Box:
        return "box(" + std::to_string(tag.i + 1) + ")";
    case InequalityTag::Kind::Slice:
        return "slice";
    }
    return "unknown";
}

inline InequalityTag parse_tag(std::string_view text)
{
    const auto parse_index = [&](std::string_view digits) {
        const Rational q = parse_rational(digits);
        if (denominator(q) != 1 || q < 1) {
            throw Error(ErrorCode::Parse, "bad index in tag '" + std::string(text) + "'");
        }
        return static_cast<std::size_t>(numerator(q).convert_to<unsigned long long>() - 1);
    };
    if (text == "slice") {
        return {InequalityTag::Kind::Slice, 0, 0};
    }
    if (text.starts_with("box(") && text.ends_with(")")) {
        return {InequalityTag::Kind::Box, parse_index(text.substr(4, text.size() - 5)), 0};
    }
    if (text.starts_with("entry(") && text.ends_with(")")) {
        const std::string_view body = text.substr(6, text.size() - 7);
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw Error(ErrorCode::Parse, "bad entry tag '" + std::string(text) + "'");
        }
        return {InequalityTag::Kind::Entry, parse_index(body.substr(0, comma)),
                parse_index(body.substr(comma + 1))};
    }
    throw Error(ErrorCode::Parse, "unknown inequality tag '" + std::string(text) + "'");
}

/// normal · x ≤ offset
struct Inequality {
    RatVector normal;
    Rational offset;
    InequalityTag tag;

    friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// Polyhedron {x : A x ≤ b} with a provenance tag per row.
struct HRep {
    std::size_t dim = 0;
    std::vector<Inequality> rows;

    friend bool operator==(const HRep&, const HRep&) = default;
};

namespace detail {

inline void append_box_rows(HRep& h, std::size_t first_label)
{
    for (std::size_t i = 0; i < h.dim; ++i) {
        RatVector up(h.dim, Rational(0));
        up[i] = 1;
        RatVector down(h.dim, Rational(0));
        down[i] = -1;
        const InequalityTag tag{InequalityTag::Kind::Box, first_label + i, 0};
        h.rows.push_back({std::move(up), Rational(1), tag});
        h.rows.push_back({std::move(down), Rational(1), tag});
    }
}

inline HRep cone_rows(const RatMatrix& s, const RatMatrix& t)
{
    const std::size_t n = s.rows();
    HRep h{n, {}};
    h.rows.reserve(n * n);
    // Column-major over the entries of S D_x S^{-1}, matching vec(·).
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            RatVector normal(n);
            for (std::size_t k = 0; k < n; ++k) {
                normal[k] = -(s(i, k) * t(k, j));
            }
            h.rows.push_back({std::move(normal), Rational(0), {InequalityTag::Kind::Entry, i, j}});
        }
    }
    return h;
}

} // namespace detail

/// C(S) = {x : S D_x S^{-1} ≥ 0} as n^2 homogeneous rows; row (i, j) has k-th coefficient
/// -s_ik t_kj where T = S^{-1}. Identically zero rows are kept.
inline HRep spectracone_hrep(const RatMatrix& s)
{
    detail::require_square(s, "spectracone");
    return detail::cone_rows(s, inverse(s));
}

/// W(S) = C(S) ∩ [-1, 1]^n.
inline HRep wpolytope_hrep(const RatMatrix& s)
{
    HRep h = spectracone_hrep(s);
    detail::append_box_rows(h, 0);
    return h;
}

/// P(S) = {x ∈ C(S) : x_1 = 1}, with the box rows so the description is bounded.
inline HRep spectratope_hrep(const RatMatrix& s)
{
    HRep h = wpolytope_hrep(s);
    RatVector up(h.dim, Rational(0));
    up[0] = 1;
    RatVector down(h.dim, Rational(0));
    down[0] = -1;
    h.rows.push_back({std::move(up), Rational(1), {InequalityTag::Kind::Slice, 0, 0}});
    h.rows.push_back({std::move(down), Rational(-1), {InequalityTag::Kind::Slice, 0, 0}});
    return h;
}

/// P^1(S): x_1 = 1 substituted into every cone row, plus box rows on x_2..x_n.
inline HRep project_p1(const RatMatrix& s)
{
    detail::require_square(s, "project_p1");
    if (s.rows() < 2) {
        throw Error(ErrorCode::ShapeMismatch, "P^1(S) needs order at least 2");
    }
    const HRep cone = spectracone_hrep(s);
    HRep h{s.rows() - 1, {}};
    for (const auto& row : cone.rows) {
        h.rows.push_back({RatVector(row.normal.begin() + 1, row.normal.end()),
                          Rational(row.offset - row.normal[0]), row.tag});
    }
    detail::append_box_rows(h, 1);
    return h;
}

inline bool satisfies(const Inequality& row, const RatVector& x)
{
    return dot<Rational>(row.normal, x) <= row.offset;
}

inline bool hrep_membership(const HRep& h, const RatVector& x)
{
    if (x.size() != h.dim) {
        throw Error(ErrorCode::LengthMismatch, "point has length " + std::to_string(x.size()) +
                                                   ", polyhedron has dimension " +
                                                   std::to_string(h.dim));
    }
    return std::ranges::all_of(h.rows, [&](const Inequality& row) { return satisfies(row, x); });
}

struct ConeMembership {
    bool member = false;
    RatMatrix witness; ///< S D_x S^{-1}
};

/// Direct test of the definition: forms S D_x S^{-1} and checks its sign.
inline ConeMembership cone_membership_direct(const RatMatrix& s, const RatVector& x)
{
    detail::require_square(s, "cone membership");
    if (x.size() != s.rows()) {
        throw Error(ErrorCode::LengthMismatch, "vector has length " + std::to_string(x.size()) +
                                                   ", basis has order " + std::to_string(s.rows()));
    }
    RatMatrix a = similarity(s, x, inverse(s));
    const bool member = is_nonnegative(a);
    return {member, std::move(a)};
}

/// 2^{-n} H_n v: the conical coefficients of v over the rows of H_n.
inline RatVector walsh_cone_coefficients(unsigned n, const RatVector& v)
{
    const RatMatrix h = walsh(n).matrix;
    if (v.size() != h.rows()) {
        throw Error(ErrorCode::LengthMismatch, "vector has length " + std::to_string(v.size()) +
                                                   ", Walsh order is " + std::to_string(h.rows()));
    }
    RatVector c = h * v;
    const Rational scale(Integer(1), Integer(h.rows()));
    for (auto& x : c) {
        x *= scale;
    }
    return c;
}

/// v ∈ C(H_n) iff H_n v ≥ 0; valid for unsorted v.
inline bool walsh_cone_membership(unsigned n, const RatVector& v)
{
    return is_nonnegative(walsh_cone_coefficients(n, v));
}

/// n + 1 affinely independent points in dimension n.
struct SimplexSpec {
    std::vector<RatVector> vertices;
};

/// |det M| / n! with M = [1 v_i^T] stacked over the vertices.
inline Rational simplex_volume(const SimplexSpec& s)
{
    if (s.vertices.size() < 2) {
        throw Error(ErrorCode::LengthMismatch, "a simplex needs at least two vertices");
    }
    const std::size_t n = s.vertices.size() - 1;
    for (const auto& v : s.vertices) {
        if (v.size() != n) {
            throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n + 1) +
                                                       " vertices of length " + std::to_string(n));
        }
    }
    const RatMatrix m = RatMatrix::generate(n + 1, n + 1, [&](std::size_t i, std::size_t j) {
        return j == 0 ? Rational(1) : s.vertices[i][j - 1];
    });
    const Rational det = determinant(m);
    if (det == 0) {
        throw Error(ErrorCode::Degenerate, "vertices are affinely dependent");
    }
    Integer factorial = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        factorial *= static_cast<unsigned long>(k);
    }
    return abs(det) / Rational(factorial);
}

struct VertexLimits {
    std::size_t max_dim = 8;
    std::size_t max_rows = 256;
};

namespace detail {

using Bits = boost::dynamic_bitset<>;

inline void make_primitive(std::vector<Integer>& v)
{
    Integer g = 0;
    for (const auto& x : v) {
        g = boost::multiprecision::gcd(g, x);
    }
    if (g > 1) {
        for (auto& x : v) {
            x /= g;
        }
    }
}

inline std::vector<Integer> integer_row(const RatVector& normal, const Rational& offset)
{
    RatVector row = normal;
    row.push_back(-offset);
    std::vector<Integer> out;
    out.reserve(row.size());
    Integer l = lcm_of_denominators(row);
    for (const auto& q : row) {
        out.push_back(numerator(q) * (l / denominator(q)));
    }
    make_primitive(out);
    return out;
}

inline Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) {
            s += a[i] * b[i];
        }
    }
    return s;
}

struct Ray {
    std::vector<Integer> z;
    Bits tight;
};

} // namespace detail

/**
 * Exact vertex set of a bounded polyhedron, sorted lexicographically.
 *
 * Homogenizes {x : A x ≤ b} to the cone {(x, t) : A x - b t ≤ 0, t ≥ 0} and runs
 * the double-description method with the combinatorial adjacency test. Vertices
 * are the extreme rays with t > 0. A surviving ray with t = 0 next to a vertex is
 * a recession direction and is reported as Unbounded; an empty polyhedron yields
 * an empty list.
 */
inline std::vector<RatVector> enumerate_vertices(const HRep& h, const VertexLimits& limits = {})
{
    if (h.dim == 0) {
        throw Error(ErrorCode::LengthMismatch, "polyhedron of dimension 0");
    }
    if (h.dim > limits.max_dim || h.rows.size() > limits.max_rows) {
        throw Error(ErrorCode::ResourceLimit,
                    "vertex enumeration capped at dimension " + std::to_string(limits.max_dim) +
                        " and " + std::to_string(limits.max_rows) + " rows (got " +
                        std::to_string(h.dim) + ", " + std::to_string(h.rows.size()) + ")");
    }
    const std::size_t dim = h.dim + 1;
    std::vector<std::vector<Integer>> rows;
    rows.reserve(h.rows.size() + 1);
    for (const auto& row : h.rows) {
        if (row.normal.size() != h.dim) {
            throw Error(ErrorCode::LengthMismatch, "inequality normal has wrong length");
        }
        rows.push_back(detail::integer_row(row.normal, row.offset));
    }
    {
        std::vector<Integer> t_nonneg(dim, Integer(0));
        t_nonneg.back() = -1;
        rows.push_back(std::move(t_nonneg));
    }
    const std::size_t m = rows.size();

    // Greedy choice of dim linearly independent rows for the initial simplicial cone.
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < m && chosen.size() < dim; ++r) {
        chosen.push_back(r);
        const RatMatrix candidate = RatMatrix::generate(
            chosen.size(), dim, [&](std::size_t i, std::size_t j) { return Rational(rows[chosen[i]][j]); });
        if (rank(candidate) < chosen.size()) {
            chosen.pop_back();
        }
    }
    if (chosen.size() < dim) {
        throw Error(ErrorCode::Unbounded,
                    "inequalities have rank " + std::to_string(chosen.size() - 1) + " < dimension " +
                        std::to_string(h.dim) + "; the polyhedron contains a line or is not bounded");
    }

    const RatMatrix basis = RatMatrix::generate(
        dim, dim, [&](std::size_t i, std::size_t j) { return Rational(rows[chosen[i]][j]); });
    const RatMatrix basis_inv = inverse(basis);
    std::vector<detail::Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        detail::Ray ray{{}, detail::Bits(m)};
        const RatVector column = basis_inv.column(j);
        Integer l = detail::lcm_of_denominators(column);
        for (const auto& q : column) {
            ray.z.push_back(-(numerator(q) * (l / denominator(q))));
        }
        detail::make_primitive(ray.z);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i != j) {
                ray.tight.set(chosen[i]);
            }
        }
        rays.push_back(std::move(ray));
    }

    detail::Bits processed(m);
    for (auto r : chosen) {
        processed.set(r);
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (processed.test(r)) {
            continue;
        }
        processed.set(r);
        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> plus;
        std::vector<std::size_t> minus;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            value[i] = detail::dot(rows[r], rays[i].z);
            if (value[i] > 0) {
                plus.push_back(i);
            } else if (value[i] < 0) {
                minus.push_back(i);
            }
        }
        std::vector<detail::Ray> next;
        next.reserve(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (value[i] <= 0) {
                detail::Ray kept = rays[i];
                if (value[i] == 0) {
                    kept.tight.set(r);
                }
                next.push_back(std::move(kept));
            }
        }
        for (auto p : plus) {
            for (auto q : minus) {
                detail::Bits common = rays[p].tight & rays[q].tight;
                if (common.count() + 2 < dim) {
                    continue;
                }
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o != p && o != q && common.is_subset_of(rays[o].tight)) {
                        adjacent = false;
                    }
                }
                if (!adjacent) {
                    continue;
                }
                detail::Ray combined{std::vector<Integer>(dim), std::move(common)};
                for (std::size_t k = 0; k < dim; ++k) {
                    combined.z[k] = value[p] * rays[q].z[k] - value[q] * rays[p].z[k];
                }
                detail::make_primitive(combined.z);
                combined.tight.set(r);
                next.push_back(std::move(combined));
            }
        }
        rays = std::move(next);
    }

    std::vector<RatVector> vertices;
    bool recession = false;
    for (const auto& ray : rays) {
        const Integer& t = ray.z.back();
        if (t == 0) {
            recession = true;
            continue;
        }
        RatVector x;
        x.reserve(h.dim);
        for (std::size_t k = 0; k < h.dim; ++k) {
            x.emplace_back(ray.z[k], t);
        }
        vertices.push_back(std::move(x));
    }
    if (recession && !vertices.empty()) {
        throw Error(ErrorCode::Unbounded, "polyhedron has a recession direction");
    }
    std::ranges::sort(vertices);
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

} // namespace spectratope
