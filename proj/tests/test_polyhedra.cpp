#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace spectratope;

namespace {

std::vector<RatVector> sorted(std::vector<RatVector> v)
{
    std::ranges::sort(v);
    return v;
}

} // namespace

TEST_CASE("spectracone rows are the entries of S D_x S^-1")
{
    gen::Rng rng(1);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
        const RatMatrix s = gen::invertible(rng, n);
        const RatMatrix t = inverse(s);
        const HRep h = spectracone_hrep(s);
        REQUIRE(h.dim == n);
        REQUIRE(h.rows.size() == n * n);
        const RatVector x = gen::vector(rng, n);
        for (const auto& row : h.rows) {
            REQUIRE(row.tag.kind == InequalityTag::Kind::Entry);
            CHECK(row.offset == 0);
            CHECK(dot(std::span<const Rational>(row.normal), std::span<const Rational>(x)) ==
                  -oracle::similarity_entry(s, t, x, row.tag.i, row.tag.j));
        }
        // Column-major order: row r holds entry (r mod n, r div n).
        for (std::size_t r = 0; r < h.rows.size(); ++r) {
            CHECK(h.rows[r].tag.i == r % n);
            CHECK(h.rows[r].tag.j == r / n);
        }
    }
}

TEST_CASE("polytope descriptions add box and slice rows")
{
    const RatMatrix s = walsh(1).matrix;
    CHECK(wpolytope_hrep(s).rows.size() == 4 + 4);
    const HRep p = spectratope_hrep(s);
    CHECK(p.rows.size() == 4 + 4 + 2);
    CHECK(p.rows.back().tag.kind == InequalityTag::Kind::Slice);
    const HRep p1 = project_p1(s);
    CHECK(p1.dim == 1);
    CHECK(to_string(p1.rows.back().tag) == "box(2)");
    CHECK_THROWS_AS(project_p1(RatMatrix{{1}}), Error);
    CHECK_THROWS_AS(spectracone_hrep(RatMatrix{{1, 1}, {1, 1}}), Error);
}

TEST_CASE("tags round-trip through text")
{
    for (const auto& tag : {InequalityTag{InequalityTag::Kind::Entry, 2, 0}, InequalityTag{InequalityTag::Kind::Box, 4, 0},
                            InequalityTag{InequalityTag::Kind::Slice, 0, 0}}) {
        CHECK(parse_tag(to_string(tag)) == tag);
    }
    CHECK(to_string(InequalityTag{InequalityTag::Kind::Entry, 0, 1}) == "entry(1,2)");
    CHECK_THROWS_AS(parse_tag("entry(0,1)"), Error);
    CHECK_THROWS_AS(parse_tag("row(1)"), Error);
}

TEST_CASE("low-dimensional vertex sets")
{
    const RatMatrix h1 = walsh(1).matrix;
    CHECK(enumerate_vertices(wpolytope_hrep(h1)) == sorted({{0, 0}, {1, 1}, {1, -1}}));
    CHECK(enumerate_vertices(spectratope_hrep(h1)) == sorted({{1, 1}, {1, -1}}));
    CHECK(enumerate_vertices(project_p1(h1)) == sorted({{-1}, {1}}));
    CHECK(enumerate_vertices(wpolytope_hrep(RatMatrix::identity(2))) == sorted({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    const RatMatrix block = direct_sum({h1, RatMatrix{{1}}});
    CHECK(enumerate_vertices(project_p1(block)) == sorted({{1, 1}, {-1, 1}, {-1, 0}, {1, 0}}));
    CHECK(enumerate_vertices(project_p1(walsh(2).matrix)) ==
          sorted({{1, 1, 1}, {-1, 1, -1}, {1, -1, -1}, {-1, -1, 1}}));
}

TEST_CASE("S_a pentagon for the three-point construction")
{
    for (const Rational a : {rat(1, 2), rat(2, 5), rat(1, 3)}) {
        const Rational b = 1 - a;
        const auto vertices = enumerate_vertices(project_p1(n3_basis(a)));
        CHECK(vertices == sorted({{-a, b}, {-a, -b}, {1, 1}, {1, -1}}));
    }
}

TEST_CASE("vertex enumeration of W(H_n) is the simplex of rows and origin")
{
    for (unsigned n = 1; n <= 3; ++n) {
        const RatMatrix h = walsh(n).matrix;
        std::vector<RatVector> expected{RatVector(h.rows(), Rational(0))};
        for (std::size_t i = 0; i < h.rows(); ++i) {
            expected.emplace_back(h.row(i).begin(), h.row(i).end());
        }
        CHECK(enumerate_vertices(wpolytope_hrep(h)) == sorted(expected));
    }
}

TEST_CASE("double description agrees with brute force")
{
    gen::Rng rng(2);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        const RatMatrix s = gen::invertible(rng, n, 2, 2);
        for (const HRep& h : {wpolytope_hrep(s), spectratope_hrep(s), project_p1(s)}) {
            CHECK(enumerate_vertices(h) == oracle::brute_force_vertices(h));
        }
    }
    // Random bounded polytopes: random cuts of a box.
    for (int i = 0; i < 60; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        HRep h{d, {}};
        for (std::size_t k = 0; k < d; ++k) {
            RatVector up(d, Rational(0));
            up[k] = 1;
            RatVector down(d, Rational(0));
            down[k] = -1;
            h.rows.push_back({up, 2, {InequalityTag::Kind::Box, k, 0}});
            h.rows.push_back({down, 2, {InequalityTag::Kind::Box, k, 0}});
        }
        for (int c = 0; c < 4; ++c) {
            h.rows.push_back({gen::vector(rng, d, 2, 1), gen::rational(rng, 2, 1) + 1, {}});
        }
        CHECK(enumerate_vertices(h) == oracle::brute_force_vertices(h));
    }
}

TEST_CASE("vertex enumeration errors")
{
    try {
        enumerate_vertices(spectracone_hrep(walsh(1).matrix));
        FAIL("expected Unbounded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unbounded);
    }
    try {
        enumerate_vertices(wpolytope_hrep(walsh(3).matrix), VertexLimits{6, 32});
        FAIL("expected ResourceLimit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
    }
    // x <= -1 and x >= 1 has no points.
    const HRep empty{1, {{{1}, -1, {}}, {{-1}, -1, {}}}};
    CHECK(enumerate_vertices(empty).empty());
}

TEST_CASE("membership by H-representation matches the direct test")
{
    gen::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
        const RatMatrix s = gen::invertible(rng, n);
        const RatVector x = gen::vector(rng, n);
        CHECK(hrep_membership(spectracone_hrep(s), x) == cone_membership_direct(s, x).member);
    }
    CHECK_THROWS_AS(hrep_membership(spectracone_hrep(walsh(1).matrix), RatVector{1}), Error);
    CHECK_THROWS_AS(cone_membership_direct(walsh(1).matrix, RatVector{1, 2, 3}), Error);
}

TEST_CASE("cone axioms")
{
    gen::Rng rng(4);
    const RatMatrix s = walsh(2).matrix;
    for (int i = 0; i < 100; ++i) {
        RatVector x = gen::vector(rng, 4);
        RatVector y = gen::vector(rng, 4);
        if (!cone_membership_direct(s, x).member || !cone_membership_direct(s, y).member) {
            continue;
        }
        const Rational alpha = abs(gen::rational(rng, 3));
        const Rational beta = abs(gen::rational(rng, 3));
        RatVector z(4);
        for (std::size_t k = 0; k < 4; ++k) {
            z[k] = alpha * x[k] + beta * y[k];
        }
        CHECK(cone_membership_direct(s, z).member);
    }
    for (std::size_t n = 1; n <= 4; ++n) {
        CHECK(cone_membership_direct(gen::invertible(rng, n), RatVector(n, Rational(1))).member);
    }
}

TEST_CASE("Walsh cone test equals the conical hull of rows")
{
    CHECK(walsh_cone_coefficients(2, {1, 1, 1, -1}) == RatVector{rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)});
    CHECK_FALSE(walsh_cone_membership(2, {1, 1, 1, -1}));
    CHECK(walsh_cone_membership(2, {1, 0, 0, 0}));
    gen::Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(i % 3);
        const RatVector v = gen::vector(rng, std::size_t{1} << n);
        CHECK(walsh_cone_membership(n, v) == cone_membership_direct(walsh(n).matrix, v).member);
        // Unsorted input is fine: the test never reorders v.
        const RatVector c = walsh_cone_coefficients(n, v);
        CHECK(walsh(n).matrix * c == v);
    }
    CHECK_THROWS_AS(walsh_cone_coefficients(2, {1, 2, 3}), Error);
}

TEST_CASE("simplex volume")
{
    CHECK(simplex_volume({{{0, 0}, {1, 0}, {0, 1}}}) == rat(1, 2));
    CHECK(simplex_volume({{{-1}, {1}}}) == 2);
    CHECK(simplex_volume({{{1, 1, 1}, {-1, 1, -1}, {1, -1, -1}, {-1, -1, 1}}}) == rat(8, 3));
    try {
        simplex_volume({{{0, 0}, {1, 1}, {2, 2}}});
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Degenerate);
    }
    CHECK_THROWS_AS(simplex_volume({{{0, 0}, {1}}}), Error);
}
