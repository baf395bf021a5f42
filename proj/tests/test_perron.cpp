#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace spectratope;

TEST_CASE("Walsh matrices are strong Perron similarities at index 1")
{
    for (unsigned n = 1; n <= 4; ++n) {
        const PerronSimilarity p = classify(walsh(n).matrix);
        CHECK(p.is_perron_similarity());
        CHECK(p.perron_indices == std::vector<std::size_t>{0});
        CHECK(p.strong_index == std::optional<std::size_t>{0});
    }
}

TEST_CASE("classification examples")
{
    const PerronSimilarity id = classify(RatMatrix::identity(3));
    CHECK(id.perron_indices == std::vector<std::size_t>{0, 1, 2});
    CHECK_FALSE(id.strong_index.has_value());
    CHECK(classify(RatMatrix{{1}}).strong_index == std::optional<std::size_t>{0});

    CHECK_FALSE(classify(RatMatrix{{1, rat(1, 2)}, {1, 1}}).is_perron_similarity());
    CHECK(inverse(RatMatrix{{1, rat(1, 2)}, {1, 1}}) == RatMatrix{{2, -1}, {-2, 2}});
    CHECK_THROWS_AS(classify(RatMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("Perron similarity iff the cone has a point off the identity ray")
{
    // W(S) always holds the segment [0, e]; any other cone point adds a vertex.
    const auto has_nontrivial_point = [](const RatMatrix& s) {
        return enumerate_vertices(wpolytope_hrep(s)).size() > 2;
    };
    std::vector<RatMatrix> family{walsh(1).matrix, walsh(2).matrix, walsh(3).matrix, RatMatrix{{1, rat(1, 2)}, {1, 1}}};
    gen::Rng rng(1);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
        // Irreducible M-matrices: alpha I - T with T > 0.
        const RatMatrix t = RatMatrix::generate(
            n, n, [&](std::size_t, std::size_t) { return Rational(Integer(gen::uniform_int(rng, 1, 3))); });
        const RatMatrix m = Rational(static_cast<long long>(3 * n + 1)) * RatMatrix::identity(n) - t;
        REQUIRE(is_m_matrix(m));
        family.push_back(m);
        family.push_back(inverse(m));
        RatVector v(n);
        for (auto& x : v) {
            x = Rational(Integer(gen::uniform_int(rng, 1, 5)));
        }
        if (n == 2 || n == 4) {
            family.push_back(diag_from(v) * walsh(n == 2 ? 1 : 2).matrix);
        }
    }
    std::size_t positives = 0;
    for (const auto& s : family) {
        const bool perron = classify(s).is_perron_similarity();
        positives += perron ? 1 : 0;
        CHECK(perron == has_nontrivial_point(s));
    }
    CHECK(positives > 3);
    CHECK(positives < family.size());
}

TEST_CASE("a Perron index puts its unit vector in the cone")
{
    gen::Rng rng(6);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
        const RatMatrix s = gen::invertible(rng, n, 2, 1);
        for (std::size_t k : classify(s).perron_indices) {
            RatVector e(n, Rational(0));
            e[k] = 1;
            CHECK(cone_membership_direct(s, e).member);
        }
    }
}

TEST_CASE("positive left scaling keeps the Perron indices")
{
    gen::Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 4);
        const RatMatrix s = gen::invertible(rng, n, 2, 1);
        RatVector v(n);
        for (auto& x : v) {
            x = Rational(Integer(gen::uniform_int(rng, 1, 9)), Integer(gen::uniform_int(rng, 1, 4)));
        }
        CHECK(classify(diag_from(v) * s).perron_indices == classify(s).perron_indices);
    }
}

TEST_CASE("relative gain array maps x to the diagonal of the realizer")
{
    gen::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 6);
        const RatMatrix s = gen::invertible(rng, n);
        const RatVector x = gen::vector(rng, n);
        const RatMatrix phi = relative_gain_array(s);
        CHECK(phi * x == diag_of(similarity(s, x, inverse(s))));
        const RatVector e(n, Rational(1));
        CHECK(phi * e == e);
        CHECK(phi.transpose() * e == e);
    }
}

TEST_CASE("relative gain array examples")
{
    CHECK(relative_gain_array(RatMatrix::identity(4)) == RatMatrix::identity(4));
    const RatMatrix p = perm_basis(2, 3).to_matrix<Rational>();
    CHECK(relative_gain_array(p) == p);
    CHECK(relative_gain_array(walsh(1).matrix) == rat(1, 2) * RatMatrix::ones(2, 2));
}

TEST_CASE("M-matrices")
{
    CHECK(is_m_matrix(RatMatrix{{2, -1}, {-1, 2}}));
    CHECK(is_m_matrix(RatMatrix::identity(3)));
    CHECK_FALSE(is_m_matrix(RatMatrix{{1, rat(1, 2)}, {1, 1}}));
    CHECK_FALSE(is_m_matrix(RatMatrix{{1, -1}, {-1, 1}}));
    // Nonnegative inverse but a positive off-diagonal entry.
    CHECK_FALSE(is_m_matrix(RatMatrix{{0, 1}, {1, 0}}));
    CHECK_FALSE(is_m_matrix(RatMatrix{{1, -2}, {-2, 1}}));

    // alpha I - T with T >= 0 and alpha > rho(T) (bounded by the max row sum).
    gen::Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
        const RatMatrix t = RatMatrix::generate(n, n, [&](std::size_t, std::size_t) {
            return Rational(Integer(gen::uniform_int(rng, 0, 4)), Integer(gen::uniform_int(rng, 1, 3)));
        });
        Rational max_row = 0;
        for (std::size_t r = 0; r < n; ++r) {
            Rational sum = 0;
            for (const auto& x : t.row(r)) {
                sum += x;
            }
            max_row = std::max(max_row, sum);
        }
        const RatMatrix m = (max_row + 1) * RatMatrix::identity(n) - t;
        CHECK(is_m_matrix(m));
        CHECK(is_nonnegative(inverse(m)));
    }
}

TEST_CASE("doubly stochastic eligibility")
{
    const auto ds = doubly_stochastic_eligible(walsh(3).matrix);
    REQUIRE(ds.has_value());
    CHECK(ds->index == 0);
    CHECK(ds->alpha == 1);
    CHECK(ds->beta == rat(1, 8));
    CHECK(doubly_stochastic_eligible(hadamard_of_order(12).matrix).has_value());
    const auto h2 = doubly_stochastic_eligible(walsh(2).matrix);
    REQUIRE(h2.has_value());
    CHECK(h2->beta == rat(1, 4));
    CHECK_FALSE(doubly_stochastic_eligible(RatMatrix{{1, 1, 0}, {1, -1, 0}, {0, 0, 1}}).has_value());
    CHECK_FALSE(doubly_stochastic_eligible(RatMatrix::identity(2)).has_value());
}

TEST_CASE("necessary condition examples")
{
    CHECK(necessary_conditions(Spectrum({rat(1), rat(-1)})).passed());

    const ConditionReport radius = necessary_conditions(Spectrum({rat(1), rat(-2)}));
    CHECK(radius.violates(NecessaryCondition::SpectralRadius));

    const ConditionReport trace = necessary_conditions(Spectrum({rat(1), rat(-1, 2), rat(-1, 2), rat(-1, 2)}));
    REQUIRE(trace.violates(NecessaryCondition::TraceNonnegative));
    CHECK(trace.violations.front().k == 1);
    CHECK(trace.violations.front().lhs == rat(-1, 2));
    CHECK(trace.bound_sufficient);

    CHECK(necessary_conditions(Spectrum({rat(1)}), 5).k_max == 5);
    CHECK(necessary_conditions(Spectrum({rat(1), rat(0)})).k_max == 4);
}

TEST_CASE("J-LL witnesses")
{
    // s_1 = 1, s_2 = 1/4 + ... small: {1, 0, 0} has s_k = 1, n^{m-1} s_{km} = 3^{m-1} >= 1.
    CHECK(necessary_conditions(Spectrum({rat(1), rat(0), rat(0)})).passed());
    // {1, 1, -1} with n = 3: s_1 = 1, s_2 = 3; fine. {2, -1, -1}: s_1 = 0.
    CHECK(necessary_conditions(Spectrum({rat(2), rat(-1), rat(-1)})).passed());
    // A spectrum with s_1 > 0 but s_1^2 > n s_2 is impossible for real values
    // (Cauchy-Schwarz), so J-LL bites only through higher powers.
    const ConditionReport r = necessary_conditions(Spectrum({rat(1), rat(9, 10), rat(9, 10), rat(-1), rat(-1)}), 10);
    for (const auto& v : r.violations) {
        if (v.condition == NecessaryCondition::JLL) {
            CHECK(v.k * v.m <= 10);
            CHECK(v.lhs > v.rhs);
        }
    }
}

TEST_CASE("the finite check does not decide n >= 5")
{
    const Spectrum sigma({rat(1), rat(1, 2), rat(1, 2), rat(-1), rat(-1)});
    CHECK(sigma.power_sum(1) == 0);
    CHECK(sigma.power_sum(3) < 0);
    const ConditionReport r = necessary_conditions(sigma);
    CHECK_FALSE(r.passed());
    CHECK(r.bound_sufficient);
    const ConditionReport first = necessary_conditions(sigma, 1);
    CHECK(first.passed());
    CHECK_FALSE(first.bound_sufficient);
}

TEST_CASE("power sums of random spectra of order <= 4 follow from s_1")
{
    gen::Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const Spectrum sigma = gen::normalized_spectrum(rng, 2 + static_cast<std::size_t>(i % 3));
        const ConditionReport r = necessary_conditions(sigma, 12);
        CHECK(r.passed());
        CHECK(r.bound_sufficient);
    }
}
