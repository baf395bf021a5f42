#pragma once

#include <spectratope/hadamard.hpp>
#include <spectratope/linalg.hpp>
#include <spectratope/perron.hpp>
#include <spectratope/spectrum.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spectratope {

enum class Method { N2, N3, N3Symmetric, N4Blocks, N4Walsh, Suleimanova, SuleimanovaPadded };

inline std::string to_string(Method m)
{
    switch (m) {
    case Method::N2: return "n2";
    case Method::N3: return "n3";
    case Method::N3Symmetric: return "n3-symmetric";
    case Method::N4Blocks: return "n4-blocks";
    case Method::N4Walsh: return "n4-walsh";
    case Method::Suleimanova: return "suleimanova";
    case Method::SuleimanovaPadded: return "suleimanova-padded";
    }
    return "unknown";
}

inline Method parse_method(std::string_view text)
{
    for (auto m : {Method::N2, Method::N3, Method::N3Symmetric, Method::N4Blocks, Method::N4Walsh,
                   Method::Suleimanova, Method::SuleimanovaPadded}) {
        if (to_string(m) == text) {
            return m;
        }
    }
    throw Error(ErrorCode::Parse, "unknown realization method '" + std::string(text) + "'");
}

struct CertificateFlags {
    bool nonnegative = false;
    bool symmetric = false;
    bool row_stochastic = false;
    bool doubly_stochastic = false;
    bool trisymmetric = false;

    friend bool operator==(const CertificateFlags&, const CertificateFlags&) = default;
};

/// Re-derives every flag from the matrix; entries within `tol` count as equal.
template <typename T>
CertificateFlags derive_flags(const Matrix<T>& a, const T& tol = T(0))
{
    using std::abs;
    const auto close = [&](const T& x, const T& y) { return abs(T(x - y)) <= tol; };
    CertificateFlags f;
    if (!a.is_square()) {
        return f;
    }
    const std::size_t n = a.rows();
    f.nonnegative = std::ranges::all_of(a.entries(), [&](const T& x) { return x >= -tol; });
    bool symmetric = true;
    bool persymmetric = true;
    bool centrosymmetric = true;
    bool rows_one = true;
    bool cols_one = true;
    for (std::size_t i = 0; i < n; ++i) {
        T row_sum(0);
        T col_sum(0);
        for (std::size_t j = 0; j < n; ++j) {
            row_sum += a(i, j);
            col_sum += a(j, i);
            symmetric = symmetric && close(a(i, j), a(j, i));
            persymmetric = persymmetric && close(a(i, n - 1 - j), a(j, n - 1 - i));
            centrosymmetric = centrosymmetric && close(a(i, n - 1 - j), a(n - 1 - i, j));
        }
        rows_one = rows_one && close(row_sum, T(1));
        cols_one = cols_one && close(col_sum, T(1));
    }
    f.symmetric = symmetric;
    f.row_stochastic = f.nonnegative && rows_one;
    f.doubly_stochastic = f.row_stochastic && cols_one;
    f.trisymmetric = int(symmetric) + int(persymmetric) + int(centrosymmetric) >= 2;
    return f;
}

/// Tolerance for the floating-point symmetrization of the n = 3 construction.
inline constexpr double kNumericTolerance = 1e-12;

/**
 * Self-verifying realization: realizer = basis · diag(diagonal) · basis^{-1}, exactly.
 *
 * When `numeric` is set, the exact realizer is not symmetric and the certificate
 * also carries the floating-point matrix D_u^{-1} · realizer · D_u for the
 * symmetrizer u; flags then describe that matrix within kNumericTolerance.
 */
struct RealizationCertificate {
    Method method = Method::N2;
    RatMatrix basis;
    RatVector diagonal;
    RatMatrix realizer;
    CertificateFlags flags;
    bool numeric = false;
    std::vector<double> symmetrizer;
    Matrix<double> numeric_realizer;
    std::size_t padded_zeros = 0;
};

/// Thrown when a spectrum fails the necessary conditions or has no constructive route.
class RealizationError : public Error {
public:
    RealizationError(ErrorCode code, const std::string& what, ConditionReport report)
        : Error(code, what), report_(std::move(report))
    {
    }

    const ConditionReport& report() const noexcept { return report_; }

private:
    ConditionReport report_;
};

/// (σ / λ_1, λ_1); realizers of σ are λ_1 times realizers of σ / λ_1.
inline std::pair<Spectrum, Rational> normalize(const std::vector<Rational>& raw)
{
    const Spectrum sigma(raw);
    const Rational lead = sigma[0];
    if (lead <= 0) {
        throw Error(ErrorCode::NotNormalizable, "largest value " + to_string(lead) + " is not positive");
    }
    if (sigma.spectral_radius() != lead) {
        throw Error(ErrorCode::NotNormalizable, "spectral radius " + to_string(sigma.spectral_radius()) +
                                                    " is not in the spectrum");
    }
    std::vector<Rational> scaled;
    scaled.reserve(sigma.size());
    for (const auto& x : sigma.values()) {
        scaled.push_back(x / lead);
    }
    return {Spectrum(std::move(scaled)), lead};
}

namespace detail {

inline RealizationCertificate certify(Method method, RatMatrix basis, RatVector diagonal,
                                      const RatMatrix& basis_inv)
{
    RealizationCertificate c;
    c.method = method;
    c.realizer = similarity(basis, diagonal, basis_inv);
    c.flags = derive_flags(c.realizer);
    c.basis = std::move(basis);
    c.diagonal = std::move(diagonal);
    return c;
}

inline RealizationCertificate certify(Method method, RatMatrix basis, RatVector diagonal)
{
    const RatMatrix inv = inverse(basis);
    return certify(method, std::move(basis), std::move(diagonal), inv);
}

inline void require_size(const Spectrum& sigma, std::size_t n, const char* route)
{
    if (sigma.size() != n) {
        throw Error(ErrorCode::OrderMismatch, std::string(route) + " needs a spectrum of size " +
                                                  std::to_string(n) + ", got " +
                                                  std::to_string(sigma.size()));
    }
}

/// s_1 ≥ 0 and ρ ∈ σ, the hypotheses of every low-order route.
inline void require_trace_and_radius(const Spectrum& sigma)
{
    ConditionReport report = necessary_conditions(sigma, 1);
    if (!report.passed()) {
        throw RealizationError(ErrorCode::ConditionsFail,
                               "spectrum violates s_1 >= 0 or rho in sigma", std::move(report));
    }
}

inline void require_nonnegative(const RealizationCertificate& c)
{
    if (!c.flags.nonnegative) {
        throw Error(ErrorCode::InternalDispatchFailure,
                    to_string(c.method) + " construction produced a negative entry");
    }
}

inline RatVector values_of(const Spectrum& sigma) { return sigma.values(); }

} // namespace detail

inline RatMatrix walsh1() { return RatMatrix{{1, 1}, {1, -1}}; }

/// S = H_1, v = (λ_1, λ_2): (1/2)[λ1+λ2, λ1-λ2; λ1-λ2, λ1+λ2].
inline RealizationCertificate realize_n2(const Spectrum& sigma)
{
    detail::require_size(sigma, 2, "realize_n2");
    detail::require_trace_and_radius(sigma);
    auto c = detail::certify(Method::N2, walsh1(), detail::values_of(sigma));
    detail::require_nonnegative(c);
    return c;
}

/// S_a = [1 1 0; 1 -a 1; 1 -a -1].
inline RatMatrix n3_basis(const Rational& a)
{
    return RatMatrix{{1, 1, 0}, {1, Rational(-a), 1}, {1, Rational(-a), -1}};
}

/// a = max(0, -λ_2 / λ_1), the parameter used for S_a (0 for the zero spectrum).
inline Rational n3_parameter(const Spectrum& sigma)
{
    if (sigma[0] <= 0 || sigma[1] >= 0) {
        return Rational(0);
    }
    return Rational(-sigma[1] / sigma[0]);
}

/**
 * Interval of a ∈ [0, 1] for which S_a D_v S_a^{-1} ≥ 0 with v = (1, x, y).
 * Each entry times 2(1 + a) is affine in a: 2(x + a), 1 - x, 2a(1 - x),
 * a(x + y) + y + 1 and a(x - y) - y + 1.
 */
inline std::optional<std::pair<Rational, Rational>> n3_feasible_a_interval(const Rational& x, const Rational& y)
{
    const std::pair<Rational, Rational> affine[] = {
        {Rational(2 * x), Rational(2)},
        {Rational(1 - x), Rational(0)},
        {Rational(0), Rational(2 * (1 - x))},
        {Rational(y + 1), Rational(x + y)},
        {Rational(1 - y), Rational(x - y)},
    };
    Rational lo = 0;
    Rational hi = 1;
    for (const auto& [c0, c1] : affine) {
        if (c1 == 0) {
            if (c0 < 0) {
                return std::nullopt;
            }
        } else if (c1 > 0) {
            lo = std::max(lo, Rational(-c0 / c1));
        } else {
            hi = std::min(hi, Rational(-c0 / c1));
        }
    }
    if (lo > hi) {
        return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

/// Nonnegative realizer S_a D_v S_a^{-1} with v = (λ_1, λ_2, λ_3), a = max(0, -λ_2/λ_1).
inline RealizationCertificate realize_n3(const Spectrum& sigma)
{
    detail::require_size(sigma, 3, "realize_n3");
    detail::require_trace_and_radius(sigma);
    auto c = detail::certify(Method::N3, n3_basis(n3_parameter(sigma)), detail::values_of(sigma));
    detail::require_nonnegative(c);
    return c;
}

/**
 * Symmetric n = 3 realizer.
 *
 * λ_2 ≥ 0: H_1 ⊕ H_0 on the pairing ({λ_1, λ_3}, {λ_2}), always exact.
 * Otherwise D_u^{-1} S_a D_v S_a^{-1} D_u with u = (1, √(2a), √(2a)); exact when 2a
 * is a rational square, else a numeric certificate.
 */
inline RealizationCertificate realize_n3_symmetric(const Spectrum& sigma)
{
    detail::require_size(sigma, 3, "realize_n3_symmetric");
    detail::require_trace_and_radius(sigma);
    if (sigma[1] >= 0) {
        const RatMatrix one{{1}};
        auto c = detail::certify(Method::N3Symmetric, direct_sum({walsh1(), one}),
                                 RatVector{sigma[0], sigma[2], sigma[1]});
        detail::require_nonnegative(c);
        return c;
    }
    const Rational a = n3_parameter(sigma);
    const RatMatrix s_a = n3_basis(a);
    Rational root;
    if (rational_sqrt(Rational(2 * a), root)) {
        const RatMatrix scaled = diag_from(RatVector{1, Rational(1 / root), Rational(1 / root)}) * s_a;
        auto c = detail::certify(Method::N3Symmetric, scaled, detail::values_of(sigma));
        detail::require_nonnegative(c);
        return c;
    }
    auto c = detail::certify(Method::N3Symmetric, s_a, detail::values_of(sigma));
    detail::require_nonnegative(c);
    const double r = std::sqrt(to_double(Rational(2 * a)));
    c.numeric = true;
    c.symmetrizer = {1.0, r, r};
    const auto& u = c.symmetrizer;
    c.numeric_realizer = Matrix<double>::generate(3, 3, [&](std::size_t i, std::size_t j) {
        return to_double(c.realizer(i, j)) * u[j] / u[i];
    });
    c.flags = derive_flags(c.numeric_realizer, kNumericTolerance);
    return c;
}

/**
 * v = (λ_1, λ_4, λ_2, λ_3) on S = H_1 ⊕ H_1 (two 2x2 blocks) or, when that has a
 * negative entry, on S = H_2. Both results are checked exactly.
 */
inline RealizationCertificate realize_n4(const Spectrum& sigma)
{
    detail::require_size(sigma, 4, "realize_n4");
    detail::require_trace_and_radius(sigma);
    const RatVector v{sigma[0], sigma[3], sigma[1], sigma[2]};
    auto blocks = detail::certify(Method::N4Blocks, direct_sum({walsh1(), walsh1()}), v);
    if (blocks.flags.nonnegative) {
        return blocks;
    }
    auto walsh_route = detail::certify(Method::N4Walsh, walsh(2).matrix, v);
    detail::require_nonnegative(walsh_route);
    return walsh_route;
}

/// s_1 ≥ 0 and exactly one positive value.
inline bool is_suleimanova(const Spectrum& sigma)
{
    return sigma.power_sum(1) >= 0 && sigma.positive_count() == 1;
}

/// μ_1 = s_1(σ), μ_k = -λ_k; then v = μ_1 e_1 + Σ_{k≥2} μ_k (e_1 - e_k).
struct SuleimanovaDecomposition {
    RatVector mu;

    RatVector reconstruct() const
    {
        RatVector v(mu.size(), Rational(0));
        v[0] = mu[0];
        for (std::size_t k = 1; k < mu.size(); ++k) {
            v[0] += mu[k];
            v[k] -= mu[k];
        }
        return v;
    }
};

inline void require_normalized_suleimanova(const Spectrum& sigma)
{
    if (!sigma.normalized() || !is_suleimanova(sigma)) {
        throw Error(ErrorCode::NotSuleimanova,
                    "{" + format_rational_list(sigma.values()) +
                        "} is not a normalized spectrum with one positive value and s_1 >= 0");
    }
}

inline SuleimanovaDecomposition suleimanova_decomposition(const Spectrum& sigma)
{
    require_normalized_suleimanova(sigma);
    SuleimanovaDecomposition d;
    d.mu.push_back(sigma.power_sum(1));
    for (std::size_t k = 1; k < sigma.size(); ++k) {
        d.mu.push_back(-sigma[k]);
    }
    return d;
}

/// A = (1/n) H diag(1, λ_2, ..., λ_n) H^T for a normalized Hadamard H of order n.
inline RealizationCertificate realize_suleimanova(const Spectrum& sigma, const NormalizedHadamard& h)
{
    require_normalized_suleimanova(sigma);
    if (h.order != sigma.size()) {
        throw Error(ErrorCode::OrderMismatch, "spectrum of size " + std::to_string(sigma.size()) +
                                                  " with Hadamard matrix of order " +
                                                  std::to_string(h.order));
    }
    const Rational scale(Integer(1), Integer(h.order));
    const RatMatrix h_inv = scale * h.matrix.transpose();
    auto c = detail::certify(Method::Suleimanova, h.matrix, detail::values_of(sigma), h_inv);
    detail::require_nonnegative(c);
    return c;
}

/// Pads with N = next_hadamard_order(n) - n zeros and realizes the padded spectrum.
inline RealizationCertificate realize_suleimanova_padded(const Spectrum& sigma)
{
    require_normalized_suleimanova(sigma);
    const std::size_t order = next_hadamard_order(sigma.size());
    std::vector<Rational> padded = sigma.values();
    padded.resize(order, Rational(0));
    auto c = realize_suleimanova(Spectrum(std::move(padded)), hadamard_of_order(order));
    c.method = Method::SuleimanovaPadded;
    c.padded_zeros = order - sigma.size();
    return c;
}

namespace detail {

inline RealizationCertificate rescale(RealizationCertificate c, const Rational& scale)
{
    if (scale == 1) {
        return c;
    }
    for (auto& x : c.diagonal) {
        x *= scale;
    }
    c.realizer = scale * c.realizer;
    c.flags = derive_flags(c.realizer);
    return c;
}

inline RealizationCertificate realize_low_order(const Spectrum& sigma)
{
    switch (sigma.size()) {
    case 2:
        return realize_n2(sigma);
    case 3: {
        auto symmetric = realize_n3_symmetric(sigma);
        return symmetric.numeric ? realize_n3(sigma) : symmetric;
    }
    default:
        return realize_n4(sigma);
    }
}

} // namespace detail

/**
 * Normalizes, checks the necessary conditions, then dispatches: Suleimanova spectra
 * of a supported Hadamard order get the symmetric doubly stochastic construction;
 * other spectra with n ≤ 4 get the low-order constructions (n = 3 prefers the exact
 * symmetric one); remaining Suleimanova spectra are realized after zero padding.
 * The all-zero spectrum is realized as 0 times a realizer of {1, 0, ..., 0}.
 */
inline RealizationCertificate realize_auto(const std::vector<Rational>& raw)
{
    const Spectrum sigma(raw);
    ConditionReport report = necessary_conditions(sigma);
    if (!report.passed()) {
        throw RealizationError(ErrorCode::ConditionsFail,
                               "spectrum violates a necessary condition for realizability",
                               std::move(report));
    }
    Rational scale = sigma[0];
    std::vector<Rational> values;
    if (scale == 0) {
        values.assign(sigma.size(), Rational(0));
        values[0] = 1;
    } else {
        for (const auto& x : sigma.values()) {
            values.push_back(x / scale);
        }
    }
    const Spectrum unit(std::move(values));
    if (is_suleimanova(unit) && is_supported_hadamard_order(unit.size())) {
        return detail::rescale(realize_suleimanova(unit, hadamard_of_order(unit.size())), scale);
    }
    if (unit.size() >= 2 && unit.size() <= 4) {
        return detail::rescale(detail::realize_low_order(unit), scale);
    }
    if (is_suleimanova(unit)) {
        return detail::rescale(realize_suleimanova_padded(unit), scale);
    }
    throw RealizationError(ErrorCode::NotSupported,
                           "no constructive route for a non-Suleimanova spectrum of size " +
                               std::to_string(sigma.size()),
                           std::move(report));
}

struct VerificationFailure {
    std::string check;
    std::string detail;
    std::optional<std::pair<std::size_t, std::size_t>> index; ///< 0-based entry, when located
};

struct VerificationReport {
    std::vector<VerificationFailure> failures;

    bool passed() const { return failures.empty(); }

    bool has(std::string_view check) const
    {
        return std::ranges::any_of(failures, [&](const auto& f) { return f.check == check; });
    }
};

/**
 * Recomputes S diag(v) S^{-1} and compares it with the stored realizer, checks
 * nonnegativity, checks that the characteristic polynomial of the realizer equals
 * both prod (t - v_i) and prod (t - λ_i) (σ is zero-padded when the certificate
 * records padding), and re-derives every flag the certificate claims.
 */
inline VerificationReport verify_certificate(const RealizationCertificate& c, const Spectrum& sigma)
{
    VerificationReport report;
    auto fail = [&](std::string check, std::string detail,
                    std::optional<std::pair<std::size_t, std::size_t>> index = std::nullopt) {
        report.failures.push_back({std::move(check), std::move(detail), index});
    };

    const std::size_t n = c.realizer.rows();
    if (!c.realizer.is_square() || !c.basis.is_square() || c.basis.rows() != n || c.diagonal.size() != n) {
        fail("shape", "basis, diagonal and realizer sizes disagree");
        return report;
    }

    try {
        const RatMatrix rebuilt = similarity(c.basis, c.diagonal, inverse(c.basis));
        for (std::size_t i = 0; i < n && report.failures.empty(); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (rebuilt(i, j) != c.realizer(i, j)) {
                    fail("reconstruction",
                         "S diag(v) S^-1 has " + to_string(rebuilt(i, j)) + ", realizer has " +
                             to_string(c.realizer(i, j)),
                         std::make_pair(i, j));
                    break;
                }
            }
        }
    } catch (const Error& e) {
        fail("reconstruction", e.what());
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (c.realizer(i, j) < 0) {
                fail("nonnegative", "entry is " + to_string(c.realizer(i, j)), std::make_pair(i, j));
            }
        }
    }

    const RatVector poly = char_poly(c.realizer);
    if (poly != poly_from_roots(c.diagonal)) {
        fail("char_poly", "characteristic polynomial differs from prod (t - v_i)");
    }
    std::vector<Rational> expected = sigma.values();
    if (c.padded_zeros > 0 && expected.size() + c.padded_zeros == n) {
        expected.resize(n, Rational(0));
    }
    if (expected.size() != n) {
        fail("spectrum", "spectrum has " + std::to_string(expected.size()) + " values, realizer has order " +
                             std::to_string(n));
    } else if (poly != poly_from_roots(expected)) {
        fail("char_poly", "characteristic polynomial differs from prod (t - lambda_i)");
    }

    CertificateFlags actual;
    if (c.numeric) {
        if (c.symmetrizer.size() != n || c.numeric_realizer.rows() != n || c.numeric_realizer.cols() != n) {
            fail("numeric", "symmetrizer or numeric realizer has the wrong size");
        } else {
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double expect = to_double(c.realizer(i, j)) * c.symmetrizer[j] / c.symmetrizer[i];
                    worst = std::max(worst, std::abs(expect - c.numeric_realizer(i, j)));
                }
            }
            if (worst > kNumericTolerance) {
                fail("numeric", "numeric realizer deviates from D_u^-1 A D_u by " + std::to_string(worst));
            }
            actual = derive_flags(c.numeric_realizer, kNumericTolerance);
        }
    } else {
        actual = derive_flags(c.realizer);
    }
    const std::pair<const char*, std::pair<bool, bool>> flag_checks[] = {
        {"nonnegative", {c.flags.nonnegative, actual.nonnegative}},
        {"symmetric", {c.flags.symmetric, actual.symmetric}},
        {"row_stochastic", {c.flags.row_stochastic, actual.row_stochastic}},
        {"doubly_stochastic", {c.flags.doubly_stochastic, actual.doubly_stochastic}},
        {"trisymmetric", {c.flags.trisymmetric, actual.trisymmetric}},
    };
    for (const auto& [name, claimed_actual] : flag_checks) {
        if (claimed_actual.first && !claimed_actual.second) {
            fail(std::string("flag:") + name, "claimed but does not hold");
        }
    }
    return report;
}

/// The trace-zero doubly stochastic circulant [0 a 1-a; 1-a 0 a; a 1-a 0].
struct TraceZeroCirculant {
    RatMatrix matrix;
    Rational discriminant; ///< of the quadratic factor char_poly / (t - 1)
    bool real_spectrum = false;
};

inline TraceZeroCirculant trace_zero_3x3_circulant(const Rational& a)
{
    if (a < 0 || a > 1) {
        throw Error(ErrorCode::OutOfRange, "circulant parameter " + to_string(a) + " outside [0, 1]");
    }
    const Rational b = 1 - a;
    TraceZeroCirculant out{RatMatrix{{0, a, b}, {b, 0, a}, {a, b, 0}}, Rational(0), false};
    const RatVector p = char_poly(out.matrix);
    // Synthetic division by (t - 1): p = (t - 1)(t^2 + q1 t + q0).
    const Rational q1 = p[1] + 1;
    const Rational q0 = p[2] + q1;
    if (p[3] + q0 != 0) {
        throw Error(ErrorCode::InternalDispatchFailure, "1 is not an eigenvalue of the circulant");
    }
    out.discriminant = q1 * q1 - 4 * q0;
    out.real_spectrum = out.discriminant >= 0;
    return out;
}

} // namespace spectratope
