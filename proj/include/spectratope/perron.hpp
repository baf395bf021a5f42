#pragma once

#include <spectratope/linalg.hpp>
#include <spectratope/spectrum.hpp>

#include <optional>
#include <string>
#include <vector>

namespace spectratope {

/// Indices are 0-based.
struct PerronSimilarity {
    RatMatrix basis;
    RatMatrix basis_inv;
    std::vector<std::size_t> perron_indices;
    std::optional<std::size_t> strong_index;

    bool is_perron_similarity() const { return !perron_indices.empty(); }
};

/**
 * Index i is Perron when column i of S and row i of S^{-1} are both nonnegative.
 * Since the rows of S form a basis, the conical coefficients of e_i over them are
 * exactly row i of S^{-1}, so no feasibility problem has to be solved.
 * The strong index is the unique i with both strictly positive, if there is exactly one.
 */
inline PerronSimilarity classify(const RatMatrix& s)
{
    detail::require_square(s, "classify");
    PerronSimilarity out{s, inverse(s), {}, std::nullopt};
    const std::size_t n = s.rows();
    std::vector<std::size_t> strong;
    for (std::size_t i = 0; i < n; ++i) {
        bool nonneg = true;
        bool positive = true;
        for (std::size_t r = 0; r < n; ++r) {
            const int sc = sign(s(r, i));
            const int si = sign(out.basis_inv(i, r));
            nonneg = nonneg && sc >= 0 && si >= 0;
            positive = positive && sc > 0 && si > 0;
        }
        if (nonneg) {
            out.perron_indices.push_back(i);
        }
        if (positive) {
            strong.push_back(i);
        }
    }
    if (strong.size() == 1) {
        out.strong_index = strong.front();
    }
    return out;
}

/// Φ(S) = S ∘ S^{-T}; Φ(S) x = Diag(S D_x S^{-1}).
inline RatMatrix relative_gain_array(const RatMatrix& s)
{
    detail::require_square(s, "relative_gain_array");
    return hadamard_product(s, inverse(s).transpose());
}

/// Z sign pattern (off-diagonal ≤ 0) and S^{-1} ≥ 0. Singular input is not an M-matrix.
inline bool is_m_matrix(const RatMatrix& s)
{
    detail::require_square(s, "is_m_matrix");
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (i != j && s(i, j) > 0) {
                return false;
            }
        }
    }
    try {
        return is_nonnegative(inverse(s));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Singular) {
            return false;
        }
        throw;
    }
}

struct DoublyStochasticIndex {
    std::size_t index = 0;
    Rational alpha; ///< S e_i = α e
    Rational beta;  ///< e_i^T S^{-1} = β e^T
};

/// First i with column i of S constant and row i of S^{-1} constant.
inline std::optional<DoublyStochasticIndex> doubly_stochastic_eligible(const RatMatrix& s)
{
    detail::require_square(s, "doubly_stochastic_eligible");
    const RatMatrix t = inverse(s);
    const std::size_t n = s.rows();
    for (std::size_t i = 0; i < n; ++i) {
        bool constant = true;
        for (std::size_t r = 1; r < n && constant; ++r) {
            constant = s(r, i) == s(0, i) && t(i, r) == t(i, 0);
        }
        if (constant) {
            return DoublyStochasticIndex{i, s(0, i), t(i, 0)};
        }
    }
    return std::nullopt;
}

enum class NecessaryCondition { TraceNonnegative, SpectralRadius, JLL };

inline std::string to_string(NecessaryCondition c)
{
    switch (c) {
    case NecessaryCondition::TraceNonnegative: return "trace_nonnegative";
    case NecessaryCondition::SpectralRadius: return "spectral_radius_in_spectrum";
    case NecessaryCondition::JLL: return "jll";
    }
    return "unknown";
}

struct ConditionViolation {
    NecessaryCondition condition;
    unsigned k = 0; ///< power index; 0 for the spectral-radius condition
    unsigned m = 0; ///< JLL exponent; 0 otherwise
    Rational lhs;   ///< s_k, ρ, or s_k^m
    Rational rhs;   ///< 0, max λ, or n^{m-1} s_{km}
};

struct ConditionReport {
    std::size_t k_max = 0;
    std::vector<ConditionViolation> violations;
    /// True when the finite check decides the whole infinite family: any violation
    /// is conclusive, and for n ≤ 4 passing s_1 ≥ 0 and ρ ∈ σ already implies
    /// realizability, hence every unchecked inequality. For n ≥ 5 it is not
    /// decided: {1, 1/2, 1/2, -1, -1} has s_1 = 0 but s_3 < 0.
    bool bound_sufficient = false;

    bool passed() const { return violations.empty(); }

    bool violates(NecessaryCondition c) const
    {
        for (const auto& v : violations) {
            if (v.condition == c) {
                return true;
            }
        }
        return false;
    }
};

/**
 * Checks s_k ≥ 0 for k ≤ k_max, ρ ∈ σ, and s_k^m ≤ n^{m-1} s_{km} for m ≥ 2, k m ≤ k_max.
 * k_max = 0 selects the default 2n.
 */
inline ConditionReport necessary_conditions(const Spectrum& sigma, unsigned k_max = 0)
{
    const std::size_t n = sigma.size();
    if (k_max == 0) {
        k_max = static_cast<unsigned>(2 * n);
    }
    ConditionReport report;
    report.k_max = k_max;

    std::vector<Rational> sums(k_max + 1);
    for (unsigned k = 1; k <= k_max; ++k) {
        sums[k] = sigma.power_sum(k);
    }
    for (unsigned k = 1; k <= k_max; ++k) {
        if (sums[k] < 0) {
            report.violations.push_back({NecessaryCondition::TraceNonnegative, k, 0, sums[k], Rational(0)});
        }
    }
    const Rational rho = sigma.spectral_radius();
    if (sigma[0] != rho) {
        report.violations.push_back({NecessaryCondition::SpectralRadius, 0, 0, rho, sigma[0]});
    }
    for (unsigned k = 1; k <= k_max; ++k) {
        Rational n_power = 1;
        Rational lhs = sums[k];
        for (unsigned m = 2; k * m <= k_max; ++m) {
            n_power *= static_cast<unsigned long>(n);
            lhs *= sums[k];
            const Rational rhs = n_power * sums[k * m];
            if (lhs > rhs) {
                report.violations.push_back({NecessaryCondition::JLL, k, m, lhs, rhs});
            }
        }
    }
    report.bound_sufficient = n <= 4 || !report.passed();
    return report;
}

} // namespace spectratope
