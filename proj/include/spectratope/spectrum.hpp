#pragma once

#include <spectratope/rational.hpp>

#include <algorithm>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace spectratope {

/// A real multiset λ_1 ≥ λ_2 ≥ ... ≥ λ_n, stored sorted descending.
class Spectrum {
public:
    explicit Spectrum(std::vector<Rational> values) : values_(std::move(values))
    {
        if (values_.empty()) {
            throw Error(ErrorCode::EmptySpectrum, "a spectrum needs at least one value");
        }
        std::ranges::sort(values_, std::greater<>());
    }

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<Rational>& values() const noexcept { return values_; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }

    /// λ_1 = 1 and every |λ_i| ≤ 1.
    bool normalized() const
    {
        return values_.front() == 1 && values_.back() >= -1;
    }

    Rational spectral_radius() const
    {
        return std::max(abs(values_.front()), abs(values_.back()));
    }

    /// s_k = Σ λ_i^k.
    Rational power_sum(unsigned k) const
    {
        Rational sum = 0;
        for (const auto& x : values_) {
            Rational p = 1;
            for (unsigned i = 0; i < k; ++i) {
                p *= x;
            }
            sum += p;
        }
        return sum;
    }

    std::size_t positive_count() const
    {
        return static_cast<std::size_t>(std::ranges::count_if(values_, [](const Rational& x) { return x > 0; }));
    }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<Rational> values_;
};

/// Comma-separated rational literals, e.g. "1,-1/4,-1/4,-1/2".
inline std::vector<Rational> parse_rational_list(std::string_view text)
{
    std::vector<Rational> out;
    std::size_t pos = 0;
    if (detail::trim(text).empty()) {
        return out;
    }
    while (true) {
        const auto comma = text.find(',', pos);
        out.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                       : comma - pos)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

inline Spectrum parse_spectrum(std::string_view text) { return Spectrum(parse_rational_list(text)); }

inline std::string format_rational_list(const std::vector<Rational>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += to_string(values[i]);
    }
    return out;
}

} // namespace spectratope
