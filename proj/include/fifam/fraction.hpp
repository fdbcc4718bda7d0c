#ifndef FIFAM_FRACTION_HPP
#define FIFAM_FRACTION_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace fifam {

/// Exact reduced rational in (0, 1). All intersection predicates compare
/// through cross-multiplication, so no floating point enters any decision.
class Fraction {
public:
    Fraction(std::int64_t numerator, std::int64_t denominator) {
        if (numerator <= 0 || denominator <= 0)
            throw std::invalid_argument("fraction: numerator and denominator must be positive");
        const std::int64_t g = std::gcd(numerator, denominator);
        num_ = numerator / g;
        den_ = denominator / g;
        if (num_ >= den_)
            throw std::invalid_argument("fraction: must be proper (a < b after reduction)");
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    /// True iff count == theta * size, evaluated exactly.
    bool matches(std::int64_t count, std::int64_t size) const {
        return den_ * count == num_ * size;
    }

    /// theta * m when it is an integer, otherwise nullopt.
    std::optional<std::int64_t> scale_integral(std::int64_t m) const {
        if ((num_ * m) % den_ != 0) return std::nullopt;
        return num_ * m / den_;
    }

    bool divides_denominator(std::int64_t size) const { return size % den_ == 0; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool operator==(const Fraction& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }
    bool operator!=(const Fraction& other) const { return !(*this == other); }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    /// Parses "a/b" literals; decimals are rejected so nothing gets rounded.
    static Fraction parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

inline Fraction make_fraction(std::int64_t a, std::int64_t b) { return Fraction(a, b); }

inline Fraction Fraction::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("theta must be given as a/b, got '" + text + "'");
    std::size_t pa = 0, pb = 0;
    std::int64_t a = 0, b = 0;
    try {
        a = std::stoll(text.substr(0, slash), &pa);
        b = std::stoll(text.substr(slash + 1), &pb);
    } catch (const std::exception&) {
        throw std::invalid_argument("theta must be given as a/b, got '" + text + "'");
    }
    if (pa != slash || pb != text.size() - slash - 1)
        throw std::invalid_argument("theta must be given as a/b, got '" + text + "'");
    return Fraction(a, b);
}

} // namespace fifam

#endif
