#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ihom {

/// Integer extended by -inf and +inf. Arithmetic saturates.
class ExtInt {
public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    constexpr ExtInt() = default;
    constexpr ExtInt(std::int64_t v) : kind_(Kind::Finite), value_(v) {}

    static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }
    static constexpr ExtInt pos_inf() { return ExtInt(Kind::PosInf); }

    constexpr Kind kind() const { return kind_; }
    constexpr bool finite() const { return kind_ == Kind::Finite; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    /// Only meaningful when finite().
    constexpr std::int64_t value() const { return value_; }

    friend constexpr bool operator==(const ExtInt& a, const ExtInt& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    /// Saturating. (+inf) + (-inf) is taken to be +inf; callers never produce it.
    friend constexpr ExtInt operator+(const ExtInt& a, const ExtInt& b) {
        if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
        if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
        return ExtInt(a.value_ + b.value_);
    }
    friend constexpr ExtInt operator-(const ExtInt& a) {
        if (a.is_pos_inf()) return neg_inf();
        if (a.is_neg_inf()) return pos_inf();
        return ExtInt(-a.value_);
    }
    friend constexpr ExtInt operator-(const ExtInt& a, const ExtInt& b) { return a + (-b); }

    std::string to_string() const;
    /// Accepts integers, "inf", "+inf", "-inf".
    static std::optional<ExtInt> parse(const std::string& s);

private:
    constexpr explicit ExtInt(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    std::int64_t value_ = 0;
};

inline ExtInt ext_max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }
inline ExtInt ext_min(const ExtInt& a, const ExtInt& b) { return a < b ? a : b; }

}  // namespace ihom
