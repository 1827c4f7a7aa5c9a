#pragma once

#include <zkai/errors.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace zkai {

// 18-decimal fixed-point amount backed by a signed 128-bit integer.
// Used for ETH (wei) and LINK (juels) accounting; all balance math is
// exact integer arithmetic.
class Fixed18 {
public:
    static constexpr __int128 SCALE = (__int128)1000000000000000000LL;  // 10^18

    constexpr Fixed18() : units_(0) {}

    static constexpr Fixed18 from_units(__int128 units) {
        Fixed18 v;
        v.units_ = units;
        return v;
    }
    static constexpr Fixed18 from_whole(int64_t whole) {
        return from_units((__int128)whole * SCALE);
    }
    // Parses "12", "0.25", "0.000572". Throws MalformedEncoding on bad input.
    static Fixed18 parse(std::string_view text);

    __int128 units() const { return units_; }

    Fixed18 operator+(const Fixed18& o) const { return from_units(units_ + o.units_); }
    Fixed18 operator-(const Fixed18& o) const { return from_units(units_ - o.units_); }
    Fixed18& operator+=(const Fixed18& o) { units_ += o.units_; return *this; }
    Fixed18& operator-=(const Fixed18& o) { units_ -= o.units_; return *this; }
    Fixed18 operator*(uint64_t k) const { return from_units(units_ * (__int128)k); }

    bool operator==(const Fixed18& o) const { return units_ == o.units_; }
    bool operator!=(const Fixed18& o) const { return units_ != o.units_; }
    bool operator<(const Fixed18& o) const { return units_ < o.units_; }
    bool operator<=(const Fixed18& o) const { return units_ <= o.units_; }
    bool operator>(const Fixed18& o) const { return units_ > o.units_; }
    bool operator>=(const Fixed18& o) const { return units_ >= o.units_; }

    bool is_negative() const { return units_ < 0; }
    bool is_zero() const { return units_ == 0; }

    // Canonical decimal string: integer part, then fractional digits with
    // trailing zeros trimmed ("0.25", "2", "0.000572").
    std::string to_string() const;

private:
    __int128 units_;
};

}  // namespace zkai
