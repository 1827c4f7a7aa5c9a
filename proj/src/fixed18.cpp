#include <zkai/fixed18.hpp>

#include <algorithm>

namespace zkai {

namespace {
std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(char('0' + (int)(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}
}  // namespace

Fixed18 Fixed18::parse(std::string_view text) {
    if (text.empty()) throw MalformedEncoding("empty fixed-point literal");
    bool negative = false;
    size_t i = 0;
    if (text[0] == '-') {
        negative = true;
        i = 1;
    }
    if (i >= text.size()) throw MalformedEncoding("bare sign in fixed-point literal");

    unsigned __int128 whole = 0;
    bool any_digit = false;
    for (; i < text.size() && text[i] != '.'; i++) {
        if (text[i] < '0' || text[i] > '9')
            throw MalformedEncoding("invalid digit in fixed-point literal");
        whole = whole * 10 + (unsigned)(text[i] - '0');
        any_digit = true;
    }

    unsigned __int128 frac = 0;
    int frac_digits = 0;
    if (i < text.size()) {  // at '.'
        i++;
        for (; i < text.size(); i++) {
            if (text[i] < '0' || text[i] > '9')
                throw MalformedEncoding("invalid digit in fixed-point literal");
            if (frac_digits < 18) {
                frac = frac * 10 + (unsigned)(text[i] - '0');
                frac_digits++;
            } else if (text[i] != '0') {
                throw MalformedEncoding("fixed-point literal exceeds 18 decimals");
            }
            any_digit = true;
        }
    }
    if (!any_digit) throw MalformedEncoding("no digits in fixed-point literal");
    for (; frac_digits < 18; frac_digits++) frac *= 10;

    __int128 units = (__int128)(whole * (unsigned __int128)SCALE + frac);
    return from_units(negative ? -units : units);
}

std::string Fixed18::to_string() const {
    unsigned __int128 mag =
        units_ < 0 ? (unsigned __int128)(-units_) : (unsigned __int128)units_;
    unsigned __int128 whole = mag / (unsigned __int128)SCALE;
    unsigned __int128 frac = mag % (unsigned __int128)SCALE;

    std::string out = units_ < 0 ? "-" : "";
    out += u128_to_string(whole);
    if (frac != 0) {
        std::string f = u128_to_string(frac);
        f.insert(f.begin(), 18 - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

}  // namespace zkai
