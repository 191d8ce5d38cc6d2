#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mbf {

// Exact accumulation wider than 64 bits; d_8 ~ 5.6e22 needs ~76 bits.
using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

inline u128 parse_u128(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_u128: empty");
    u128 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("parse_u128: invalid digit");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

} // namespace mbf
