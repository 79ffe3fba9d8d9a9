#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "snow3g/gf.hpp"

namespace snow3g {

// Hex input is case-insensitive; hex output is uppercase.

constexpr int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline Word parse_hex_word(std::string_view s) {
    if (s.size() != 8) throw std::invalid_argument("expected 8 hex chars, got '" + std::string(s) + "'");
    Word w = 0;
    for (char c : s) {
        const int d = hex_digit(c);
        if (d < 0) throw std::invalid_argument(std::string("invalid hex char '") + c + "'");
        w = (w << 4) | static_cast<Word>(d);
    }
    return w;
}

inline std::array<Word, 4> parse_hex_words4(std::string_view s) {
    if (s.size() != 32) throw std::invalid_argument("expected 32 hex chars, got " + std::to_string(s.size()));
    std::array<Word, 4> out;
    for (unsigned i = 0; i < 4; ++i) out[i] = parse_hex_word(s.substr(8 * i, 8));
    return out;
}

inline std::string word_to_hex(Word w) {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string s(8, '0');
    for (int i = 7; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = kDigits[w & 0xFu];
        w >>= 4;
    }
    return s;
}

}  // namespace snow3g
