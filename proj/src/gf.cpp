#include "snow3g/gf.hpp"

namespace snow3g {

std::uint8_t mulxpow_recursive(std::uint8_t v, unsigned i, std::uint8_t c) {
    if (i == 0) return v;
    return mulx(mulxpow_recursive(v, i - 1, c), c);
}

Word mul_alpha_byte_recursive(std::uint8_t c) {
    return (static_cast<Word>(mulxpow_recursive(c, 23, kBetaReduction)) << 24) |
           (static_cast<Word>(mulxpow_recursive(c, 245, kBetaReduction)) << 16) |
           (static_cast<Word>(mulxpow_recursive(c, 48, kBetaReduction)) << 8) |
           static_cast<Word>(mulxpow_recursive(c, 239, kBetaReduction));
}

Word div_alpha_byte_recursive(std::uint8_t c) {
    return (static_cast<Word>(mulxpow_recursive(c, 16, kBetaReduction)) << 24) |
           (static_cast<Word>(mulxpow_recursive(c, 39, kBetaReduction)) << 16) |
           (static_cast<Word>(mulxpow_recursive(c, 6, kBetaReduction)) << 8) |
           static_cast<Word>(mulxpow_recursive(c, 64, kBetaReduction));
}

AlphaTables build_tables() {
    AlphaTables t;
    for (unsigned c = 0; c < 256; ++c) {
        t.mul[c] = mul_alpha_byte_recursive(static_cast<std::uint8_t>(c));
        t.div[c] = div_alpha_byte_recursive(static_cast<std::uint8_t>(c));
    }
    return t;
}

}  // namespace snow3g
