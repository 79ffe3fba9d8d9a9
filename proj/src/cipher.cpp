#include "snow3g/cipher.hpp"

#include <array>

#include "snow3g/hex.hpp"

namespace snow3g {

KeyMaterial KeyMaterial::from_hex(std::string_view key_hex, std::string_view iv_hex) {
    return KeyMaterial{parse_hex_words4(key_hex), parse_hex_words4(iv_hex)};
}

std::array<Word, 16> initial_stages(const KeyMaterial& km) {
    constexpr Word kOnes = 0xFFFFFFFFu;
    const Word k0 = km.key[0], k1 = km.key[1], k2 = km.key[2], k3 = km.key[3];
    const Word iv0 = km.iv[0], iv1 = km.iv[1], iv2 = km.iv[2], iv3 = km.iv[3];
    return {
        k0 ^ kOnes, k1 ^ kOnes,        k2 ^ kOnes,        k3 ^ kOnes,
        k0,         k1,                k2,                k3,
        k0 ^ kOnes, k1 ^ kOnes ^ iv3,  k2 ^ kOnes ^ iv2,  k3 ^ kOnes,
        k0 ^ iv1,   k1,                k2,                k3 ^ iv0,
    };
}

CipherCore::LfsrVariant CipherCore::make_lfsr(LayoutTag layout, const CipherOptions& options) {
    switch (layout) {
        case LayoutTag::Traditional: return TraditionalLfsr{};
        case LayoutTag::Hardcode: return HardcodeLfsr{};
        case LayoutTag::CircularBuffer:
            if (options.circular_general_modulo) return CircularModLfsr{};
            return CircularLfsr{};
        case LayoutTag::SlidingWindow: return SlidingWindowLfsr(options.sliding_window_capacity);
        case LayoutTag::LoopUnrolling: return LoopUnrollingLfsr{};
    }
    throw std::invalid_argument("unknown layout");
}

CipherCore::CipherCore(const KeyMaterial& km, LayoutTag layout, MulBackend backend,
                       const CipherOptions& options)
    : layout_(layout),
      backend_(std::move(backend)),
      sboxes_(options.sboxes ? options.sboxes : &default_sboxes()),
      lfsr_(make_lfsr(layout, options)) {
    NullProfiler prof;
    std::visit(
        [&](auto& lfsr) {
            with_ops(backend_, [&](const auto& ops) {
                initialize_engine(lfsr, fsm_, km, ops, *sboxes_, prof);
            });
        },
        lfsr_);
}

void CipherCore::generate_keystream(std::span<Word> out) {
    NullProfiler prof;
    std::visit(
        [&](auto& lfsr) {
            with_ops(backend_, [&](const auto& ops) {
                generate_words(lfsr, fsm_, ops, *sboxes_, out, prof);
            });
        },
        lfsr_);
    words_emitted_ += out.size();
}

std::vector<Word> CipherCore::generate_keystream(std::size_t n) {
    std::vector<Word> out(n);
    generate_keystream(std::span<Word>(out));
    return out;
}

void CipherCore::xor_stream(std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
    constexpr std::size_t kChunkWords = 1024;
    std::array<Word, kChunkWords> ks;
    std::size_t off = 0;
    while (off < in.size()) {
        const std::size_t bytes = std::min(in.size() - off, kChunkWords * 4);
        const std::size_t nwords = (bytes + 3) / 4;
        generate_keystream(std::span<Word>(ks.data(), nwords));
        for (std::size_t i = 0; i < bytes; ++i) {
            const std::uint8_t k =
                static_cast<std::uint8_t>(ks[i / 4] >> (24 - 8 * (i % 4)));
            out[off + i] = static_cast<std::uint8_t>(in[off + i] ^ k);
        }
        off += bytes;
    }
}

std::vector<std::uint8_t> CipherCore::xor_stream(std::span<const std::uint8_t> in) {
    std::vector<std::uint8_t> out(in.size());
    xor_stream(in, std::span<std::uint8_t>(out));
    return out;
}

Word CipherCore::stage(unsigned i) const {
    return std::visit([i](const auto& lfsr) { return lfsr.stage(i); }, lfsr_);
}

std::optional<LayoutTag> layout_from_name(std::string_view name) {
    if (name == "traditional") return LayoutTag::Traditional;
    if (name == "hardcode") return LayoutTag::Hardcode;
    if (name == "circular") return LayoutTag::CircularBuffer;
    if (name == "sliding") return LayoutTag::SlidingWindow;
    if (name == "unrolled") return LayoutTag::LoopUnrolling;
    return std::nullopt;
}

}  // namespace snow3g
