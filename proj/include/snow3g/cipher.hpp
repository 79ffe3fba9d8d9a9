#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "snow3g/engine.hpp"
#include "snow3g/lfsr.hpp"

namespace snow3g {

struct CipherOptions {
    std::size_t sliding_window_capacity = 1024;
    bool circular_general_modulo = false;
    // Test seam; null means the canonical boxes.
    const SboxTables* sboxes = nullptr;
};

// A fully initialized SNOW 3G core. Construction performs the complete key/IV
// setup, so an existing core is always ready to stream; successive
// generate_keystream calls continue the same keystream.
class CipherCore {
  public:
    CipherCore(const KeyMaterial& km, LayoutTag layout, MulBackend backend,
               const CipherOptions& options = {});

    void generate_keystream(std::span<Word> out);
    std::vector<Word> generate_keystream(std::size_t n);

    // XORs data with the keystream, words serialized big-endian. Trailing
    // unused bytes of the final word are discarded, so chunked use must keep
    // chunk sizes word-aligned to match a single-shot call.
    void xor_stream(std::span<const std::uint8_t> in, std::span<std::uint8_t> out);
    std::vector<std::uint8_t> xor_stream(std::span<const std::uint8_t> in);

    std::uint64_t words_emitted() const { return words_emitted_; }
    LayoutTag layout() const { return layout_; }
    const MulBackend& backend() const { return backend_; }

    // Logical state accessors (test and diagnostic surface).
    Word stage(unsigned i) const;
    const FsmRegisters& fsm() const { return fsm_; }

  private:
    using LfsrVariant = std::variant<TraditionalLfsr, HardcodeLfsr, CircularLfsr, CircularModLfsr,
                                     SlidingWindowLfsr, LoopUnrollingLfsr>;

    static LfsrVariant make_lfsr(LayoutTag layout, const CipherOptions& options);

    LayoutTag layout_;
    MulBackend backend_;
    const SboxTables* sboxes_;
    LfsrVariant lfsr_;
    FsmRegisters fsm_;
    std::uint64_t words_emitted_ = 0;
};

}  // namespace snow3g
