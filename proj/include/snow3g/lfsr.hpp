#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "snow3g/gf.hpp"
#include "snow3g/instrument.hpp"

namespace snow3g {

enum class LayoutTag { Traditional, Hardcode, CircularBuffer, SlidingWindow, LoopUnrolling };

constexpr const char* layout_name(LayoutTag t) {
    switch (t) {
        case LayoutTag::Traditional: return "traditional";
        case LayoutTag::Hardcode: return "hardcode";
        case LayoutTag::CircularBuffer: return "circular";
        case LayoutTag::SlidingWindow: return "sliding";
        case LayoutTag::LoopUnrolling: return "unrolled";
    }
    return "?";
}

std::optional<LayoutTag> layout_from_name(std::string_view name);

// Feedback tap of the degree-16 recurrence over GF(2^32):
// alpha*s0 ^ s2 ^ alpha^-1*s11.
template <class Ops, class Prof>
inline Word lfsr_feedback(Word s0, Word s2, Word s11, const Ops& ops, Prof& prof) {
    return ops.mul_alpha_word(s0, prof) ^ s2 ^ ops.div_alpha_word(s11, prof);
}

inline Word lfsr_feedback(Word s0, Word s2, Word s11, const MulBackend& backend) {
    return backend.mul_alpha_word(s0) ^ s2 ^ backend.div_alpha_word(s11);
}

// ---------------------------------------------------------------------------
// Shift layouts. All five expose load / stage / clock_keystream / clock_init
// and are observationally identical through stage(); they differ only in how
// the per-tick shift is realized.
// ---------------------------------------------------------------------------

// Plain 16-word array, 15-iteration move loop per tick.
struct TraditionalLfsr {
    static constexpr LayoutTag kTag = LayoutTag::Traditional;

    std::array<Word, 16> s{};

    void load(const std::array<Word, 16>& stages) { s = stages; }
    Word stage(unsigned i) const { return s[i]; }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_keystream(const Ops& ops, Prof& prof) {
        FnScope<Prof> scope(prof, Fn::ClockLfsr);
        const Word v = lfsr_feedback(s[0], s[2], s[11], ops, prof);
        for (unsigned i = 0; i < 15; ++i) s[i] = s[i + 1];
        s[15] = v;
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_init(const Ops& ops, Word f, Prof& prof) {
        const Word v = lfsr_feedback(s[0], s[2], s[11], ops, prof) ^ f;
        for (unsigned i = 0; i < 15; ++i) s[i] = s[i + 1];
        s[15] = v;
    }
};

// Sixteen named registers, fifteen explicit assignments per tick.
struct HardcodeLfsr {
    static constexpr LayoutTag kTag = LayoutTag::Hardcode;

    Word s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0, s6 = 0, s7 = 0;
    Word s8 = 0, s9 = 0, s10 = 0, s11 = 0, s12 = 0, s13 = 0, s14 = 0, s15 = 0;

    void load(const std::array<Word, 16>& st) {
        s0 = st[0]; s1 = st[1]; s2 = st[2]; s3 = st[3];
        s4 = st[4]; s5 = st[5]; s6 = st[6]; s7 = st[7];
        s8 = st[8]; s9 = st[9]; s10 = st[10]; s11 = st[11];
        s12 = st[12]; s13 = st[13]; s14 = st[14]; s15 = st[15];
    }

    Word stage(unsigned i) const {
        switch (i) {
            case 0: return s0;   case 1: return s1;   case 2: return s2;   case 3: return s3;
            case 4: return s4;   case 5: return s5;   case 6: return s6;   case 7: return s7;
            case 8: return s8;   case 9: return s9;   case 10: return s10; case 11: return s11;
            case 12: return s12; case 13: return s13; case 14: return s14; default: return s15;
        }
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_keystream(const Ops& ops, Prof& prof) {
        FnScope<Prof> scope(prof, Fn::ClockLfsr);
        const Word v = lfsr_feedback(s0, s2, s11, ops, prof);
        shift_in(v);
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_init(const Ops& ops, Word f, Prof& prof) {
        const Word v = lfsr_feedback(s0, s2, s11, ops, prof) ^ f;
        shift_in(v);
    }

  private:
    void shift_in(Word v) {
        s0 = s1;   s1 = s2;   s2 = s3;   s3 = s4;
        s4 = s5;   s5 = s6;   s6 = s7;   s7 = s8;
        s8 = s9;   s9 = s10;  s10 = s11; s11 = s12;
        s12 = s13; s13 = s14; s14 = s15; s15 = v;
    }
};

// Fixed ring of 16 slots; the shift is a head advance. Index mapping uses an
// AND mask. Logical stage i lives at slot (head + i) mod 16.
struct CircularLfsr {
    static constexpr LayoutTag kTag = LayoutTag::CircularBuffer;

    std::array<Word, 16> s{};
    unsigned head = 0;

    void load(const std::array<Word, 16>& stages) {
        s = stages;
        head = 0;
    }
    Word stage(unsigned i) const { return s[(head + i) & 15u]; }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_keystream(const Ops& ops, Prof& prof) {
        FnScope<Prof> scope(prof, Fn::ClockLfsr);
        const Word v = lfsr_feedback(stage(0), stage(2), stage(11), ops, prof);
        s[head] = v;
        head = (head + 1) & 15u;
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_init(const Ops& ops, Word f, Prof& prof) {
        const Word v = lfsr_feedback(stage(0), stage(2), stage(11), ops, prof) ^ f;
        s[head] = v;
        head = (head + 1) & 15u;
    }
};

// Same ring, but the index arithmetic is a general modulo. The ring size is
// kept in a runtime variable so the division is not strength-reduced away.
struct CircularModLfsr {
    static constexpr LayoutTag kTag = LayoutTag::CircularBuffer;

    std::array<Word, 16> s{};
    unsigned head = 0;
    unsigned size = 16;

    void load(const std::array<Word, 16>& stages) {
        s = stages;
        head = 0;
    }
    Word stage(unsigned i) const { return s[(head + i) % size]; }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_keystream(const Ops& ops, Prof& prof) {
        FnScope<Prof> scope(prof, Fn::ClockLfsr);
        const Word v = lfsr_feedback(stage(0), stage(2), stage(11), ops, prof);
        s[head] = v;
        head = (head + 1) % size;
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_init(const Ops& ops, Word f, Prof& prof) {
        const Word v = lfsr_feedback(stage(0), stage(2), stage(11), ops, prof) ^ f;
        s[head] = v;
        head = (head + 1) % size;
    }
};

// Oversized buffer with a moving 16-word window: the shift is one write plus
// a window-offset increment; when the window reaches the end of the buffer
// the 16 live words are relocated to the front.
struct SlidingWindowLfsr {
    static constexpr LayoutTag kTag = LayoutTag::SlidingWindow;

    std::vector<Word> buf;
    std::size_t p = 0;  // window start: stages live at buf[p..p+15]

    explicit SlidingWindowLfsr(std::size_t capacity = 1024) : buf(capacity, 0) {
        if (capacity < 32) throw std::invalid_argument("sliding window capacity must be >= 32");
    }

    void load(const std::array<Word, 16>& stages) {
        p = 0;
        std::copy(stages.begin(), stages.end(), buf.begin());
    }
    Word stage(unsigned i) const { return buf[p + i]; }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_keystream(const Ops& ops, Prof& prof) {
        FnScope<Prof> scope(prof, Fn::ClockLfsr);
        if (p + 16 >= buf.size()) relocate();
        const Word v = lfsr_feedback(buf[p], buf[p + 2], buf[p + 11], ops, prof);
        buf[p + 16] = v;
        ++p;
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_init(const Ops& ops, Word f, Prof& prof) {
        if (p + 16 >= buf.size()) relocate();
        const Word v = lfsr_feedback(buf[p], buf[p + 2], buf[p + 11], ops, prof) ^ f;
        buf[p + 16] = v;
        ++p;
    }

  private:
    void relocate() {
        std::copy(buf.begin() + static_cast<std::ptrdiff_t>(p),
                  buf.begin() + static_cast<std::ptrdiff_t>(p + 16), buf.begin());
        p = 0;
    }
};

// In-place rotation: each tick overwrites the slot that logically exits, with
// the stage->slot mapping rotated by a phase counter. The sixteen phases are
// unrolled so every slot index in the update is a compile-time constant.
// After any multiple of 16 ticks the physical array equals the logical one.
struct LoopUnrollingLfsr {
    static constexpr LayoutTag kTag = LayoutTag::LoopUnrolling;

    std::array<Word, 16> s{};
    unsigned phase = 0;

    void load(const std::array<Word, 16>& stages) {
        s = stages;
        phase = 0;
    }
    Word stage(unsigned i) const { return s[(phase + i) & 15u]; }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_keystream(const Ops& ops, Prof& prof) {
        FnScope<Prof> scope(prof, Fn::ClockLfsr);
        clock_any(ops, 0, prof);
    }

    template <class Ops, class Prof>
    [[gnu::noinline]] void clock_init(const Ops& ops, Word f, Prof& prof) {
        clock_any(ops, f, prof);
    }

  private:
    template <unsigned Phase, class Ops, class Prof>
    void step(const Ops& ops, Word f, Prof& prof) {
        constexpr unsigned i0 = Phase & 15u;
        constexpr unsigned i2 = (Phase + 2) & 15u;
        constexpr unsigned i11 = (Phase + 11) & 15u;
        s[i0] = lfsr_feedback(s[i0], s[i2], s[i11], ops, prof) ^ f;
    }

    template <class Ops, class Prof>
    void clock_any(const Ops& ops, Word f, Prof& prof) {
        switch (phase) {
            case 0: step<0>(ops, f, prof); break;
            case 1: step<1>(ops, f, prof); break;
            case 2: step<2>(ops, f, prof); break;
            case 3: step<3>(ops, f, prof); break;
            case 4: step<4>(ops, f, prof); break;
            case 5: step<5>(ops, f, prof); break;
            case 6: step<6>(ops, f, prof); break;
            case 7: step<7>(ops, f, prof); break;
            case 8: step<8>(ops, f, prof); break;
            case 9: step<9>(ops, f, prof); break;
            case 10: step<10>(ops, f, prof); break;
            case 11: step<11>(ops, f, prof); break;
            case 12: step<12>(ops, f, prof); break;
            case 13: step<13>(ops, f, prof); break;
            case 14: step<14>(ops, f, prof); break;
            default: step<15>(ops, f, prof); break;
        }
        phase = (phase + 1) & 15u;
    }
};

// Logical stage vector, layout-independent view.
template <class Lfsr>
std::array<Word, 16> stage_vector(const Lfsr& lfsr) {
    std::array<Word, 16> out;
    for (unsigned i = 0; i < 16; ++i) out[i] = lfsr.stage(i);
    return out;
}

}  // namespace snow3g
