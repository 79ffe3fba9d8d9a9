#pragma once

#include <array>
#include <cstdint>

#include "snow3g/gf.hpp"
#include "snow3g/instrument.hpp"

namespace snow3g {

// SR is the AES S-box; SQ is the SNOW 3G-specific box. Both are permutations
// of [0,255].
struct SboxTables {
    std::array<std::uint8_t, 256> sr;
    std::array<std::uint8_t, 256> sq;
};

const SboxTables& default_sboxes();

struct FsmRegisters {
    Word r1 = 0;
    Word r2 = 0;
    Word r3 = 0;

    friend bool operator==(const FsmRegisters&, const FsmRegisters&) = default;
};

namespace detail {

// Byte substitution through `box`, then the (2,1,1,3)-circulant mix over
// GF(2^8) with reduction constant xc (the AES MixColumn structure).
inline Word mix_box(Word w, const std::uint8_t* box, std::uint8_t xc) {
    const unsigned a0 = box[(w >> 24) & 0xFFu];
    const unsigned a1 = box[(w >> 16) & 0xFFu];
    const unsigned a2 = box[(w >> 8) & 0xFFu];
    const unsigned a3 = box[w & 0xFFu];
    const unsigned d0 = mulx(static_cast<std::uint8_t>(a0), xc);
    const unsigned d1 = mulx(static_cast<std::uint8_t>(a1), xc);
    const unsigned d2 = mulx(static_cast<std::uint8_t>(a2), xc);
    const unsigned d3 = mulx(static_cast<std::uint8_t>(a3), xc);
    const unsigned r0 = d0 ^ a1 ^ a2 ^ d3 ^ a3;
    const unsigned r1 = d0 ^ a0 ^ d1 ^ a2 ^ a3;
    const unsigned r2 = a0 ^ d1 ^ a1 ^ d2 ^ a3;
    const unsigned r3 = a0 ^ a1 ^ d2 ^ a2 ^ d3;
    return (static_cast<Word>(r0) << 24) | (static_cast<Word>(r1) << 16) |
           (static_cast<Word>(r2) << 8) | static_cast<Word>(r3);
}

}  // namespace detail

template <class Prof>
[[gnu::noinline]] Word s1_box(Word w, const SboxTables& sb, Prof& prof) {
    FnScope<Prof> scope(prof, Fn::S1);
    return detail::mix_box(w, sb.sr.data(), 0x1B);
}

template <class Prof>
[[gnu::noinline]] Word s2_box(Word w, const SboxTables& sb, Prof& prof) {
    FnScope<Prof> scope(prof, Fn::S2);
    return detail::mix_box(w, sb.sq.data(), 0x69);
}

Word s1_box(Word w);
Word s2_box(Word w);

// One FSM tick. F is computed from the pre-update register values:
//   F = (s15 + R1) ^ R2;  r = R2 + (R3 ^ s5);  R3 = S2(R2); R2 = S1(R1); R1 = r
// Addition wraps modulo 2^32.
template <class Prof>
[[gnu::noinline]] Word clock_fsm(FsmRegisters& regs, Word s15, Word s5, const SboxTables& sb,
                                 Prof& prof) {
    FnScope<Prof> scope(prof, Fn::ClockFsm);
    const Word f = (s15 + regs.r1) ^ regs.r2;
    const Word r = regs.r2 + (regs.r3 ^ s5);
    regs.r3 = s2_box(regs.r2, sb, prof);
    regs.r2 = s1_box(regs.r1, sb, prof);
    regs.r1 = r;
    return f;
}

Word clock_fsm(FsmRegisters& regs, Word s15, Word s5);

}  // namespace snow3g
