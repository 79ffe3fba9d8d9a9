#pragma once

#include <array>
#include <span>

#include "snow3g/fsm.hpp"
#include "snow3g/gf.hpp"
#include "snow3g/instrument.hpp"

namespace snow3g {

// 128-bit key and 128-bit IV as four words each. key[i] is k_i of the load
// schedule; the first 8 hex chars of the serialized form map to k0 / IV0
// (validated against the published test data).
struct KeyMaterial {
    std::array<Word, 4> key{};
    std::array<Word, 4> iv{};

    static KeyMaterial from_hex(std::string_view key_hex, std::string_view iv_hex);

    friend bool operator==(const KeyMaterial&, const KeyMaterial&) = default;
};

// Initial LFSR fill, with 1̄ = 0xFFFFFFFF:
//   s15=k3^IV0  s14=k2        s13=k1        s12=k0^IV1
//   s11=k3^1̄    s10=k2^1̄^IV2  s9=k1^1̄^IV3   s8=k0^1̄
//   s7=k3       s6=k2         s5=k1         s4=k0
//   s3=k3^1̄     s2=k2^1̄       s1=k1^1̄       s0=k0^1̄
std::array<Word, 16> initial_stages(const KeyMaterial& km);

// Key/IV setup: load the register, zero the FSM, run 32 output-free ticks
// with the FSM output folded into the feedback, then one transition tick
// (FSM clocked with its output discarded, LFSR clocked in keystream mode).
template <class Lfsr, class Ops, class Prof>
void initialize_engine(Lfsr& lfsr, FsmRegisters& fsm, const KeyMaterial& km, const Ops& ops,
                       const SboxTables& sb, Prof& prof) {
    FnScope<Prof> scope(prof, Fn::Generator);
    lfsr.load(initial_stages(km));
    fsm = FsmRegisters{};
    for (int i = 0; i < 32; ++i) {
        const Word f = clock_fsm(fsm, lfsr.stage(15), lfsr.stage(5), sb, prof);
        lfsr.clock_init(ops, f, prof);
    }
    clock_fsm(fsm, lfsr.stage(15), lfsr.stage(5), sb, prof);
    lfsr.clock_keystream(ops, prof);
}

// One keystream word per tick: F from the FSM, z = F ^ s0, then the shift.
template <class Lfsr, class Ops, class Prof>
void generate_words(Lfsr& lfsr, FsmRegisters& fsm, const Ops& ops, const SboxTables& sb,
                    std::span<Word> out, Prof& prof) {
    FnScope<Prof> scope(prof, Fn::GenerateKeystream);
    for (Word& z : out) {
        const Word f = clock_fsm(fsm, lfsr.stage(15), lfsr.stage(5), sb, prof);
        z = f ^ lfsr.stage(0);
        lfsr.clock_keystream(ops, prof);
    }
}

}  // namespace snow3g
