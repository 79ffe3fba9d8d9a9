#pragma once

namespace snow3g {

// Instrumentation points, named after the generator's functions.
enum class Fn : unsigned {
    MulXPow,
    MulAlpha,
    DivAlpha,
    ClockLfsr,
    ClockFsm,
    S1,
    S2,
    GenerateKeystream,
    Generator,
    Main,
    kCount,
};

inline constexpr unsigned kFnCount = static_cast<unsigned>(Fn::kCount);

constexpr const char* fn_name(Fn f) {
    switch (f) {
        case Fn::MulXPow: return "MULxPow";
        case Fn::MulAlpha: return "MULalpha";
        case Fn::DivAlpha: return "DIValpha";
        case Fn::ClockLfsr: return "ClockLFSRKeyStreamMode";
        case Fn::ClockFsm: return "ClockFSM";
        case Fn::S1: return "S1";
        case Fn::S2: return "S2";
        case Fn::GenerateKeystream: return "GenerateKeystream";
        case Fn::Generator: return "Generator";
        case Fn::Main: return "main";
        default: return "?";
    }
}

// No-op hook set; the default for every non-benchmark code path. All calls
// compile away entirely.
struct NullProfiler {
    static constexpr bool kEnabled = false;
    void enter(Fn) {}
    void leave(Fn) {}
};

template <class Prof>
class FnScope {
  public:
    FnScope(Prof& prof, Fn fn) : prof_(prof), fn_(fn) { prof_.enter(fn_); }
    ~FnScope() { prof_.leave(fn_); }
    FnScope(const FnScope&) = delete;
    FnScope& operator=(const FnScope&) = delete;

  private:
    Prof& prof_;
    Fn fn_;
};

}  // namespace snow3g
