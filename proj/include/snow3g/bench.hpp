#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snow3g/cipher.hpp"

namespace snow3g {

enum class ReportFormat { Csv, Json, Markdown };

constexpr const char* report_format_name(ReportFormat f) {
    switch (f) {
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Json: return "json";
        case ReportFormat::Markdown: return "markdown";
    }
    return "?";
}

std::optional<ReportFormat> report_format_from_name(std::string_view name);

struct BenchConfig {
    std::uint64_t bytes_per_run = 10'000'000;
    unsigned runs = 10;
    std::vector<LayoutTag> layouts = {LayoutTag::Traditional, LayoutTag::Hardcode,
                                      LayoutTag::CircularBuffer, LayoutTag::SlidingWindow,
                                      LayoutTag::LoopUnrolling};
    std::vector<BackendTag> backends = {BackendTag::Recursive, BackendTag::Table};
    // Adds a circular-buffer configuration whose index arithmetic is a real
    // modulo, alongside the masked one.
    bool circular_modulo_variant = true;
    std::size_t sliding_window_B = 1024;
    std::uint64_t seed = 0x5EEDBA5E0F5EEDULL;
    ReportFormat output_format = ReportFormat::Csv;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct FunctionTiming {
    std::string function;
    double total_ms = 0;       // mean exclusive (self) time per run
    double percent = 0;        // share of the configuration's instrumented total
    double inclusive_ms = 0;   // mean inclusive time per run
    std::uint64_t calls = 0;   // calls per run

    friend bool operator==(const FunctionTiming&, const FunctionTiming&) = default;
};

struct ConfigTiming {
    std::string config_id;
    LayoutTag layout = LayoutTag::Traditional;
    BackendTag backend = BackendTag::Table;
    bool modulo_variant = false;
    // "full" for whole-generator measurements; "lfsr" for fixture columns
    // that only cover the shift-register-centric functions.
    std::string scope = "full";
    unsigned runs = 0;
    std::uint64_t bytes_per_run = 0;
    double total_ms = 0;              // mean uninstrumented wall clock per run
    double instrumented_total_ms = 0; // sum of the function self times
    std::vector<FunctionTiming> functions;
    std::vector<std::string> warnings;

    friend bool operator==(const ConfigTiming&, const ConfigTiming&) = default;
};

struct BenchReport {
    std::string host;
    double timer_resolution_ns = 0;
    std::uint64_t seed = 0;
    std::string notes;
    std::vector<ConfigTiming> configs;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

// Wall-clock profiler with an explicit frame stack: exclusive (self) time per
// instrumentation point plus inclusive time and call counts.
class Profiler {
  public:
    static constexpr bool kEnabled = true;

    struct Stat {
        std::uint64_t self_ns = 0;
        std::uint64_t inclusive_ns = 0;
        std::uint64_t calls = 0;
    };

    Profiler() { stack_.reserve(16); }

    void enter(Fn fn) {
        const auto t = Clock::now();
        if (!stack_.empty()) bucket(stack_.back().fn).self_ns += delta_ns(mark_, t);
        stack_.push_back(Frame{fn, t});
        ++bucket(fn).calls;
        mark_ = t;
    }

    void leave(Fn) {
        const auto t = Clock::now();
        const Frame frame = stack_.back();
        stack_.pop_back();
        bucket(frame.fn).self_ns += delta_ns(mark_, t);
        bucket(frame.fn).inclusive_ns += delta_ns(frame.entry, t);
        mark_ = t;
    }

    const std::array<Stat, kFnCount>& stats() const { return stats_; }

    void reset() {
        stats_ = {};
        stack_.clear();
    }

  private:
    using Clock = std::chrono::steady_clock;

    struct Frame {
        Fn fn;
        Clock::time_point entry;
    };

    static std::uint64_t delta_ns(Clock::time_point a, Clock::time_point b) {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
    }

    Stat& bucket(Fn fn) { return stats_[static_cast<unsigned>(fn)]; }

    std::array<Stat, kFnCount> stats_{};
    std::vector<Frame> stack_;
    Clock::time_point mark_{};
};

// Smallest observable steady-clock increment, in nanoseconds.
double measure_timer_resolution_ns();

// Deterministic key/IV expansion of the benchmark seed.
KeyMaterial key_material_from_seed(std::uint64_t seed);

// Runs every requested configuration sequentially: an uninstrumented pass for
// the configuration total and an instrumented pass for the per-function rows.
BenchReport run_bench(const BenchConfig& cfg);

std::string emit_report(const BenchReport& report, ReportFormat format);
BenchReport parse_report_json(const std::string& text);

// Exact keystream produced through the benchmark code path, for the
// instrumentation-neutrality check.
struct KeystreamProbe {
    std::vector<Word> words;
    std::uint64_t checksum = 0;
};
KeystreamProbe probe_keystream(LayoutTag layout, BackendTag backend, bool modulo_variant,
                               std::size_t sliding_window_B, const KeyMaterial& km,
                               std::size_t nwords, bool instrumented);

class MissingConfiguration : public std::runtime_error {
  public:
    explicit MissingConfiguration(const std::string& what) : std::runtime_error(what) {}
};

struct OrderingVerdict {
    std::string claim;
    std::string observed;
    bool pass = false;
};

// Evaluates the reference relative-performance claims against a report:
//  (a) table backend beats recursive (hardcode layout)
//  (b) sliding window beats traditional, hardcode and loop unrolling
//  (c) hardcode beats traditional
//  (d) the general-modulo circular buffer is the slowest layout
//  (e) sliding-window full total beats hardcode full total (table backend)
// Throws MissingConfiguration when the report lacks a referenced entry.
std::vector<OrderingVerdict> compare_orderings(const BenchReport& report);

}  // namespace snow3g
