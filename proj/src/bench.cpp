#include "snow3g/bench.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>

#include "json.hpp"
#include "snow3g/engine.hpp"

namespace snow3g {

namespace {

using json = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string host_description() {
    std::string cpu = "unknown cpu";
    std::ifstream cpuinfo("/proc/cpuinfo");
    std::string line;
    while (std::getline(cpuinfo, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                cpu = line.substr(colon + 1);
                cpu.erase(0, cpu.find_first_not_of(' '));
            }
            break;
        }
    }
    utsname un{};
    if (uname(&un) == 0) return cpu + " / " + un.sysname + " " + un.machine;
    return cpu;
}

struct ConfigPlan {
    LayoutTag layout;
    BackendTag backend;
    bool modulo = false;
};

std::string plan_id(const ConfigPlan& plan) {
    std::string id = std::string(backend_name(plan.backend)) + "-" + layout_name(plan.layout);
    if (plan.modulo) id += "-mod";
    return id;
}

template <class F>
decltype(auto) with_layout(LayoutTag layout, bool modulo, std::size_t sliding_b, F&& f) {
    switch (layout) {
        case LayoutTag::Traditional: {
            TraditionalLfsr lfsr;
            return f(lfsr);
        }
        case LayoutTag::Hardcode: {
            HardcodeLfsr lfsr;
            return f(lfsr);
        }
        case LayoutTag::CircularBuffer: {
            if (modulo) {
                CircularModLfsr lfsr;
                return f(lfsr);
            }
            CircularLfsr lfsr;
            return f(lfsr);
        }
        case LayoutTag::SlidingWindow: {
            SlidingWindowLfsr lfsr(sliding_b);
            return f(lfsr);
        }
        default: {
            LoopUnrollingLfsr lfsr;
            return f(lfsr);
        }
    }
}

// One full measured run: initialization plus total_words of keystream,
// consumed into an order-sensitive checksum.
template <class Lfsr, class Ops, class Prof>
std::uint64_t engine_run(Lfsr& lfsr, const Ops& ops, const SboxTables& sb, const KeyMaterial& km,
                         std::uint64_t total_words, std::span<Word> chunk, Prof& prof,
                         std::vector<Word>* capture) {
    FnScope<Prof> scope(prof, Fn::Main);
    FsmRegisters fsm;
    initialize_engine(lfsr, fsm, km, ops, sb, prof);
    std::uint64_t checksum = 0;
    std::uint64_t remaining = total_words;
    while (remaining > 0) {
        const std::size_t n =
            static_cast<std::size_t>(std::min<std::uint64_t>(remaining, chunk.size()));
        generate_words(lfsr, fsm, ops, sb, chunk.first(n), prof);
        for (std::size_t i = 0; i < n; ++i)
            checksum = ((checksum << 1) | (checksum >> 63)) ^ chunk[i];
        if (capture != nullptr) capture->insert(capture->end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(n));
        remaining -= n;
    }
    return checksum;
}

template <class Prof>
std::uint64_t run_one(const ConfigPlan& plan, std::size_t sliding_b, const MulBackend& backend,
                      const SboxTables& sb, const KeyMaterial& km, std::uint64_t total_words,
                      std::span<Word> chunk, Prof& prof, std::vector<Word>* capture) {
    return with_layout(plan.layout, plan.modulo, sliding_b, [&](auto& lfsr) {
        return with_ops(backend, [&](const auto& ops) {
            return engine_run(lfsr, ops, sb, km, total_words, chunk, prof, capture);
        });
    });
}

std::string format_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", ms);
    return buf;
}

std::string format_pct(double pct) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", pct);
    return buf;
}

}  // namespace

void BenchConfig::validate() const {
    if (bytes_per_run < 4) throw std::invalid_argument("bytes_per_run must be >= 4");
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (layouts.empty()) throw std::invalid_argument("layouts must not be empty");
    if (backends.empty()) throw std::invalid_argument("backends must not be empty");
    if (sliding_window_B < 32) throw std::invalid_argument("sliding_window_B must be >= 32");
}

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    return std::nullopt;
}

double measure_timer_resolution_ns() {
    using Clock = std::chrono::steady_clock;
    std::uint64_t best = UINT64_MAX;
    for (int i = 0; i < 1000; ++i) {
        const auto t0 = Clock::now();
        auto t1 = Clock::now();
        while (t1 == t0) t1 = Clock::now();
        const auto d = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        best = std::min(best, d);
    }
    return static_cast<double>(best);
}

KeyMaterial key_material_from_seed(std::uint64_t seed) {
    std::uint64_t state = seed;
    KeyMaterial km;
    for (auto& w : km.key) w = static_cast<Word>(splitmix64(state));
    for (auto& w : km.iv) w = static_cast<Word>(splitmix64(state));
    return km;
}

BenchReport run_bench(const BenchConfig& cfg) {
    cfg.validate();

    BenchReport report;
    report.host = host_description();
    report.timer_resolution_ns = measure_timer_resolution_ns();
    report.seed = cfg.seed;
    report.notes =
        "total_ms is the mean uninstrumented wall clock per run; function rows carry mean "
        "exclusive (self) and inclusive times from a separate instrumented pass whose sum is "
        "instrumented_total_ms. With the table backend the byte-column multiplications are "
        "plain loads folded into ClockLFSRKeyStreamMode, so MULxPow/MULalpha/DIValpha rows "
        "appear only for the recursive backend. Generator and main are setup/residual buckets.";

    const KeyMaterial km = key_material_from_seed(cfg.seed);
    const std::uint64_t total_words = (cfg.bytes_per_run + 3) / 4;
    std::vector<Word> chunk(4096);
    const SboxTables& sb = default_sboxes();

    std::vector<ConfigPlan> plans;
    for (BackendTag backend : cfg.backends) {
        for (LayoutTag layout : cfg.layouts) plans.push_back({layout, backend, false});
        if (cfg.circular_modulo_variant) plans.push_back({LayoutTag::CircularBuffer, backend, true});
    }

    // Configurations execute strictly one after another.
    for (const ConfigPlan& plan : plans) {
        const MulBackend backend =
            plan.backend == BackendTag::Table ? MulBackend::table() : MulBackend::recursive();

        ConfigTiming ct;
        ct.config_id = plan_id(plan);
        ct.layout = plan.layout;
        ct.backend = plan.backend;
        ct.modulo_variant = plan.modulo;
        ct.runs = cfg.runs;
        ct.bytes_per_run = cfg.bytes_per_run;

        using Clock = std::chrono::steady_clock;
        std::uint64_t plain_checksum = 0;
        double wall_ms_sum = 0;
        for (unsigned run = 0; run < cfg.runs; ++run) {
            NullProfiler prof;
            const auto t0 = Clock::now();
            plain_checksum =
                run_one(plan, cfg.sliding_window_B, backend, sb, km, total_words, chunk, prof, nullptr);
            const auto t1 = Clock::now();
            wall_ms_sum += std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        ct.total_ms = wall_ms_sum / cfg.runs;

        std::array<double, kFnCount> self_ms{};
        std::array<double, kFnCount> incl_ms{};
        std::array<std::uint64_t, kFnCount> calls{};
        std::uint64_t instrumented_checksum = 0;
        for (unsigned run = 0; run < cfg.runs; ++run) {
            Profiler prof;
            instrumented_checksum =
                run_one(plan, cfg.sliding_window_B, backend, sb, km, total_words, chunk, prof, nullptr);
            const auto& stats = prof.stats();
            for (unsigned fn = 0; fn < kFnCount; ++fn) {
                self_ms[fn] += static_cast<double>(stats[fn].self_ns) / 1e6;
                incl_ms[fn] += static_cast<double>(stats[fn].inclusive_ns) / 1e6;
                calls[fn] = stats[fn].calls;
            }
        }
        if (instrumented_checksum != plain_checksum)
            ct.warnings.push_back("instrumented keystream differs from uninstrumented keystream");

        for (unsigned fn = 0; fn < kFnCount; ++fn) {
            if (calls[fn] == 0) continue;
            FunctionTiming row;
            row.function = fn_name(static_cast<Fn>(fn));
            row.total_ms = self_ms[fn] / cfg.runs;
            row.inclusive_ms = incl_ms[fn] / cfg.runs;
            row.calls = calls[fn];
            ct.functions.push_back(std::move(row));
        }
        for (const auto& row : ct.functions) ct.instrumented_total_ms += row.total_ms;
        for (auto& row : ct.functions)
            row.percent =
                ct.instrumented_total_ms > 0 ? 100.0 * row.total_ms / ct.instrumented_total_ms : 0;

        const double coarse_ms = 100.0 * report.timer_resolution_ns / 1e6;
        for (const auto& row : ct.functions)
            if (row.total_ms < coarse_ms)
                ct.warnings.push_back("timer resolution too coarse for " + row.function +
                                      ": accumulated " + format_ms(row.total_ms) +
                                      " ms is below 100x the " +
                                      format_ms(report.timer_resolution_ns / 1e6) +
                                      " ms timer granularity");

        report.configs.push_back(std::move(ct));
    }
    return report;
}

KeystreamProbe probe_keystream(LayoutTag layout, BackendTag backend_tag, bool modulo_variant,
                               std::size_t sliding_window_B, const KeyMaterial& km,
                               std::size_t nwords, bool instrumented) {
    const ConfigPlan plan{layout, backend_tag, modulo_variant};
    const MulBackend backend =
        backend_tag == BackendTag::Table ? MulBackend::table() : MulBackend::recursive();
    std::vector<Word> chunk(256);
    KeystreamProbe probe;
    probe.words.reserve(nwords);
    if (instrumented) {
        Profiler prof;
        probe.checksum = run_one(plan, sliding_window_B, backend, default_sboxes(), km, nwords,
                                 chunk, prof, &probe.words);
    } else {
        NullProfiler prof;
        probe.checksum = run_one(plan, sliding_window_B, backend, default_sboxes(), km, nwords,
                                 chunk, prof, &probe.words);
    }
    return probe;
}

// --- serialization ---------------------------------------------------------

namespace {

json to_json(const FunctionTiming& row) {
    return json{{"function", row.function},
                {"total_ms", row.total_ms},
                {"percent", row.percent},
                {"inclusive_ms", row.inclusive_ms},
                {"calls", row.calls}};
}

json to_json(const ConfigTiming& ct) {
    json rows = json::array();
    for (const auto& row : ct.functions) rows.push_back(to_json(row));
    return json{{"config_id", ct.config_id},
                {"layout", layout_name(ct.layout)},
                {"backend", backend_name(ct.backend)},
                {"modulo_variant", ct.modulo_variant},
                {"scope", ct.scope},
                {"runs", ct.runs},
                {"bytes_per_run", ct.bytes_per_run},
                {"total_ms", ct.total_ms},
                {"instrumented_total_ms", ct.instrumented_total_ms},
                {"functions", rows},
                {"warnings", ct.warnings}};
}

}  // namespace

std::string emit_report(const BenchReport& report, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "config_id,layout,backend,function,total_ms,percent\n";
        for (const auto& ct : report.configs)
            for (const auto& row : ct.functions)
                out << ct.config_id << ',' << layout_name(ct.layout) << ','
                    << backend_name(ct.backend) << ',' << row.function << ','
                    << format_ms(row.total_ms) << ',' << format_pct(row.percent) << "\n";
        return out.str();
    }

    if (format == ReportFormat::Json) {
        json j{{"host", report.host},
               {"timer_resolution_ns", report.timer_resolution_ns},
               {"seed", report.seed},
               {"notes", report.notes},
               {"configs", json::array()}};
        for (const auto& ct : report.configs) j["configs"].push_back(to_json(ct));
        return j.dump(2) + "\n";
    }

    // Markdown: one table per configuration.
    std::ostringstream out;
    out << "# keystream benchmark\n\n";
    out << "host: " << report.host << "  \n";
    out << "timer resolution: " << report.timer_resolution_ns << " ns, seed: " << report.seed
        << "\n\n";
    if (!report.notes.empty()) out << report.notes << "\n\n";
    for (const auto& ct : report.configs) {
        out << "## " << ct.config_id << "\n\n";
        out << "layout=" << layout_name(ct.layout) << " backend=" << backend_name(ct.backend)
            << " scope=" << ct.scope << " runs=" << ct.runs << " bytes=" << ct.bytes_per_run
            << " wall total=" << format_ms(ct.total_ms) << " ms\n\n";
        out << "| Function | Time(ms) | % |\n|---|---:|---:|\n";
        for (const auto& row : ct.functions)
            out << "| " << row.function << " | " << format_ms(row.total_ms) << " | "
                << format_pct(row.percent) << " |\n";
        out << "| Total Time | " << format_ms(ct.instrumented_total_ms) << " | |\n\n";
        for (const auto& w : ct.warnings) out << "- warning: " << w << "\n";
        if (!ct.warnings.empty()) out << "\n";
    }
    return out.str();
}

BenchReport parse_report_json(const std::string& text) {
    const json j = json::parse(text);
    BenchReport report;
    report.host = j.value("host", "");
    report.timer_resolution_ns = j.value("timer_resolution_ns", 0.0);
    report.seed = j.value("seed", std::uint64_t{0});
    report.notes = j.value("notes", "");
    for (const auto& jc : j.at("configs")) {
        ConfigTiming ct;
        ct.config_id = jc.at("config_id").get<std::string>();
        const auto layout = layout_from_name(jc.at("layout").get<std::string>());
        if (!layout) throw std::runtime_error("unknown layout in report: " + jc.at("layout").get<std::string>());
        ct.layout = *layout;
        const std::string backend = jc.at("backend").get<std::string>();
        if (backend == "recursive") ct.backend = BackendTag::Recursive;
        else if (backend == "table") ct.backend = BackendTag::Table;
        else throw std::runtime_error("unknown backend in report: " + backend);
        ct.modulo_variant = jc.value("modulo_variant", false);
        ct.scope = jc.value("scope", "full");
        ct.runs = jc.value("runs", 0u);
        ct.bytes_per_run = jc.value("bytes_per_run", std::uint64_t{0});
        ct.total_ms = jc.at("total_ms").get<double>();
        ct.instrumented_total_ms = jc.value("instrumented_total_ms", 0.0);
        if (jc.contains("functions")) {
            for (const auto& jr : jc.at("functions")) {
                FunctionTiming row;
                row.function = jr.at("function").get<std::string>();
                row.total_ms = jr.at("total_ms").get<double>();
                row.percent = jr.value("percent", 0.0);
                row.inclusive_ms = jr.value("inclusive_ms", 0.0);
                row.calls = jr.value("calls", std::uint64_t{0});
                ct.functions.push_back(std::move(row));
            }
        }
        if (jc.contains("warnings"))
            ct.warnings = jc.at("warnings").get<std::vector<std::string>>();
        report.configs.push_back(std::move(ct));
    }
    return report;
}

// --- ordering claims -------------------------------------------------------

namespace {

const ConfigTiming* find_config(const BenchReport& report, BackendTag backend, LayoutTag layout,
                                bool modulo, std::string_view scope) {
    for (const auto& ct : report.configs)
        if (ct.backend == backend && ct.layout == layout && ct.modulo_variant == modulo &&
            ct.scope == scope)
            return &ct;
    return nullptr;
}

const ConfigTiming& require_config(const BenchReport& report, BackendTag backend, LayoutTag layout,
                                   bool modulo, std::string_view scope) {
    const ConfigTiming* ct = find_config(report, backend, layout, modulo, scope);
    if (ct == nullptr)
        throw MissingConfiguration(std::string("missing configuration: backend=") +
                                   backend_name(backend) + " layout=" + layout_name(layout) +
                                   (modulo ? " (general modulo)" : "") + " scope=" +
                                   std::string(scope));
    return *ct;
}

std::string ratio_str(double slow, double fast) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fx", fast > 0 ? slow / fast : 0.0);
    return buf;
}

std::string improvement_str(double base, double improved) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f%%", base > 0 ? 100.0 * (base - improved) / base : 0.0);
    return buf;
}

}  // namespace

std::vector<OrderingVerdict> compare_orderings(const BenchReport& report) {
    bool has_lfsr_scope = false;
    for (const auto& ct : report.configs)
        if (ct.scope == "lfsr") has_lfsr_scope = true;
    const std::string_view layout_scope = has_lfsr_scope ? "lfsr" : "full";

    const auto& rec_hc = require_config(report, BackendTag::Recursive, LayoutTag::Hardcode, false, "full");
    const auto& tab_hc_full = require_config(report, BackendTag::Table, LayoutTag::Hardcode, false, "full");
    const auto& tab_sw_full = require_config(report, BackendTag::Table, LayoutTag::SlidingWindow, false, "full");
    const auto& trad = require_config(report, BackendTag::Table, LayoutTag::Traditional, false, layout_scope);
    const auto& hc = require_config(report, BackendTag::Table, LayoutTag::Hardcode, false, layout_scope);
    const auto& circ_mod = require_config(report, BackendTag::Table, LayoutTag::CircularBuffer, true, layout_scope);
    const auto& sw = require_config(report, BackendTag::Table, LayoutTag::SlidingWindow, false, layout_scope);
    const auto& unr = require_config(report, BackendTag::Table, LayoutTag::LoopUnrolling, false, layout_scope);

    std::vector<OrderingVerdict> verdicts;

    verdicts.push_back({"(a) table backend beats recursive backend (hardcode layout)",
                        format_ms(tab_hc_full.total_ms) + " ms vs " + format_ms(rec_hc.total_ms) +
                            " ms (" + ratio_str(rec_hc.total_ms, tab_hc_full.total_ms) + ")",
                        tab_hc_full.total_ms < rec_hc.total_ms});

    verdicts.push_back(
        {"(b) sliding window beats traditional, hardcode and loop unrolling (table backend)",
         "sliding " + format_ms(sw.total_ms) + " ms vs traditional " + format_ms(trad.total_ms) +
             " / hardcode " + format_ms(hc.total_ms) + " / unrolled " + format_ms(unr.total_ms) +
             " ms",
         sw.total_ms < trad.total_ms && sw.total_ms < hc.total_ms && sw.total_ms < unr.total_ms});

    verdicts.push_back({"(c) hardcode beats traditional (table backend)",
                        format_ms(hc.total_ms) + " ms vs " + format_ms(trad.total_ms) +
                            " ms (improvement " + improvement_str(trad.total_ms, hc.total_ms) + ")",
                        hc.total_ms < trad.total_ms});

    const double others_max = std::max({trad.total_ms, hc.total_ms, sw.total_ms, unr.total_ms});
    verdicts.push_back({"(d) general-modulo circular buffer is the slowest layout (table backend)",
                        format_ms(circ_mod.total_ms) + " ms vs next-slowest " +
                            format_ms(others_max) + " ms",
                        circ_mod.total_ms > others_max});

    verdicts.push_back(
        {"(e) sliding-window full total beats hardcode full total (table backend)",
         format_ms(tab_sw_full.total_ms) + " ms vs " + format_ms(tab_hc_full.total_ms) +
             " ms (improvement " + improvement_str(tab_hc_full.total_ms, tab_sw_full.total_ms) + ")",
         tab_sw_full.total_ms < tab_hc_full.total_ms});

    return verdicts;
}

}  // namespace snow3g
