#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "snow3g/bench.hpp"
#include "snow3g/cipher.hpp"
#include "snow3g/hex.hpp"
#include "snow3g/kat.hpp"

namespace {

using namespace snow3g;

// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LayoutTag parse_layout(const std::string& name) {
    const auto layout = layout_from_name(name);
    if (!layout)
        throw UsageError("unknown layout '" + name +
                         "' (expected traditional|hardcode|circular|sliding|unrolled)");
    return *layout;
}

BackendTag parse_backend(const std::string& name) {
    if (name == "recursive") return BackendTag::Recursive;
    if (name == "table") return BackendTag::Table;
    throw UsageError("unknown backend '" + name + "' (expected recursive|table)");
}

KeyMaterial parse_key_iv(const std::string& key_hex, const std::string& iv_hex) {
    try {
        return KeyMaterial::from_hex(key_hex, iv_hex);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad key/iv: ") + e.what());
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(text, &pos, 0);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid value for " + field + ": '" + text + "'");
    }
}

// --- keystream --------------------------------------------------------------

struct KeystreamArgs {
    std::string key_hex, iv_hex;
    std::uint64_t nwords = 0;
    std::string layout = "sliding";
    std::string backend = "table";
    std::string format = "hex";
    std::string out_path;  // empty = stdout
};

int cmd_keystream(const KeystreamArgs& args) {
    const KeyMaterial km = parse_key_iv(args.key_hex, args.iv_hex);
    const LayoutTag layout = parse_layout(args.layout);
    const BackendTag backend = parse_backend(args.backend);
    if (args.format != "hex" && args.format != "raw")
        throw UsageError("unknown format '" + args.format + "' (expected hex|raw)");

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!args.out_path.empty()) {
        file.open(args.out_path, std::ios::binary);
        if (!file) throw IoError("cannot open output file '" + args.out_path + "'");
        out = &file;
    }

    CipherCore core(km, layout,
                    backend == BackendTag::Table ? MulBackend::table() : MulBackend::recursive());
    std::vector<Word> chunk(4096);
    std::uint64_t remaining = args.nwords;
    while (remaining > 0) {
        const std::size_t n =
            static_cast<std::size_t>(std::min<std::uint64_t>(remaining, chunk.size()));
        core.generate_keystream(std::span<Word>(chunk.data(), n));
        for (std::size_t i = 0; i < n; ++i) {
            if (args.format == "hex") {
                *out << word_to_hex(chunk[i]) << '\n';
            } else {
                const char bytes[4] = {static_cast<char>(chunk[i] >> 24),
                                       static_cast<char>(chunk[i] >> 16),
                                       static_cast<char>(chunk[i] >> 8),
                                       static_cast<char>(chunk[i])};
                out->write(bytes, 4);
            }
        }
        remaining -= n;
    }
    out->flush();
    if (!*out) throw IoError("write failure");
    return kExitOk;
}

// --- encrypt / decrypt ------------------------------------------------------

struct EncryptArgs {
    std::string key_hex, iv_hex;
    std::string in_path, out_path;
    std::string layout = "sliding";
    std::string backend = "table";
};

int cmd_encrypt(const EncryptArgs& args) {
    const KeyMaterial km = parse_key_iv(args.key_hex, args.iv_hex);
    const LayoutTag layout = parse_layout(args.layout);
    const BackendTag backend = parse_backend(args.backend);

    // Validate and open the input before the output file exists.
    std::ifstream in_file;
    std::istream* in = &std::cin;
    if (args.in_path != "-") {
        in_file.open(args.in_path, std::ios::binary);
        if (!in_file) throw IoError("cannot open input file '" + args.in_path + "'");
        in = &in_file;
    }
    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (args.out_path != "-") {
        out_file.open(args.out_path, std::ios::binary);
        if (!out_file) throw IoError("cannot open output file '" + args.out_path + "'");
        out = &out_file;
    }

    CipherCore core(km, layout,
                    backend == BackendTag::Table ? MulBackend::table() : MulBackend::recursive());

    // 64 KiB chunks; the size is word-aligned so chunking never splits a
    // keystream word and the result matches a single-shot pass.
    std::vector<std::uint8_t> buf(1u << 16);
    std::vector<std::uint8_t> enc(buf.size());
    while (*in) {
        in->read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        const std::size_t got = static_cast<std::size_t>(in->gcount());
        if (got == 0) break;
        core.xor_stream(std::span<const std::uint8_t>(buf.data(), got),
                        std::span<std::uint8_t>(enc.data(), got));
        out->write(reinterpret_cast<const char*>(enc.data()), static_cast<std::streamsize>(got));
        if (!*out) throw IoError("write failure on '" + args.out_path + "'");
    }
    if (in->bad()) throw IoError("read failure on '" + args.in_path + "'");
    out->flush();
    if (!*out) throw IoError("write failure on '" + args.out_path + "'");
    return kExitOk;
}

// --- selftest ---------------------------------------------------------------

int cmd_selftest(const std::string& kat_path) {
    SelftestOptions options;
    if (!kat_path.empty()) {
        try {
            options.extra_records = load_kat_file(kat_path);
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());
        }
    }
    const std::vector<CheckResult> results = selftest(options);
    bool all_pass = true;
    for (const auto& r : results) {
        if (r.pass) {
            std::cout << "ok   " << r.name << '\n';
        } else {
            std::cout << "FAIL " << r.name << ": " << r.detail << '\n';
            all_pass = false;
        }
    }
    std::cout << (all_pass ? "selftest: all checks passed\n" : "selftest: FAILURES above\n");
    return all_pass ? kExitOk : kExitCheckFailure;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
    std::string config_path;
    std::string replay_path;
    std::optional<std::uint64_t> bytes;
    std::optional<unsigned> runs;
    std::optional<std::string> layouts;
    std::optional<std::string> backends;
    std::optional<bool> circular_modulo;
    std::optional<std::uint64_t> sliding_b;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::string out_path;
};

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

void apply_config_field(BenchConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "bytes_per_run") {
        cfg.bytes_per_run = parse_u64(value, key);
    } else if (key == "runs") {
        cfg.runs = static_cast<unsigned>(parse_u64(value, key));
    } else if (key == "layouts") {
        cfg.layouts.clear();
        for (const auto& name : split_csv(value)) cfg.layouts.push_back(parse_layout(name));
    } else if (key == "backends") {
        cfg.backends.clear();
        for (const auto& name : split_csv(value)) cfg.backends.push_back(parse_backend(name));
    } else if (key == "circular_modulo_variant") {
        if (value == "true" || value == "1") cfg.circular_modulo_variant = true;
        else if (value == "false" || value == "0") cfg.circular_modulo_variant = false;
        else throw UsageError("invalid value for circular_modulo_variant: '" + value + "'");
    } else if (key == "sliding_window_B") {
        cfg.sliding_window_B = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "seed") {
        cfg.seed = parse_u64(value, key);
    } else if (key == "output_format") {
        const auto format = report_format_from_name(value);
        if (!format) throw UsageError("invalid value for output_format: '" + value + "'");
        cfg.output_format = *format;
    } else {
        throw UsageError("unknown bench config field '" + key + "'");
    }
}

void load_bench_config_file(BenchConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open bench config '" + path + "'");

    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("bench config '" + path + "': " + e.what());
        }
        for (const auto& [key, value] : j.items()) {
            if (value.is_string()) apply_config_field(cfg, key, value.get<std::string>());
            else if (value.is_boolean()) apply_config_field(cfg, key, value.get<bool>() ? "true" : "false");
            else if (value.is_number()) apply_config_field(cfg, key, std::to_string(value.get<std::uint64_t>()));
            else throw UsageError("bench config field '" + key + "' has unsupported type");
        }
        return;
    }

    // Flat key = value lines; '#' starts a comment.
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key.empty()) continue;
        if (eq == std::string::npos)
            throw UsageError("bench config '" + path + "' line " + std::to_string(lineno) +
                             ": expected key = value");
        std::string value = line.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);
        apply_config_field(cfg, key, value);
    }
}

void print_verdicts(std::ostream& out, const std::vector<OrderingVerdict>& verdicts) {
    out << "ordering claims:\n";
    for (const auto& v : verdicts)
        out << "  " << (v.pass ? "pass" : "FAIL") << "  " << v.claim << " — " << v.observed
            << "\n";
}

int cmd_bench(const BenchArgs& args) {
    if (!args.replay_path.empty()) {
        std::ifstream in(args.replay_path);
        if (!in) throw IoError("cannot open report '" + args.replay_path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        BenchReport report;
        try {
            report = parse_report_json(buffer.str());
        } catch (const std::exception& e) {
            throw UsageError("cannot parse report '" + args.replay_path + "': " + e.what());
        }
        print_verdicts(std::cout, compare_orderings(report));
        return kExitOk;
    }

    BenchConfig cfg;
    if (!args.config_path.empty()) load_bench_config_file(cfg, args.config_path);
    if (const char* env_seed = std::getenv("SNOW3G_LAB_SEED"))
        cfg.seed = parse_u64(env_seed, "SNOW3G_LAB_SEED");
    if (args.bytes) cfg.bytes_per_run = *args.bytes;
    if (args.runs) cfg.runs = *args.runs;
    if (args.layouts) apply_config_field(cfg, "layouts", *args.layouts);
    if (args.backends) apply_config_field(cfg, "backends", *args.backends);
    if (args.circular_modulo) cfg.circular_modulo_variant = *args.circular_modulo;
    if (args.sliding_b) cfg.sliding_window_B = static_cast<std::size_t>(*args.sliding_b);
    if (args.seed) cfg.seed = *args.seed;
    if (args.format) {
        const auto format = report_format_from_name(*args.format);
        if (!format) throw UsageError("unknown report format '" + *args.format + "'");
        cfg.output_format = *format;
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid bench config: ") + e.what());
    }

    const BenchReport report = run_bench(cfg);
    const std::string serialized = emit_report(report, cfg.output_format);

    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) throw IoError("cannot open report file '" + args.out_path + "'");
        out << serialized;
        if (!out) throw IoError("write failure on '" + args.out_path + "'");
        print_verdicts(std::cout, compare_orderings(report));
        std::cout << "report written to " << args.out_path << "\n";
    } else {
        std::cout << serialized;
        print_verdicts(std::cerr, compare_orderings(report));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SNOW 3G keystream workbench: generation, XOR encryption, self-test, benchmarks"};
    app.require_subcommand(1);

    KeystreamArgs ks;
    auto* keystream = app.add_subcommand("keystream", "generate keystream words");
    keystream->add_option("--key", ks.key_hex, "128-bit key, 32 hex chars")->required();
    keystream->add_option("--iv", ks.iv_hex, "128-bit IV, 32 hex chars")->required();
    keystream->add_option("-n,--nwords", ks.nwords, "number of 32-bit words")->required();
    keystream->add_option("--layout", ks.layout, "traditional|hardcode|circular|sliding|unrolled");
    keystream->add_option("--backend", ks.backend, "recursive|table");
    keystream->add_option("--format", ks.format, "hex|raw");
    keystream->add_option("-o,--out", ks.out_path, "output file (default stdout)");

    EncryptArgs enc;
    auto* encrypt = app.add_subcommand("encrypt", "XOR a file with the keystream");
    auto* decrypt = app.add_subcommand("decrypt", "inverse of encrypt (same operation)");
    for (auto* sub : {encrypt, decrypt}) {
        sub->add_option("--key", enc.key_hex, "128-bit key, 32 hex chars")->required();
        sub->add_option("--iv", enc.iv_hex, "128-bit IV, 32 hex chars")->required();
        sub->add_option("--in", enc.in_path, "input file, or - for stdin")->required();
        sub->add_option("--out", enc.out_path, "output file, or - for stdout")->required();
        sub->add_option("--layout", enc.layout, "traditional|hardcode|circular|sliding|unrolled");
        sub->add_option("--backend", enc.backend, "recursive|table");
    }

    std::string kat_path;
    auto* selftest_cmd = app.add_subcommand("selftest", "known-answer and equivalence checks");
    selftest_cmd->add_option("--kat", kat_path, "extra known-answer fixture file");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "timing comparison of backends and layouts");
    bench_cmd->add_option("--config", bench.config_path, "bench config file (key=value or .json)");
    bench_cmd->add_option("--replay", bench.replay_path,
                          "evaluate ordering claims on a saved JSON report instead of running");
    bench_cmd->add_option("--bytes", bench.bytes, "keystream bytes per run");
    bench_cmd->add_option("--runs", bench.runs, "runs per configuration");
    bench_cmd->add_option("--layouts", bench.layouts, "comma-separated layout list");
    bench_cmd->add_option("--backends", bench.backends, "comma-separated backend list");
    bench_cmd->add_flag("--circular-modulo,!--no-circular-modulo", bench.circular_modulo,
                        "also measure the general-modulo circular variant");
    bench_cmd->add_option("--sliding-b", bench.sliding_b, "sliding window buffer size (words)");
    bench_cmd->add_option("--seed", bench.seed, "key/IV derivation seed");
    bench_cmd->add_option("--format", bench.format, "csv|json|markdown");
    bench_cmd->add_option("-o,--out", bench.out_path, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (keystream->parsed()) return cmd_keystream(ks);
        if (encrypt->parsed() || decrypt->parsed()) return cmd_encrypt(enc);
        if (selftest_cmd->parsed()) return cmd_selftest(kat_path);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MissingConfiguration& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
