#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snow3g/cipher.hpp"

namespace snow3g {

// One known-answer record: key/IV plus the expected first words of the
// keystream, optionally with spot checks at 1-based positions further out.
struct KatRecord {
    std::string name;
    std::string key_hex;
    std::string iv_hex;
    std::vector<Word> prefix;
    std::vector<std::pair<std::uint64_t, Word>> spots;
};

// The built-in vectors: the published ETSI/SAGE implementers' test sets plus
// auxiliary regression vectors.
const std::vector<KatRecord>& embedded_kats();

// Fixture file format: one record per line, whitespace-separated tokens:
// 32 hex chars of key, 32 hex chars of IV, then N x 8 hex chars of expected
// keystream words. '#' starts a comment.
std::vector<KatRecord> load_kat_file(const std::filesystem::path& path);
void write_kat_file(const std::filesystem::path& path, const std::vector<KatRecord>& records);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // configuration, offset, expected, actual on failure
};

// Verifies that `tables` agrees with the recursive definition on all 256
// inputs of both column multipliers. Returns a description of the first
// mismatch, or nullopt if the tables are exact.
std::optional<std::string> check_backend_equivalence(const AlphaTables& tables);

struct SelftestOptions {
    const SboxTables* sboxes = nullptr;          // fault-injection seam
    std::vector<KatRecord> extra_records;        // e.g. loaded from a fixture file
};

// Runs every embedded (and extra) known-answer vector across all
// layout x backend combinations, plus the exhaustive backend-equivalence
// check. One CheckResult per check; all pass on a sound build.
std::vector<CheckResult> selftest(const SelftestOptions& options = {});

}  // namespace snow3g
