#include "snow3g/kat.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "snow3g/hex.hpp"

namespace snow3g {

const std::vector<KatRecord>& embedded_kats() {
    // The two ETSI/SAGE implementers' test sets whose published words were
    // independently reverified, plus auxiliary vectors pinning edge-case
    // key/IV patterns. Prefixes are z1..zN; spots are (position, word).
    static const std::vector<KatRecord> kats = {
        {"etsi-set-1",
         "2BD6459F82C5B300952C49104881FF48",
         "EA024714AD5C4D84DF1F9B251C0BF45F",
         {0xABEE9704u, 0x7AC31373u, 0xDEDC2F7Au, 0xD601E9CAu, 0x277E5BE7u, 0x919C03DBu,
          0xC2B1DC48u, 0x4773BAFEu},
         {{2500, 0x8E61D442u}}},
        {"etsi-set-4",
         "0DED7263109CF92E3352255A140E0F76",
         "6B68079A41A7C4C91BEFD79F7FDCC233",
         {0xD712C05Cu, 0xA937C2A6u, 0xEB7EAAE3u, 0x1A90BE3Du, 0xED49DC1Au, 0x01A5F2F3u,
          0x8715725Eu, 0x343A6443u},
         {{2500, 0x9C0DB3AAu}}},
        {"aux-ramp",
         "000102030405060708090A0B0C0D0E0F",
         "FFEEDDCCBBAA99887766554433221100",
         {0x22AFA5D9u, 0x037FDAE6u, 0xC376142Cu, 0xF275F0C5u, 0x9A700152u, 0xE219DFB7u,
          0xBD89B834u, 0xB389D5D4u},
         {}},
        {"aux-ones-key",
         "FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF",
         "00000000000000000000000000000000",
         {0xBA8D94F7u, 0x9A3003DDu, 0x63C8CEC3u, 0x1A26AFBAu, 0xD8F0704Cu, 0x5FC8029Du,
          0xA1FE0634u, 0x12D64704u},
         {}},
        {"aux-zero",
         "00000000000000000000000000000000",
         "00000000000000000000000000000000",
         {0xC764A037u, 0xB12FC857u, 0xD470C3A5u, 0xE24D982Cu, 0xBBFD2240u, 0x178825B0u,
          0xE3A81869u, 0x53B05C86u},
         {}},
    };
    return kats;
}

std::vector<KatRecord> load_kat_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open KAT fixture: " + path.string());
    std::vector<KatRecord> records;
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::string key_hex, iv_hex;
        if (!(tokens >> key_hex)) continue;  // blank line
        if (!(tokens >> iv_hex))
            throw std::runtime_error("KAT fixture line " + std::to_string(lineno) + ": missing IV");
        KatRecord rec;
        rec.name = path.filename().string() + ":" + std::to_string(lineno);
        parse_hex_words4(key_hex);  // validates length and digits
        parse_hex_words4(iv_hex);
        rec.key_hex = key_hex;
        rec.iv_hex = iv_hex;
        std::string tok;
        while (tokens >> tok) rec.prefix.push_back(parse_hex_word(tok));
        if (rec.prefix.empty())
            throw std::runtime_error("KAT fixture line " + std::to_string(lineno) +
                                     ": no expected keystream words");
        records.push_back(std::move(rec));
    }
    return records;
}

void write_kat_file(const std::filesystem::path& path, const std::vector<KatRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write KAT fixture: " + path.string());
    for (const auto& rec : records) {
        if (!rec.name.empty()) out << "# " << rec.name << "\n";
        out << rec.key_hex << " " << rec.iv_hex;
        for (Word w : rec.prefix) out << " " << word_to_hex(w);
        out << "\n";
    }
}

std::optional<std::string> check_backend_equivalence(const AlphaTables& tables) {
    for (unsigned c = 0; c < 256; ++c) {
        const Word mul = mul_alpha_byte_recursive(static_cast<std::uint8_t>(c));
        const Word div = div_alpha_byte_recursive(static_cast<std::uint8_t>(c));
        if (tables.mul[c] != mul)
            return "mul_table[" + word_to_hex(c).substr(6) + "] = " + word_to_hex(tables.mul[c]) +
                   ", recursive value " + word_to_hex(mul);
        if (tables.div[c] != div)
            return "div_table[" + word_to_hex(c).substr(6) + "] = " + word_to_hex(tables.div[c]) +
                   ", recursive value " + word_to_hex(div);
    }
    return std::nullopt;
}

namespace {

CheckResult run_kat(const KatRecord& rec, LayoutTag layout, const MulBackend& backend,
                    const CipherOptions& options) {
    CheckResult result;
    result.name = "kat " + rec.name + " layout=" + layout_name(layout) +
                  " backend=" + backend_name(backend.tag());
    const KeyMaterial km = KeyMaterial::from_hex(rec.key_hex, rec.iv_hex);
    CipherCore core(km, layout, backend, options);

    std::uint64_t last = std::max<std::uint64_t>(
        rec.prefix.size(),
        rec.spots.empty() ? 0 : std::max_element(rec.spots.begin(), rec.spots.end())->first);
    const std::vector<Word> z = core.generate_keystream(static_cast<std::size_t>(last));

    for (std::size_t i = 0; i < rec.prefix.size(); ++i) {
        if (z[i] != rec.prefix[i]) {
            result.pass = false;
            result.detail = "z" + std::to_string(i + 1) + " expected " + word_to_hex(rec.prefix[i]) +
                            " actual " + word_to_hex(z[i]);
            return result;
        }
    }
    for (const auto& [pos, expected] : rec.spots) {
        if (z[static_cast<std::size_t>(pos - 1)] != expected) {
            result.pass = false;
            result.detail = "z" + std::to_string(pos) + " expected " + word_to_hex(expected) +
                            " actual " + word_to_hex(z[pos - 1]);
            return result;
        }
    }
    result.pass = true;
    return result;
}

}  // namespace

std::vector<CheckResult> selftest(const SelftestOptions& options) {
    static constexpr LayoutTag kLayouts[] = {LayoutTag::Traditional, LayoutTag::Hardcode,
                                             LayoutTag::CircularBuffer, LayoutTag::SlidingWindow,
                                             LayoutTag::LoopUnrolling};
    const MulBackend backends[] = {MulBackend::recursive(), MulBackend::table()};

    CipherOptions cipher_options;
    cipher_options.sboxes = options.sboxes;

    std::vector<KatRecord> records = embedded_kats();
    records.insert(records.end(), options.extra_records.begin(), options.extra_records.end());

    std::vector<CheckResult> results;
    for (const auto& rec : records)
        for (LayoutTag layout : kLayouts)
            for (const MulBackend& backend : backends)
                results.push_back(run_kat(rec, layout, backend, cipher_options));

    CheckResult equivalence;
    equivalence.name = "gf-arith backend equivalence (256-entry tables vs recursive)";
    const auto mismatch = check_backend_equivalence(*MulBackend::table().tables());
    equivalence.pass = !mismatch.has_value();
    if (mismatch) equivalence.detail = *mismatch;
    results.push_back(equivalence);

    return results;
}

}  // namespace snow3g
