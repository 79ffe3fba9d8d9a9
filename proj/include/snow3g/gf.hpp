#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <utility>

#include "snow3g/instrument.hpp"

namespace snow3g {

using Word = std::uint32_t;

// GF(2^8) is defined by x^8 + x^7 + x^5 + x^3 + 1. The byte 0x02 represents
// the root beta, and 0xA9 encodes the low eight coefficients of the defining
// polynomial (the reduction constant).
inline constexpr std::uint8_t kBetaReduction = 0xA9;

// Multiplication by the class of x modulo the polynomial encoded by 0x100|c:
// a left shift plus a conditional XOR with c when the top bit falls off.
constexpr std::uint8_t mulx(std::uint8_t v, std::uint8_t c) {
    return static_cast<std::uint8_t>((v & 0x80u) ? ((v << 1) ^ c) : (v << 1));
}

// v * x^i, iterative realization.
constexpr std::uint8_t mulxpow(std::uint8_t v, unsigned i, std::uint8_t c) {
    while (i-- > 0) v = mulx(v, c);
    return v;
}

// Same map, literally recursive. The Recursive multiplication backend calls
// this one so its cost profile is that of a call per power.
std::uint8_t mulxpow_recursive(std::uint8_t v, unsigned i, std::uint8_t c);

// General product in GF(2^8) modulo x^8+x^7+x^5+x^3+1, shift-and-add.
// Independent of the mulxpow path; used as its cross-check oracle.
constexpr std::uint8_t gf8_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t acc = 0;
    while (b != 0) {
        if (b & 1u) acc = static_cast<std::uint8_t>(acc ^ a);
        a = mulx(a, kBetaReduction);
        b = static_cast<std::uint8_t>(b >> 1);
    }
    return acc;
}

// Precomputed byte -> word column products for multiplication by alpha and
// alpha^-1 in GF(2^32). Two 256-entry word tables, 2048 bytes of payload.
struct AlphaTables {
    std::array<Word, 256> mul;
    std::array<Word, 256> div;

    friend bool operator==(const AlphaTables&, const AlphaTables&) = default;
};
static_assert(sizeof(AlphaTables) == 2048);

// Byte -> word column products computed with the recursive mulxpow. These are
// the definitional values; the tables must agree with them entry for entry.
Word mul_alpha_byte_recursive(std::uint8_t c);
Word div_alpha_byte_recursive(std::uint8_t c);

// Fills both tables from the recursive definition. Deterministic.
AlphaTables build_tables();

enum class BackendTag { Recursive, Table };

constexpr const char* backend_name(BackendTag t) {
    return t == BackendTag::Recursive ? "recursive" : "table";
}

// Runtime-selectable multiplication backend. Table construction is eager:
// a Table backend owns fully built tables from the moment it exists.
class MulBackend {
  public:
    static MulBackend recursive() { return MulBackend(BackendTag::Recursive, nullptr); }
    static MulBackend table() {
        return MulBackend(BackendTag::Table, std::make_shared<const AlphaTables>(build_tables()));
    }

    BackendTag tag() const { return tag_; }
    const AlphaTables* tables() const { return tables_.get(); }

    Word mul_alpha_byte(std::uint8_t c) const {
        return tag_ == BackendTag::Table ? tables_->mul[c] : mul_alpha_byte_recursive(c);
    }
    Word div_alpha_byte(std::uint8_t c) const {
        return tag_ == BackendTag::Table ? tables_->div[c] : div_alpha_byte_recursive(c);
    }
    Word mul_alpha_word(Word w) const {
        return (w << 8) ^ mul_alpha_byte(static_cast<std::uint8_t>(w >> 24));
    }
    Word div_alpha_word(Word w) const {
        return (w >> 8) ^ div_alpha_byte(static_cast<std::uint8_t>(w & 0xFFu));
    }

  private:
    MulBackend(BackendTag tag, std::shared_ptr<const AlphaTables> tables)
        : tag_(tag), tables_(std::move(tables)) {}

    BackendTag tag_;
    std::shared_ptr<const AlphaTables> tables_;
};

namespace detail {

template <class Prof>
std::uint8_t timed_mulxpow(std::uint8_t v, unsigned i, std::uint8_t c, Prof& prof) {
    FnScope<Prof> scope(prof, Fn::MulXPow);
    return mulxpow_recursive(v, i, c);
}

}  // namespace detail

// Statically typed backend views for hot loops. Both expose the same word
// operations; the profiler parameter is a no-op unless instrumentation is on.
struct RecursiveOps {
    static constexpr BackendTag kTag = BackendTag::Recursive;

    template <class Prof>
    Word mul_alpha_byte(std::uint8_t c, Prof& prof) const {
        FnScope<Prof> scope(prof, Fn::MulAlpha);
        return (static_cast<Word>(detail::timed_mulxpow(c, 23, kBetaReduction, prof)) << 24) |
               (static_cast<Word>(detail::timed_mulxpow(c, 245, kBetaReduction, prof)) << 16) |
               (static_cast<Word>(detail::timed_mulxpow(c, 48, kBetaReduction, prof)) << 8) |
               static_cast<Word>(detail::timed_mulxpow(c, 239, kBetaReduction, prof));
    }

    template <class Prof>
    Word div_alpha_byte(std::uint8_t c, Prof& prof) const {
        FnScope<Prof> scope(prof, Fn::DivAlpha);
        return (static_cast<Word>(detail::timed_mulxpow(c, 16, kBetaReduction, prof)) << 24) |
               (static_cast<Word>(detail::timed_mulxpow(c, 39, kBetaReduction, prof)) << 16) |
               (static_cast<Word>(detail::timed_mulxpow(c, 6, kBetaReduction, prof)) << 8) |
               static_cast<Word>(detail::timed_mulxpow(c, 64, kBetaReduction, prof));
    }

    template <class Prof>
    Word mul_alpha_word(Word w, Prof& prof) const {
        return (w << 8) ^ mul_alpha_byte(static_cast<std::uint8_t>(w >> 24), prof);
    }

    template <class Prof>
    Word div_alpha_word(Word w, Prof& prof) const {
        return (w >> 8) ^ div_alpha_byte(static_cast<std::uint8_t>(w & 0xFFu), prof);
    }
};

struct TableOps {
    const AlphaTables* t;

    static constexpr BackendTag kTag = BackendTag::Table;

    template <class Prof>
    Word mul_alpha_byte(std::uint8_t c, Prof&) const {
        return t->mul[c];
    }
    template <class Prof>
    Word div_alpha_byte(std::uint8_t c, Prof&) const {
        return t->div[c];
    }
    template <class Prof>
    Word mul_alpha_word(Word w, Prof&) const {
        return (w << 8) ^ t->mul[w >> 24];
    }
    template <class Prof>
    Word div_alpha_word(Word w, Prof&) const {
        return (w >> 8) ^ t->div[w & 0xFFu];
    }
};

template <class F>
decltype(auto) with_ops(const MulBackend& backend, F&& f) {
    if (backend.tag() == BackendTag::Table) return std::forward<F>(f)(TableOps{backend.tables()});
    return std::forward<F>(f)(RecursiveOps{});
}

}  // namespace snow3g
