#pragma once

// Word schemes, single-bit masks and the monotone key transform.
//
// Every raw word lives zero-extended in the low `width` bits of an unsigned
// container. Mask logic is purely unsigned, so right shifts are always
// logical regardless of the scheme being sorted.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace bsort {

class scheme_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class WordKind : std::uint8_t { Unsigned, Signed, Float };

struct WordScheme {
    WordKind kind = WordKind::Unsigned;
    unsigned width = 0;      // w, 1..64
    unsigned exp_bits = 0;   // e, Float only
    unsigned mant_bits = 0;  // t, Float only

    static constexpr WordScheme unsigned_int(unsigned w) { return {WordKind::Unsigned, w, 0, 0}; }
    static constexpr WordScheme signed_int(unsigned w) { return {WordKind::Signed, w, 0, 0}; }
    static constexpr WordScheme floating(unsigned e, unsigned t) {
        return {WordKind::Float, e + t + 1, e, t};
    }

    constexpr bool valid() const noexcept {
        if (width < 1 || width > 64) return false;
        if (kind != WordKind::Float) return exp_bits == 0 && mant_bits == 0;
        return exp_bits >= 1 && mant_bits >= 1 && width == exp_bits + mant_bits + 1;
    }

    /// All `width` low bits set.
    constexpr std::uint64_t word_mask() const noexcept {
        return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }

    constexpr std::uint64_t sign_bit() const noexcept { return std::uint64_t{1} << (width - 1); }

    constexpr std::uint64_t exponent_field(std::uint64_t raw) const noexcept {
        return (raw >> mant_bits) & ((std::uint64_t{1} << exp_bits) - 1);
    }
    constexpr std::uint64_t mantissa_field(std::uint64_t raw) const noexcept {
        return raw & ((std::uint64_t{1} << mant_bits) - 1);
    }
    constexpr bool is_nan(std::uint64_t raw) const noexcept {
        return kind == WordKind::Float && exponent_field(raw) == (std::uint64_t{1} << exp_bits) - 1 &&
               mantissa_field(raw) != 0;
    }
    constexpr bool fits(std::uint64_t raw) const noexcept { return (raw & ~word_mask()) == 0; }

    friend constexpr bool operator==(const WordScheme&, const WordScheme&) = default;
};

namespace schemes {
inline constexpr WordScheme u3 = WordScheme::unsigned_int(3);
inline constexpr WordScheme u8 = WordScheme::unsigned_int(8);
inline constexpr WordScheme u16 = WordScheme::unsigned_int(16);
inline constexpr WordScheme u32 = WordScheme::unsigned_int(32);
inline constexpr WordScheme u64 = WordScheme::unsigned_int(64);
inline constexpr WordScheme i4 = WordScheme::signed_int(4);
inline constexpr WordScheme i8 = WordScheme::signed_int(8);
inline constexpr WordScheme i16 = WordScheme::signed_int(16);
inline constexpr WordScheme i32 = WordScheme::signed_int(32);
inline constexpr WordScheme i64 = WordScheme::signed_int(64);
inline constexpr WordScheme f6 = WordScheme::floating(3, 2);
inline constexpr WordScheme f32 = WordScheme::floating(8, 23);
inline constexpr WordScheme f64 = WordScheme::floating(11, 52);
}  // namespace schemes

// Registry of named schemes. `id` is the byte stored in binary files.
struct SchemeEntry {
    std::string_view code;
    std::uint8_t id;
    WordScheme scheme;
};

inline constexpr std::array<SchemeEntry, 13> scheme_registry{{
    {"u8", 0x01, schemes::u8},
    {"u16", 0x02, schemes::u16},
    {"u32", 0x03, schemes::u32},
    {"u64", 0x04, schemes::u64},
    {"i8", 0x11, schemes::i8},
    {"i16", 0x12, schemes::i16},
    {"i32", 0x13, schemes::i32},
    {"i64", 0x14, schemes::i64},
    {"f32", 0x21, schemes::f32},
    {"f64", 0x22, schemes::f64},
    {"f6", 0x30, schemes::f6},
    {"u3", 0x31, schemes::u3},
    {"i4", 0x32, schemes::i4},
}};

inline const SchemeEntry& scheme_entry(std::string_view code) {
    for (const auto& e : scheme_registry)
        if (e.code == code) return e;
    throw scheme_error("unknown scheme code '" + std::string(code) + "'");
}

inline const SchemeEntry& scheme_entry_by_id(std::uint8_t id) {
    for (const auto& e : scheme_registry)
        if (e.id == id) return e;
    throw scheme_error("unknown scheme id " + std::to_string(id));
}

inline const SchemeEntry& scheme_entry(const WordScheme& s) {
    for (const auto& e : scheme_registry)
        if (e.scheme == s) return e;
    throw scheme_error("scheme is not registered");
}

inline WordScheme scheme_from_code(std::string_view code) { return scheme_entry(code).scheme; }
inline std::string_view code_of(const WordScheme& s) { return scheme_entry(s).code; }

// Single-bit mask m = 2^k, or zero once shifted past bit 0.
class Mask {
public:
    constexpr Mask() = default;
    constexpr explicit Mask(std::uint64_t value) : value_(value) {}

    static constexpr Mask bit(unsigned position) { return Mask{std::uint64_t{1} << position}; }

    constexpr std::uint64_t value() const noexcept { return value_; }
    constexpr bool is_zero() const noexcept { return value_ == 0; }
    constexpr bool single_bit() const noexcept { return std::has_single_bit(value_); }
    /// Bit index k of m = 2^k. Undefined for the zero sentinel.
    constexpr unsigned position() const noexcept { return static_cast<unsigned>(std::countr_zero(value_)); }

    friend constexpr bool operator==(Mask, Mask) = default;

private:
    std::uint64_t value_ = 0;
};

constexpr Mask mask_msb(const WordScheme& scheme) { return Mask::bit(scheme.width - 1); }

constexpr Mask mask_shift_right(Mask m) { return Mask{m.value() >> 1}; }

/// Least significant exponent bit, 1 << mant_bits.
constexpr Mask last_exponent_mask(const WordScheme& scheme) {
    if (scheme.kind != WordKind::Float) throw scheme_error("last_exponent_mask requires a Float scheme");
    return Mask::bit(scheme.mant_bits);
}

// Half-open index range [ps, pe).
struct PartitionRange {
    std::size_t ps = 0;
    std::size_t pe = 0;

    constexpr std::size_t size() const noexcept { return pe - ps; }
    constexpr bool empty() const noexcept { return pe == ps; }
    friend constexpr bool operator==(const PartitionRange&, const PartitionRange&) = default;
};

/// Unsigned key whose natural order is the ascending bsort order of the scheme.
/// Signed flips the sign bit; Float complements negatives and sets the sign
/// bit of non-negatives.
constexpr std::uint64_t total_order_key(std::uint64_t raw, const WordScheme& scheme) noexcept {
    switch (scheme.kind) {
        case WordKind::Unsigned:
            return raw;
        case WordKind::Signed:
            return raw ^ scheme.sign_bit();
        case WordKind::Float:
            return (raw & scheme.sign_bit()) ? (~raw & scheme.word_mask()) : (raw | scheme.sign_bit());
    }
    return raw;
}

// Native value <-> raw word. Floats are bit-reinterpreted, never computed on.
template <class T>
constexpr std::uint64_t to_raw(T value) noexcept {
    if constexpr (std::is_floating_point_v<T>) {
        using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
        return std::bit_cast<U>(value);
    } else {
        return static_cast<std::uint64_t>(static_cast<std::make_unsigned_t<T>>(value));
    }
}

template <class T>
constexpr T from_raw(std::uint64_t raw) noexcept {
    if constexpr (std::is_floating_point_v<T>) {
        using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
        return std::bit_cast<T>(static_cast<U>(raw));
    } else {
        return static_cast<T>(static_cast<std::make_unsigned_t<T>>(raw));
    }
}

/// Two's-complement interpretation of a Signed raw word.
constexpr std::int64_t signed_value(std::uint64_t raw, const WordScheme& scheme) noexcept {
    if (scheme.width < 64 && (raw & scheme.sign_bit())) return static_cast<std::int64_t>(raw | ~scheme.word_mask());
    return static_cast<std::int64_t>(raw);
}

// x = s * m * b^p with m a natural number and p <= 0.
struct Decomposition {
    int s = 1;
    std::uint64_t m = 0;
    int p = 0;
    unsigned b = 10;
    friend constexpr bool operator==(const Decomposition&, const Decomposition&) = default;
};

class decomposition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline std::optional<unsigned> digit_value(char c) {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'z') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'Z') return static_cast<unsigned>(c - 'A' + 10);
    return std::nullopt;
}

inline std::uint64_t checked_mul_add(std::uint64_t acc, unsigned base, unsigned digit) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(acc, static_cast<std::uint64_t>(base), &out) ||
        __builtin_add_overflow(out, static_cast<std::uint64_t>(digit), &out))
        throw decomposition_error("mantissa exceeds 64 bits");
    return out;
}
}  // namespace detail

/// Decomposes a finite positional numeral such as "-101.1" (base 2) into
/// (s, m, p): m = a*b^q + c and p = -q, where a is the integer part, c the
/// fractional digits read as an integer and q their count.
inline Decomposition decompose_finite_fraction(std::string_view text, unsigned base) {
    if (base < 2 || base > 36) throw decomposition_error("base must be in [2, 36]");
    Decomposition d{1, 0, 0, base};
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        d.s = text[i] == '-' ? -1 : 1;
        ++i;
    }
    bool any_digit = false;
    bool seen_point = false;
    int frac_digits = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) throw decomposition_error("more than one radix point");
            seen_point = true;
            continue;
        }
        const auto v = detail::digit_value(c);
        if (!v || *v >= base)
            throw decomposition_error(std::string("invalid digit '") + c + "' for base " + std::to_string(base));
        // Accumulating a then fractional digits left to right yields a*b^q + c.
        d.m = detail::checked_mul_add(d.m, base, *v);
        if (seen_point) ++frac_digits;
        any_digit = true;
    }
    if (!any_digit) throw decomposition_error("no digits");
    d.p = -frac_digits;
    return d;
}

}  // namespace bsort
