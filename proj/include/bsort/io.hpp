#pragma once

// Text and binary word files.
//
// Text: whitespace- or comma-separated decimal values. Float schemes accept
// inf, -inf, nan and -nan; nan is the quiet NaN with an empty payload.
//
// Binary, all integers little-endian:
//   offset 0  "BSRT"
//   offset 4  version (0x01)
//   offset 5  scheme id (see scheme_registry)
//   offset 6  reserved (0x00)
//   offset 7  element count, 8 bytes
//   offset 15 words, ceil(width / 8) bytes each

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bsort/bitword.hpp"

namespace bsort {

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FileFormat { text, binary };

inline constexpr std::string_view binary_magic = "BSRT";
inline constexpr std::uint8_t binary_version = 0x01;
inline constexpr std::size_t binary_header_size = 15;

struct WordFile {
    WordScheme scheme;
    std::vector<std::uint64_t> words;
};

// Float scheme <-> double. Exact for every scheme with t <= 52 and e <= 11.

inline std::uint64_t quiet_nan(const WordScheme& s, bool negative) {
    const std::uint64_t exp_all = ((std::uint64_t{1} << s.exp_bits) - 1) << s.mant_bits;
    const std::uint64_t quiet = std::uint64_t{1} << (s.mant_bits - 1);
    return (negative ? s.sign_bit() : 0) | exp_all | quiet;
}

inline std::uint64_t infinity_word(const WordScheme& s, bool negative) {
    const std::uint64_t exp_all = ((std::uint64_t{1} << s.exp_bits) - 1) << s.mant_bits;
    return (negative ? s.sign_bit() : 0) | exp_all;
}

inline double float_value(std::uint64_t raw, const WordScheme& s) {
    if (s == schemes::f64) return from_raw<double>(raw);
    if (s == schemes::f32) return from_raw<float>(raw);
    const bool negative = (raw & s.sign_bit()) != 0;
    const std::uint64_t e = s.exponent_field(raw);
    const std::uint64_t m = s.mantissa_field(raw);
    const std::uint64_t e_max = (std::uint64_t{1} << s.exp_bits) - 1;
    const int bias = (1 << (s.exp_bits - 1)) - 1;
    double v = 0;
    if (e == e_max) {
        v = m == 0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
    } else if (e == 0) {
        v = std::ldexp(static_cast<double>(m), 1 - bias - static_cast<int>(s.mant_bits));
    } else {
        const double significand = static_cast<double>((std::uint64_t{1} << s.mant_bits) | m);
        v = std::ldexp(significand, static_cast<int>(e) - bias - static_cast<int>(s.mant_bits));
    }
    return negative ? -v : v;
}

/// Rounds to the nearest representable word, ties to even; overflow gives
/// infinity.
inline std::uint64_t encode_float(double x, const WordScheme& s) {
    if (s == schemes::f64) return to_raw(x);
    if (s == schemes::f32) return to_raw(static_cast<float>(x));
    const bool negative = std::signbit(x);
    const std::uint64_t sign = negative ? s.sign_bit() : 0;
    if (std::isnan(x)) return quiet_nan(s, negative);
    if (std::isinf(x)) return infinity_word(s, negative);
    const double mag = std::fabs(x);
    if (mag == 0) return sign;
    const int bias = (1 << (s.exp_bits - 1)) - 1;
    const int t = static_cast<int>(s.mant_bits);
    const std::uint64_t e_max = (std::uint64_t{1} << s.exp_bits) - 1;
    int exp2 = 0;
    std::frexp(mag, &exp2);  // mag = f * 2^exp2, f in [0.5, 1)
    std::int64_t biased = exp2 - 1 + bias;
    std::uint64_t fraction = 0;
    if (biased >= 1) {
        fraction = static_cast<std::uint64_t>(std::nearbyint(std::ldexp(mag, t - (exp2 - 1)))) -
                   (std::uint64_t{1} << t);
        if (fraction >> t) {  // rounded up to the next binade
            fraction = 0;
            ++biased;
        }
    } else {
        fraction = static_cast<std::uint64_t>(std::nearbyint(std::ldexp(mag, t - (1 - bias))));
        biased = (fraction >> t) ? 1 : 0;
        fraction &= (std::uint64_t{1} << t) - 1;
    }
    if (biased >= static_cast<std::int64_t>(e_max)) return infinity_word(s, negative);
    return sign | (static_cast<std::uint64_t>(biased) << t) | fraction;
}

// Single values.

inline std::uint64_t parse_value(std::string_view token, const WordScheme& s) {
    auto fail = [&](const char* why) {
        return format_error("cannot parse '" + std::string(token) + "' as " +
                            std::string(code_of(s)) + ": " + why);
    };
    const char* first = token.data();
    const char* last = token.data() + token.size();
    switch (s.kind) {
        case WordKind::Unsigned: {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec == std::errc::result_out_of_range || (ec == std::errc{} && !s.fits(v)))
                throw fail("out of range");
            if (ec != std::errc{} || ptr != last) throw fail("not an unsigned integer");
            return v;
        }
        case WordKind::Signed: {
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec == std::errc{} && ptr == last && s.width < 64) {
                const std::int64_t hi = (std::int64_t{1} << (s.width - 1)) - 1;
                if (v > hi || v < -hi - 1) throw fail("out of range");
            }
            if (ec == std::errc::result_out_of_range) throw fail("out of range");
            if (ec != std::errc{} || ptr != last) throw fail("not a signed integer");
            return static_cast<std::uint64_t>(v) & s.word_mask();
        }
        case WordKind::Float: {
            std::string lower(token);
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            std::string_view body = lower;
            const bool negative = !body.empty() && body.front() == '-';
            if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
            if (body == "nan") return quiet_nan(s, negative);
            if (body == "inf" || body == "infinity") return infinity_word(s, negative);
            if (s == schemes::f32) {
                float v = 0;
                auto [ptr, ec] = std::from_chars(first, last, v);
                if (ec != std::errc{} || ptr != last) throw fail("not a number");
                return std::isnan(v) ? quiet_nan(s, std::signbit(v)) : to_raw(v);
            }
            double v = 0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last) throw fail("not a number");
            return std::isnan(v) ? quiet_nan(s, std::signbit(v)) : encode_float(v, s);
        }
    }
    throw fail("unknown scheme kind");
}

inline std::string format_value(std::uint64_t raw, const WordScheme& s) {
    char buf[64];
    std::to_chars_result res{};
    switch (s.kind) {
        case WordKind::Unsigned:
            res = std::to_chars(buf, buf + sizeof buf, raw);
            break;
        case WordKind::Signed:
            res = std::to_chars(buf, buf + sizeof buf, signed_value(raw, s));
            break;
        case WordKind::Float:
            if (s.is_nan(raw)) return (raw & s.sign_bit()) ? "-nan" : "nan";
            if (s == schemes::f32)
                res = std::to_chars(buf, buf + sizeof buf, from_raw<float>(raw));
            else
                res = std::to_chars(buf, buf + sizeof buf, float_value(raw, s));
            break;
    }
    return std::string(buf, res.ptr);
}

inline std::string to_binary_string(std::uint64_t raw, unsigned width) {
    std::string out(width, '0');
    for (unsigned i = 0; i < width; ++i)
        if (raw >> (width - 1 - i) & 1) out[i] = '1';
    return out;
}

// Whole files.

inline std::vector<std::uint64_t> parse_text(std::string_view text, const WordScheme& s) {
    std::vector<std::uint64_t> words;
    std::size_t line = 1;
    std::size_t i = 0;
    auto separator = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ','; };
    while (i < text.size()) {
        if (separator(text[i])) {
            if (text[i] == '\n') ++line;
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !separator(text[j])) ++j;
        try {
            words.push_back(parse_value(text.substr(i, j - i), s));
        } catch (const format_error& e) {
            throw format_error("line " + std::to_string(line) + ": " + e.what());
        }
        i = j;
    }
    return words;
}

inline std::string format_text(std::span<const std::uint64_t> words, const WordScheme& s) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += format_value(words[i], s);
    }
    out += '\n';
    return out;
}

inline std::size_t bytes_per_word(const WordScheme& s) { return (s.width + 7) / 8; }

inline std::string encode_binary(std::span<const std::uint64_t> words, const WordScheme& s) {
    const std::size_t stride = bytes_per_word(s);
    std::string out;
    out.reserve(binary_header_size + stride * words.size());
    out += binary_magic;
    out += static_cast<char>(binary_version);
    out += static_cast<char>(scheme_entry(s).id);
    out += '\0';
    const std::uint64_t count = words.size();
    for (unsigned b = 0; b < 8; ++b) out += static_cast<char>(count >> (8 * b) & 0xFF);
    for (auto w : words)
        for (std::size_t b = 0; b < stride; ++b) out += static_cast<char>(w >> (8 * b) & 0xFF);
    return out;
}

inline bool looks_binary(std::string_view bytes) { return bytes.substr(0, 4) == binary_magic; }

inline WordFile decode_binary(std::string_view bytes) {
    if (bytes.size() < binary_header_size || !looks_binary(bytes)) throw format_error("missing BSRT header");
    auto byte = [&](std::size_t i) { return static_cast<std::uint8_t>(bytes[i]); };
    if (byte(4) != binary_version) throw format_error("unsupported version " + std::to_string(byte(4)));
    WordFile file;
    try {
        file.scheme = scheme_entry_by_id(byte(5)).scheme;
    } catch (const scheme_error& e) {
        throw format_error(e.what());
    }
    std::uint64_t count = 0;
    for (unsigned b = 0; b < 8; ++b) count |= std::uint64_t{byte(7 + b)} << (8 * b);
    const std::size_t stride = bytes_per_word(file.scheme);
    const std::size_t payload = bytes.size() - binary_header_size;
    if (count > payload / stride || count * stride != payload)
        throw format_error("element count " + std::to_string(count) + " does not match payload of " +
                           std::to_string(payload) + " bytes");
    file.words.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t w = 0;
        for (std::size_t b = 0; b < stride; ++b) w |= std::uint64_t{byte(binary_header_size + i * stride + b)} << (8 * b);
        if (!file.scheme.fits(w)) throw format_error("word " + std::to_string(i) + " exceeds scheme width");
        file.words[i] = w;
    }
    return file;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failed on '" + path + "'");
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failed on '" + path + "'");
}

}  // namespace bsort
