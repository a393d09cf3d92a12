#pragma once

// In-place MSB binary radix sort for unsigned, two's-complement and
// sign/exponent/mantissa words.
//
// All entry points operate on a span of unsigned words of any container
// width that can hold the scheme. Time is O(n*w) and auxiliary space O(w):
// the recursion descends one bit per level and ranges of size <= 1 are
// never partitioned.

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "bsort/bitword.hpp"

namespace bsort {

enum class SortDirection : bool { descending = false, ascending = true };

constexpr SortDirection reversed(SortDirection d) noexcept {
    return d == SortDirection::ascending ? SortDirection::descending : SortDirection::ascending;
}
constexpr bool is_ascending(SortDirection d) noexcept { return d == SortDirection::ascending; }

// How the negative partition of a float sort is ordered. `mirrored` is the
// correct behaviour; `same_as_positive` passes the caller's direction to both
// halves and exists only so verification tooling can demonstrate the failure.
enum class NegativeOrder { mirrored, same_as_positive };

struct PassRecord {
    Mask mask;
    PartitionRange range;
    std::size_t k = 0;
    SortDirection direction = SortDirection::ascending;
    unsigned depth = 0;
};

using PassObserver = std::function<void(const PassRecord&)>;

struct SortStats {
    // Indexed by bit position of the pass mask.
    std::array<std::uint64_t, 64> inspections_per_level{};
    std::uint64_t swaps = 0;
    unsigned max_depth = 0;
    unsigned levels = 0;
    std::uint64_t levels_seen = 0;  // bit i set once a pass ran at position i

    std::uint64_t total_inspections() const noexcept {
        std::uint64_t total = 0;
        for (auto v : inspections_per_level) total += v;
        return total;
    }
    std::uint64_t max_level_inspections() const noexcept {
        return *std::max_element(inspections_per_level.begin(), inspections_per_level.end());
    }
};

struct SortOptions {
    const PassObserver* observer = nullptr;
    NegativeOrder negative_order = NegativeOrder::mirrored;
};

namespace detail {

struct Probe {
    SortStats* stats = nullptr;
    const PassObserver* observer = nullptr;

    void record(Mask m, PartitionRange r, std::size_t k, SortDirection dir, unsigned depth) const {
        if (stats) {
            stats->inspections_per_level[m.position()] += r.size();
            stats->swaps += k - r.ps;
            stats->max_depth = std::max(stats->max_depth, depth);
            stats->levels_seen |= m.value();
            stats->levels = static_cast<unsigned>(std::popcount(stats->levels_seen));
        }
        if (observer && *observer) (*observer)(PassRecord{m, r, k, dir, depth});
    }
};

template <std::unsigned_integral W>
std::size_t partition_pass(W* a, W bit, std::size_t ps, std::size_t pe, bool ascending) noexcept {
    std::size_t k = ps;
    for (std::size_t i = ps; i < pe; ++i) {
        // (asc && bit clear) || (!asc && bit set)
        if (((a[i] & bit) != 0) != ascending) {
            std::swap(a[i], a[k]);
            ++k;
        }
    }
    return k;
}

template <std::unsigned_integral W>
std::size_t partition(std::span<W> a, Mask m, PartitionRange r, SortDirection dir, unsigned depth,
                      const Probe& probe) {
    const std::size_t k =
        partition_pass<W>(a.data(), static_cast<W>(m.value()), r.ps, r.pe, is_ascending(dir));
    probe.record(m, r, k, dir, depth);
    return k;
}

template <std::unsigned_integral W>
void binary_quicksort(std::span<W> a, Mask m, PartitionRange r, SortDirection dir, unsigned depth,
                      const Probe& probe) {
    if (r.size() <= 1 || m.is_zero()) return;
    const std::size_t k = partition(a, m, r, dir, depth, probe);
    const Mask next = mask_shift_right(m);
    if (next.is_zero()) return;
    binary_quicksort(a, next, {r.ps, k}, dir, depth + 1, probe);
    binary_quicksort(a, next, {k, r.pe}, dir, depth + 1, probe);
}

template <std::unsigned_integral W>
void bsort_f(std::span<W> a, Mask m, PartitionRange r, SortDirection dir, const WordScheme& scheme,
             unsigned depth, const Probe& probe) {
    if (r.size() <= 1) return;
    const std::size_t k = partition(a, m, r, dir, depth, probe);
    const Mask next = mask_shift_right(m);
    if (m == last_exponent_mask(scheme)) {
        // Exponents are settled; the rest is the mantissa, an unsigned field.
        binary_quicksort(a, next, {r.ps, k}, dir, depth + 1, probe);
        binary_quicksort(a, next, {k, r.pe}, dir, depth + 1, probe);
        return;
    }
    bsort_f(a, next, {r.ps, k}, dir, scheme, depth + 1, probe);
    bsort_f(a, next, {k, r.pe}, dir, scheme, depth + 1, probe);
}

template <std::unsigned_integral W>
void require(const WordScheme& scheme, WordKind kind, const char* who) {
    if (!scheme.valid()) throw scheme_error(std::string(who) + ": invalid scheme");
    if (scheme.kind != kind) throw scheme_error(std::string(who) + ": scheme kind mismatch");
    if (scheme.width > std::numeric_limits<W>::digits)
        throw scheme_error(std::string(who) + ": word container narrower than scheme");
}

}  // namespace detail

/// One forward scan over [ps, pe). Returns k such that, ascending, every word
/// in [ps, k) has the mask bit clear and every word in [k, pe) has it set
/// (inverted when descending).
template <std::unsigned_integral W>
std::size_t single_pass_partition(std::span<W> a, Mask m, PartitionRange range, SortDirection dir,
                                  SortStats* stats = nullptr) {
    return detail::partition(a, m, range, dir, 1, detail::Probe{stats, nullptr});
}

/// Recursive binary quicksort on bits m, m>>1, ..., 1 of [ps, pe).
template <std::unsigned_integral W>
void binary_quicksort(std::span<W> a, Mask m, PartitionRange range, SortDirection dir,
                      SortStats* stats = nullptr) {
    detail::binary_quicksort(a, m, range, dir, 1, detail::Probe{stats, nullptr});
}

/// Exponent-then-mantissa sort of an equally-signed float range. `m` must be
/// an exponent bit.
template <std::unsigned_integral W>
void bsort_f(std::span<W> a, Mask m, PartitionRange range, SortDirection dir, const WordScheme& scheme,
             SortStats* stats = nullptr) {
    detail::bsort_f(a, m, range, dir, scheme, 1, detail::Probe{stats, nullptr});
}

template <std::unsigned_integral W>
SortStats bsort_unsigned(std::span<W> a, const WordScheme& scheme, SortDirection dir,
                         const SortOptions& options = {}) {
    detail::require<W>(scheme, WordKind::Unsigned, "bsort_unsigned");
    SortStats stats;
    detail::binary_quicksort(a, mask_msb(scheme), {0, a.size()}, dir, 1, detail::Probe{&stats, options.observer});
    return stats;
}

template <std::unsigned_integral W>
SortStats bsort_signed(std::span<W> a, const WordScheme& scheme, SortDirection dir,
                       const SortOptions& options = {}) {
    detail::require<W>(scheme, WordKind::Signed, "bsort_signed");
    SortStats stats;
    if (a.size() <= 1) return stats;
    const detail::Probe probe{&stats, options.observer};
    const Mask m = mask_msb(scheme);
    // Negative words have the sign bit set, so the sign pass runs reversed.
    const std::size_t k = detail::partition(a, m, {0, a.size()}, reversed(dir), 1, probe);
    const Mask next = mask_shift_right(m);
    detail::binary_quicksort(a, next, {0, k}, dir, 2, probe);
    detail::binary_quicksort(a, next, {k, a.size()}, dir, 2, probe);
    return stats;
}

template <std::unsigned_integral W>
SortStats bsort_float(std::span<W> a, const WordScheme& scheme, SortDirection dir,
                      const SortOptions& options = {}) {
    detail::require<W>(scheme, WordKind::Float, "bsort_float");
    SortStats stats;
    if (a.size() <= 1) return stats;
    const detail::Probe probe{&stats, options.observer};
    const Mask m = mask_msb(scheme);
    const std::size_t n = a.size();
    const std::size_t k = detail::partition(a, m, {0, n}, reversed(dir), 1, probe);

    // Negatives land in [0, k) when ascending and in [k, n) when descending.
    // Larger magnitude means smaller value for them, so their exponent and
    // mantissa bits are ordered against the requested direction.
    const PartitionRange negatives = is_ascending(dir) ? PartitionRange{0, k} : PartitionRange{k, n};
    const PartitionRange positives = is_ascending(dir) ? PartitionRange{k, n} : PartitionRange{0, k};
    const SortDirection negative_dir =
        options.negative_order == NegativeOrder::mirrored ? reversed(dir) : dir;

    const Mask next = mask_shift_right(m);
    detail::bsort_f(a, next, negatives, negative_dir, scheme, 2, probe);
    detail::bsort_f(a, next, positives, dir, scheme, 2, probe);
    return stats;
}

/// Dispatches on the scheme kind.
template <std::unsigned_integral W>
SortStats sort_words(std::span<W> a, const WordScheme& scheme, SortDirection dir,
                     const SortOptions& options = {}) {
    switch (scheme.kind) {
        case WordKind::Unsigned:
            return bsort_unsigned(a, scheme, dir, options);
        case WordKind::Signed:
            return bsort_signed(a, scheme, dir, options);
        case WordKind::Float:
            return bsort_float(a, scheme, dir, options);
    }
    throw scheme_error("unknown scheme kind");
}

/// Calls f(std::type_identity<W>{}) with the narrowest unsigned container
/// that holds `width` bits.
template <class F>
decltype(auto) with_word_type(unsigned width, F&& f) {
    if (width <= 8) return std::forward<F>(f)(std::type_identity<std::uint8_t>{});
    if (width <= 16) return std::forward<F>(f)(std::type_identity<std::uint16_t>{});
    if (width <= 32) return std::forward<F>(f)(std::type_identity<std::uint32_t>{});
    return std::forward<F>(f)(std::type_identity<std::uint64_t>{});
}

/// Sorts native integers in place.
template <std::integral T>
    requires(!std::same_as<T, bool>)
SortStats sort(std::span<T> a, SortDirection dir = SortDirection::ascending) {
    using U = std::make_unsigned_t<T>;
    std::span<U> words{reinterpret_cast<U*>(a.data()), a.size()};
    constexpr unsigned width = std::numeric_limits<U>::digits;
    if constexpr (std::is_signed_v<T>)
        return bsort_signed(words, WordScheme::signed_int(width), dir);
    else
        return bsort_unsigned(words, WordScheme::unsigned_int(width), dir);
}

}  // namespace bsort
