#pragma once

// Reference ordering used to validate the radix sort. It is a comparison
// sort over total_order_key, so it shares neither the algorithm family nor
// the order definition with the code under test.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "bsort/bitword.hpp"
#include "bsort/core.hpp"
#include "bsort/random.hpp"

namespace bsort {

struct OrderedWord {
    std::uint64_t raw;
    std::uint64_t key;

    OrderedWord(std::uint64_t raw_word, const WordScheme& scheme)
        : raw(raw_word), key(total_order_key(raw_word, scheme)) {}
};

inline std::vector<std::uint64_t> oracle_sort(std::span<const std::uint64_t> a, const WordScheme& scheme,
                                              SortDirection dir) {
    std::vector<OrderedWord> items;
    items.reserve(a.size());
    for (auto w : a) items.emplace_back(w, scheme);
    std::stable_sort(items.begin(), items.end(),
                     [](const OrderedWord& x, const OrderedWord& y) { return x.key < y.key; });
    std::vector<std::uint64_t> out;
    out.reserve(items.size());
    for (const auto& it : items) out.push_back(it.raw);
    if (!is_ascending(dir)) std::reverse(out.begin(), out.end());
    return out;
}

/// The O(n*w) time and O(w) depth bounds, checked against recorded counters.
inline bool within_bounds(const SortStats& stats, const WordScheme& scheme, std::size_t n) {
    return stats.total_inspections() <= static_cast<std::uint64_t>(scheme.width) * n &&
           stats.max_level_inspections() <= n && stats.max_depth <= scheme.width;
}

struct CheckFailure {
    std::vector<std::uint64_t> input;
    SortDirection direction = SortDirection::ascending;
    std::vector<std::uint64_t> expected;
    std::vector<std::uint64_t> actual;
};

struct CheckReport {
    std::size_t trials = 0;
    std::size_t mismatches = 0;
    std::size_t bound_violations = 0;
    std::optional<CheckFailure> first_failure;

    bool ok() const noexcept { return mismatches == 0 && bound_violations == 0; }
};

/// Sorts `input` with the radix sort, compares with the oracle and folds the
/// outcome into `report`.
inline void check_case(std::span<const std::uint64_t> input, const WordScheme& scheme, SortDirection dir,
                       CheckReport& report, const SortOptions& options = {}) {
    std::vector<std::uint64_t> actual(input.begin(), input.end());
    const SortStats stats = sort_words(std::span<std::uint64_t>(actual), scheme, dir, options);
    const auto expected = oracle_sort(input, scheme, dir);
    ++report.trials;
    if (!within_bounds(stats, scheme, input.size())) ++report.bound_violations;
    if (actual != expected) {
        ++report.mismatches;
        if (!report.first_failure)
            report.first_failure = CheckFailure{{input.begin(), input.end()}, dir, expected, actual};
    }
}

/// Random multisets drawn from all 2^width patterns, `trials_per_direction`
/// in each direction. The first trial of each direction is the whole pattern
/// universe in shuffled order.
inline CheckReport exhaustive_check(const WordScheme& scheme, std::size_t trials_per_direction,
                                    std::uint64_t seed, const SortOptions& options = {}) {
    if (scheme.width > 12) throw scheme_error("exhaustive_check is limited to widths <= 12");
    const std::uint64_t universe = std::uint64_t{1} << scheme.width;
    SplitMix64 rng(seed);
    CheckReport report;
    std::vector<std::uint64_t> words;
    for (SortDirection dir : {SortDirection::ascending, SortDirection::descending}) {
        for (std::size_t t = 0; t < trials_per_direction; ++t) {
            if (t == 0) {
                words.resize(universe);
                std::iota(words.begin(), words.end(), std::uint64_t{0});
                bsort::shuffle(words.begin(), words.end(), rng);
            } else {
                words.resize(rng.below(2 * universe + 1));
                for (auto& w : words) w = rng.below(universe);
            }
            check_case(words, scheme, dir, report, options);
        }
    }
    return report;
}

}  // namespace bsort
