#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bsort/oracle.hpp"
#include "bsort/random.hpp"

using namespace bsort;

namespace {
constexpr auto asc = SortDirection::ascending;
constexpr auto desc = SortDirection::descending;
}  // namespace

TEST(OracleSort, ReferenceVectors) {
    const std::vector<std::uint64_t> seven = {5, 7, 1, 6, 3, 4, 0};
    EXPECT_EQ(oracle_sort(seven, schemes::u8, asc), (std::vector<std::uint64_t>{0, 1, 3, 4, 5, 6, 7}));
    const std::vector<std::uint64_t> tiny_floats = {0b001111, 0b001101, 0b110001, 0b111100};
    EXPECT_EQ(oracle_sort(tiny_floats, schemes::f6, asc),
              (std::vector<std::uint64_t>{0b111100, 0b110001, 0b001101, 0b001111}));
}

TEST(OracleSort, OrderedWordRecomputesKey) {
    const OrderedWord w(0x80, schemes::i8);
    EXPECT_EQ(w.raw, 0x80u);
    EXPECT_EQ(w.key, 0u);
    const OrderedWord u(0x80, schemes::u8);
    EXPECT_EQ(u.key, 0x80u);
}

TEST(OracleSort, IdempotentAndReversible) {
    SplitMix64 rng(21);
    for (const auto& e : scheme_registry) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::uint64_t> a(rng.below(100));
            for (auto& w : a) w = rng() & e.scheme.word_mask();
            const auto up = oracle_sort(a, e.scheme, asc);
            EXPECT_EQ(oracle_sort(up, e.scheme, asc), up);
            auto down = oracle_sort(a, e.scheme, desc);
            std::reverse(down.begin(), down.end());
            EXPECT_EQ(down, up) << e.code;
        }
    }
}

TEST(OracleSort, AgreesWithNativeFloatComparison) {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint64_t> a;
        while (a.size() < 64) {
            const auto w = rng() & 0xFFFF'FFFFu;
            if (!schemes::f32.is_nan(w)) a.push_back(w);
        }
        a.push_back(0x80000000u);
        a.push_back(0x00000000u);
        const auto sorted = oracle_sort(a, schemes::f32, asc);
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            const float x = from_raw<float>(sorted[i - 1]), y = from_raw<float>(sorted[i]);
            ASSERT_LE(x, y);
            if (x == y && std::signbit(x) != std::signbit(y)) {
                EXPECT_TRUE(std::signbit(x));
            }
        }
    }
}

TEST(ExhaustiveCheck, SmallSchemes) {
    for (const WordScheme& s : {schemes::f6, schemes::i4, schemes::u3}) {
        const auto report = exhaustive_check(s, 1000, 99);
        EXPECT_EQ(report.trials, 2000u);
        EXPECT_EQ(report.mismatches, 0u) << code_of(s);
        EXPECT_EQ(report.bound_violations, 0u) << code_of(s);
        EXPECT_TRUE(report.ok());
    }
}

TEST(ExhaustiveCheck, UniverseSortsToIdentity) {
    std::vector<std::uint64_t> all = {5, 2, 7, 0, 3, 6, 1, 4};
    sort_words(std::span(all), schemes::u3, asc);
    EXPECT_EQ(all, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(ExhaustiveCheck, CatchesTheUninvertedNegativePartition) {
    SortOptions mutant;
    mutant.negative_order = NegativeOrder::same_as_positive;
    const auto report = exhaustive_check(schemes::f6, 50, 1, mutant);
    EXPECT_GT(report.mismatches, 0u);
    ASSERT_TRUE(report.first_failure.has_value());
    const auto& input = report.first_failure->input;
    const auto negatives = std::count_if(input.begin(), input.end(), [](auto w) { return (w & 0b100000) != 0; });
    EXPECT_GE(negatives, 2);
}

TEST(ExhaustiveCheck, RejectsWideSchemes) { EXPECT_THROW(exhaustive_check(schemes::u16, 1, 1), scheme_error); }
