#pragma once

// Level-by-level rendering of a sort, one row per bit position from the MSB
// down. Passes on sibling ranges are independent, so replaying each level's
// passes over the previous row reproduces the state a breadth-first sweep
// would show.

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bsort/bitword.hpp"
#include "bsort/core.hpp"
#include "bsort/io.hpp"

namespace bsort {

struct TracePass {
    PartitionRange range;
    std::size_t k = 0;
    SortDirection direction = SortDirection::ascending;
};

struct TraceRow {
    Mask mask;
    std::vector<TracePass> passes;
    std::vector<std::uint64_t> words;   // array state after this level
    std::set<std::size_t> boundaries;   // partition dividers so far, in (0, n)
};

struct Trace {
    WordScheme scheme;
    SortDirection direction = SortDirection::ascending;
    std::vector<std::uint64_t> input;
    std::vector<TraceRow> rows;
    SortStats stats;
};

inline Trace trace_sort(std::vector<std::uint64_t> words, const WordScheme& scheme, SortDirection dir) {
    struct Event {
        PassRecord pass;
        std::vector<std::uint64_t> snapshot;
    };
    Trace trace{scheme, dir, words, {}, {}};
    std::vector<Event> events;
    const PassObserver observer = [&](const PassRecord& p) {
        events.push_back({p, {words.begin() + static_cast<std::ptrdiff_t>(p.range.ps),
                              words.begin() + static_cast<std::ptrdiff_t>(p.range.pe)}});
    };
    SortOptions options;
    options.observer = &observer;
    trace.stats = sort_words(std::span<std::uint64_t>(words), scheme, dir, options);

    std::vector<std::uint64_t> state = trace.input;
    std::set<std::size_t> boundaries;
    for (Mask m = mask_msb(scheme); !m.is_zero(); m = mask_shift_right(m)) {
        TraceRow row{m, {}, {}, {}};
        for (const auto& e : events) {
            if (e.pass.mask != m) continue;
            std::copy(e.snapshot.begin(), e.snapshot.end(),
                      state.begin() + static_cast<std::ptrdiff_t>(e.pass.range.ps));
            row.passes.push_back({e.pass.range, e.pass.k, e.pass.direction});
            if (e.pass.k > 0 && e.pass.k < state.size()) boundaries.insert(e.pass.k);
        }
        row.words = state;
        row.boundaries = boundaries;
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

inline std::string render_trace(const Trace& t) {
    auto cells = [&](const std::vector<std::uint64_t>& words, const std::set<std::size_t>& dividers) {
        std::string line;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) line += dividers.count(i) ? " | " : "  ";
            line += format_value(words[i], t.scheme) + " " + to_binary_string(words[i], t.scheme.width);
        }
        return line;
    };
    std::ostringstream o;
    o << code_of(t.scheme) << ' ' << (is_ascending(t.direction) ? "asc" : "desc") << ", " << t.input.size()
      << " value(s)\n";
    o << "input    " << std::string(t.scheme.width, ' ') << "  " << cells(t.input, {}) << '\n';
    for (const auto& row : t.rows) {
        o << "pass m=" << to_binary_string(row.mask.value(), t.scheme.width) << "  " << cells(row.words, row.boundaries);
        if (row.passes.empty()) {
            o << "    (no pass)";
        } else {
            o << "    k:";
            for (const auto& p : row.passes)
                o << ' ' << p.k << '@' << '[' << p.range.ps << ',' << p.range.pe << ')'
                  << (is_ascending(p.direction) ? "asc" : "desc");
        }
        o << '\n';
    }
    o << "inspections " << t.stats.total_inspections() << ", swaps " << t.stats.swaps << ", max depth "
      << t.stats.max_depth << '\n';
    return o.str();
}

}  // namespace bsort
