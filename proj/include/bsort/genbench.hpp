#pragma once

// Seeded datasets, the timing harness and CSV/SVG emission.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bsort/bitword.hpp"
#include "bsort/core.hpp"
#include "bsort/io.hpp"
#include "bsort/oracle.hpp"
#include "bsort/random.hpp"

namespace bsort {

class bench_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DistributionKind { uniform_bits, sorted, reverse_sorted, few_unique, gaussian_float };

struct Distribution {
    DistributionKind kind = DistributionKind::uniform_bits;
    std::uint64_t unique = 0;  // few_unique only

    static Distribution parse(std::string_view text) {
        if (text == "uniform-bits" || text == "uniform") return {DistributionKind::uniform_bits};
        if (text == "sorted") return {DistributionKind::sorted};
        if (text == "reverse-sorted" || text == "reverse") return {DistributionKind::reverse_sorted};
        if (text == "gaussian-float" || text == "gaussian") return {DistributionKind::gaussian_float};
        if (text == "few-unique") return {DistributionKind::few_unique, 16};
        constexpr std::string_view prefix = "few-unique(";
        if (text.starts_with(prefix) && text.ends_with(')')) {
            const auto digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
            std::uint64_t k = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && k > 0)
                return {DistributionKind::few_unique, k};
        }
        throw bench_error("unknown distribution '" + std::string(text) + "'");
    }

    std::string name() const {
        switch (kind) {
            case DistributionKind::uniform_bits: return "uniform-bits";
            case DistributionKind::sorted: return "sorted";
            case DistributionKind::reverse_sorted: return "reverse-sorted";
            case DistributionKind::few_unique: return "few-unique(" + std::to_string(unique) + ")";
            case DistributionKind::gaussian_float: return "gaussian-float";
        }
        return "?";
    }

    friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct DatasetSpec {
    WordScheme scheme;
    std::size_t size = 0;
    Distribution distribution;
    std::uint64_t seed = 0;
};

inline std::vector<std::uint64_t> generate(const DatasetSpec& spec) {
    const WordScheme& s = spec.scheme;
    if (!s.valid()) throw bench_error("invalid scheme");
    SplitMix64 rng(spec.seed);
    std::vector<std::uint64_t> words(spec.size);
    switch (spec.distribution.kind) {
        case DistributionKind::uniform_bits:
        case DistributionKind::sorted:
        case DistributionKind::reverse_sorted:
            for (auto& w : words) w = rng() & s.word_mask();
            if (spec.distribution.kind != DistributionKind::uniform_bits) {
                std::sort(words.begin(), words.end(), [&](std::uint64_t a, std::uint64_t b) {
                    return total_order_key(a, s) < total_order_key(b, s);
                });
                if (spec.distribution.kind == DistributionKind::reverse_sorted) std::reverse(words.begin(), words.end());
            }
            break;
        case DistributionKind::few_unique: {
            if (spec.distribution.unique == 0) throw bench_error("few-unique needs k >= 1");
            std::vector<std::uint64_t> pool(spec.distribution.unique);
            for (auto& p : pool) p = rng() & s.word_mask();
            for (auto& w : words) w = pool[rng.below(pool.size())];
            break;
        }
        case DistributionKind::gaussian_float: {
            if (s.kind != WordKind::Float) throw bench_error("gaussian-float requires a float scheme");
            const std::uint64_t exp_all = (std::uint64_t{1} << s.exp_bits) - 1;
            for (auto& w : words) {
                do {
                    w = encode_float(rng.gaussian(), s);
                } while (s.exponent_field(w) == exp_all);
            }
            break;
        }
    }
    return words;
}

/// FNV-1a over the little-endian bytes of each word.
inline std::uint64_t dataset_checksum(std::span<const std::uint64_t> words, const WordScheme& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const std::size_t stride = bytes_per_word(s);
    for (auto w : words)
        for (std::size_t b = 0; b < stride; ++b) {
            h ^= (w >> (8 * b)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    return h;
}

enum class Algo { bsort, platform_sort, oracle };

inline std::string_view algo_name(Algo a) {
    switch (a) {
        case Algo::bsort: return "bsort";
        case Algo::platform_sort: return "platform-sort";
        case Algo::oracle: return "oracle";
    }
    return "?";
}

inline Algo parse_algo(std::string_view text) {
    for (Algo a : {Algo::bsort, Algo::platform_sort, Algo::oracle})
        if (algo_name(a) == text) return a;
    throw bench_error("unknown algorithm '" + std::string(text) + "'");
}

struct BenchCounters {
    std::uint64_t inspections = 0;
    std::uint64_t swaps = 0;
    unsigned max_depth = 0;
    friend bool operator==(const BenchCounters&, const BenchCounters&) = default;
};

struct BenchRecord {
    Algo algo = Algo::bsort;
    std::string scheme;
    std::size_t size = 0;
    std::string distribution;
    std::size_t repeat = 0;
    std::uint64_t ns = 0;
    std::optional<BenchCounters> counters;  // bsort only
    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

enum class BenchPhase { clone, timed_begin, timed_end, verify };
using BenchHook = std::function<void(BenchPhase)>;

namespace detail {

/// IEEE total order on native floats: NaN-free pairs compare natively with
/// -0 before +0; anything involving NaN falls back to the bit key.
template <class F>
bool float_total_less(F a, F b) {
    if (!std::isnan(a) && !std::isnan(b)) return a < b || (a == b && std::signbit(a) && !std::signbit(b));
    const WordScheme s = sizeof(F) == 4 ? schemes::f32 : schemes::f64;
    return total_order_key(to_raw(a), s) < total_order_key(to_raw(b), s);
}

template <class T, class Cmp>
std::uint64_t timed_std_sort(std::vector<T>& v, SortDirection dir, Cmp less) {
    const auto t0 = std::chrono::steady_clock::now();
    if (is_ascending(dir))
        std::sort(v.begin(), v.end(), less);
    else
        std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return less(b, a); });
    const auto t1 = std::chrono::steady_clock::now();
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

// Runs `sort` on a native copy of `words`, converting back afterwards; the
// conversions sit outside the timed region.
template <class T, class Fn>
std::uint64_t time_native(const std::vector<std::uint64_t>& words, std::vector<std::uint64_t>& out,
                          const BenchHook& hook, Fn&& sort) {
    if (hook) hook(BenchPhase::clone);
    std::vector<T> native(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) native[i] = from_raw<T>(words[i]);
    if (hook) hook(BenchPhase::timed_begin);
    const std::uint64_t ns = sort(native);
    if (hook) hook(BenchPhase::timed_end);
    out.resize(native.size());
    for (std::size_t i = 0; i < native.size(); ++i) out[i] = to_raw(native[i]);
    return ns;
}

}  // namespace detail

/// Sorts a copy of `words` with the platform comparison sort over the native
/// element type. Returns elapsed nanoseconds of the sort alone.
inline std::uint64_t platform_sort(const std::vector<std::uint64_t>& words, const WordScheme& s, SortDirection dir,
                                   std::vector<std::uint64_t>& out, const BenchHook& hook = {}) {
    auto run = [&]<class T>(auto less) {
        return detail::time_native<T>(words, out, hook,
                                      [&](std::vector<T>& v) { return detail::timed_std_sort(v, dir, less); });
    };
    if (s == schemes::f32) return run.template operator()<float>(detail::float_total_less<float>);
    if (s == schemes::f64) return run.template operator()<double>(detail::float_total_less<double>);
    if (s.kind != WordKind::Float && (s.width == 8 || s.width == 16 || s.width == 32 || s.width == 64)) {
        return with_word_type(s.width, [&]<class W>(std::type_identity<W>) -> std::uint64_t {
            if (s.kind == WordKind::Signed)
                return run.template operator()<std::make_signed_t<W>>(std::less<std::make_signed_t<W>>{});
            return run.template operator()<W>(std::less<W>{});
        });
    }
    // Toy widths have no native type; compare bit keys instead.
    return run.template operator()<std::uint64_t>(
        [&](std::uint64_t a, std::uint64_t b) { return total_order_key(a, s) < total_order_key(b, s); });
}

/// Radix-sorts a copy of `words` in the narrowest container holding the scheme.
inline std::uint64_t timed_bsort(const std::vector<std::uint64_t>& words, const WordScheme& s, SortDirection dir,
                                 std::vector<std::uint64_t>& out, SortStats& stats, const BenchHook& hook = {}) {
    return with_word_type(s.width, [&]<class W>(std::type_identity<W>) {
        if (hook) hook(BenchPhase::clone);
        std::vector<W> native(words.begin(), words.end());
        if (hook) hook(BenchPhase::timed_begin);
        const auto t0 = std::chrono::steady_clock::now();
        stats = sort_words(std::span<W>(native), s, dir);
        const auto t1 = std::chrono::steady_clock::now();
        if (hook) hook(BenchPhase::timed_end);
        out.assign(native.begin(), native.end());
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    });
}

inline std::vector<BenchRecord> run_bench(std::span<const DatasetSpec> specs, std::span<const Algo> algos,
                                          std::size_t repeats, const BenchHook& hook = {}) {
    if (repeats < 3) throw bench_error("repeats must be >= 3");
    std::vector<BenchRecord> records;
    const SortDirection dir = SortDirection::ascending;
    for (const auto& spec : specs) {
        const auto words = generate(spec);
        const auto expected = oracle_sort(words, spec.scheme, dir);
        const std::string code(code_of(spec.scheme));
        std::vector<std::uint64_t> out;
        for (Algo algo : algos) {
            for (std::size_t r = 0; r < repeats; ++r) {
                BenchRecord rec{algo, code, spec.size, spec.distribution.name(), r, 0, std::nullopt};
                switch (algo) {
                    case Algo::bsort: {
                        SortStats stats;
                        rec.ns = timed_bsort(words, spec.scheme, dir, out, stats, hook);
                        rec.counters = BenchCounters{stats.total_inspections(), stats.swaps, stats.max_depth};
                        break;
                    }
                    case Algo::platform_sort:
                        rec.ns = platform_sort(words, spec.scheme, dir, out, hook);
                        break;
                    case Algo::oracle: {
                        if (hook) hook(BenchPhase::clone);
                        std::vector<std::uint64_t> copy = words;
                        if (hook) hook(BenchPhase::timed_begin);
                        const auto t0 = std::chrono::steady_clock::now();
                        out = oracle_sort(copy, spec.scheme, dir);
                        const auto t1 = std::chrono::steady_clock::now();
                        if (hook) hook(BenchPhase::timed_end);
                        rec.ns = static_cast<std::uint64_t>(
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
                        break;
                    }
                }
                rec.ns = std::max<std::uint64_t>(rec.ns, 1);
                if (hook) hook(BenchPhase::verify);
                if (out != expected) {
                    throw bench_error("verification failed: " + std::string(algo_name(algo)) + " on " + code +
                                      " n=" + std::to_string(spec.size) + " " + spec.distribution.name() +
                                      " seed=" + std::to_string(spec.seed) + " repeat=" + std::to_string(r));
                }
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

// CSV

inline constexpr std::string_view csv_header = "algo,scheme,size,distribution,repeat,ns,inspections,swaps,max_depth";

inline std::string emit_csv(std::span<const BenchRecord> records) {
    if (records.empty()) throw bench_error("no records to emit");
    std::string out(csv_header);
    out += '\n';
    for (const auto& r : records) {
        out += algo_name(r.algo);
        out += ',' + r.scheme + ',' + std::to_string(r.size) + ',' + r.distribution + ',' + std::to_string(r.repeat) +
               ',' + std::to_string(r.ns) + ',';
        if (r.counters)
            out += std::to_string(r.counters->inspections) + ',' + std::to_string(r.counters->swaps) + ',' +
                   std::to_string(r.counters->max_depth);
        else
            out += ",,";
        out += '\n';
    }
    return out;
}

inline std::vector<BenchRecord> parse_csv(std::string_view text) {
    std::vector<BenchRecord> records;
    std::size_t line_no = 0;
    auto to_u64 = [&](std::string_view f) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc{} || ptr != f.data() + f.size())
            throw format_error("csv line " + std::to_string(line_no) + ": bad number '" + std::string(f) + "'");
        return v;
    };
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line_no == 1) {
            if (line != csv_header) throw format_error("unexpected csv header");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                f.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (f.size() != 9) throw format_error("csv line " + std::to_string(line_no) + ": expected 9 fields");
        BenchRecord r;
        try {
            r.algo = parse_algo(f[0]);
        } catch (const bench_error& e) {
            throw format_error(e.what());
        }
        r.scheme = f[1];
        r.size = to_u64(f[2]);
        r.distribution = f[3];
        r.repeat = to_u64(f[4]);
        r.ns = to_u64(f[5]);
        if (!f[6].empty())
            r.counters = BenchCounters{to_u64(f[6]), to_u64(f[7]), static_cast<unsigned>(to_u64(f[8]))};
        records.push_back(std::move(r));
    }
    return records;
}

inline double median(std::vector<std::uint64_t> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? static_cast<double>(v[mid]) : (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid])) / 2;
}

// SVG

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (n, median ns)
};

namespace detail {

inline std::string fmt_num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

inline std::string render_svg(const std::string& title, const std::vector<PlotSeries>& series) {
    constexpr double W = 720, H = 440, left = 80, right = 170, top = 40, bottom = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, std::log10(x));
            xmax = std::max(xmax, std::log10(x));
            ymin = std::min(ymin, std::log10(y));
            ymax = std::max(ymax, std::log10(y));
        }
    xmin = std::floor(xmin);
    xmax = std::max(std::ceil(xmax), xmin + 1);
    ymin = std::floor(ymin);
    ymax = std::max(std::ceil(ymax), ymin + 1);
    const double pw = W - left - right, ph = H - top - bottom;
    auto px = [&](double x) { return left + (std::log10(x) - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + ph - (std::log10(y) - ymin) / (ymax - ymin) * ph; };

    static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double e = xmin; e <= xmax + 1e-9; e += 1) {
        const double x = left + (e - xmin) / (xmax - xmin) * pw;
        o << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (double e = ymin; e <= ymax + 1e-9; e += 1) {
        const double y = top + ph - (e - ymin) / (ymax - ymin) * ph;
        o << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    o << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">n (elements)</text>\n";
    o << "<text transform=\"translate(20," << top + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">median wall time (ns)</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* c = colors[i % std::size(colors)];
        o << "<polyline class=\"series\" data-label=\"" << series[i].label << "\" fill=\"none\" stroke=\"" << c
          << "\" stroke-width=\"2\" points=\"";
        for (std::size_t j = 0; j < series[i].points.size(); ++j) {
            const auto [x, y] = series[i].points[j];
            o << (j ? " " : "") << fmt_num(px(x)) << ',' << fmt_num(py(y));
        }
        o << "\"/>\n";
        for (auto [x, y] : series[i].points)
            o << "<circle cx=\"" << fmt_num(px(x)) << "\" cy=\"" << fmt_num(py(y)) << "\" r=\"3\" fill=\"" << c
              << "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(i);
        o << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 36 << "\" y2=\"" << ly
          << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly + 4 << "\">" << series[i].label << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace detail

/// One SVG per scheme, wall time against n on log-log axes, median over
/// repeats, one polyline per algorithm (and distribution when several are
/// present).
inline std::map<std::string, std::string> emit_plot(std::span<const BenchRecord> records) {
    if (records.empty()) throw bench_error("no records to plot");
    std::set<std::string> distributions;
    for (const auto& r : records) distributions.insert(r.distribution);
    // scheme -> label -> size -> times
    std::map<std::string, std::map<std::string, std::map<std::size_t, std::vector<std::uint64_t>>>> groups;
    for (const auto& r : records) {
        std::string label(algo_name(r.algo));
        if (distributions.size() > 1) label += " " + r.distribution;
        groups[r.scheme][label][r.size].push_back(r.ns);
    }
    std::map<std::string, std::string> plots;
    for (const auto& [scheme, by_label] : groups) {
        std::vector<PlotSeries> series;
        for (const auto& [label, by_size] : by_label) {
            if (by_size.size() < 2)
                throw bench_error("plot for " + scheme + "/" + label + " needs at least 2 sizes");
            PlotSeries s{label, {}};
            for (const auto& [n, times] : by_size) s.points.emplace_back(static_cast<double>(n), median(times));
            series.push_back(std::move(s));
        }
        plots[scheme] = detail::render_svg(scheme + ": median wall time vs n", series);
    }
    return plots;
}

/// Writes emit_plot's output as <dir>/<scheme>.svg and returns the paths.
inline std::vector<std::filesystem::path> write_plots(std::span<const BenchRecord> records,
                                                      const std::filesystem::path& dir) {
    const auto plots = emit_plot(records);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> paths;
    for (const auto& [scheme, svg] : plots) {
        auto path = dir / (scheme + ".svg");
        write_file(path.string(), svg);
        paths.push_back(std::move(path));
    }
    return paths;
}

}  // namespace bsort
