#pragma once

// The `bsort` command line: sort, verify, trace and bench.
//
// Exit codes: 0 success, 1 verification mismatch, 2 parse error, 3 I/O error.

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsort/bitword.hpp"
#include "bsort/core.hpp"
#include "bsort/genbench.hpp"
#include "bsort/io.hpp"
#include "bsort/oracle.hpp"
#include "bsort/random.hpp"
#include "bsort/trace.hpp"

namespace bsort::cli {

enum ExitCode : int { exit_ok = 0, exit_mismatch = 1, exit_parse = 2, exit_io = 3 };

/// Used when neither --seed nor BSORT_SEED is given. ASCII "bsort".
inline constexpr std::uint64_t default_seed = 0x62736f7274ULL;

struct CliConfig {
    std::string subcommand;
    std::string type;  // one code, or a comma list for verify/bench
    SortDirection order = SortDirection::ascending;
    std::string input = "-";
    std::string output = "-";
    std::optional<FileFormat> format;
    std::vector<std::size_t> sizes{10'000, 100'000, 1'000'000, 10'000'000};
    std::vector<Algo> algos{Algo::bsort, Algo::platform_sort};
    std::string distribution = "uniform-bits";
    std::size_t repeats = 5;
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1000;
    std::size_t max_len = 256;
    std::string csv;
    std::string plot_dir;
    std::vector<std::string> values;
    NegativeOrder negative_order = NegativeOrder::mirrored;
};

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

inline std::uint64_t parse_seed(const std::string& text) {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw format_error("bad seed '" + text + "'");
    return v;
}

/// --seed, then BSORT_SEED, then default_seed.
inline std::uint64_t resolve_seed(const CliConfig& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv("BSORT_SEED"); env && *env) {
        try {
            return parse_seed(env);
        } catch (const std::exception&) {
            throw format_error(std::string("bad BSORT_SEED '") + env + "'");
        }
    }
    return default_seed;
}

inline std::vector<WordScheme> schemes_for(const CliConfig& cfg) {
    std::vector<WordScheme> out;
    if (cfg.type.empty()) {
        for (const auto& e : scheme_registry) out.push_back(e.scheme);
        return out;
    }
    for (const auto& code : split_list(cfg.type)) out.push_back(scheme_from_code(code));
    return out;
}

inline std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return read_file(path);
}

inline void write_output(const std::string& path, std::string_view bytes, std::ostream& out) {
    if (path == "-") {
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw io_error("write to stdout failed");
        return;
    }
    write_file(path, bytes);
}

inline std::string hex_words(std::span<const std::uint64_t> words) {
    std::ostringstream o;
    o << std::hex;
    for (std::size_t i = 0; i < words.size(); ++i) o << (i ? " " : "") << "0x" << words[i];
    return o.str();
}

// Runs `body`, mapping library exceptions onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
    try {
        return body();
    } catch (const format_error& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const scheme_error& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const io_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    }
}

inline int cmd_sort(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string bytes = read_input(cfg.input);
        const FileFormat format = cfg.format.value_or(looks_binary(bytes) ? FileFormat::binary : FileFormat::text);
        WordFile file;
        if (format == FileFormat::binary) {
            file = decode_binary(bytes);
            if (!cfg.type.empty() && scheme_from_code(cfg.type) != file.scheme)
                throw format_error("--type " + cfg.type + " does not match file scheme " +
                                   std::string(code_of(file.scheme)));
        } else {
            if (cfg.type.empty()) throw format_error("text input requires --type");
            file.scheme = scheme_from_code(cfg.type);
            file.words = parse_text(bytes, file.scheme);
        }
        sort_words(std::span<std::uint64_t>(file.words), file.scheme, cfg.order);
        write_output(cfg.output,
                     format == FileFormat::binary ? encode_binary(file.words, file.scheme)
                                                  : format_text(file.words, file.scheme),
                     out);
        return int{exit_ok};
    });
}

/// Random case for verification: uniform raw patterns, with floats salted by
/// signed zeros, infinities and NaNs carrying random payloads.
inline std::vector<std::uint64_t> verification_case(const WordScheme& s, std::size_t max_len, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::uint64_t> words(rng.below(max_len + 1));
    for (auto& w : words) {
        w = rng() & s.word_mask();
        if (s.kind != WordKind::Float || rng.below(4) != 0) continue;
        const bool negative = rng.below(2) != 0;
        switch (rng.below(4)) {
            case 0: w = negative ? s.sign_bit() : 0; break;
            case 1: w = infinity_word(s, negative); break;
            case 2: w = quiet_nan(s, negative); break;
            default: {
                const std::uint64_t payload = 1 + rng.below((std::uint64_t{1} << s.mant_bits) - 1);
                w = infinity_word(s, negative) | payload;
            }
        }
    }
    return words;
}

inline std::uint64_t case_seed(std::uint64_t base, const WordScheme& s, SortDirection dir, std::size_t trial) {
    SplitMix64 mix(base ^ (std::uint64_t{scheme_entry(s).id} << 56) ^ (std::uint64_t{is_ascending(dir)} << 48) ^ trial);
    return mix();
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.trials < 1) throw format_error("--trials must be >= 1");
        const std::uint64_t seed = resolve_seed(cfg);
        SortOptions options;
        options.negative_order = cfg.negative_order;
        std::size_t failures = 0;
        out << "verify seed=" << seed << " trials=" << cfg.trials << " max-len=" << cfg.max_len << '\n';
        for (const auto& scheme : schemes_for(cfg)) {
            CheckReport report;
            std::optional<std::uint64_t> failing_seed;
            for (SortDirection dir : {SortDirection::ascending, SortDirection::descending}) {
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    const std::uint64_t cs = case_seed(seed, scheme, dir, t);
                    const auto words = verification_case(scheme, cfg.max_len, cs);
                    const std::size_t before = report.mismatches + report.bound_violations;
                    check_case(words, scheme, dir, report, options);
                    if (!failing_seed && report.mismatches + report.bound_violations != before) failing_seed = cs;
                }
            }
            out << std::left << std::setw(4) << code_of(scheme) << " trials=" << report.trials
                << " mismatches=" << report.mismatches << " bound_violations=" << report.bound_violations
                << (report.ok() ? "  ok" : "  FAIL") << '\n';
            if (!report.ok()) {
                ++failures;
                err << "counterexample for " << code_of(scheme) << " (case seed " << *failing_seed << "):\n";
                if (const auto& f = report.first_failure) {
                    err << "  order:    " << (is_ascending(f->direction) ? "asc" : "desc") << '\n'
                        << "  input:    " << format_text(f->input, scheme)
                        << "  raw:      " << hex_words(f->input) << '\n'
                        << "  expected: " << format_text(f->expected, scheme)
                        << "  actual:   " << format_text(f->actual, scheme);
                }
            }
        }
        out << (failures ? "FAILED" : "all schemes ok") << '\n';
        return failures ? int{exit_mismatch} : int{exit_ok};
    });
}

inline int cmd_trace(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.type.empty()) throw format_error("trace requires --type");
        const WordScheme scheme = scheme_from_code(cfg.type);
        std::string text;
        for (const auto& v : cfg.values) text += v + ' ';
        if (cfg.values.empty()) text = read_input(cfg.input);
        const auto words = parse_text(text, scheme);
        out << render_trace(trace_sort(words, scheme, cfg.order));
        return int{exit_ok};
    });
}

inline int cmd_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::uint64_t seed = resolve_seed(cfg);
        const Distribution dist = [&] {
            try {
                return Distribution::parse(cfg.distribution);
            } catch (const bench_error& e) {
                throw format_error(e.what());
            }
        }();
        const std::vector<WordScheme> scheme_list =
            cfg.type.empty() ? std::vector<WordScheme>{schemes::u32} : schemes_for(cfg);
        if (cfg.repeats < 3) throw format_error("--repeats must be >= 3");
        std::vector<DatasetSpec> specs;
        for (const auto& s : scheme_list)
            for (auto n : cfg.sizes) {
                if (dist.kind == DistributionKind::gaussian_float && s.kind != WordKind::Float)
                    throw format_error("gaussian-float requires a float scheme");
                specs.push_back({s, n, dist, seed});
            }
        for (const auto& spec : specs) {
            const auto words = generate(spec);
            out << "dataset " << code_of(spec.scheme) << " n=" << spec.size << ' ' << spec.distribution.name()
                << " seed=" << spec.seed << " checksum=0x" << std::hex << dataset_checksum(words, spec.scheme)
                << std::dec << '\n';
        }
        std::vector<BenchRecord> records;
        try {
            records = run_bench(specs, cfg.algos, cfg.repeats);
        } catch (const bench_error& e) {
            err << e.what() << '\n';
            return int{exit_mismatch};
        }
        const std::string csv = emit_csv(records);
        if (cfg.csv.empty())
            out << csv;
        else
            write_file(cfg.csv, csv);
        if (!cfg.plot_dir.empty()) {
            try {
                for (const auto& p : write_plots(records, cfg.plot_dir)) out << "wrote " << p.string() << '\n';
            } catch (const bench_error& e) {
                throw format_error(e.what());
            }
        }
        return int{exit_ok};
    });
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"In-place MSB binary radix sort for integer and floating-point words"};
    app.require_subcommand(1);
    CliConfig cfg;
    std::string order = "asc";
    std::string format;
    std::string sizes;
    std::string algos;
    std::string seed;
    std::string negative_order = "mirrored";

    const std::string codes = [] {
        std::string s;
        for (const auto& e : scheme_registry) s += (s.empty() ? "" : ",") + std::string(e.code);
        return s;
    }();

    auto common = [&](CLI::App* sub) {
        sub->add_option("--type", cfg.type, "Scheme code (" + codes + ")");
        sub->add_option("--order", order, "asc or desc")->check(CLI::IsMember({"asc", "desc"}));
        sub->add_option("--seed", seed, "PRNG seed (overrides BSORT_SEED)");
    };

    auto* sort = app.add_subcommand("sort", "Sort a text or binary word file");
    common(sort);
    sort->add_option("--input", cfg.input, "Input path, - for stdin");
    sort->add_option("--output", cfg.output, "Output path, - for stdout");
    sort->add_option("--format", format, "text or binary (default: detect)")
        ->check(CLI::IsMember({"text", "binary"}));

    auto* verify = app.add_subcommand("verify", "Compare the radix sort with the oracle on random cases");
    common(verify);
    verify->add_option("--trials", cfg.trials, "Cases per scheme and direction");
    verify->add_option("--max-len", cfg.max_len, "Maximum case length");
    verify->add_option("--negative-order", negative_order,
                       "mirrored, or same to reproduce the un-inverted negative partition")
        ->check(CLI::IsMember({"mirrored", "same"}));

    auto* trace = app.add_subcommand("trace", "Print each partition level of a small sort");
    common(trace);
    trace->add_option("values", cfg.values, "Values, comma or space separated");
    trace->add_option("--input", cfg.input, "Read values from a file instead");

    auto* bench = app.add_subcommand("bench", "Time the radix sort against the platform sort");
    common(bench);
    bench->add_option("--sizes", sizes, "Comma list of sizes, e.g. 1e4,1e5");
    bench->add_option("--algos", algos, "Comma list of bsort, platform-sort, oracle");
    bench->add_option("--dist", cfg.distribution,
                      "uniform-bits, sorted, reverse-sorted, few-unique(k), gaussian-float");
    bench->add_option("--repeats", cfg.repeats, "Repeats per dataset (>= 3)");
    bench->add_option("--csv", cfg.csv, "CSV output path (default stdout)");
    bench->add_option("--plot-dir", cfg.plot_dir, "Write one SVG per scheme here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int{exit_ok} : int{exit_parse};
    }

    try {
        cfg.order = order == "desc" ? SortDirection::descending : SortDirection::ascending;
        if (!format.empty()) cfg.format = format == "binary" ? FileFormat::binary : FileFormat::text;
        if (!seed.empty()) cfg.seed = parse_seed(seed);
        cfg.negative_order = negative_order == "same" ? NegativeOrder::same_as_positive : NegativeOrder::mirrored;
        if (!sizes.empty()) {
            cfg.sizes.clear();
            for (const auto& item : split_list(sizes)) {
                double v = 0;
                auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
                if (ec != std::errc{} || ptr != item.data() + item.size() || v < 1 || v != std::floor(v) || v > 1e12)
                    throw format_error("bad size '" + item + "'");
                cfg.sizes.push_back(static_cast<std::size_t>(v));
            }
        }
        if (!algos.empty()) {
            cfg.algos.clear();
            for (const auto& item : split_list(algos)) cfg.algos.push_back(parse_algo(item));
        }
    } catch (const std::exception& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    }

    if (*sort) return cmd_sort(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*trace) return cmd_trace(cfg, out, err);
    return cmd_bench(cfg, out, err);
}

}  // namespace bsort::cli
