#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "bsort/cli.hpp"

using namespace bsort;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "bsort");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, std::string_view contents) {
    const auto dir = std::filesystem::temp_directory_path() / "bsort_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    write_file(path.string(), contents);
    return path;
}

std::size_t count_lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(CmdSort, ReferenceVectors) {
    auto in = temp_file("seven.txt", "5 7 1 6 3 4 0\n");
    auto r = run({"sort", "--type", "u8", "--input", in.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "0 1 3 4 5 6 7\n");

    in = temp_file("mixed.txt", "-8 -1 3 -7 2 6 3\n");
    r = run({"sort", "--type", "i8", "--order", "desc", "--input", in.string()});
    EXPECT_EQ(r.out, "6 3 3 2 -1 -7 -8\n");

    in = temp_file("tiny_floats.txt", "1.75 1.25 -2.5 -inf\n");
    r = run({"sort", "--type", "f32", "--input", in.string()});
    EXPECT_EQ(r.out, "-inf -2.5 1.25 1.75\n");
}

TEST(CmdSort, ExitCodes) {
    auto bad = temp_file("bad.txt", "1 2\nthree\n");
    auto r = run({"sort", "--type", "u8", "--input", bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;

    r = run({"sort", "--type", "u8", "--input", "/nonexistent/input.txt"});
    EXPECT_EQ(r.code, 3);

    auto ok = temp_file("ok.txt", "1 2\n");
    r = run({"sort", "--type", "u8", "--input", ok.string(), "--output", "/nonexistent/dir/out.txt"});
    EXPECT_EQ(r.code, 3);

    r = run({"sort", "--type", "q9", "--input", ok.string()});
    EXPECT_EQ(r.code, 2);
    r = run({"sort", "--input", ok.string()});
    EXPECT_EQ(r.code, 2);
    r = run({"frobnicate"});
    EXPECT_EQ(r.code, 2);
    r = run({"sort", "--order", "sideways"});
    EXPECT_EQ(r.code, 2);
}

TEST(CmdSort, BinaryRoundTripAndIdempotence) {
    const std::vector<std::uint64_t> words = {0x7FC00001u, 0x80000000u, 0x00000000u, 0xFFC00002u, 0x3F800000u};
    const auto in = temp_file("in.bin", encode_binary(words, schemes::f32));
    const auto dir = in.parent_path();
    auto r = run({"sort", "--input", in.string(), "--output", (dir / "out1.bin").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"sort", "--input", (dir / "out1.bin").string(), "--output", (dir / "out2.bin").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto once = read_file((dir / "out1.bin").string());
    EXPECT_EQ(once, read_file((dir / "out2.bin").string()));
    const auto file = decode_binary(once);
    EXPECT_EQ(file.words,
              (std::vector<std::uint64_t>{0xFFC00002u, 0x80000000u, 0x00000000u, 0x3F800000u, 0x7FC00001u}));

    r = run({"sort", "--type", "u8", "--input", in.string()});
    EXPECT_EQ(r.code, 2);  // header says f32
}

TEST(CmdSort, TextIdempotence) {
    const auto in = temp_file("idem.txt", "3.5 -0 0 nan -inf 1e-3\n");
    const auto dir = in.parent_path();
    ASSERT_EQ(run({"sort", "--type", "f64", "--input", in.string(), "--output", (dir / "t1.txt").string()}).code, 0);
    ASSERT_EQ(run({"sort", "--type", "f64", "--input", (dir / "t1.txt").string(), "--output",
                   (dir / "t2.txt").string()}).code,
              0);
    EXPECT_EQ(read_file((dir / "t1.txt").string()), "-inf -0 0 0.001 3.5 nan\n");
    EXPECT_EQ(read_file((dir / "t1.txt").string()), read_file((dir / "t2.txt").string()));
}

TEST(CmdVerify, AllSchemesPass) {
    const auto r = run({"verify", "--trials", "100"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("all schemes ok"), std::string::npos);
    EXPECT_EQ(count_lines(r.out), 2 + scheme_registry.size());
}

TEST(CmdVerify, EmptyCases) {
    const auto r = run({"verify", "--trials", "10", "--max-len", "0", "--type", "f32,i8"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(CmdVerify, MutantIsCaught) {
    const auto r = run({"verify", "--type", "f6", "--trials", "200", "--negative-order", "same"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("counterexample for f6"), std::string::npos);
    EXPECT_NE(r.err.find("case seed"), std::string::npos);
}

TEST(CmdVerify, RejectsZeroTrials) { EXPECT_EQ(run({"verify", "--trials", "0"}).code, 2); }

TEST(CmdTrace, SixBitFloats) {
    const auto r = run({"trace", "--type", "f6", "1.75,1.25,-2.5,-inf"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::string> rows;
    std::istringstream ss(r.out);
    for (std::string line; std::getline(ss, line);)
        if (line.starts_with("pass m=")) rows.push_back(line);
    ASSERT_EQ(rows.size(), 6u) << r.out;
    EXPECT_TRUE(rows.front().starts_with("pass m=100000"));
    EXPECT_NE(rows.back().find("-inf 111100 | -2.5 110001 | 1.25 001101 | 1.75 001111"), std::string::npos)
        << rows.back();
}

TEST(CmdTrace, ThreeBitAndSingleton) {
    auto r = run({"trace", "--type", "u3", "5,7,1,6,3,4,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("pass m=001  0 000 | 1 001 | 3 011 | 4 100 | 5 101 | 6 110 | 7 111"), std::string::npos)
        << r.out;

    r = run({"trace", "--type", "i4", "5"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pass m=0001  5 0101    (no pass)"), std::string::npos) << r.out;

    EXPECT_EQ(run({"trace", "--type", "u3", "9"}).code, 2);
}

TEST(CmdBench, CsvCardinalityAndFiltering) {
    const auto dir = std::filesystem::temp_directory_path() / "bsort_cli_test";
    std::filesystem::create_directories(dir);
    const auto csv = (dir / "out.csv").string();
    auto r = run({"bench", "--type", "u8", "--sizes", "1e4,1e5", "--repeats", "3", "--csv", csv});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = read_file(csv);
    EXPECT_EQ(count_lines(text), 13u);
    EXPECT_NE(text.find("platform-sort"), std::string::npos);

    r = run({"bench", "--type", "u8", "--sizes", "1e4,1e5", "--repeats", "3", "--algos", "bsort", "--csv", csv});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(read_file(csv).find("platform-sort"), std::string::npos);
    EXPECT_EQ(count_lines(read_file(csv)), 7u);
}

TEST(CmdBench, DefaultSeedIsStable) {
    unsetenv("BSORT_SEED");
    const std::vector<std::string> args = {"bench", "--type", "i32", "--sizes", "1000,2000", "--repeats", "3",
                                           "--algos", "bsort", "--csv", "/dev/null"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("seed=" + std::to_string(cli::default_seed)), std::string::npos) << a.out;

    setenv("BSORT_SEED", "12345", 1);
    const auto c = run(args);
    unsetenv("BSORT_SEED");
    EXPECT_NE(c.out.find("seed=12345"), std::string::npos);
    EXPECT_NE(c.out, a.out);

    auto with_flag = args;
    with_flag.insert(with_flag.end(), {"--seed", "77"});
    EXPECT_NE(run(with_flag).out.find("seed=77"), std::string::npos);
}

TEST(CmdBench, PlotsAndErrors) {
    const auto dir = std::filesystem::temp_directory_path() / "bsort_cli_plots";
    std::filesystem::remove_all(dir);
    auto r = run({"bench", "--type", "u8,f32", "--sizes", "1000,10000", "--repeats", "3", "--csv", "/dev/null",
                  "--plot-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(dir / "u8.svg"));
    EXPECT_TRUE(std::filesystem::exists(dir / "f32.svg"));

    EXPECT_EQ(run({"bench", "--type", "u8", "--sizes", "1e4", "--repeats", "2"}).code, 2);
    EXPECT_EQ(run({"bench", "--type", "u8", "--sizes", "abc"}).code, 2);
    EXPECT_EQ(run({"bench", "--type", "u8", "--algos", "timsort"}).code, 2);
    EXPECT_EQ(run({"bench", "--type", "u8", "--sizes", "1000", "--repeats", "3", "--dist", "gaussian-float"}).code, 2);
    EXPECT_EQ(run({"bench", "--type", "u8", "--sizes", "1000", "--repeats", "3", "--csv", "/dev/null", "--plot-dir",
                   dir.string()}).code,
              2);  // one size cannot be plotted
}
