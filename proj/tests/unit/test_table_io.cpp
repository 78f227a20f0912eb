#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sulfsim/errors.hpp"
#include "sulfsim/table_io.hpp"

using namespace sulfsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("table bytes are the documented format") {
    const std::string path = "test_table_a.csv";
    write_table(path, {"x", "u1"}, {{0.0, 0.011}});
    CHECK(slurp(path) == "x,u1\n0,0.011\n");
    write_table(path, {"x", "u1"}, {});
    CHECK(slurp(path) == "x,u1\n");
    write_table(path, {"x", "pH"}, {{1.0, std::nullopt}});
    CHECK(slurp(path) == "x,pH\n1,\n");
    std::remove(path.c_str());
}

TEST_CASE("floats round-trip exactly") {
    CHECK(std::strtod(format_double(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = mant(rng) * std::pow(10.0, expo(rng));
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("time labels are filename friendly") {
    CHECK(format_time_label(2000.0) == "2000");
    CHECK(format_time_label(0.0) == "0");
    CHECK(format_time_label(0.25) == "0.25");
    CHECK(format_time_label(20000.0) == "20000");
}

TEST_CASE("identical inputs give identical bytes") {
    const std::vector<std::string> header{"t", "v"};
    const std::vector<TableRow> rows{{1.0, 2.0}, {3.0, 1.0 / 3.0}};
    write_table("test_table_b1.csv", header, rows);
    write_table("test_table_b2.csv", header, rows);
    CHECK(slurp("test_table_b1.csv") == slurp("test_table_b2.csv"));
    std::remove("test_table_b1.csv");
    std::remove("test_table_b2.csv");
}

TEST_CASE("ragged rows and unwritable paths are IO errors") {
    CHECK_THROWS_AS(write_table("test_table_c.csv", {"a", "b"}, {{1.0}}), IoError);
    CHECK_THROWS_AS(write_table("/no_such_dir_zz/x.csv", {"a"}, {}), IoError);
    std::remove("test_table_c.csv");
}
