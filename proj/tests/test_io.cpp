#include <doctest.h>

#include <shocklab/io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace shocklab;

TEST_CASE("grid parsing") {
    std::vector<double> g = parse_grid("-8:0.5:0");
    CHECK(g.size() == 17);
    CHECK(g.front() == -8.0);
    CHECK(g.back() == doctest::Approx(0.0));
    std::vector<double> d = parse_grid("0:-0.25:-1");
    CHECK(d.size() == 5);
    CHECK(d.back() == doctest::Approx(-1.0));
    CHECK_THROWS_AS(parse_grid("1:0:2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("junk"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:-3"), ConfigError);
}

TEST_CASE("pair parsing") {
    auto [a, b] = parse_pair("1,0");
    CHECK(a == 1.0);
    CHECK(b == 0.0);
    CHECK_THROWS_AS(parse_pair("1"), ConfigError);
}

TEST_CASE("17-digit formatting round-trips") {
    for (double v : {1.0 / 3.0, 12.089548257354499, -3.3348293, 1e-300}) {
        double back = std::strtod(format_g17(v).c_str(), nullptr);
        CHECK(back == v);
    }
}

TEST_CASE("csv writer is deterministic") {
    std::string path = "test_csv_out.csv";
    auto write_once = [&]() {
        CsvWriter w(path, {"a", "b"});
        w.row({1.0 / 3.0, 2.0});
        w.row({-1e-9, 5.5});
    };
    write_once();
    std::ifstream f1(path);
    std::stringstream s1;
    s1 << f1.rdbuf();
    write_once();
    std::ifstream f2(path);
    std::stringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().substr(0, 4) == "a,b\n");
    std::remove(path.c_str());
}
