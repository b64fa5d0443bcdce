#include "jlg/csv.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace jlg;

namespace {

double reparse(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(res.ec == std::errc());
    REQUIRE(res.ptr == s.data() + s.size());
    return v;
}

} // namespace

TEST_CASE("format_double round-trips exactly and stays shortest") {
    for (double x : {0.5, 1.0 / 3.0, 3.7453068751485234823e-12, 123456.789,
                     -0.0001, 1.7e308, 5e-324, 0.1 + 0.2}) {
        const std::string s = format_double(x);
        CHECK(reparse(s) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    // positional near one, scientific once it is shorter
    CHECK(format_double(0.001).find('e') == std::string::npos);
    CHECK(format_double(0.0001).find('e') != std::string::npos);
}

TEST_CASE("csv writer quotes exactly when needed") {
    std::ostringstream out;
    write_csv_row(out, {"plain", "with,comma", "with\"quote", "multi\nline", ""});
    CHECK(out.str() ==
          "plain,\"with,comma\",\"with\"\"quote\",\"multi\nline\",\n");
}

TEST_CASE("csv writer and parser round-trip") {
    std::ostringstream out;
    write_csv_row(out, {"a", "b,c", "d\"e\"f"});
    write_csv_row(out, {"1.5", "", "last"});
    std::istringstream in(out.str());
    const auto rows = parse_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"a", "b,c", "d\"e\"f"});
    CHECK(rows[1] == std::vector<std::string>{"1.5", "", "last"});
}

TEST_CASE("csv parser handles crlf and missing final newline") {
    std::istringstream in("x,y\r\n1,2\r\n3,4");
    const auto rows = parse_csv(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[2] == std::vector<std::string>{"3", "4"});
}

TEST_CASE("grid descriptors") {
    const auto list = parse_grid("1,2.5,10");
    REQUIRE(list.size() == 3);
    CHECK(list[1] == 2.5);

    const auto lin = parse_grid("linspace:0:1:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[0] == 0.0);
    CHECK(lin[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lin[4] == 1.0);

    const auto lg = parse_grid("logspace:2:4:3");
    REQUIRE(lg.size() == 3);
    CHECK(lg[0] == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(lg[1] == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(lg[2] == doctest::Approx(10000.0).epsilon(1e-12));

    CHECK(parse_grid("linspace:3:7:1").size() == 1);
    CHECK(parse_grid("linspace:3:7:1")[0] == 3.0);

    CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("linspace:0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("linspace:a:1:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("linspace:0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1,two,3"), std::invalid_argument);
}

TEST_CASE("dataset parsing") {
    std::istringstream in(
        "# comment line\n"
        "\n"
        "0 0 0\n"
        "  # indented comment\n"
        "1.5\t2.5 -3\n"
        "4 5e-1 6\r\n");
    const PointSet ps = parse_points(in);
    CHECK(ps.n == 3);
    CHECK(ps.d == 3);
    REQUIRE(ps.coords.size() == 9);
    CHECK(ps.coords[3] == 1.5);
    CHECK(ps.coords[4] == 2.5);
    CHECK(ps.coords[5] == -3.0);
    CHECK(ps.coords[7] == 0.5);
}

TEST_CASE("dataset rejects ragged rows, junk, and single points") {
    std::istringstream ragged("1 2 3\n4 5\n");
    CHECK_THROWS_AS(parse_points(ragged), std::invalid_argument);

    std::istringstream junk("1 2\n3 oops\n");
    CHECK_THROWS_AS(parse_points(junk), std::invalid_argument);

    std::istringstream single("1 2 3\n");
    CHECK_THROWS_AS(parse_points(single), std::invalid_argument);

    std::istringstream empty("# nothing\n\n");
    CHECK_THROWS_AS(parse_points(empty), std::invalid_argument);
}
