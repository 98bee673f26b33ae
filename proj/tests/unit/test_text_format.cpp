#include <cmath>

#include "doctest.h"

#include "wordweight/error.hpp"
#include "wordweight/text_format.hpp"

using namespace wordweight;

TEST_CASE("fixed six-decimal formatting") {
    CHECK(format_fixed6(1.3) == "1.300000");
    CHECK(format_fixed6(-2.0000004) == "-2.000000");
    CHECK(format_fixed6(-0.0000004) == "0.000000");
    CHECK(format_fixed6(-0.0) == "0.000000");
    CHECK(format_fixed6(1e20) == "100000000000000000000.000000");
    CHECK_THROWS_AS(format_fixed6(std::nan("")), Error);
    CHECK(quantize6(0.1234567) == parse_real("0.123457"));
    CHECK(join_fixed6(std::vector<double>{0.5, -1.25}) == "0.500000 -1.250000");
    CHECK(join_fixed6(std::vector<double>{}).empty());
}

TEST_CASE("round-trip formatting is exact") {
    for (double v : {0.1, -99.0 * 2.302585092994046, 1.0 / 3.0, 1e-300, -123456.789}) {
        CHECK(parse_real(format_roundtrip(v)) == v);
    }
}

TEST_CASE("strict number parsing") {
    CHECK(parse_real("-1.5") == -1.5);
    CHECK(parse_real("+2") == 2.0);
    CHECK_THROWS_AS(parse_real(""), ParseError);
    CHECK_THROWS_AS(parse_real("1.0x"), ParseError);
    CHECK_THROWS_WITH(parse_real("abc", 7), "line 7: expected a number, got 'abc'");
    CHECK(parse_count("12") == 12);
    CHECK_THROWS_AS(parse_count("-1"), ParseError);
    CHECK_THROWS_AS(parse_count("3.5"), ParseError);
}

TEST_CASE("field splitting and weight lines") {
    CHECK(split_tokens("  a\tb  c ") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_tokens("").empty());
    CHECK(parse_weights("1 0 1", 1) == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(parse_weights("", 1).empty());
    CHECK_THROWS_WITH(parse_weights("1 2", 4), "line 4: weight must be 0 or 1, got '2'");
    CHECK(join_weights(std::vector<std::uint8_t>{0, 1}) == "0 1");
    CHECK(parse_reals("0.5 -1", 1) == std::vector<double>{0.5, -1.0});
}
