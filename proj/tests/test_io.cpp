#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fifam/constructions.hpp"
#include "fifam/family_io.hpp"
#include "support.hpp"

using namespace fifam;

namespace {

bool identical(const Family& a, const Family& b) {
    if (a.n() != b.n() || a.r() != b.r() || !(a.theta() == b.theta()) || a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.set(i) != b.set(i)) return false;  // order preserved, not just set equality
    return true;
}

} // namespace

TEST_CASE("text format parses headers, comments and sets") {
    const std::string text =
        "# extremal family over [6]\n"
        "n=6 r=3 theta=1/2\n"
        "\n"
        "1 2   # the doubled core\n"
        "1 3\n"
        "1 2 3 4\n";
    const Family f = family_from_text(text);
    CHECK(f.n() == 6);
    CHECK(f.r() == 3);
    CHECK(f.theta() == Fraction(1, 2));
    REQUIRE(f.size() == 3);
    CHECK(f.set(0) == testsupport::make_set({1, 2}));
    CHECK(f.set(2) == testsupport::make_set({1, 2, 3, 4}));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(family_from_text("n=6 r=3\n1 2\n"),
                         doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(family_from_text("n=6 r=3 theta=1/2\n1 9\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(family_from_text("n=6 r=3 theta=1/2\n1 x\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(family_from_text("n=6 r=3 theta=1/2\n1 2\n1 2\n"), ParseError);  // duplicate
    CHECK_THROWS_AS(family_from_text(""), ParseError);
}

TEST_CASE("both formats round-trip losslessly") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int k = 1 + static_cast<int>(rng() % 6);
        const Family f = testsupport::random_family(rng, n, k, 3, Fraction(1, 3));
        CHECK(identical(f, family_from_text(family_to_text(f))));
        CHECK(identical(f, family_from_json(family_to_json(f))));
    }
    const Family big = bisection_max(41);
    CHECK(identical(big, family_from_text(family_to_text(big))));
    CHECK(identical(big, family_from_json(family_to_json(big))));
}

TEST_CASE("load_family sniffs the format") {
    const Family f = bisection_max(6);
    const std::string text_path = "io_test_family.txt";
    const std::string json_path = "io_test_family.json";
    save_family(f, text_path, false);
    save_family(f, json_path, true);
    CHECK(identical(f, load_family(text_path)));
    CHECK(identical(f, load_family(json_path)));
    std::remove(text_path.c_str());
    std::remove(json_path.c_str());

    CHECK_THROWS_AS(load_family("does_not_exist.fam"), ParseError);
}

TEST_CASE("json rejects malformed documents") {
    CHECK_THROWS_AS(family_from_json("{"), ParseError);
    CHECK_THROWS_AS(family_from_json(R"({"n":4,"r":3})"), ParseError);
    CHECK_THROWS_AS(family_from_json(R"({"n":4,"r":3,"theta":{"a":1,"b":2},"sets":[[9]]})"),
                    ParseError);
}
