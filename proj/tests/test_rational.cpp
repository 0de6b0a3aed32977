#include <lgraph/rational.hpp>

#include <doctest.h>

using namespace lgraph;

TEST_CASE("parse_rational accepts integers, fractions and exact decimals")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational(" 1/5 ") == Rational(1, 5));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(parse_rational("1e3") == 1000);
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("+2") == 2);
}

TEST_CASE("parse_rational results are canonical")
{
    const Rational r = parse_rational("6/4");
    CHECK(r.get_num() == 3);
    CHECK(r.get_den() == 2);
}

TEST_CASE("parse_rational rejects malformed text")
{
    for (const char* bad : {"", " ", "1/0", "a", "1.2.3", "1/-2", "--1", "1e", "1/2/3", "."})
        CHECK_THROWS_AS(parse_rational(bad), parse_error);
}

TEST_CASE("to_string prints lowest terms")
{
    CHECK(to_string(Rational(-1, 2)) == "-1/2");
    CHECK(to_string(Rational(4)) == "4");
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
}
