#include "dsm/rational.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>
#include <unordered_set>

using dsm::BigInt;
using dsm::Rational;

TEST_CASE("rational: canonical storage", "[rational]") {
    Rational a(6, -4);
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(a.str() == "-3/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational(10, 5).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational: parsing", "[rational]") {
    CHECK(Rational::parse("3/5") == Rational(3, 5));
    CHECK(Rational::parse("-2/4") == Rational(-1, 2));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK(Rational::parse(" 12 ") == Rational(12));
    CHECK(Rational::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630");
    for (const char* bad : {"0.5", "1/0", "", "/", "1/", "/2", "a", "1//2", "1/-2", "--1", "1e3", "1 /2"}) {
        INFO(bad);
        CHECK_FALSE(Rational::try_parse(bad).has_value());
    }
    CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
}

TEST_CASE("rational: arithmetic and ordering", "[rational]") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(2 * a == Rational(2, 3));
    CHECK(a < Rational(1, 2));
    CHECK(Rational(-1, 2) < b);
    CHECK(dsm::abs(Rational(-5, 3)) == Rational(5, 3));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
    CHECK(Rational(1, 4).to_double() == 0.25);

    std::ostringstream os;
    os << Rational(-22, 7);
    CHECK(os.str() == "-22/7");
}

TEST_CASE("rational: exact square roots", "[rational]") {
    CHECK(dsm::exact_sqrt(Rational(121, 25)) == Rational(11, 5));
    CHECK(dsm::exact_sqrt(Rational(0)) == Rational(0));
    CHECK(dsm::exact_sqrt(Rational(1)) == Rational(1));
    CHECK_FALSE(dsm::exact_sqrt(Rational(77, 200)).has_value());
    CHECK_FALSE(dsm::exact_sqrt(Rational(2)).has_value());
    CHECK_FALSE(dsm::exact_sqrt(Rational(-4)).has_value());
}

TEST_CASE("rational: field identities on random values", "[rational][property]") {
    std::mt19937_64 eng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    auto draw = [&] { return Rational(num(eng), den(eng)); };
    std::unordered_set<Rational> seen;
    for (int i = 0; i < 2000; ++i) {
        const Rational x = draw(), y = draw(), z = draw();
        seen.insert(x);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == Rational(0));
        if (!y.is_zero()) CHECK((x / y) * y == x);
        CHECK(Rational::parse(x.str()) == x);
        CHECK(BigInt(gcd(x.numerator(), x.denominator())) == 1);
        CHECK(x.denominator() > 0);
        CHECK(((x < y) == (x.to_double() < y.to_double()) || x.to_double() == y.to_double()));
        if (auto r = dsm::exact_sqrt(x * x)) CHECK(*r == dsm::abs(x));
        else FAIL("square not recognised");
    }
    CHECK(seen.size() > 1000);
}
