#include "dsm/doubly_stochastic.hpp"
#include "dsm/matrix_io.hpp"

#include "oracle.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace dsm;

namespace {

const RatMatrix kR = rat_matrix({{"3/5", "0", "2/5"}, {"0", "3/5", "2/5"}, {"2/5", "2/5", "1/5"}});

ParseError parse_failure(std::string_view text) {
    try {
        parse_matrix(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for: " << text);
    return ParseError(0, 0, "");
}

} // namespace

TEST_CASE("matrix_io: reads the R file in both formats", "[io]") {
    CHECK(read_matrix(std::string(DSM_TEST_DATA) + "/R.json") == kR);
    CHECK(read_matrix(std::string(DSM_TEST_DATA) + "/R.csv") == kR);
    CHECK(parse_matrix("{\"rows\":[[\"1\"]]}") == RatMatrix::identity(1));
    CHECK(parse_matrix("{\"n\":2,\"rows\":[[1,0],[0,1]]}") == RatMatrix::identity(2));
    CHECK_THROWS_AS(read_matrix(std::string(DSM_TEST_DATA) + "/missing.json"), std::runtime_error);
}

TEST_CASE("matrix_io: write format is compact and stable", "[io]") {
    CHECK(write_matrix(kR) == R"({"n":3,"rows":[["3/5","0","2/5"],["0","3/5","2/5"],["2/5","2/5","1/5"]]})");
    CHECK(write_matrix_csv(kR) == "3/5,0,2/5\n0,3/5,2/5\n2/5,2/5,1/5\n");
}

TEST_CASE("matrix_io: decimals and malformed input carry positions", "[io]") {
    {
        const ParseError e = parse_failure("{\"n\":2,\"rows\":[[\"1/2\",\"1/2\"],\n [\"0.5\",\"1/2\"]]}");
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("not an exact fraction"));
    }
    {
        const ParseError e = parse_failure("1/2,1/2\n1/2,0.5\n");
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
    {
        const ParseError e = parse_failure("{\"n\":2,\n\"rows\":[[\"1\",\"0\"],[\"0\" \"1\"]]}");
        CHECK(e.line() == 2);
    }
    CHECK(parse_failure("{\"n\":3,\"rows\":[[\"1\"]]}").line() == 1);
    CHECK(parse_failure("{\"rows\":[[\"1\",\"0\"],[\"0\"]]}").line() == 1);
    CHECK(parse_failure("{\"rows\":[[\"1\"]],\"extra\":1}").line() == 1);
    CHECK(parse_failure("{\"rows\":[[1.5]]}").line() == 1);
    CHECK(parse_failure("{\"rows\":[[\"1/0\"]]}").line() == 1);
    CHECK(parse_failure("").line() == 1);
    CHECK(parse_failure("1,0\n0\n").line() == 1);
    CHECK(parse_failure("[1]").line() == 1);
}

TEST_CASE("matrix_io: round trip on random rational matrices", "[io][property]") {
    oracle::DsGen gen(5);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + gen.below(7);
        RatMatrix m = gen.next(n, 1 + gen.below(5));
        // Also exercise negatives and large values, which the format allows.
        if (t % 3 == 0) m(0, 0) = Rational(BigInt("-123456789012345678901234567"), BigInt(97));
        CHECK(parse_matrix(write_matrix(m)) == m);
        CHECK(parse_matrix(write_matrix_csv(m)) == m);
        std::istringstream in(write_matrix(m));
        CHECK(read_matrix(in) == m);
        CHECK(write_matrix(parse_matrix(write_matrix(m))) == write_matrix(m));
    }
}
