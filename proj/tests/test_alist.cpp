#include <doctest.h>

#include <sstream>

#include "conic/alist.hpp"
#include "conic/incidence.hpp"

using namespace conic;

namespace {
ConicGeometry geom(int q) { return ConicGeometry(Field::from_order(q)); }
} // namespace

TEST_CASE("alist header and weights for B at q=5") {
    auto B = build_B(geom(5));
    std::string text = to_alist(B.mat);
    std::istringstream in(text);
    std::string line1, line2;
    std::getline(in, line1);
    std::getline(in, line2);
    CHECK(line1 == "15 10");
    CHECK(line2 == "2 3"); // max row weight (q-1)/2, max column weight (q+1)/2
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("alist round trip for every named matrix") {
    for (int q : {5, 7}) {
        auto g = geom(q);
        for (const auto& name : known_matrix_names()) {
            auto m = build_named(g, name);
            CHECK(parse_alist(to_alist(m.mat)) == m.mat);
            CHECK(parse_bits(to_bits(m.mat)) == m.mat);
            // re-serialization is byte identical
            CHECK(to_alist(parse_alist(to_alist(m.mat))) == to_alist(m.mat));
        }
    }
}

TEST_CASE("bits dump shape") {
    auto B = build_B(geom(5));
    std::string text = to_bits(B.mat);
    std::istringstream in(text);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.size() == 10);
        CHECK(line.find_first_not_of("01") == std::string::npos);
        ++rows;
    }
    CHECK(rows == 15);
}

TEST_CASE("malformed alist inputs are rejected") {
    CHECK_THROWS_AS(parse_alist(""), IoError);
    CHECK_THROWS_AS(parse_alist("2 2\n1 1\n1 1\n1 1\n1\n"), IoError);     // truncated
    CHECK_THROWS_AS(parse_alist("2 2\n1 1\n1 1\n1 1\n3\n1\n1\n2\n"), IoError); // col out of range
    CHECK_THROWS_AS(parse_alist("1 1\n1 1\nx\n1\n1\n1\n"), IoError);      // bad token
    CHECK_THROWS_AS(parse_alist("1 2\n2 1\n2\n1 1\n1 1\n1\n1\n"), IoError); // duplicate index
    // consistent tiny example parses
    Gf2Matrix m(2, 2);
    m.set(0, 0);
    m.set(1, 1);
    CHECK(parse_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n1\n2\n") == m);
}
