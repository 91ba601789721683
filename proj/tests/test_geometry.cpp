#include <doctest.h>

#include "conic/geometry.hpp"

using namespace conic;

namespace {
ConicGeometry geom(int q) { return ConicGeometry(Field::from_order(q)); }
} // namespace

TEST_CASE("census of points and lines") {
    {
        auto g = geom(5);
        CHECK(g.size() == 31);
        CHECK(g.conic().size() == 6);
        CHECK(g.points_of(PointClass::External).size() == 15);
        CHECK(g.points_of(PointClass::Internal).size() == 10);
    }
    {
        auto g = geom(3);
        CHECK(g.size() == 13);
        CHECK(g.conic().size() == 4);
        CHECK(g.points_of(PointClass::External).size() == 6);
        CHECK(g.points_of(PointClass::Internal).size() == 3);
    }
    {
        auto g = geom(9);
        CHECK(g.lines_of(LineClass::Passant).size() == 36);
        CHECK(g.lines_of(LineClass::Secant).size() == 45);
        CHECK(g.lines_of(LineClass::Tangent).size() == 10);
    }
}

TEST_CASE("incidence") {
    auto g = geom(5);
    CHECK(g.incident(g.point_index({0, 0, 1}), g.line_index({1, 0, 0})));
    CHECK_FALSE(g.incident(g.point_index({1, 1, 1}), g.line_index({1, 1, 1})));

    // the tangent at (1,t,t^2) is [t^2,-2t,1]
    const Field& F = g.field();
    for (felt t = 0; t < 5; ++t) {
        auto p = g.point_index({1, t, F.mul(t, t)});
        auto l = g.line_index({F.mul(t, t), F.neg(F.add(t, t)), 1});
        CHECK(g.incident(p, l));
        CHECK(g.line_class(l) == LineClass::Tangent);
    }
    // boundary case: tangent at the infinite conic point
    CHECK(g.polar_of_point(g.point_index({0, 0, 1})) == g.line_index({1, 0, 0}));
}

TEST_CASE("classification by discriminant") {
    for (int q : {5, 7, 9, 13}) {
        auto g = geom(q);
        const Field& F = g.field();
        CHECK(g.point_class(g.point_index({0, 0, 1})) == PointClass::Absolute);
        CHECK(g.point_class(g.point_index({1, 0, F.neg(F.xi())})) == PointClass::Internal);
        CHECK(g.point_class(g.point_index({0, 1, 0})) == PointClass::External);
        CHECK(g.line_class(g.line_index({1, 0, 0})) == LineClass::Tangent);
        CHECK(g.line_class(g.line_index({0, 1, 0})) == LineClass::Secant);
        if (q % 4 == 1)
            CHECK(g.line_class(g.line_index({1, 0, F.inv(F.xi())})) == LineClass::Passant);
    }
}

TEST_CASE("polarity") {
    auto g = geom(5);
    const Field& F = g.field();
    // (x,y,z) -> [z,-2y,x]
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        Triple a = g.point(p);
        Triple want = {a[2], F.neg(F.add(a[1], a[1])), a[0]};
        CHECK(g.polar_of_point(p) == g.line_index(want));
        CHECK(g.polar_of_line(g.polar_of_point(p)) == p);
    }
    // (1,0,-xi) -> [1,0,-xi^{-1}] after normalization
    auto p = g.point_index({1, 0, F.neg(F.xi())});
    CHECK(g.polar_of_point(p) == g.line_index({1, 0, F.neg(F.inv(F.xi()))}));
}

TEST_CASE("pencils and neighborhoods") {
    {
        auto g = geom(5);
        auto internal = g.points_of(PointClass::Internal);
        for (auto p : internal) {
            CHECK(g.passants_through(p).size() == 3);
            CHECK(g.secants_through(p).size() == 3);
            CHECK(g.tangents_through(p).empty());
            CHECK(g.passant_externals(p).size() == 9);
        }
        CHECK_THROWS_AS((void)g.passants_through(g.conic().front()), PointOnConicError);
    }
    {
        auto g = geom(7);
        for (auto l : g.lines_of(LineClass::Secant)) {
            CHECK(g.externals_on(l).size() == 3);
            CHECK(g.internals_on(l).size() == 3);
            std::size_t absolute = 0;
            for (auto p : g.points_on(l))
                if (g.point_class(p) == PointClass::Absolute) ++absolute;
            CHECK(absolute == 2);
        }
    }
}

TEST_CASE("every line carries q+1 points and vice versa") {
    for (int q : {3, 9, 11}) {
        auto g = geom(q);
        for (std::uint32_t i = 0; i < g.size(); ++i) {
            CHECK(g.points_on(i).size() == static_cast<std::size_t>(q) + 1);
            CHECK(g.lines_through(i).size() == static_cast<std::size_t>(q) + 1);
            for (auto p : g.points_on(i)) CHECK(g.incident(p, i));
        }
    }
}

TEST_CASE("meet and join are mutually consistent") {
    auto g = geom(7);
    auto l1 = g.line_index({1, 2, 3});
    auto l2 = g.line_index({0, 1, 5});
    auto x = g.meet(l1, l2);
    CHECK(g.incident(x, l1));
    CHECK(g.incident(x, l2));
    auto p1 = g.point_index({1, 1, 2});
    auto p2 = g.point_index({1, 3, 0});
    auto l = g.join(p1, p2);
    CHECK(g.incident(p1, l));
    CHECK(g.incident(p2, l));
}

TEST_CASE("conic parameters") {
    auto g = geom(9);
    for (auto p : g.conic()) CHECK(g.conic_point_at(g.conic_parameter(p)) == p);
    CHECK(g.conic_parameter(g.point_index({0, 0, 1})) == 9);
    CHECK_THROWS(g.conic_parameter(g.point_index({0, 1, 0})));
}
