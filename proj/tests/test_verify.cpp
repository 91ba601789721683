#include <doctest.h>

#include <algorithm>
#include <set>

#include "conic/incidence.hpp"
#include "conic/verify.hpp"

using namespace conic;

namespace {
ConicGeometry geom(int q) { return ConicGeometry(Field::from_order(q)); }

bool all_passed(const std::vector<LemmaVerdict>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](const auto& v) { return v.passed; });
}

bool has_id(const std::vector<LemmaVerdict>& vs, const std::string& id) {
    return std::any_of(vs.begin(), vs.end(), [&](const auto& v) { return v.lemma_id == id; });
}
} // namespace

TEST_CASE("full suite passes at q=5 with group checks") {
    auto vs = run_suite(5, std::nullopt, {SuiteDepth::Group});
    CHECK(all_passed(vs));
    for (const auto& v : vs) {
        CHECK(v.q == 5);
        CHECK(v.detail.empty());
    }
    CHECK(has_id(vs, "Lemma_set1"));
    CHECK(has_id(vs, "Cor_tsum1"));
    CHECK(has_id(vs, "Lemma_m1"));
    CHECK_FALSE(has_id(vs, "Lemma_m2"));
    CHECK_FALSE(has_id(vs, "Lemma_deofD"));
}

TEST_CASE("full suite passes at q=7 and gates the mod-4 checks") {
    auto vs = run_suite(7, std::nullopt, {SuiteDepth::Group});
    CHECK(all_passed(vs));
    CHECK_FALSE(has_id(vs, "Lemma_set1"));
    CHECK_FALSE(has_id(vs, "Cor_tsum1"));
    CHECK(has_id(vs, "Lemma_m2"));
    CHECK(has_id(vs, "Lemma_deofD"));
    // every id appears exactly once
    std::set<std::string> ids;
    for (const auto& v : vs) CHECK(ids.insert(v.lemma_id).second);
}

TEST_CASE("suite output is deterministic") {
    auto a = verdicts_to_json(run_suite(9, std::nullopt, {SuiteDepth::Geometry}));
    auto b = verdicts_to_json(run_suite(9, std::nullopt, {SuiteDepth::Geometry}));
    CHECK(a == b);
}

TEST_CASE("witness set at the infinite conic point is the unipotent orbit") {
    auto g = geom(5);
    const Field& F = g.field();
    auto set = odd_witness_set(g, g.point_index({0, 0, 1}));
    std::vector<std::uint32_t> want;
    for (felt b = 0; b < 5; ++b)
        want.push_back(g.point_index({1, F.neg(b), F.sub(F.mul(b, b), F.xi())}));
    std::sort(want.begin(), want.end());
    CHECK(set == want);
    for (auto p : g.conic()) CHECK(odd_witness_set(g, p).size() == 5);
}

TEST_CASE("even witness sets have the stated parity profile") {
    for (int q : {5, 7}) {
        auto g = geom(q);
        for (auto p : g.points_of(PointClass::External)) {
            auto set = even_witness_set(g, p);
            CHECK(set.size() == static_cast<std::size_t>(q - 1));
            std::size_t through_p = passant_count_through(g, p, set);
            CHECK(through_p % 2 == 0);
            CHECK(through_p == (q % 4 == 1 ? 0u : static_cast<std::size_t>(q - 1)));
        }
    }
}

TEST_CASE("tangent-sum congruence holds for every admissible tangent choice") {
    auto g = geom(5);
    for (auto p : g.points_of(PointClass::Internal)) {
        std::uint32_t polar = g.polar_of_point(p);
        std::vector<std::uint32_t> admissible;
        for (auto x : g.externals_on(polar))
            for (auto t : g.tangents_through(x)) admissible.push_back(t);
        std::sort(admissible.begin(), admissible.end());
        admissible.erase(std::unique(admissible.begin(), admissible.end()), admissible.end());
        CHECK(admissible.size() == 6); // (q+1)/2 externals, two tangents each
        BitVec target = chi_external(g, g.passant_externals(p));
        for (auto lp : admissible) {
            BitVec sum(g.points_of(PointClass::External).size());
            for (auto t : tangent_configuration(g, p, lp))
                sum.xor_with(chi_external(g, g.externals_on(t)));
            CHECK(sum == target);
        }
    }
}

TEST_CASE("a corrupted geometry is caught") {
    auto g = geom(5);
    // flip one incidence bit: first point of the first line
    auto l = g.lines_of(LineClass::Secant).front();
    auto p = g.points_on(l).front();
    g.corrupt_incidence_for_tests(p, l);
    auto vs = run_suite(g, {SuiteDepth::Geometry});
    CHECK_FALSE(all_passed(vs));
    for (const auto& v : vs)
        if (!v.passed) CHECK_FALSE(v.detail.empty());
}

TEST_CASE("construction errors propagate") {
    CHECK_THROWS_AS(run_suite(4, std::nullopt, {}), EvenCharacteristicError);
    CHECK_THROWS_AS(run_suite(15, std::nullopt, {}), NotPrimeError);
    SuiteOptions deep;
    deep.depth = SuiteDepth::Group;
    deep.group_bound = 13;
    CHECK_THROWS_AS(run_suite(17, std::nullopt, deep), BoundExceededError);
}

TEST_CASE("ranks are independent of the non-square choice") {
    for (int q : {5, 7, 9}) {
        Field base = Field::from_order(q);
        auto baseline = dimension_report(ConicGeometry(base));
        int flips = 0;
        for (felt x = static_cast<felt>(base.xi() + 1); x < q; ++x) {
            Field F = Field::from_order(q);
            try {
                F.override_xi(x);
            } catch (const Error&) {
                continue; // squares are rejected
            }
            ++flips;
            auto r = dimension_report(ConicGeometry(std::move(F)));
            CHECK(r.rank_B == baseline.rank_B);
            CHECK(r.rank_D == baseline.rank_D);
            CHECK(r.dim_L == baseline.dim_L);
        }
        CHECK(flips == (q - 1) / 2 - 1); // every other non-square was tried
    }
}

TEST_CASE("explicit modulus override reaches the suite") {
    // t^2 + t + 2 is another irreducible over F_3
    auto vs = run_suite(9, std::vector<int>{2, 1, 1}, {SuiteDepth::Geometry});
    CHECK(all_passed(vs));
}

TEST_CASE("verdict json shape") {
    auto vs = run_suite(5, std::nullopt, {SuiteDepth::Geometry});
    auto j = verdicts_to_json(vs);
    CHECK(j.find("\"lemma_id\"") != std::string::npos);
    CHECK(j.find("\"passed\"") != std::string::npos);
    CHECK(j.find("\"detail\"") != std::string::npos);
    CHECK(j.find("Conjecture_dims") != std::string::npos);
}
