#include "conic/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include <json.hpp>

#include "conic/incidence.hpp"

namespace conic {

namespace {

std::string pt_str(const ConicGeometry& g, std::uint32_t p) {
    auto t = g.point(p);
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

std::string ln_str(const ConicGeometry& g, std::uint32_t l) {
    auto t = g.line(l);
    return "[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "]";
}

/// tau image moving the reference conic point (0,0,1) to the one with the
/// given parameter.
GroupElement conic_transporter(const ConicGeometry& g, int param) {
    const Field& F = g.field();
    if (param == g.q()) return tau(F, 1, 0, 0, 1);
    return tau(F, 0, F.neg(1), 1, static_cast<felt>(param));
}

/// tau image with parameter action 0 -> t1, infinity -> t2 (encoded as q).
GroupElement pair_transporter(const ConicGeometry& g, int t1, int t2) {
    const Field& F = g.field();
    const int inf = g.q();
    if (t2 == inf) return tau(F, 1, static_cast<felt>(t1), 0, 1);
    if (t1 == inf) return tau(F, 0, F.neg(1), 1, static_cast<felt>(t2));
    felt a = F.inv(F.sub(static_cast<felt>(t2), static_cast<felt>(t1)));
    return tau(F, a, F.mul(a, static_cast<felt>(t1)), 1, static_cast<felt>(t2));
}

BitVec all_ones(std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i);
    return v;
}

} // namespace

BitVec chi_external(const ConicGeometry& g, std::span<const std::uint32_t> points) {
    BitVec v(g.points_of(PointClass::External).size());
    for (auto p : points) {
        if (g.point_class(p) != PointClass::External)
            throw Error("chi_external expects external points");
        v.set(g.class_rank_of_point(p));
    }
    return v;
}

std::size_t passant_count_through(const ConicGeometry& g, std::uint32_t target,
                                  std::span<const std::uint32_t> points) {
    std::size_t count = 0;
    for (auto m : points)
        if (g.line_class(g.join(target, m)) == LineClass::Passant) ++count;
    return count;
}

std::uint32_t canonical_sksum_tangent(const ConicGeometry& g, std::uint32_t internal_point) {
    if (g.point_class(internal_point) != PointClass::Internal)
        throw Error("tangent choice is defined for internal points");
    std::uint32_t polar = g.polar_of_point(internal_point);
    std::uint32_t best = static_cast<std::uint32_t>(g.size());
    for (auto x : g.externals_on(polar))
        for (auto t : g.tangents_through(x)) best = std::min(best, t);
    return best;
}

std::vector<std::uint32_t> tangent_configuration(const ConicGeometry& g,
                                                 std::uint32_t internal_point, std::uint32_t lp) {
    if (g.line_class(lp) != LineClass::Tangent) throw Error("lp must be a tangent line");
    std::vector<std::uint32_t> out;
    for (auto pa : g.passants_through(internal_point)) {
        std::uint32_t x = g.meet(pa, lp);
        if (g.point_class(x) != PointClass::External)
            throw VerificationFailedError("passant meets tangent off the external points");
        for (auto t : g.tangents_through(x))
            if (t != lp) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint32_t> odd_witness_set(const ConicGeometry& g, std::uint32_t conic_point) {
    const Field& F = g.field();
    const int q = g.q();
    if (q % 4 != 1) throw Error("odd witness sets require q = 1 (mod 4)");
    int param = g.conic_parameter(conic_point); // throws off the conic

    GroupElement mover = conic_transporter(g, param);
    std::vector<std::uint32_t> set;
    set.reserve(q);
    for (felt b = 0; b < q; ++b) {
        // (1, -b, b^2 - xi), the unipotent orbit of (1, 0, -xi)
        Triple base = {1, F.neg(b), F.sub(F.mul(b, b), F.xi())};
        std::uint32_t idx = g.point_index(base);
        set.push_back(act_point_matrix(g, mover.mat, idx));
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());

    if (set.size() != static_cast<std::size_t>(q))
        throw VerificationFailedError("witness set does not have q distinct points");
    for (auto m : set)
        if (g.point_class(m) != PointClass::Internal)
            throw VerificationFailedError("witness set contains a non-internal point");
    std::uint32_t polar = g.polar_of_point(conic_point);
    for (auto x : g.externals_on(polar)) {
        std::size_t c = passant_count_through(g, x, set);
        if (c != static_cast<std::size_t>(q + 1) / 2)
            throw VerificationFailedError("passant count through " + pt_str(g, x) + " is " +
                                          std::to_string(c) + ", expected " +
                                          std::to_string((q + 1) / 2));
    }
    return set;
}

std::vector<std::uint32_t> even_witness_set(const ConicGeometry& g, std::uint32_t external_point) {
    const Field& F = g.field();
    const int q = g.q();
    if (g.point_class(external_point) != PointClass::External)
        throw Error("even witness sets are attached to external points");

    // Tangency parameters: the polar secant meets the conic exactly at the
    // points where the two tangents through p touch.
    std::uint32_t polar = g.polar_of_point(external_point);
    std::vector<int> params;
    for (auto pt : g.points_on(polar))
        if (g.point_class(pt) == PointClass::Absolute) params.push_back(g.conic_parameter(pt));
    if (params.size() != 2) throw VerificationFailedError("polar of an external point must be secant");
    std::sort(params.begin(), params.end());
    GroupElement mover = pair_transporter(g, params[0], params[1]);

    if (act_point_matrix(g, mover.mat, g.point_index({0, 1, 0})) != external_point)
        throw VerificationFailedError("transporter does not reach the external point");

    // First x in canonical order with 1-x a non-square and x a square or
    // non-square according to q mod 4.
    felt x = 0;
    for (felt cand = 1; cand < q; ++cand) {
        felt om = F.sub(1, cand);
        if (om == 0 || F.is_square(om)) continue;
        bool want_square = q % 4 == 1;
        if (F.is_square(cand) == want_square) {
            x = cand;
            break;
        }
    }
    if (x == 0) throw VerificationFailedError("no admissible orbit seed exists");

    // K-orbit of (1,1,x) in closed form: {(1, u, x u^2) : u != 0}.
    std::vector<std::uint32_t> set;
    set.reserve(q - 1);
    for (felt u = 1; u < q; ++u) {
        Triple base = {1, u, F.mul(x, F.mul(u, u))};
        set.push_back(act_point_matrix(g, mover.mat, g.point_index(base)));
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());

    if (set.size() != static_cast<std::size_t>(q - 1))
        throw VerificationFailedError("witness set does not have q-1 distinct points");
    for (auto m : set)
        if (g.point_class(m) != PointClass::Internal)
            throw VerificationFailedError("witness set contains a non-internal point");

    auto tangents = g.tangents_through(external_point);
    std::set<std::uint32_t> zone;
    for (auto t : tangents)
        for (auto e : g.externals_on(t)) zone.insert(e);
    zone.erase(external_point);
    for (auto z : zone) {
        std::size_t c = passant_count_through(g, z, set);
        if (c % 2 == 0)
            throw VerificationFailedError("even passant count through " + pt_str(g, z));
    }
    std::size_t cp = passant_count_through(g, external_point, set);
    std::size_t expect = q % 4 == 1 ? 0 : static_cast<std::size_t>(q - 1);
    if (cp != expect)
        throw VerificationFailedError("passant count through the base point is " +
                                      std::to_string(cp) + ", expected " + std::to_string(expect));
    return set;
}

namespace {

// ---------------------------------------------------------------------------
// Suite internals
// ---------------------------------------------------------------------------

struct Ctx {
    const ConicGeometry& g;
    const SuiteOptions& opts;
    int q;
    int mod4;

    LabeledMatrix B, D, Dp;
    std::size_t rank_B = 0, rank_D = 0, rank_Dp = 0;
    std::optional<Gf2Span> span_B, span_D, span_Dp;
    std::optional<GroupTable> H;

    explicit Ctx(const ConicGeometry& geom, const SuiteOptions& o)
        : g(geom), opts(o), q(geom.q()), mod4(geom.q() % 4) {
        B = build_B(g);
        D = build_D(g);
        Dp = build_Dprime(g);
        rank_B = rank2(B.mat);
        rank_D = rank2(D.mat);
        rank_Dp = rank2(Dp.mat);
        span_B = column_span(B.mat);
        span_D = column_span(D.mat);
        span_Dp = column_span(Dp.mat);
        if (opts.depth == SuiteDepth::Group) H.emplace(g, opts.group_bound);
    }
};

using CheckFn = std::function<std::optional<std::string>(Ctx&)>;

std::optional<std::string> check_eq_number(Ctx& c) {
    const auto& g = c.g;
    const std::size_t q = c.q;
    auto expect = [&](std::size_t got, std::size_t want, const char* what) -> std::optional<std::string> {
        if (got != want)
            return std::string(what) + " has size " + std::to_string(got) + ", expected " +
                   std::to_string(want);
        return std::nullopt;
    };
    if (auto e = expect(g.size(), q * q + q + 1, "plane")) return e;
    if (auto e = expect(g.conic().size(), q + 1, "conic")) return e;
    if (auto e = expect(g.points_of(PointClass::Absolute).size(), q + 1, "absolute points")) return e;
    if (auto e = expect(g.lines_of(LineClass::Tangent).size(), q + 1, "tangent lines")) return e;
    if (auto e = expect(g.points_of(PointClass::Internal).size(), q * (q - 1) / 2, "internal points"))
        return e;
    if (auto e = expect(g.lines_of(LineClass::Passant).size(), q * (q - 1) / 2, "passant lines"))
        return e;
    if (auto e = expect(g.points_of(PointClass::External).size(), q * (q + 1) / 2, "external points"))
        return e;
    if (auto e = expect(g.lines_of(LineClass::Secant).size(), q * (q + 1) / 2, "secant lines"))
        return e;
    return std::nullopt;
}

std::optional<std::string> check_bijection(Ctx& c) {
    const auto& g = c.g;
    const Field& F = g.field();
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        std::uint32_t l = g.polar_of_point(p);
        if (g.polar_of_line(l) != p) return "polarity is not an involution at point " + pt_str(g, p);
        static const LineClass image[] = {LineClass::Passant, LineClass::Tangent, LineClass::Secant};
        if (g.line_class(l) != image[static_cast<int>(g.point_class(p))])
            return "polar of " + pt_str(g, p) + " lands in the wrong line class";
        // explicit inverse-matrix form of the line map
        Triple b = g.line(l);
        felt m2 = F.neg(F.from_int(2));
        Triple back = {F.mul(m2, b[2]), b[1], F.mul(m2, b[0])};
        if (g.point_index(back) != p) return "line polar disagrees with the inverse matrix form";
    }
    return std::nullopt;
}

std::optional<std::string> check_table1(Ctx& c) {
    const auto& g = c.g;
    const std::size_t q = c.q;
    for (std::uint32_t l = 0; l < g.size(); ++l) {
        std::size_t abs = 0, ext = 0, in = 0;
        for (auto p : g.points_on(l)) {
            switch (g.point_class(p)) {
                case PointClass::Absolute: ++abs; break;
                case PointClass::External: ++ext; break;
                case PointClass::Internal: ++in; break;
            }
        }
        std::array<std::size_t, 3> want{};
        switch (g.line_class(l)) {
            case LineClass::Tangent: want = {1, q, 0}; break;
            case LineClass::Secant: want = {2, (q - 1) / 2, (q - 1) / 2}; break;
            case LineClass::Passant: want = {0, (q + 1) / 2, (q + 1) / 2}; break;
        }
        if (std::array{abs, ext, in} != want)
            return "line " + ln_str(g, l) + " carries (" + std::to_string(abs) + "," +
                   std::to_string(ext) + "," + std::to_string(in) + ") points";
    }
    return std::nullopt;
}

std::optional<std::string> check_table2(Ctx& c) {
    const auto& g = c.g;
    const std::size_t q = c.q;
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        std::size_t tan = 0, sec = 0, pas = 0;
        for (auto l : g.lines_through(p)) {
            switch (g.line_class(l)) {
                case LineClass::Tangent: ++tan; break;
                case LineClass::Secant: ++sec; break;
                case LineClass::Passant: ++pas; break;
            }
        }
        std::array<std::size_t, 3> want{};
        switch (g.point_class(p)) {
            case PointClass::Absolute: want = {1, q, 0}; break;
            case PointClass::External: want = {2, (q - 1) / 2, (q - 1) / 2}; break;
            case PointClass::Internal: want = {0, (q + 1) / 2, (q + 1) / 2}; break;
        }
        if (std::array{tan, sec, pas} != want)
            return "point " + pt_str(g, p) + " lies on (" + std::to_string(tan) + "," +
                   std::to_string(sec) + "," + std::to_string(pas) + ") lines";
    }
    return std::nullopt;
}

std::optional<std::string> check_cs(Ctx& c) {
    const std::size_t q = c.q;
    auto counts = c.g.field().square_shift_counts();
    std::array<std::size_t, 4> want{};
    if (c.mod4 == 1)
        want = {(q - 5) / 4, (q - 1) / 4, (q - 1) / 4, (q - 1) / 4};
    else
        want = {(q - 3) / 4, (q - 3) / 4, (q + 1) / 4, (q - 3) / 4};
    if (counts != want)
        return "shift counts (" + std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," +
               std::to_string(counts[2]) + "," + std::to_string(counts[3]) + ") off the closed form";
    return std::nullopt;
}

std::optional<std::string> check_meet(Ctx& c) {
    const auto& g = c.g;
    auto expected = [&](PointClass pc, LineClass lc) {
        bool one = c.mod4 == 1;
        if (pc == PointClass::Internal && lc == LineClass::Passant)
            return one ? PointClass::External : PointClass::Internal;
        if (pc == PointClass::Internal && lc == LineClass::Secant)
            return one ? PointClass::Internal : PointClass::External;
        if (pc == PointClass::External && lc == LineClass::Passant)
            return one ? PointClass::Internal : PointClass::External;
        return one ? PointClass::External : PointClass::Internal; // external, secant
    };
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        PointClass pc = g.point_class(p);
        if (pc == PointClass::Absolute) continue;
        std::uint32_t polar = g.polar_of_point(p);
        for (auto l : g.lines_through(p)) {
            LineClass lc = g.line_class(l);
            if (lc == LineClass::Tangent) continue;
            std::uint32_t x = g.meet(polar, l);
            if (g.point_class(x) != expected(pc, lc))
                return "p=" + pt_str(g, p) + " l=" + ln_str(g, l) + " meets p^perp in " +
                       to_string(g.point_class(x));
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_bsize(Ctx& c) {
    const auto& g = c.g;
    const std::size_t q = c.q;
    for (auto p : g.points_of(PointClass::Internal)) {
        std::uint32_t polar = g.polar_of_point(p);
        if (g.externals_on(polar).size() != (q + 1) / 2 ||
            g.secants_through(p).size() != (q + 1) / 2 ||
            g.internals_on(polar).size() != (q + 1) / 2 ||
            g.passants_through(p).size() != (q + 1) / 2)
            return "pencil sizes around " + pt_str(g, p) + " are off";
        if (g.passant_externals(p).size() != (q + 1) * (q + 1) / 4)
            return "passant external neighborhood of " + pt_str(g, p) + " has size " +
                   std::to_string(g.passant_externals(p).size());
        if (g.secant_externals(p).size() != (q * q - 1) / 4)
            return "secant external neighborhood of " + pt_str(g, p) + " has size " +
                   std::to_string(g.secant_externals(p).size());
    }
    return std::nullopt;
}

std::optional<std::string> check_a11(Ctx& c) {
    const auto& g = c.g;
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        auto on_polar = g.points_on(g.polar_of_point(p));
        for (auto x : on_polar) {
            auto back = g.points_on(g.polar_of_point(x));
            if (!std::binary_search(back.begin(), back.end(), p))
                return "polarity symmetry fails for " + pt_str(g, p) + " and " + pt_str(g, x);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_sksum(Ctx& c) {
    const auto& g = c.g;
    for (auto p : g.points_of(PointClass::Internal)) {
        std::uint32_t lp = canonical_sksum_tangent(g, p);
        auto tangents = tangent_configuration(g, p, lp);
        if (tangents.size() != static_cast<std::size_t>(c.q + 1) / 2)
            return "tangent configuration at " + pt_str(g, p) + " has size " +
                   std::to_string(tangents.size());
        BitVec sum(g.points_of(PointClass::External).size());
        for (auto t : tangents) sum.xor_with(chi_external(g, g.externals_on(t)));
        if (sum != chi_external(g, g.passant_externals(p)))
            return "tangent sum does not match the passant neighborhood at " + pt_str(g, p);
    }
    return std::nullopt;
}

std::optional<std::string> check_set1(Ctx& c) {
    for (auto p : c.g.conic()) {
        try {
            auto set = odd_witness_set(c.g, p);
            if (set.size() % 2 == 0) return "witness set at " + pt_str(c.g, p) + " has even size";
        } catch (const VerificationFailedError& e) {
            return "at " + pt_str(c.g, p) + ": " + e.what();
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_tsum1(Ctx& c) {
    const auto& g = c.g;
    for (auto l : g.lines_of(LineClass::Tangent)) {
        std::vector<std::uint32_t> set;
        try {
            set = odd_witness_set(g, g.polar_of_line(l));
        } catch (const VerificationFailedError& e) {
            return "at " + ln_str(g, l) + ": " + e.what();
        }
        BitVec sum(g.points_of(PointClass::External).size());
        for (auto m : set) sum.xor_with(c.D.mat.col(g.class_rank_of_point(m)));
        if (sum != chi_external(g, g.externals_on(l)))
            return "neighborhood sum does not reproduce tangent " + ln_str(g, l);
    }
    return std::nullopt;
}

std::optional<std::string> check_set22(Ctx& c) {
    for (auto p : c.g.points_of(PointClass::External)) {
        try {
            even_witness_set(c.g, p);
        } catch (const VerificationFailedError& e) {
            return "at " + pt_str(c.g, p) + ": " + e.what();
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_tsum2(Ctx& c) {
    const auto& g = c.g;
    for (auto p : g.points_of(PointClass::External)) {
        std::vector<std::uint32_t> set;
        try {
            set = even_witness_set(g, p);
        } catch (const VerificationFailedError& e) {
            return "at " + pt_str(g, p) + ": " + e.what();
        }
        auto tangents = g.tangents_through(p);
        BitVec lhs = chi_external(g, g.externals_on(tangents[0]));
        lhs.xor_with(chi_external(g, g.externals_on(tangents[1])));
        BitVec rhs_pa(g.points_of(PointClass::External).size());
        BitVec rhs_se(g.points_of(PointClass::External).size());
        for (auto m : set) {
            rhs_pa.xor_with(c.D.mat.col(g.class_rank_of_point(m)));
            rhs_se.xor_with(c.Dp.mat.col(g.class_rank_of_point(m)));
        }
        if (lhs != rhs_pa) return "passant-side sum fails at " + pt_str(g, p);
        if (lhs != rhs_se) return "secant-side sum fails at " + pt_str(g, p);
    }
    return std::nullopt;
}

std::optional<std::string> check_u3(Ctx& c) {
    const auto& g = c.g;
    auto spans = tangent_spans(g);
    const std::size_t q = c.q;
    if (spans.m1.dim() != q) return "dim M1 = " + std::to_string(spans.m1.dim());
    if (spans.m2.dim() != q - 1) return "dim M2 = " + std::to_string(spans.m2.dim());
    BitVec ones = all_ones(g.points_of(PointClass::External).size());
    if (spans.m1.contains(ones)) return "all-one vector lies in M1";
    if (spans.m2.contains(ones)) return "all-one vector lies in M2";
    BitVec sum(g.points_of(PointClass::External).size());
    for (auto l : g.lines_of(LineClass::Tangent)) sum.xor_with(chi_external(g, g.externals_on(l)));
    if (!sum.is_zero()) return "tangent characteristic vectors do not sum to zero";
    return std::nullopt;
}

std::optional<std::string> check_u2(Ctx& c) {
    const auto& g = c.g;
    auto spans = tangent_spans(g);
    Gf2Span& target = c.mod4 == 1 ? spans.m1 : spans.m2;
    const char* tname = c.mod4 == 1 ? "M1" : "M2";
    for (std::size_t col = 0; col < c.D.mat.cols(); ++col)
        if (!target.contains(c.D.mat.col(col)))
            return "column " + std::to_string(col) + " of D escapes " + tname;
    if (target.dim() != c.rank_D)
        return std::string("dim ") + tname + " = " + std::to_string(target.dim()) + " but rank D = " +
               std::to_string(c.rank_D);
    // generators of the span lie in col(D) as well
    std::vector<BitVec> gens;
    const auto& tangents = g.lines_of(LineClass::Tangent);
    if (c.mod4 == 1) {
        for (auto l : tangents) gens.push_back(chi_external(g, g.externals_on(l)));
    } else {
        for (std::size_t i = 0; i < tangents.size(); ++i)
            for (std::size_t j = i + 1; j < tangents.size(); ++j) {
                BitVec v = chi_external(g, g.externals_on(tangents[i]));
                v.xor_with(chi_external(g, g.externals_on(tangents[j])));
                gens.push_back(std::move(v));
            }
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!c.span_D->contains(gens[i]))
            return "generator " + std::to_string(i) + " of " + tname + " escapes col(D)";
    return std::nullopt;
}

std::optional<std::string> check_deofD(Ctx& c) {
    const auto& g = c.g;
    BitVec ones = all_ones(g.points_of(PointClass::External).size());
    if (c.rank_Dp != c.rank_D + 1)
        return "rank D' = " + std::to_string(c.rank_Dp) + ", rank D = " + std::to_string(c.rank_D);
    if (!c.span_Dp->contains(ones)) return "all-one vector escapes col(D')";
    if (c.span_D->contains(ones)) return "all-one vector already lies in col(D)";
    for (std::size_t col = 0; col < c.D.mat.cols(); ++col)
        if (!c.span_Dp->contains(c.D.mat.col(col)))
            return "column " + std::to_string(col) + " of D escapes col(D')";
    return std::nullopt;
}

std::optional<std::string> check_rank_A(Ctx& c) {
    std::size_t r = rank2(build_A(c.g).mat);
    std::size_t want = static_cast<std::size_t>(c.q) * c.q + c.q;
    if (r != want) return "rank A = " + std::to_string(r) + ", expected " + std::to_string(want);
    return std::nullopt;
}

std::optional<std::string> check_cor_dim(Ctx& c) {
    std::size_t want = c.mod4 == 1 ? c.q : c.q - 1;
    if (c.rank_D != want)
        return "rank D = " + std::to_string(c.rank_D) + ", expected " + std::to_string(want);
    return std::nullopt;
}

std::optional<std::string> check_main_ranks(Ctx& c) {
    const std::size_t q = c.q;
    for (std::size_t col = 0; col < c.D.mat.cols(); ++col)
        if (!c.span_B->contains(c.D.mat.col(col)))
            return "column " + std::to_string(col) + " of D escapes col(B)";
    if (c.mod4 == 1) {
        std::size_t want = (q - 1) * (q - 1) / 4;
        if (c.rank_B - c.rank_D != want)
            return "rank B - rank D = " + std::to_string(c.rank_B - c.rank_D) + ", expected " +
                   std::to_string(want);
    } else {
        BitVec ones = all_ones(c.g.points_of(PointClass::External).size());
        if (!c.span_B->contains(ones)) return "all-one vector escapes col(B)";
        if (c.span_D->contains(ones)) return "all-one vector lies in col(D)";
        std::size_t want = (q + 1) * (q - 3) / 4;
        if (c.rank_B - c.rank_D - 1 != want)
            return "rank B - rank D - 1 = " + std::to_string(c.rank_B - c.rank_D - 1) +
                   ", expected " + std::to_string(want);
    }
    return std::nullopt;
}

std::optional<std::string> check_conjecture(Ctx& c) {
    DimensionReport r = dimension_report(c.g);
    if (r.rank_B != c.rank_B) return "rank B disagrees between paths";
    if (!r.match)
        return "dim L = " + std::to_string(r.dim_L) + " vs " + std::to_string(r.conjecture_dim_L) +
               ", dim L0 = " + std::to_string(r.dim_L0) + " vs " +
               std::to_string(r.conjecture_dim_L0);
    return std::nullopt;
}

// --------------------------- group-depth checks ---------------------------

std::optional<std::string> check_classes(Ctx& c) {
    const GroupTable& H = *c.H;
    const std::size_t q = c.q;
    std::size_t h_order = q * (q * q - 1) / 2;
    if (H.size() != h_order)
        return "|H| = " + std::to_string(H.size()) + ", expected " + std::to_string(h_order);

    auto brute = H.brute_force_classes();
    if (brute.size() != H.class_count())
        return "brute force finds " + std::to_string(brute.size()) + " classes, labels give " +
               std::to_string(H.class_count());
    for (const auto& cls : brute) {
        std::size_t cid = H.class_id_of(cls.front());
        if (H.class_members(cid) != cls)
            return "class of element " + std::to_string(cls.front()) +
                   " disagrees with its trace label " + H.class_label(cid).str();
    }

    std::size_t theta = 0, pi = 0;
    for (std::size_t cid = 0; cid < H.class_count(); ++cid) {
        ClassKind k = H.class_label(cid).kind;
        if (k == ClassKind::Theta) ++theta;
        if (k == ClassKind::Pi) ++pi;
    }
    std::size_t want_theta = c.mod4 == 1 ? (q - 5) / 4 : (q - 3) / 4;
    std::size_t want_pi = c.mod4 == 1 ? (q - 1) / 4 : (q - 3) / 4;
    if (theta != want_theta || pi != want_pi)
        return "class counts theta=" + std::to_string(theta) + " pi=" + std::to_string(pi);
    if (H.class_members(1).size() != H.class_members(2).size())
        return "F+ and F- have different sizes";

    // [0] is exactly the involution set
    for (std::uint32_t i = 0; i < H.size(); ++i) {
        bool involution = i != H.identity() && H.mul(i, i) == H.identity();
        bool labelled = H.class_of(i).kind == ClassKind::Zero;
        if (involution != labelled)
            return "element " + std::to_string(i) + " order-2 flag disagrees with [0] label";
    }
    return std::nullopt;
}

std::optional<std::string> check_y11(Ctx& c) {
    const auto& g = c.g;
    const GroupTable& H = *c.H;
    const std::size_t q = c.q;
    for (auto p : g.points_of(PointClass::Internal)) {
        auto K = H.stabilizer(p);
        if (K.size() != q + 1)
            return "stabilizer of " + pt_str(g, p) + " has order " + std::to_string(K.size());
        std::vector<std::size_t> counts(H.class_count(), 0);
        for (auto k : K) ++counts[H.class_id_of(k)];
        for (std::size_t cid = 0; cid < H.class_count(); ++cid) {
            const auto& label = H.class_label(cid);
            std::size_t want = 0;
            switch (label.kind) {
                case ClassKind::D: want = 1; break;
                case ClassKind::Fplus:
                case ClassKind::Fminus:
                case ClassKind::Theta: want = 0; break;
                case ClassKind::Pi: want = 2; break;
                case ClassKind::Zero:
                    // (q+1)/2 for q = 1 (mod 4). The q = 3 (mod 4) value is
                    // (q+3)/2: the (q+1)/2 reflection-type involutions plus
                    // the one from the rotation subgroup.
                    want = c.mod4 == 1 ? (q + 1) / 2 : (q + 3) / 2;
                    break;
            }
            if (counts[cid] != want)
                return "at " + pt_str(g, p) + ": |K cap " + label.str() + "| = " +
                       std::to_string(counts[cid]) + ", expected " + std::to_string(want);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_m1_m2(Ctx& c) {
    const auto& g = c.g;
    const GroupTable& H = *c.H;
    const bool one = c.mod4 == 1;
    const std::size_t n_classes = H.class_count();

    std::size_t zero_cid = 3; // label order: D, F+, F-, [0], thetas, pis
    std::vector<std::size_t> special; // pi classes for q=1, theta classes for q=3
    for (std::size_t cid = 0; cid < n_classes; ++cid) {
        ClassKind k = H.class_label(cid).kind;
        if ((one && k == ClassKind::Pi) || (!one && k == ClassKind::Theta)) special.push_back(cid);
    }

    const auto& externals = g.points_of(PointClass::External);
    std::vector<std::vector<std::size_t>> acc(externals.size(),
                                              std::vector<std::size_t>(n_classes, 0));

    for (auto p : g.points_of(PointClass::Internal)) {
        for (auto& row : acc) std::fill(row.begin(), row.end(), 0);
        std::uint32_t polar = g.polar_of_point(p);
        for (std::uint32_t h = 0; h < H.size(); ++h) {
            std::uint32_t l = H.act_line(h, polar);
            std::size_t cid = H.class_id_of(h);
            for (auto x : g.points_on(l))
                if (g.point_class(x) == PointClass::External) ++acc[g.class_rank_of_point(x)][cid];
        }
        auto on_polar_pts = g.points_on(polar);

        // parity assertions for the two settled cases
        for (auto qx : externals) {
            const auto& counts = acc[g.class_rank_of_point(qx)];
            LineClass lc = g.line_class(g.join(p, qx));
            bool on_polar = std::binary_search(on_polar_pts.begin(), on_polar_pts.end(), qx);
            LineClass all_even_case = one ? LineClass::Secant : LineClass::Passant;
            LineClass split_case = one ? LineClass::Passant : LineClass::Secant;
            if (lc == all_even_case) {
                for (std::size_t cid = 0; cid < n_classes; ++cid)
                    if (cid != zero_cid && counts[cid] % 2 != 0)
                        return "p=" + pt_str(g, p) + " q=" + pt_str(g, qx) + ": class " +
                               H.class_label(cid).str() + " count " + std::to_string(counts[cid]) +
                               " should be even";
            } else if (lc == split_case && on_polar) {
                for (std::size_t cid = 0; cid < n_classes; ++cid) {
                    if (cid == zero_cid) continue;
                    bool want_odd = H.class_label(cid).kind == ClassKind::D;
                    if ((counts[cid] % 2 == 1) != want_odd)
                        return "p=" + pt_str(g, p) + " q=" + pt_str(g, qx) + " on p^perp: class " +
                               H.class_label(cid).str() + " has parity " +
                               std::to_string(counts[cid] % 2);
                }
            }
        }

        // the two-point existence clause, per line through p of the split type
        LineClass split_case = one ? LineClass::Passant : LineClass::Secant;
        auto lines = one ? g.passants_through(p) : g.secants_through(p);
        for (auto l : lines) {
            if (g.line_class(l) != split_case) return "internal pencil misclassified";
            std::vector<std::uint32_t> off_polar;
            for (auto x : g.points_on(l))
                if (g.point_class(x) == PointClass::External &&
                    !std::binary_search(on_polar_pts.begin(), on_polar_pts.end(), x))
                    off_polar.push_back(x);
            std::set<std::uint32_t> claimed;
            for (auto cid : special) {
                std::vector<std::uint32_t> odd_pts;
                for (auto x : off_polar)
                    if (acc[g.class_rank_of_point(x)][cid] % 2 == 1) odd_pts.push_back(x);
                if (odd_pts.size() != 2)
                    return "p=" + pt_str(g, p) + " l=" + ln_str(g, l) + " class " +
                           H.class_label(cid).str() + " has " + std::to_string(odd_pts.size()) +
                           " odd points";
                for (auto x : odd_pts)
                    if (!claimed.insert(x).second)
                        return "odd points of distinct classes overlap on " + ln_str(g, l);
            }
            if (claimed.size() != off_polar.size())
                return "odd points do not exhaust " + ln_str(g, l);
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_transitive(Ctx& c) {
    const auto& g = c.g;
    const GroupTable& H = *c.H;
    auto point_orbit_is = [&](const std::vector<std::uint32_t>& cls) {
        return H.point_orbit(cls.front()) == cls;
    };
    if (!point_orbit_is(g.points_of(PointClass::External))) return "H is not transitive on E";
    if (!point_orbit_is(g.points_of(PointClass::Internal))) return "H is not transitive on I";
    auto line_orbit_is = [&](const std::vector<std::uint32_t>& cls) {
        std::vector<std::uint32_t> orbit;
        for (std::uint32_t h = 0; h < H.size(); ++h) orbit.push_back(H.act_line(h, cls.front()));
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        return orbit == cls;
    };
    if (!line_orbit_is(g.lines_of(LineClass::Passant))) return "H is not transitive on Pa";
    if (!line_orbit_is(g.lines_of(LineClass::Secant))) return "H is not transitive on Se";
    if (!line_orbit_is(g.lines_of(LineClass::Tangent))) return "H is not transitive on T";
    return std::nullopt;
}

std::optional<std::string> check_ktransitive(Ctx& c) {
    // The acting stabilizer here lives in the full automorphism group G, not
    // in its index-2 subgroup.
    const auto& g = c.g;
    auto G = enumerate_G(g, c.opts.group_bound);
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        if (g.point_class(p) == PointClass::Absolute) continue;
        std::vector<const std::array<felt, 9>*> K;
        for (const auto& m : G)
            if (act_point_matrix(g, m, p) == p) K.push_back(&m);
        std::uint32_t polar = g.polar_of_point(p);
        auto single_point_orbit = [&](const std::vector<std::uint32_t>& target) {
            std::vector<std::uint32_t> orbit;
            for (auto* k : K) orbit.push_back(act_point_matrix(g, *k, target.front()));
            std::sort(orbit.begin(), orbit.end());
            orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
            return orbit == target;
        };
        auto single_line_orbit = [&](const std::vector<std::uint32_t>& target) {
            std::vector<std::uint32_t> orbit;
            for (auto* k : K) orbit.push_back(act_line_matrix(g, *k, target.front()));
            std::sort(orbit.begin(), orbit.end());
            orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
            return orbit == target;
        };
        if (!single_point_orbit(g.internals_on(polar)))
            return "stabilizer of " + pt_str(g, p) + " is not transitive on I_{p^perp}";
        if (!single_point_orbit(g.externals_on(polar)))
            return "stabilizer of " + pt_str(g, p) + " is not transitive on E_{p^perp}";
        if (!single_line_orbit(g.passants_through(p)))
            return "stabilizer of " + pt_str(g, p) + " is not transitive on Pa_p";
        if (!single_line_orbit(g.secants_through(p)))
            return "stabilizer of " + pt_str(g, p) + " is not transitive on Se_p";
        if (g.point_class(p) == PointClass::External && !single_line_orbit(g.tangents_through(p)))
            return "stabilizer of " + pt_str(g, p) + " is not transitive on T_p";
    }
    return std::nullopt;
}

std::optional<std::string> check_a11_group(Ctx& c) {
    const auto& g = c.g;
    auto G = enumerate_G(g, c.opts.group_bound);
    std::size_t order = static_cast<std::size_t>(c.q) * (c.q * c.q - 1);
    if (G.size() != order)
        return "|G| = " + std::to_string(G.size()) + ", expected " + std::to_string(order);
    for (std::uint32_t p = 0; p < g.size(); ++p) {
        std::uint32_t polar = g.polar_of_point(p);
        for (const auto& m : G) {
            bool fixes_point = act_point_matrix(g, m, p) == p;
            bool fixes_polar = act_line_matrix(g, m, polar) == polar;
            if (fixes_point != fixes_polar)
                return "a collineation fixes exactly one of " + pt_str(g, p) + " and its polar";
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_interest(Ctx& c) {
    const auto& g = c.g;
    const GroupTable& H = *c.H;
    std::mt19937 rng(0xC0411C);
    const auto& internals = g.points_of(PointClass::Internal);
    const auto& externals = g.points_of(PointClass::External);
    for (int trial = 0; trial < 8; ++trial) {
        std::uint32_t p = internals[rng() % internals.size()];
        std::uint32_t qx = externals[rng() % externals.size()];
        std::uint32_t t = rng() % H.size();
        std::uint32_t pg = H.act_point(t, p);
        std::uint32_t qg = H.act_point(t, qx);
        std::uint32_t polar1 = g.polar_of_point(p);
        std::uint32_t polar2 = g.polar_of_point(pg);
        std::uint32_t ti = H.inverse(t);
        for (std::uint32_t h = 0; h < H.size(); ++h) {
            bool member = g.incident(qx, H.act_line(h, polar1));
            std::uint32_t conj = H.mul(H.mul(ti, h), t);
            bool member_conj = g.incident(qg, H.act_line(conj, polar2));
            if (member != member_conj)
                return "conjugation does not transport membership (trial " + std::to_string(trial) +
                       ")";
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<LemmaVerdict> run_suite(const ConicGeometry& geom, const SuiteOptions& opts) {
    Ctx ctx(geom, opts);
    const int mod4 = ctx.mod4;

    std::vector<std::pair<std::string, CheckFn>> checks;
    checks.emplace_back("Eq_number", check_eq_number);
    checks.emplace_back("Lemma_bijection", check_bijection);
    checks.emplace_back("Table1", check_table1);
    checks.emplace_back("Table2", check_table2);
    checks.emplace_back("Lemma_cs", check_cs);
    checks.emplace_back("Lemma_meet", check_meet);
    checks.emplace_back("Lemma_bsize", check_bsize);
    checks.emplace_back("Lemma_a11", check_a11);
    checks.emplace_back("Cor_sksum", check_sksum);
    if (mod4 == 1) {
        checks.emplace_back("Lemma_set1", check_set1);
        checks.emplace_back("Cor_tsum1", check_tsum1);
    }
    checks.emplace_back("Lemma_set22", check_set22);
    checks.emplace_back("Cor_tsum2", check_tsum2);
    checks.emplace_back("Lemma_u3", check_u3);
    checks.emplace_back("Lemma_u2", check_u2);
    if (mod4 == 3) checks.emplace_back("Lemma_deofD", check_deofD);
    checks.emplace_back("Rank_A", check_rank_A);
    checks.emplace_back("Cor_dim", check_cor_dim);
    checks.emplace_back("Thm_main_ranks", check_main_ranks);
    checks.emplace_back("Conjecture_dims", check_conjecture);
    if (opts.depth == SuiteDepth::Group) {
        checks.emplace_back("Lemma_classes", check_classes);
        checks.emplace_back("Cor_y11", check_y11);
        checks.emplace_back(mod4 == 1 ? "Lemma_m1" : "Lemma_m2", check_m1_m2);
        checks.emplace_back("Lemma_transitive", check_transitive);
        checks.emplace_back("Prop_Ktransitive", check_ktransitive);
        checks.emplace_back("Lemma_a11_group", check_a11_group);
        checks.emplace_back("Eq_interest", check_interest);
    }

    std::vector<LemmaVerdict> verdicts;
    verdicts.reserve(checks.size());
    for (auto& [id, fn] : checks) {
        LemmaVerdict v;
        v.lemma_id = id;
        v.q = ctx.q;
        auto detail = fn(ctx);
        v.passed = !detail.has_value();
        v.detail = detail.value_or("");
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

std::vector<LemmaVerdict> run_suite(int q, const std::optional<std::vector<int>>& modulus,
                                    const SuiteOptions& opts) {
    ConicGeometry geom(Field::from_order(q, modulus));
    return run_suite(geom, opts);
}

std::string verdicts_to_json(std::span<const LemmaVerdict> verdicts) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        nlohmann::ordered_json j;
        j["lemma_id"] = v.lemma_id;
        j["q"] = v.q;
        j["passed"] = v.passed;
        j["detail"] = v.detail;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

} // namespace conic
