#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conic/geometry.hpp"
#include "conic/gf2.hpp"
#include "conic/group.hpp"

namespace conic {

struct LemmaVerdict {
    std::string lemma_id;
    int q = 0;
    bool passed = false;
    std::string detail; // counterexample description, nonempty iff failed
};

enum class SuiteDepth { Geometry, Group };

struct SuiteOptions {
    SuiteDepth depth = SuiteDepth::Geometry;
    int group_bound = kDefaultGroupBound;
};

/// Runs every check applicable to the congruence class of q, one verdict per
/// check id, in a fixed order. A failing check yields a failed verdict, never
/// an exception; construction errors do propagate.
std::vector<LemmaVerdict> run_suite(const ConicGeometry& geom, const SuiteOptions& opts = {});
std::vector<LemmaVerdict> run_suite(int q, const std::optional<std::vector<int>>& modulus = std::nullopt,
                                    const SuiteOptions& opts = {});

/// For a conic point p (q = 1 mod 4): a set of q internal points such that
/// every external point of p^perp meets the set by an odd number of passant
/// lines, counted with multiplicity. Verified before returning.
std::vector<std::uint32_t> odd_witness_set(const ConicGeometry& g, std::uint32_t conic_point);

/// For an external point p: a set of q-1 internal points reaching every
/// point of (E_T1 u E_T2) \ {p} by an odd passant count and p itself by an
/// even one. Verified before returning.
std::vector<std::uint32_t> even_witness_set(const ConicGeometry& g, std::uint32_t external_point);

/// Multiset count of passant lines joining `target` to the given points.
std::size_t passant_count_through(const ConicGeometry& g, std::uint32_t target,
                                  std::span<const std::uint32_t> points);

/// Canonically-first tangent line through an external point of p^perp.
std::uint32_t canonical_sksum_tangent(const ConicGeometry& g, std::uint32_t internal_point);

/// The tangents (other than lp) touching at the external points where the
/// passants through p cross the tangent lp.
std::vector<std::uint32_t> tangent_configuration(const ConicGeometry& g,
                                                 std::uint32_t internal_point, std::uint32_t lp);

/// Characteristic vector over the external-point list of g.
BitVec chi_external(const ConicGeometry& g, std::span<const std::uint32_t> points);

std::string verdicts_to_json(std::span<const LemmaVerdict> verdicts);

} // namespace conic
