#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conic/field.hpp"

namespace conic {

enum class PointClass : std::uint8_t { Internal, Absolute, External };
enum class LineClass : std::uint8_t { Passant, Tangent, Secant };

std::string to_string(PointClass c);
std::string to_string(LineClass c);

/// Homogeneous coordinate triple, used for both points (a0,a1,a2) and lines
/// [b0,b1,b2]. Normal form: leftmost nonzero coordinate is 1.
using Triple = std::array<felt, 3>;

/// The projective plane PG(2,q) with the standard conic
/// O = {(1,t,t^2)} u {(0,0,1)}, its polarity, and the full point/line
/// classification in a fixed canonical order:
/// points (1,a,b) for a,b ascending, then (0,1,c), then (0,0,1); lines
/// likewise. Immutable after construction; all queries are read-only.
class ConicGeometry {
public:
    explicit ConicGeometry(Field field);

    const Field& field() const { return field_; }
    int q() const { return field_.q(); }
    std::size_t size() const { return n_; } // q^2+q+1 points (and lines)

    Triple point(std::size_t i) const { return points_[i]; }
    Triple line(std::size_t i) const { return lines_[i]; }
    std::uint32_t point_index(Triple t) const;
    std::uint32_t line_index(Triple t) const;
    Triple normalized(Triple t) const;

    bool incident(std::size_t p, std::size_t l) const;

    PointClass point_class(std::size_t p) const { return point_class_[p]; }
    LineClass line_class(std::size_t l) const { return line_class_[l]; }

    std::uint32_t polar_of_point(std::size_t p) const { return polar_pt_[p]; }
    std::uint32_t polar_of_line(std::size_t l) const { return polar_ln_[l]; }

    const std::vector<std::uint32_t>& conic() const { return conic_; }
    const std::vector<std::uint32_t>& points_of(PointClass c) const;
    const std::vector<std::uint32_t>& lines_of(LineClass c) const;

    /// Position of point p within points_of(point_class(p)).
    std::uint32_t class_rank_of_point(std::size_t p) const { return pt_rank_[p]; }
    std::uint32_t class_rank_of_line(std::size_t l) const { return ln_rank_[l]; }

    std::span<const std::uint32_t> points_on(std::size_t l) const { return pts_on_[l]; }
    std::span<const std::uint32_t> lines_through(std::size_t p) const { return lns_thru_[p]; }

    // Neighborhoods (all results in ascending index order).
    std::vector<std::uint32_t> externals_on(std::size_t l) const;
    std::vector<std::uint32_t> internals_on(std::size_t l) const;
    std::vector<std::uint32_t> passants_through(std::size_t p) const; // throws PointOnConicError
    std::vector<std::uint32_t> secants_through(std::size_t p) const;  // throws PointOnConicError
    std::vector<std::uint32_t> tangents_through(std::size_t p) const; // throws PointOnConicError
    /// External points on the passant (resp. secant) lines through p.
    std::vector<std::uint32_t> passant_externals(std::size_t p) const;
    std::vector<std::uint32_t> secant_externals(std::size_t p) const;

    /// Intersection point of two distinct lines / line through two distinct
    /// points, by the cross-product formula.
    std::uint32_t meet(std::size_t l1, std::size_t l2) const;
    std::uint32_t join(std::size_t p1, std::size_t p2) const;

    /// For a conic point (1,t,t^2) returns t; (0,0,1) is reported at index q
    /// (the "infinite" parameter). Throws unless p is on the conic.
    int conic_parameter(std::size_t p) const;
    std::uint32_t conic_point_at(int parameter) const;

    /// Test hook: toggles one (point, line) adjacency in the stored pencils,
    /// so audit suites can prove they would catch a broken structure.
    void corrupt_incidence_for_tests(std::size_t p, std::size_t l);

private:
    std::vector<std::uint32_t> filter_lines(std::size_t p, LineClass c) const;

    Field field_;
    std::size_t n_;
    std::vector<Triple> points_, lines_;
    std::vector<PointClass> point_class_;
    std::vector<LineClass> line_class_;
    std::vector<std::uint32_t> polar_pt_, polar_ln_;
    std::vector<std::uint32_t> conic_;
    std::vector<std::uint32_t> internal_, absolute_, external_;
    std::vector<std::uint32_t> passant_, tangent_, secant_;
    std::vector<std::uint32_t> pt_rank_, ln_rank_;
    std::vector<std::vector<std::uint32_t>> pts_on_, lns_thru_;
};

} // namespace conic
