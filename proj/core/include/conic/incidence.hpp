#pragma once

#include <string>
#include <vector>

#include "conic/geometry.hpp"
#include "conic/gf2.hpp"

namespace conic {

/// A GF(2) incidence matrix together with the geometry indices labelling its
/// rows and columns (strictly increasing in canonical order).
struct LabeledMatrix {
    Gf2Matrix mat;
    std::vector<std::uint32_t> row_labels;
    std::vector<std::uint32_t> col_labels;
    std::string name;
};

/// Full point-line incidence matrix of PG(2,q), canonical order both ways.
LabeledMatrix build_A(const ConicGeometry& g);

/// Sub-incidence block: rows restricted to a point class, columns to a line
/// class. Block names follow the 3x3 partition with rows (absolute,
/// internal, external) and columns (tangent, passant, secant).
LabeledMatrix build_block(const ConicGeometry& g, PointClass pc, LineClass lc);

/// Rows indexed by external points, columns by internal points; the column
/// of p is the characteristic vector of the external points on the passant
/// p^perp. B0 is the transpose with labels swapped.
LabeledMatrix build_B(const ConicGeometry& g);
LabeledMatrix build_B0(const ConicGeometry& g);

/// Columns are characteristic vectors of the external points on the passant
/// (D) resp. secant (Dprime) lines through each internal point.
LabeledMatrix build_D(const ConicGeometry& g);
LabeledMatrix build_Dprime(const ConicGeometry& g);

/// Matrix selector used by the CLI: A, A11..A33, B, B0, D, Dprime.
LabeledMatrix build_named(const ConicGeometry& g, const std::string& name);
const std::vector<std::string>& known_matrix_names();

struct TangentSpans {
    Gf2Span m1; // span of tangent-line characteristic vectors over E
    Gf2Span m2; // span of their pairwise sums
};
TangentSpans tangent_spans(const ConicGeometry& g);

struct DimensionReport {
    int q = 0;
    std::size_t rank_B = 0;
    std::size_t dim_L = 0;  // null space of B (columns: internal points)
    std::size_t dim_L0 = 0; // null space of B0 (columns: external points)
    std::size_t rank_D = 0;
    std::size_t rank_Dprime = 0;
    int congruence_class = 0; // q mod 4
    std::size_t conjecture_dim_L = 0;
    std::size_t conjecture_dim_L0 = 0;
    bool match = false;
};

std::size_t conjectured_dim_L(int q);
std::size_t conjectured_dim_L0(int q);

DimensionReport dimension_report(const ConicGeometry& g);

/// JSON object with the exact field names of DimensionReport.
std::string to_json(const DimensionReport& r);

} // namespace conic
