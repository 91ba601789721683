#include "conic/incidence.hpp"

#include <algorithm>

#include <json.hpp>

namespace conic {

LabeledMatrix build_A(const ConicGeometry& g) {
    const std::size_t n = g.size();
    LabeledMatrix m;
    m.name = "A";
    m.mat = Gf2Matrix(n, n);
    m.row_labels.resize(n);
    m.col_labels.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) m.row_labels[i] = m.col_labels[i] = i;
    for (std::size_t l = 0; l < n; ++l)
        for (auto p : g.points_on(l)) m.mat.set(p, l);
    return m;
}

LabeledMatrix build_block(const ConicGeometry& g, PointClass pc, LineClass lc) {
    const auto& rows = g.points_of(pc);
    const auto& cols = g.lines_of(lc);
    static const char* row_tag[] = {"2", "1", "3"}; // Internal, Absolute, External
    static const char* col_tag[] = {"2", "1", "3"}; // Passant, Tangent, Secant
    LabeledMatrix m;
    m.name = std::string("A") + row_tag[static_cast<int>(pc)] + col_tag[static_cast<int>(lc)];
    m.mat = Gf2Matrix(rows.size(), cols.size());
    m.row_labels = rows;
    m.col_labels = cols;
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto p : g.points_on(cols[c]))
            if (g.point_class(p) == pc) m.mat.set(g.class_rank_of_point(p), c);
    return m;
}

LabeledMatrix build_B(const ConicGeometry& g) {
    const auto& ext = g.points_of(PointClass::External);
    const auto& in = g.points_of(PointClass::Internal);
    LabeledMatrix m;
    m.name = "B";
    m.mat = Gf2Matrix(ext.size(), in.size());
    m.row_labels = ext;
    m.col_labels = in;
    for (std::size_t c = 0; c < in.size(); ++c) {
        std::uint32_t polar = g.polar_of_point(in[c]);
        for (auto p : g.points_on(polar))
            if (g.point_class(p) == PointClass::External) m.mat.set(g.class_rank_of_point(p), c);
    }
    return m;
}

LabeledMatrix build_B0(const ConicGeometry& g) {
    LabeledMatrix b = build_B(g);
    LabeledMatrix m;
    m.name = "B0";
    m.mat = b.mat.transposed();
    m.row_labels = std::move(b.col_labels);
    m.col_labels = std::move(b.row_labels);
    return m;
}

namespace {
LabeledMatrix build_externals_by_internals(const ConicGeometry& g, LineClass through,
                                           std::string name) {
    const auto& ext = g.points_of(PointClass::External);
    const auto& in = g.points_of(PointClass::Internal);
    LabeledMatrix m;
    m.name = std::move(name);
    m.mat = Gf2Matrix(ext.size(), in.size());
    m.row_labels = ext;
    m.col_labels = in;
    for (std::size_t c = 0; c < in.size(); ++c) {
        auto nbhd = through == LineClass::Passant ? g.passant_externals(in[c])
                                                  : g.secant_externals(in[c]);
        for (auto p : nbhd) m.mat.set(g.class_rank_of_point(p), c);
    }
    return m;
}
} // namespace

LabeledMatrix build_D(const ConicGeometry& g) {
    return build_externals_by_internals(g, LineClass::Passant, "D");
}

LabeledMatrix build_Dprime(const ConicGeometry& g) {
    return build_externals_by_internals(g, LineClass::Secant, "Dprime");
}

const std::vector<std::string>& known_matrix_names() {
    static const std::vector<std::string> names = {"A",  "A11", "A12", "A13", "A21",
                                                   "A22", "A23", "A31", "A32", "A33",
                                                   "B",  "B0",  "D",   "Dprime"};
    return names;
}

LabeledMatrix build_named(const ConicGeometry& g, const std::string& name) {
    if (name == "A") return build_A(g);
    if (name == "B") return build_B(g);
    if (name == "B0") return build_B0(g);
    if (name == "D") return build_D(g);
    if (name == "Dprime") return build_Dprime(g);
    if (name.size() == 3 && name[0] == 'A') {
        static const PointClass pcs[] = {PointClass::Absolute, PointClass::Internal,
                                         PointClass::External};
        static const LineClass lcs[] = {LineClass::Tangent, LineClass::Passant, LineClass::Secant};
        int i = name[1] - '1', j = name[2] - '1';
        if (i >= 0 && i < 3 && j >= 0 && j < 3) return build_block(g, pcs[i], lcs[j]);
    }
    throw UnknownMatrixError("unknown matrix name: " + name);
}

TangentSpans tangent_spans(const ConicGeometry& g) {
    const auto& ext = g.points_of(PointClass::External);
    const auto& tangents = g.lines_of(LineClass::Tangent);
    std::vector<BitVec> chi;
    chi.reserve(tangents.size());
    for (auto l : tangents) {
        BitVec v(ext.size());
        for (auto p : g.points_on(l))
            if (g.point_class(p) == PointClass::External) v.set(g.class_rank_of_point(p));
        chi.push_back(std::move(v));
    }
    TangentSpans spans{Gf2Span(ext.size()), Gf2Span(ext.size())};
    for (const auto& v : chi) spans.m1.insert(v);
    for (std::size_t i = 0; i < chi.size(); ++i)
        for (std::size_t j = i + 1; j < chi.size(); ++j) {
            BitVec s = chi[i];
            s.xor_with(chi[j]);
            spans.m2.insert(std::move(s));
        }
    return spans;
}

std::size_t conjectured_dim_L(int q) {
    long long d = static_cast<long long>(q) * q / 4 - q; // (q^2-1)/4 - q, q odd
    if (q % 4 == 3) d += 1;                              // never negative then
    return static_cast<std::size_t>(d);
}

std::size_t conjectured_dim_L0(int q) {
    std::size_t base = static_cast<std::size_t>(q) * q / 4; // (q^2-1)/4
    return q % 4 == 1 ? base : base + 1;
}

DimensionReport dimension_report(const ConicGeometry& g) {
    DimensionReport r;
    r.q = g.q();
    r.congruence_class = g.q() % 4;
    LabeledMatrix B = build_B(g);
    r.rank_B = rank2(B.mat);
    r.dim_L = B.mat.cols() - r.rank_B;
    r.dim_L0 = B.mat.rows() - r.rank_B;
    r.rank_D = rank2(build_D(g).mat);
    r.rank_Dprime = rank2(build_Dprime(g).mat);
    r.conjecture_dim_L = conjectured_dim_L(g.q());
    r.conjecture_dim_L0 = conjectured_dim_L0(g.q());
    r.match = r.dim_L == r.conjecture_dim_L && r.dim_L0 == r.conjecture_dim_L0;
    return r;
}

std::string to_json(const DimensionReport& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["rank_B"] = r.rank_B;
    j["dim_L"] = r.dim_L;
    j["dim_L0"] = r.dim_L0;
    j["rank_D"] = r.rank_D;
    j["rank_Dprime"] = r.rank_Dprime;
    j["congruence_class"] = r.congruence_class;
    j["conjecture_dim_L"] = r.conjecture_dim_L;
    j["conjecture_dim_L0"] = r.conjecture_dim_L0;
    j["match"] = r.match;
    return j.dump();
}

} // namespace conic
