#include "conic/geometry.hpp"

#include <algorithm>

namespace conic {

std::string to_string(PointClass c) {
    switch (c) {
        case PointClass::Internal: return "internal";
        case PointClass::Absolute: return "absolute";
        case PointClass::External: return "external";
    }
    return "?";
}

std::string to_string(LineClass c) {
    switch (c) {
        case LineClass::Passant: return "passant";
        case LineClass::Tangent: return "tangent";
        case LineClass::Secant: return "secant";
    }
    return "?";
}

ConicGeometry::ConicGeometry(Field field) : field_(std::move(field)) {
    const Field& F = field_;
    const int q = F.q();
    n_ = static_cast<std::size_t>(q) * q + q + 1;

    points_.reserve(n_);
    for (felt a = 0; a < q; ++a)
        for (felt b = 0; b < q; ++b) points_.push_back({1, a, b});
    for (felt c = 0; c < q; ++c) points_.push_back({0, 1, c});
    points_.push_back({0, 0, 1});
    lines_ = points_; // same normal forms, same canonical order

    // Classification by discriminant: a1^2 - a0*a2 for points,
    // b1^2 - 4*b0*b2 for lines.
    point_class_.resize(n_);
    line_class_.resize(n_);
    const felt four = F.from_int(4);
    for (std::size_t i = 0; i < n_; ++i) {
        const Triple& p = points_[i];
        felt d = F.sub(F.mul(p[1], p[1]), F.mul(p[0], p[2]));
        point_class_[i] = d == 0             ? PointClass::Absolute
                          : F.is_square(d)   ? PointClass::External
                                             : PointClass::Internal;
        const Triple& l = lines_[i];
        felt dl = F.sub(F.mul(l[1], l[1]), F.mul(four, F.mul(l[0], l[2])));
        line_class_[i] = dl == 0           ? LineClass::Tangent
                         : F.is_square(dl) ? LineClass::Secant
                                           : LineClass::Passant;
    }

    // Polarity: point (x,y,z) -> line [z,-2y,x]; the line map is the inverse
    // permutation (it agrees with the inverse-matrix form, see tests).
    polar_pt_.resize(n_);
    polar_ln_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const Triple& p = points_[i];
        felt m2y = F.neg(F.add(p[1], p[1]));
        polar_pt_[i] = line_index({p[2], m2y, p[0]});
    }
    for (std::size_t i = 0; i < n_; ++i) polar_ln_[polar_pt_[i]] = static_cast<std::uint32_t>(i);

    conic_.reserve(q + 1);
    for (felt t = 0; t < q; ++t) conic_.push_back(point_index({1, t, F.mul(t, t)}));
    conic_.push_back(point_index({0, 0, 1}));
    std::sort(conic_.begin(), conic_.end());

    for (std::size_t i = 0; i < n_; ++i) {
        switch (point_class_[i]) {
            case PointClass::Internal: internal_.push_back(i); break;
            case PointClass::Absolute: absolute_.push_back(i); break;
            case PointClass::External: external_.push_back(i); break;
        }
        switch (line_class_[i]) {
            case LineClass::Passant: passant_.push_back(i); break;
            case LineClass::Tangent: tangent_.push_back(i); break;
            case LineClass::Secant: secant_.push_back(i); break;
        }
    }
    pt_rank_.resize(n_);
    ln_rank_.resize(n_);
    for (const auto* cls : {&internal_, &absolute_, &external_})
        for (std::uint32_t r = 0; r < cls->size(); ++r) pt_rank_[(*cls)[r]] = r;
    for (const auto* cls : {&passant_, &tangent_, &secant_})
        for (std::uint32_t r = 0; r < cls->size(); ++r) ln_rank_[(*cls)[r]] = r;

    // Point lists per line, by direct parametrization of the kernel of
    // [b0,b1,b2], then the inverted pencils.
    pts_on_.assign(n_, {});
    lns_thru_.assign(n_, {});
    for (std::size_t li = 0; li < n_; ++li) {
        const Triple& l = lines_[li];
        auto& pts = pts_on_[li];
        pts.reserve(q + 1);
        if (l[2] != 0) {
            felt i2 = F.inv(l[2]);
            for (felt a = 0; a < q; ++a)
                pts.push_back(point_index({1, a, F.mul(F.neg(F.add(l[0], F.mul(a, l[1]))), i2)}));
            pts.push_back(point_index({0, 1, F.mul(F.neg(l[1]), i2)}));
        } else if (l[1] != 0) {
            felt a = F.div(F.neg(l[0]), l[1]);
            for (felt b = 0; b < q; ++b) pts.push_back(point_index({1, a, b}));
            pts.push_back(point_index({0, 0, 1}));
        } else {
            for (felt c = 0; c < q; ++c) pts.push_back(point_index({0, 1, c}));
            pts.push_back(point_index({0, 0, 1}));
        }
        std::sort(pts.begin(), pts.end());
        for (auto pi : pts) lns_thru_[pi].push_back(static_cast<std::uint32_t>(li));
    }
    // lns_thru_ entries were pushed in ascending line order already
}

Triple ConicGeometry::normalized(Triple t) const {
    const Field& F = field_;
    for (int i = 0; i < 3; ++i)
        if (t[i] != 0) {
            felt s = F.inv(t[i]);
            return {F.mul(t[0], s), F.mul(t[1], s), F.mul(t[2], s)};
        }
    throw Error("zero triple has no projective meaning");
}

std::uint32_t ConicGeometry::point_index(Triple t) const {
    t = normalized(t);
    const int q = field_.q();
    if (t[0] == 1) return static_cast<std::uint32_t>(t[1]) * q + t[2];
    if (t[1] == 1) return static_cast<std::uint32_t>(q) * q + t[2];
    return static_cast<std::uint32_t>(q) * q + q;
}

std::uint32_t ConicGeometry::line_index(Triple t) const { return point_index(t); }

bool ConicGeometry::incident(std::size_t p, std::size_t l) const {
    const Field& F = field_;
    const Triple& a = points_[p];
    const Triple& b = lines_[l];
    felt s = F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.mul(a[2], b[2]));
    return s == 0;
}

const std::vector<std::uint32_t>& ConicGeometry::points_of(PointClass c) const {
    switch (c) {
        case PointClass::Internal: return internal_;
        case PointClass::Absolute: return absolute_;
        default: return external_;
    }
}

const std::vector<std::uint32_t>& ConicGeometry::lines_of(LineClass c) const {
    switch (c) {
        case LineClass::Passant: return passant_;
        case LineClass::Tangent: return tangent_;
        default: return secant_;
    }
}

std::vector<std::uint32_t> ConicGeometry::externals_on(std::size_t l) const {
    std::vector<std::uint32_t> out;
    for (auto p : pts_on_[l])
        if (point_class_[p] == PointClass::External) out.push_back(p);
    return out;
}

std::vector<std::uint32_t> ConicGeometry::internals_on(std::size_t l) const {
    std::vector<std::uint32_t> out;
    for (auto p : pts_on_[l])
        if (point_class_[p] == PointClass::Internal) out.push_back(p);
    return out;
}

std::vector<std::uint32_t> ConicGeometry::filter_lines(std::size_t p, LineClass c) const {
    if (point_class_[p] == PointClass::Absolute)
        throw PointOnConicError("pencil counts differ on the conic itself");
    std::vector<std::uint32_t> out;
    for (auto l : lns_thru_[p])
        if (line_class_[l] == c) out.push_back(l);
    return out;
}

std::vector<std::uint32_t> ConicGeometry::passants_through(std::size_t p) const {
    return filter_lines(p, LineClass::Passant);
}
std::vector<std::uint32_t> ConicGeometry::secants_through(std::size_t p) const {
    return filter_lines(p, LineClass::Secant);
}
std::vector<std::uint32_t> ConicGeometry::tangents_through(std::size_t p) const {
    return filter_lines(p, LineClass::Tangent);
}

std::vector<std::uint32_t> ConicGeometry::passant_externals(std::size_t p) const {
    std::vector<std::uint32_t> out;
    for (auto l : filter_lines(p, LineClass::Passant))
        for (auto x : pts_on_[l])
            if (point_class_[x] == PointClass::External) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint32_t> ConicGeometry::secant_externals(std::size_t p) const {
    std::vector<std::uint32_t> out;
    for (auto l : filter_lines(p, LineClass::Secant))
        for (auto x : pts_on_[l])
            if (point_class_[x] == PointClass::External) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {
Triple cross(const Field& F, const Triple& a, const Triple& b) {
    return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
            F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
            F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}
} // namespace

std::uint32_t ConicGeometry::meet(std::size_t l1, std::size_t l2) const {
    if (l1 == l2) throw Error("meet of a line with itself");
    return point_index(cross(field_, lines_[l1], lines_[l2]));
}

std::uint32_t ConicGeometry::join(std::size_t p1, std::size_t p2) const {
    if (p1 == p2) throw Error("join of a point with itself");
    return line_index(cross(field_, points_[p1], points_[p2]));
}

int ConicGeometry::conic_parameter(std::size_t p) const {
    const Triple& t = points_[p];
    if (t[0] == 1 && t[2] == field_.mul(t[1], t[1])) return t[1];
    if (t[0] == 0 && t[1] == 0) return field_.q();
    throw Error("point is not on the conic");
}

std::uint32_t ConicGeometry::conic_point_at(int parameter) const {
    if (parameter == field_.q()) return point_index({0, 0, 1});
    felt t = static_cast<felt>(parameter);
    return point_index({1, t, field_.mul(t, t)});
}

void ConicGeometry::corrupt_incidence_for_tests(std::size_t p, std::size_t l) {
    auto toggle = [](std::vector<std::uint32_t>& v, std::uint32_t x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it != v.end() && *it == x)
            v.erase(it);
        else
            v.insert(it, x);
    };
    toggle(pts_on_[l], static_cast<std::uint32_t>(p));
    toggle(lns_thru_[p], static_cast<std::uint32_t>(l));
}

} // namespace conic
