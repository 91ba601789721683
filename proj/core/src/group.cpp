#include "conic/group.hpp"

#include <algorithm>

namespace conic {

namespace {

std::array<felt, 4> canonical_sign(const Field& F, std::array<felt, 4> s) {
    std::array<felt, 4> n = {F.neg(s[0]), F.neg(s[1]), F.neg(s[2]), F.neg(s[3])};
    return n < s ? n : s;
}

std::uint64_t pack(const std::array<felt, 4>& s) {
    return (std::uint64_t(s[0]) << 48) | (std::uint64_t(s[1]) << 32) | (std::uint64_t(s[2]) << 16) |
           std::uint64_t(s[3]);
}

std::array<felt, 4> mul2x2(const Field& F, const std::array<felt, 4>& x,
                           const std::array<felt, 4>& y) {
    return {F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])),
            F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
            F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])),
            F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
}

std::array<felt, 9> lift(const Field& F, const std::array<felt, 4>& s) {
    const felt a = s[0], b = s[1], c = s[2], d = s[3];
    const felt two = F.from_int(2);
    return {F.mul(a, a),           F.mul(a, b),                          F.mul(b, b),
            F.mul(two, F.mul(a, c)), F.add(F.mul(a, d), F.mul(b, c)),    F.mul(two, F.mul(b, d)),
            F.mul(c, c),           F.mul(c, d),                          F.mul(d, d)};
}

std::array<felt, 9> normalize_matrix(const Field& F, std::array<felt, 9> m) {
    for (auto v : m)
        if (v != 0) {
            felt s = F.inv(v);
            for (auto& x : m) x = F.mul(x, s);
            return m;
        }
    throw Error("zero matrix");
}

Triple normalize_triple(const Field& F, Triple t) {
    for (int i = 0; i < 3; ++i)
        if (t[i] != 0) {
            felt s = F.inv(t[i]);
            return {F.mul(t[0], s), F.mul(t[1], s), F.mul(t[2], s)};
        }
    throw Error("zero triple");
}

} // namespace

GroupElement tau(const Field& F, felt a, felt b, felt c, felt d) {
    if (F.sub(F.mul(a, d), F.mul(b, c)) != 1)
        throw NotUnimodularError("tau requires ad - bc = 1");
    std::array<felt, 4> s = canonical_sign(F, {a, b, c, d});
    return {lift(F, s), s};
}

GroupElement tau_mul(const Field& F, const GroupElement& x, const GroupElement& y) {
    auto s = canonical_sign(F, mul2x2(F, x.source, y.source));
    return {lift(F, s), s};
}

GroupElement tau_inverse(const Field& F, const GroupElement& x) {
    // 2x2 unimodular inverse (d, -b, -c, a)
    std::array<felt, 4> s = {x.source[3], F.neg(x.source[1]), F.neg(x.source[2]), x.source[0]};
    s = canonical_sign(F, s);
    return {lift(F, s), s};
}

std::string ConjClassLabel::str() const {
    switch (kind) {
        case ClassKind::D: return "D";
        case ClassKind::Fplus: return "F+";
        case ClassKind::Fminus: return "F-";
        case ClassKind::Zero: return "[0]";
        case ClassKind::Theta: return "theta_" + std::to_string(index);
        case ClassKind::Pi: return "pi_" + std::to_string(index);
    }
    return "?";
}

GroupTable::GroupTable(const ConicGeometry& geom, int bound) : geom_(&geom), n_(geom.size()) {
    enumerate(bound);
    build_perms();
    label_classes();
}

void GroupTable::enumerate(int bound) {
    const Field& F = geom_->field();
    const int q = F.q();
    if (q > bound)
        throw BoundExceededError("group enumeration gated at q <= " + std::to_string(bound) +
                                 " (got q = " + std::to_string(q) + ")");
    elements_.reserve(static_cast<std::size_t>(q) * (q * q - 1) / 2);
    auto try_add = [&](felt a, felt b, felt c, felt d) {
        auto s = canonical_sign(F, {a, b, c, d});
        auto key = pack(s);
        if (index_.contains(key)) return;
        index_.emplace(key, static_cast<std::uint32_t>(elements_.size()));
        elements_.push_back({lift(F, s), s});
    };
    for (felt a = 0; a < q; ++a)
        for (felt b = 0; b < q; ++b)
            for (felt c = 0; c < q; ++c) {
                if (a != 0) {
                    // d = (1 + bc) / a
                    try_add(a, b, c, F.div(F.add(1, F.mul(b, c)), a));
                } else if (b != 0) {
                    felt cc = F.neg(F.inv(b)); // -bc = 1
                    if (c == cc)
                        for (felt d = 0; d < q; ++d) try_add(a, b, c, d);
                }
            }
    id_ = index_.at(pack(canonical_sign(F, {1, 0, 0, 1})));
}

void GroupTable::build_perms() {
    const Field& F = geom_->field();
    point_perm_.resize(elements_.size() * n_);
    line_perm_.resize(elements_.size() * n_);
    for (std::size_t g = 0; g < elements_.size(); ++g) {
        const auto& m = elements_[g].mat;
        const auto inv = tau_inverse(F, elements_[g]).mat;
        for (std::size_t i = 0; i < n_; ++i) {
            Triple p = geom_->point(i);
            Triple img = {F.add(F.add(F.mul(p[0], m[0]), F.mul(p[1], m[3])), F.mul(p[2], m[6])),
                          F.add(F.add(F.mul(p[0], m[1]), F.mul(p[1], m[4])), F.mul(p[2], m[7])),
                          F.add(F.add(F.mul(p[0], m[2]), F.mul(p[1], m[5])), F.mul(p[2], m[8]))};
            point_perm_[g * n_ + i] = geom_->point_index(img);
            Triple l = geom_->line(i);
            Triple lmg = {F.add(F.add(F.mul(inv[0], l[0]), F.mul(inv[1], l[1])), F.mul(inv[2], l[2])),
                          F.add(F.add(F.mul(inv[3], l[0]), F.mul(inv[4], l[1])), F.mul(inv[5], l[2])),
                          F.add(F.add(F.mul(inv[6], l[0]), F.mul(inv[7], l[1])), F.mul(inv[8], l[2]))};
            line_perm_[g * n_ + i] = geom_->line_index(lmg);
        }
    }
}

void GroupTable::label_classes() {
    const Field& F = geom_->field();
    const std::size_t h = elements_.size();

    // T = tr + 1 equals the squared 2x2 trace.
    std::vector<felt> tval(h);
    for (std::size_t i = 0; i < h; ++i) {
        felt s = F.add(elements_[i].source[0], elements_[i].source[3]);
        tval[i] = F.mul(s, s);
    }

    // The two unipotent classes are told apart by explicit conjugacy.
    auto orbit_of = [&](const GroupElement& rep) {
        std::vector<bool> in_orbit(h, false);
        std::uint32_t r = index_of(rep);
        for (std::size_t g = 0; g < h; ++g) {
            GroupElement conj =
                tau_mul(F, tau_mul(F, tau_inverse(F, elements_[g]), elements_[r]), elements_[g]);
            in_orbit[index_of(conj)] = true;
        }
        return in_orbit;
    };
    auto fplus = orbit_of(tau(F, 1, 1, 0, 1));
    auto fminus = orbit_of(tau(F, 1, F.xi(), 0, 1));

    std::vector<felt> thetas, pis;
    const felt four = F.from_int(4);
    for (std::size_t i = 0; i < h; ++i) {
        felt t = tval[i];
        if (t == 0 || t == four) continue;
        felt d = F.sub(t, four);
        auto& bucket = F.is_square(d) ? thetas : pis;
        if (std::find(bucket.begin(), bucket.end(), t) == bucket.end()) bucket.push_back(t);
    }
    std::sort(thetas.begin(), thetas.end());
    std::sort(pis.begin(), pis.end());

    labels_.clear();
    labels_.push_back({ClassKind::D, four, 0});
    labels_.push_back({ClassKind::Fplus, four, 0});
    labels_.push_back({ClassKind::Fminus, four, 0});
    labels_.push_back({ClassKind::Zero, 0, 0});
    for (std::size_t i = 0; i < thetas.size(); ++i)
        labels_.push_back({ClassKind::Theta, thetas[i], static_cast<int>(i + 1)});
    for (std::size_t k = 0; k < pis.size(); ++k)
        labels_.push_back({ClassKind::Pi, pis[k], static_cast<int>(k + 1)});

    class_id_.resize(h);
    members_.assign(labels_.size(), {});
    for (std::size_t i = 0; i < h; ++i) {
        std::size_t cid;
        felt t = tval[i];
        if (i == id_) {
            cid = 0;
        } else if (t == four) {
            if (fplus[i])
                cid = 1;
            else if (fminus[i])
                cid = 2;
            else
                throw VerificationFailedError("unipotent element in neither F+ nor F-");
        } else if (t == 0) {
            cid = 3;
        } else {
            felt d = F.sub(t, four);
            const auto& bucket = F.is_square(d) ? thetas : pis;
            std::size_t pos = std::find(bucket.begin(), bucket.end(), t) - bucket.begin();
            cid = 4 + (F.is_square(d) ? pos : thetas.size() + pos);
        }
        class_id_[i] = static_cast<std::uint16_t>(cid);
        members_[cid].push_back(static_cast<std::uint32_t>(i));
    }
}

std::uint32_t GroupTable::index_of(const GroupElement& e) const {
    auto it = index_.find(pack(e.source));
    if (it == index_.end()) throw Error("element not in table");
    return it->second;
}

std::uint32_t GroupTable::mul(std::uint32_t x, std::uint32_t y) const {
    return index_of(tau_mul(geom_->field(), elements_[x], elements_[y]));
}

std::uint32_t GroupTable::inverse(std::uint32_t x) const {
    return index_of(tau_inverse(geom_->field(), elements_[x]));
}

std::vector<std::vector<std::uint32_t>> GroupTable::brute_force_classes() const {
    const Field& F = geom_->field();
    const std::size_t h = elements_.size();
    std::vector<bool> seen(h, false);
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::size_t i = 0; i < h; ++i) {
        if (seen[i]) continue;
        std::vector<std::uint32_t> cls;
        for (std::size_t g = 0; g < h; ++g) {
            GroupElement conj =
                tau_mul(F, tau_mul(F, tau_inverse(F, elements_[g]), elements_[i]), elements_[g]);
            std::uint32_t j = index_of(conj);
            if (!seen[j]) {
                seen[j] = true;
                cls.push_back(j);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<std::uint32_t> GroupTable::stabilizer(std::uint32_t point) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t g = 0; g < elements_.size(); ++g)
        if (act_point(g, point) == point) out.push_back(g);
    return out;
}

std::vector<std::uint32_t> GroupTable::point_orbit(std::uint32_t point) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t g = 0; g < elements_.size(); ++g) out.push_back(act_point(g, point));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> GroupTable::hpq_class_counts(std::uint32_t p_internal,
                                                      std::uint32_t q_external) const {
    if (geom_->point_class(p_internal) != PointClass::Internal)
        throw Error("hpq_class_counts: first point must be internal");
    if (geom_->point_class(q_external) != PointClass::External)
        throw Error("hpq_class_counts: second point must be external");
    std::vector<std::size_t> counts(labels_.size(), 0);
    const std::uint32_t polar = geom_->polar_of_point(p_internal);
    for (std::uint32_t g = 0; g < elements_.size(); ++g)
        if (geom_->incident(q_external, act_line(g, polar))) ++counts[class_id_[g]];
    return counts;
}

std::vector<std::array<felt, 9>> enumerate_G(const ConicGeometry& geom, int bound) {
    const Field& F = geom.field();
    GroupTable H(geom, bound);
    felt xi_inv = F.inv(F.xi());
    std::array<felt, 9> dcoset = {1, 0, 0, 0, xi_inv, 0, 0, 0, F.mul(xi_inv, xi_inv)};

    std::vector<std::array<felt, 9>> out;
    out.reserve(H.size() * 2);
    for (std::size_t i = 0; i < H.size(); ++i) {
        const auto& m = H.element(i).mat;
        out.push_back(normalize_matrix(F, m));
        std::array<felt, 9> prod;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                felt acc = 0;
                for (int k = 0; k < 3; ++k)
                    acc = F.add(acc, F.mul(dcoset[r * 3 + k], m[k * 3 + c]));
                prod[r * 3 + c] = acc;
            }
        out.push_back(normalize_matrix(F, prod));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint32_t act_point_matrix(const ConicGeometry& g, const std::array<felt, 9>& m,
                               std::uint32_t p) {
    const Field& F = g.field();
    Triple a = g.point(p);
    Triple img = {F.add(F.add(F.mul(a[0], m[0]), F.mul(a[1], m[3])), F.mul(a[2], m[6])),
                  F.add(F.add(F.mul(a[0], m[1]), F.mul(a[1], m[4])), F.mul(a[2], m[7])),
                  F.add(F.add(F.mul(a[0], m[2]), F.mul(a[1], m[5])), F.mul(a[2], m[8]))};
    return g.point_index(img);
}

std::uint32_t act_line_matrix(const ConicGeometry& g, const std::array<felt, 9>& m,
                              std::uint32_t l) {
    const Field& F = g.field();
    // adjugate = inverse up to scale, which a projective action ignores
    std::array<felt, 9> adj;
    auto det2 = [&](int r1, int c1, int r2, int c2) {
        return F.sub(F.mul(m[r1 * 3 + c1], m[r2 * 3 + c2]), F.mul(m[r1 * 3 + c2], m[r2 * 3 + c1]));
    };
    adj[0] = det2(1, 1, 2, 2);
    adj[1] = F.neg(det2(0, 1, 2, 2));
    adj[2] = det2(0, 1, 1, 2);
    adj[3] = F.neg(det2(1, 0, 2, 2));
    adj[4] = det2(0, 0, 2, 2);
    adj[5] = F.neg(det2(0, 0, 1, 2));
    adj[6] = det2(1, 0, 2, 1);
    adj[7] = F.neg(det2(0, 0, 2, 1));
    adj[8] = det2(0, 0, 1, 1);
    Triple b = g.line(l);
    Triple img = {F.add(F.add(F.mul(adj[0], b[0]), F.mul(adj[1], b[1])), F.mul(adj[2], b[2])),
                  F.add(F.add(F.mul(adj[3], b[0]), F.mul(adj[4], b[1])), F.mul(adj[5], b[2])),
                  F.add(F.add(F.mul(adj[6], b[0]), F.mul(adj[7], b[1])), F.mul(adj[8], b[2]))};
    return g.line_index(normalize_triple(F, img));
}

} // namespace conic
