#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "conic/geometry.hpp"

namespace conic {

/// Default ceiling for full-group enumeration: |H| = q(q^2-1)/2 stays near
/// a thousand elements and the pairwise audits stay well under a second.
inline constexpr int kDefaultGroupBound = 13;

/// Collineation fixing the conic, as the 3x3 symmetric-square image of a
/// unimodular 2x2 matrix. Source quadruples come in +/- pairs mapping to the
/// same matrix; the stored one is the lexicographically smaller.
struct GroupElement {
    std::array<felt, 9> mat;    // row-major
    std::array<felt, 4> source; // (a, b, c, d), ad - bc = 1

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Symmetric-square lift of (a,b,c,d); requires ad - bc = 1.
GroupElement tau(const Field& F, felt a, felt b, felt c, felt d);
GroupElement tau_mul(const Field& F, const GroupElement& x, const GroupElement& y);
GroupElement tau_inverse(const Field& F, const GroupElement& x);

enum class ClassKind : std::uint8_t { D, Fplus, Fminus, Zero, Theta, Pi };

/// Conjugacy class label from the trace invariant T = tr(mat) + 1: the
/// identity alone is D; T = 4 otherwise splits into F+ and F-; T = 0 is the
/// involution class; remaining T are Theta (T - 4 a square) or Pi (T - 4 a
/// non-square), numbered in canonical field order of T.
struct ConjClassLabel {
    ClassKind kind = ClassKind::D;
    felt t_value = 0;
    int index = 0; // 1-based among Theta resp. Pi classes, 0 otherwise

    std::string str() const;
    friend bool operator==(const ConjClassLabel&, const ConjClassLabel&) = default;
};

/// Fully enumerated H (iso PSL(2,q)) acting on a ConicGeometry: element
/// list, point/line permutations, conjugacy partition, class labels.
/// Immutable after construction. The geometry must outlive the table.
class GroupTable {
public:
    explicit GroupTable(const ConicGeometry& geom, int bound = kDefaultGroupBound);

    const ConicGeometry& geometry() const { return *geom_; }
    std::size_t size() const { return elements_.size(); }
    const GroupElement& element(std::size_t i) const { return elements_[i]; }
    std::uint32_t index_of(const GroupElement& e) const;

    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t inverse(std::uint32_t x) const;
    std::uint32_t identity() const { return id_; }

    std::uint32_t act_point(std::uint32_t g, std::uint32_t p) const {
        return point_perm_[g * n_ + p];
    }
    std::uint32_t act_line(std::uint32_t g, std::uint32_t l) const {
        return line_perm_[g * n_ + l];
    }

    std::size_t class_count() const { return labels_.size(); }
    const ConjClassLabel& class_label(std::size_t cid) const { return labels_[cid]; }
    std::size_t class_id_of(std::uint32_t g) const { return class_id_[g]; }
    ConjClassLabel class_of(std::uint32_t g) const { return labels_[class_id_[g]]; }
    const std::vector<std::uint32_t>& class_members(std::size_t cid) const {
        return members_[cid];
    }

    /// Conjugation-orbit partition computed by brute force, independent of
    /// the trace labelling (each inner vector sorted ascending).
    std::vector<std::vector<std::uint32_t>> brute_force_classes() const;

    std::vector<std::uint32_t> stabilizer(std::uint32_t point) const;
    std::vector<std::uint32_t> point_orbit(std::uint32_t point) const;

    /// Per-class sizes of { h in H : q_ext lies on (p^perp)^h }.
    std::vector<std::size_t> hpq_class_counts(std::uint32_t p_internal,
                                              std::uint32_t q_external) const;

private:
    void enumerate(int bound);
    void build_perms();
    void label_classes();

    const ConicGeometry* geom_;
    std::size_t n_ = 0; // points (= lines) in the plane
    std::uint32_t id_ = 0;
    std::vector<GroupElement> elements_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::vector<std::uint32_t> point_perm_, line_perm_; // elements x n
    std::vector<std::uint16_t> class_id_;
    std::vector<ConjClassLabel> labels_;
    std::vector<std::vector<std::uint32_t>> members_;
};

/// Representative matrices for G (iso PGL(2,q)): the tau image of SL(2,q)
/// together with the coset of diag(1, xi^-1, xi^-2), projectively
/// normalized so the list has no duplicates.
std::vector<std::array<felt, 9>> enumerate_G(const ConicGeometry& geom,
                                             int bound = kDefaultGroupBound);

/// Point/line action of an arbitrary invertible 3x3 collineation matrix.
std::uint32_t act_point_matrix(const ConicGeometry& g, const std::array<felt, 9>& m,
                               std::uint32_t p);
std::uint32_t act_line_matrix(const ConicGeometry& g, const std::array<felt, 9>& m,
                              std::uint32_t l);

} // namespace conic
