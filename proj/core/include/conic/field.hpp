#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "conic/errors.hpp"

namespace conic {

/// Canonical index of a field element. Element sum(c_i t^i) has index
/// sum(c_i p^i), so 0..p-1 are the prime subfield and index order is the
/// canonical enumeration order used everywhere (xi selection, point order).
using felt = std::uint16_t;

/// Exact arithmetic in F_q, q = p^e an odd prime power. All operations are
/// table-driven; a Field is immutable after construction and cheap to share.
class Field {
public:
    /// Prime field F_p, or F_{p^e} with a built-in irreducible modulus.
    explicit Field(int p, int e = 1);

    /// F_{p^e} with an explicit monic-izable modulus, constant term first,
    /// length e+1. Irreducibility is checked exhaustively (e <= 4).
    Field(int p, int e, const std::vector<int>& modulus);

    /// Infers (p, e) by factoring q.
    static Field from_order(int q, const std::optional<std::vector<int>>& modulus = std::nullopt);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    /// Monic modulus, constant term first (empty when e == 1).
    const std::vector<int>& modulus() const { return modulus_; }

    /// The fixed non-square: first non-square in canonical index order.
    felt xi() const { return xi_; }

    felt add(felt a, felt b) const { return add_[idx(a, b)]; }
    felt sub(felt a, felt b) const { return add_[idx(a, neg_[b])]; }
    felt neg(felt a) const { return neg_[a]; }
    felt mul(felt a, felt b) const { return mul_[idx(a, b)]; }
    felt inv(felt a) const;
    felt div(felt a, felt b) const;
    felt pow(felt a, long long n) const;

    felt from_int(long long n) const;
    felt element(const std::vector<int>& coeffs) const;
    std::vector<int> coeffs(felt a) const;

    /// Euler square test on nonzero elements; zero is an explicit error so
    /// callers branch exactly where the discriminant trichotomies branch.
    bool is_square(felt x) const;

    /// |(Sq-1) cap Sq|, |(Sq-1) cap Nsq|, |(Nsq-1) cap Sq|, |(Nsq-1) cap Nsq|,
    /// by direct enumeration, where Sq-1 = { s-1 : s in Sq }.
    std::array<std::size_t, 4> square_shift_counts() const;

    bool same_field(const Field& other) const;

    /// Test hook: replaces xi by another non-square (rank results must not
    /// depend on the choice; a property test exercises this).
    void override_xi(felt x);

private:
    std::size_t idx(felt a, felt b) const { return static_cast<std::size_t>(a) * q_ + b; }
    void build_tables();

    int p_ = 0;
    int e_ = 0;
    int q_ = 0;
    std::vector<int> modulus_; // monic, constant first, length e+1 (empty for e == 1)
    felt xi_ = 0;
    std::vector<felt> add_, mul_, neg_, inv_;
    std::vector<bool> square_;
};

/// Element paired with its field, for call sites where mixing fields is a
/// real hazard. Hot loops use Field directly on raw felt indices.
class FieldElement {
public:
    FieldElement(const Field& f, felt v) : f_(&f), v_(v) {}

    felt value() const { return v_; }
    const Field& field() const { return *f_; }
    bool is_zero() const { return v_ == 0; }
    std::vector<int> coeffs() const { return f_->coeffs(v_); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {*a.f_, a.f_->add(a.v_, b.v_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {*a.f_, a.f_->sub(a.v_, b.v_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {*a.f_, a.f_->mul(a.v_, b.v_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {*a.f_, a.f_->div(a.v_, b.v_)};
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return a.v_ == b.v_;
    }

private:
    static void check(const FieldElement& a, const FieldElement& b) {
        if (!a.f_->same_field(*b.f_))
            throw FieldMismatchError("elements belong to different fields");
    }

    const Field* f_;
    felt v_;
};

} // namespace conic
