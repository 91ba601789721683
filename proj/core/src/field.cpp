#include "conic/field.hpp"

#include <algorithm>
#include <map>

namespace conic {

namespace {

constexpr int kMaxQ = 2048; // keeps the q*q tables small

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Built-in irreducibles, constant term first; covers all odd p^e <= 128
// with e > 1.
const std::map<std::pair<int, int>, std::vector<int>>& builtin_moduli() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{3, 2}, {1, 0, 1}},       // t^2 + 1
        {{5, 2}, {2, 0, 1}},       // t^2 + 2
        {{3, 3}, {1, 2, 0, 1}},    // t^3 + 2t + 1
        {{7, 2}, {1, 0, 1}},       // t^2 + 1
        {{3, 4}, {2, 1, 0, 0, 1}}, // t^4 + t + 2
        {{11, 2}, {1, 0, 1}},      // t^2 + 1
        {{5, 3}, {1, 1, 0, 1}},    // t^3 + t + 1
    };
    return table;
}

int mod_pos(long long n, int p) {
    long long r = n % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

using Poly = std::vector<int>; // coefficients mod p, constant first

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

// Reduces in place by a monic modulus of degree e.
void poly_reduce(Poly& a, const Poly& m, int p) {
    const int e = static_cast<int>(m.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= e; --d) {
        int c = a[d];
        if (c == 0) continue;
        for (int i = 0; i <= e; ++i) {
            int& t = a[d - e + i];
            t = mod_pos(t - c * m[i], p);
        }
    }
    a.resize(e);
}

int poly_eval(const Poly& a, int x, int p) {
    int r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = (r * x + *it) % p;
    return r;
}

// Remainder of a by a monic divisor d, both constant-first.
Poly poly_rem(Poly a, const Poly& d, int p) {
    const int dd = static_cast<int>(d.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= dd; --k) {
        int c = a[k];
        if (c == 0) continue;
        for (int i = 0; i <= dd; ++i) a[k - dd + i] = mod_pos(a[k - dd + i] - c * d[i], p);
    }
    a.resize(dd);
    return a;
}

void check_irreducible(const Poly& m, int p, int e) {
    for (int x = 0; x < p; ++x)
        if (poly_eval(m, x, p) == 0)
            throw ReducibleModulusError("modulus has root " + std::to_string(x) + " mod " +
                                        std::to_string(p));
    if (e == 4) {
        // No linear factor; a reducible quartic must then have a monic
        // quadratic factor. Trial-divide by all of them.
        for (int b = 0; b < p; ++b) {
            for (int c = 0; c < p; ++c) {
                Poly d = {c, b, 1};
                Poly r = poly_rem(m, d, p);
                if (std::all_of(r.begin(), r.end(), [](int v) { return v == 0; }))
                    throw ReducibleModulusError("modulus divisible by a quadratic factor");
            }
        }
    }
}

} // namespace

Field::Field(int p, int e) : p_(p), e_(e) {
    if (p == 2) throw EvenCharacteristicError("characteristic 2 is not supported");
    if (!is_prime(p)) throw NotPrimeError(std::to_string(p) + " is not prime");
    if (e < 1) throw Error("exponent must be positive");
    if (e > 1) {
        auto it = builtin_moduli().find({p, e});
        if (it == builtin_moduli().end())
            throw NoBuiltinModulusError("no built-in irreducible for p=" + std::to_string(p) +
                                        ", e=" + std::to_string(e) + "; pass one explicitly");
        modulus_ = it->second;
        check_irreducible(modulus_, p, e);
    }
    build_tables();
}

Field::Field(int p, int e, const std::vector<int>& modulus) : p_(p), e_(e) {
    if (p == 2) throw EvenCharacteristicError("characteristic 2 is not supported");
    if (!is_prime(p)) throw NotPrimeError(std::to_string(p) + " is not prime");
    if (e < 1) throw Error("exponent must be positive");
    if (e == 1) {
        build_tables(); // modulus unused over the prime field
        return;
    }
    if (e > 4) throw BoundExceededError("irreducibility checking supports e <= 4");
    if (modulus.size() != static_cast<std::size_t>(e) + 1)
        throw ReducibleModulusError("modulus must have degree e (" + std::to_string(e + 1) +
                                    " coefficients, constant term first)");
    Poly m(modulus.size());
    for (std::size_t i = 0; i < modulus.size(); ++i) m[i] = mod_pos(modulus[i], p);
    if (m.back() == 0) throw ReducibleModulusError("modulus leading coefficient vanishes mod p");
    if (m.back() != 1) {
        // make monic
        int lead = m.back(), li = 1;
        while (mod_pos(lead * li, p) != 1) ++li;
        for (auto& c : m) c = mod_pos(c * li, p);
    }
    check_irreducible(m, p, e);
    modulus_ = m;
    build_tables();
}

Field Field::from_order(int q, const std::optional<std::vector<int>>& modulus) {
    if (q < 3) throw NotPrimeError(std::to_string(q) + " is not an odd prime power");
    if (q % 2 == 0) throw EvenCharacteristicError(std::to_string(q) + " is not an odd prime power");
    int p = 3;
    while (q % p != 0) {
        p += 2;
        if (p * p > q) {
            p = q; // q itself is prime
            break;
        }
    }
    int e = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw NotPrimeError(std::to_string(q) + " is not an odd prime power");
    if (modulus) return Field(p, e, *modulus);
    return Field(p, e);
}

void Field::build_tables() {
    long long q = 1;
    for (int i = 0; i < e_; ++i) q *= p_;
    if (q > kMaxQ) throw BoundExceededError("q = " + std::to_string(q) + " exceeds supported bound");
    q_ = static_cast<int>(q);

    auto to_poly = [&](felt a) {
        Poly c(e_);
        for (int i = 0; i < e_; ++i) {
            c[i] = a % p_;
            a = static_cast<felt>(a / p_);
        }
        return c;
    };
    auto to_idx = [&](const Poly& c) {
        int v = 0;
        for (int i = e_ - 1; i >= 0; --i) v = v * p_ + c[i];
        return static_cast<felt>(v);
    };

    add_.resize(static_cast<std::size_t>(q_) * q_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);

    std::vector<Poly> polys(q_);
    for (int a = 0; a < q_; ++a) polys[a] = to_poly(static_cast<felt>(a));

    for (int a = 0; a < q_; ++a) {
        Poly na(e_);
        for (int i = 0; i < e_; ++i) na[i] = mod_pos(-polys[a][i], p_);
        neg_[a] = to_idx(na);
        for (int b = 0; b < q_; ++b) {
            Poly s(e_);
            for (int i = 0; i < e_; ++i) s[i] = (polys[a][i] + polys[b][i]) % p_;
            add_[idx(static_cast<felt>(a), static_cast<felt>(b))] = to_idx(s);
            Poly m = poly_mul(polys[a], polys[b], p_);
            if (e_ > 1)
                poly_reduce(m, modulus_, p_);
            else
                m.resize(1);
            mul_[idx(static_cast<felt>(a), static_cast<felt>(b))] = to_idx(m);
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[idx(static_cast<felt>(a), static_cast<felt>(b))] == 1) {
                inv_[a] = static_cast<felt>(b);
                break;
            }

    square_.assign(q_, false);
    for (int x = 1; x < q_; ++x) square_[mul_[idx(static_cast<felt>(x), static_cast<felt>(x))]] = true;
    xi_ = 0;
    for (int x = 1; x < q_; ++x)
        if (!square_[x]) {
            xi_ = static_cast<felt>(x);
            break;
        }
}

felt Field::inv(felt a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero");
    return inv_[a];
}

felt Field::div(felt a, felt b) const {
    if (b == 0) throw DivisionByZeroError("division by zero");
    return mul(a, inv_[b]);
}

felt Field::pow(felt a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    felt r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

felt Field::from_int(long long n) const {
    return static_cast<felt>(mod_pos(n, p_));
}

felt Field::element(const std::vector<int>& coeffs) const {
    if (coeffs.size() > static_cast<std::size_t>(e_)) throw Error("too many coefficients");
    int v = 0;
    long long pw = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        v += mod_pos(coeffs[i], p_) * static_cast<int>(pw);
        pw *= p_;
    }
    return static_cast<felt>(v);
}

std::vector<int> Field::coeffs(felt a) const {
    std::vector<int> c(e_);
    for (int i = 0; i < e_; ++i) {
        c[i] = a % p_;
        a = static_cast<felt>(a / p_);
    }
    return c;
}

bool Field::is_square(felt x) const {
    if (x == 0) throw ZeroInputError("zero is neither a square nor a non-square here");
    return square_[x];
}

std::array<std::size_t, 4> Field::square_shift_counts() const {
    std::array<std::size_t, 4> counts = {0, 0, 0, 0};
    for (int s = 1; s < q_; ++s) {
        bool s_sq = square_[s];
        felt t = sub(static_cast<felt>(s), 1);
        if (t == 0) continue;
        bool t_sq = square_[t];
        if (s_sq && t_sq) ++counts[0];
        if (s_sq && !t_sq) ++counts[1];
        if (!s_sq && t_sq) ++counts[2];
        if (!s_sq && !t_sq) ++counts[3];
    }
    return counts;
}

bool Field::same_field(const Field& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
}

void Field::override_xi(felt x) {
    if (x == 0 || square_[x]) throw Error("xi override must be a non-square");
    xi_ = x;
}

} // namespace conic
