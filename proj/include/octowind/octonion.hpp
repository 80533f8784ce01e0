#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <utility>

namespace octowind {

/// Element of the 7-dimensional imaginary part of the octonions, stored as
/// the coefficients of e1..e7 (slot 0 holds e1).
struct ImVector7 {
    std::array<double, 7> v{};

    static ImVector7 unit(std::size_t slot);  // slot in 1..7

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double norm_sq() const noexcept;
    double norm() const noexcept { return std::sqrt(norm_sq()); }
    double dot(const ImVector7& o) const noexcept;

    ImVector7& operator+=(const ImVector7& o) noexcept;
    ImVector7& operator-=(const ImVector7& o) noexcept;
    ImVector7& operator*=(double s) noexcept;

    friend ImVector7 operator+(ImVector7 a, const ImVector7& b) noexcept { return a += b; }
    friend ImVector7 operator-(ImVector7 a, const ImVector7& b) noexcept { return a -= b; }
    friend ImVector7 operator*(ImVector7 a, double s) noexcept { return a *= s; }
    friend ImVector7 operator*(double s, ImVector7 a) noexcept { return a *= s; }
    friend bool operator==(const ImVector7&, const ImVector7&) = default;
};

/// Octonion x = sum_j c[j] e_j over the basis e0..e7.
struct Octonion {
    std::array<double, 8> c{};

    static constexpr Octonion basis(std::size_t j) {
        Octonion o;
        o.c[j] = 1.0;
        return o;
    }
    static constexpr Octonion real(double x) {
        Octonion o;
        o.c[0] = x;
        return o;
    }
    /// Purely imaginary octonion with the given e1..e7 coefficients.
    static Octonion from_imag(const ImVector7& v) noexcept;

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Octonion& operator+=(const Octonion& o) noexcept;
    Octonion& operator-=(const Octonion& o) noexcept;
    Octonion& operator*=(double s) noexcept;

    friend Octonion operator+(Octonion a, const Octonion& b) noexcept { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) noexcept { return a -= b; }
    friend Octonion operator-(Octonion a) noexcept { return a *= -1.0; }
    friend Octonion operator*(Octonion a, double s) noexcept { return a *= s; }
    friend Octonion operator*(double s, Octonion a) noexcept { return a *= s; }
    friend bool operator==(const Octonion&, const Octonion&) = default;
};

std::ostream& operator<<(std::ostream& os, const Octonion& x);
std::ostream& operator<<(std::ostream& os, const ImVector7& v);

namespace detail {

// Oriented triples (i, j, k) with e_i e_j = e_k; epsilon is completely
// antisymmetric on each of them.
inline constexpr std::array<std::array<int, 3>, 7> kOrientedTriples{{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5},
}};

struct SignedIndex {
    int index;
    int sign;
};

using ProductTable = std::array<std::array<SignedIndex, 8>, 8>;

// e_i e_j = sign * e_index
constexpr ProductTable make_product_table() {
    ProductTable t{};
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            if (i == 0) {
                t[i][j] = {j, 1};
            } else if (j == 0) {
                t[i][j] = {i, 1};
            } else if (i == j) {
                t[i][j] = {0, -1};
            } else {
                t[i][j] = {0, 0};
            }
        }
    }
    for (const auto& tr : kOrientedTriples) {
        const int a = tr[0], b = tr[1], k = tr[2];
        // cyclic permutations carry +1, transpositions -1
        t[a][b] = {k, 1};
        t[b][k] = {a, 1};
        t[k][a] = {b, 1};
        t[b][a] = {k, -1};
        t[k][b] = {a, -1};
        t[a][k] = {b, -1};
    }
    return t;
}

inline constexpr ProductTable kProductTable = make_product_table();

// For every imaginary output slot k, the three unordered pairs (i < j) with
// e_i e_j = +-e_k. The product is evaluated pairwise as s*(a_i b_j - a_j b_i)
// so that conj(x) * x has an exactly vanishing imaginary part.
struct ImagPair {
    int i;
    int j;
    int sign;  // e_i e_j = sign * e_k
};

using PairTable = std::array<std::array<ImagPair, 3>, 8>;

constexpr PairTable make_pair_table() {
    PairTable p{};
    for (int k = 1; k < 8; ++k) {
        int n = 0;
        for (int i = 1; i < 8; ++i) {
            for (int j = i + 1; j < 8; ++j) {
                if (kProductTable[i][j].index == k) {
                    p[k][n++] = {i, j, kProductTable[i][j].sign};
                }
            }
        }
    }
    return p;
}

inline constexpr PairTable kPairTable = make_pair_table();

constexpr bool table_is_consistent() {
    for (int i = 1; i < 8; ++i) {
        for (int j = 1; j < 8; ++j) {
            const auto ij = kProductTable[i][j];
            const auto ji = kProductTable[j][i];
            if (i == j) {
                if (ij.index != 0 || ij.sign != -1) return false;
                continue;
            }
            // antisymmetry, imaginary result, and every entry filled
            if (ij.sign == 0 || ij.index == 0) return false;
            if (ij.index != ji.index || ij.sign != -ji.sign) return false;
        }
    }
    // each row of the imaginary block is a signed permutation
    for (int i = 1; i < 8; ++i) {
        std::array<int, 8> seen{};
        for (int j = 0; j < 8; ++j) ++seen[kProductTable[i][j].index];
        for (int k = 0; k < 8; ++k) {
            if (seen[k] != 1) return false;
        }
    }
    return true;
}

constexpr std::array<long long, 8> int_mul(const std::array<long long, 8>& a,
                                           const std::array<long long, 8>& b) {
    std::array<long long, 8> r{};
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const auto e = kProductTable[i][j];
            r[e.index] += e.sign * a[i] * b[j];
        }
    }
    return r;
}

constexpr long long int_norm_sq(const std::array<long long, 8>& a) {
    long long s = 0;
    for (auto x : a) s += x * x;
    return s;
}

// Hurwitz identity |ab|^2 = |a|^2 |b|^2 on a handful of integer octonions,
// which is exact in integer arithmetic.
constexpr bool table_satisfies_norm_identity() {
    constexpr std::array<std::array<long long, 8>, 5> samples{{
        {1, 2, 3, 4, 5, 6, 7, 8},
        {-3, 1, 4, -1, 5, -9, 2, 6},
        {2, -7, 1, 8, -2, 8, 1, -8},
        {0, 1, 1, 0, 1, 0, 0, 1},
        {5, 0, -3, 2, 0, 7, -4, 1},
    }};
    for (const auto& a : samples) {
        for (const auto& b : samples) {
            if (int_norm_sq(int_mul(a, b)) != int_norm_sq(a) * int_norm_sq(b)) return false;
        }
    }
    return true;
}

static_assert(table_is_consistent(), "octonion product table is not antisymmetric");
static_assert(table_satisfies_norm_identity(), "octonion product table violates |ab| = |a||b|");

}  // namespace detail

Octonion mul(const Octonion& a, const Octonion& b) noexcept;
inline Octonion operator*(const Octonion& a, const Octonion& b) noexcept { return mul(a, b); }

Octonion conj(const Octonion& a) noexcept;
double norm_sq(const Octonion& a) noexcept;
inline double norm(const Octonion& a) noexcept { return std::sqrt(norm_sq(a)); }

/// conj(a) / |a|^2. Throws DomainError for a = 0.
Octonion inv(const Octonion& a);

ImVector7 imag(const Octonion& a) noexcept;

/// Winding one-form Im(conj(x) v) / |x|^2 evaluated at base point x on the
/// tangent vector v. Throws DomainError for x = 0.
ImVector7 winding_form(const Octonion& x, const Octonion& v);

/// The same one-form written out coordinate by coordinate (eta_1..eta_7).
/// Kept as an independent cross-check of winding_form.
ImVector7 winding_form_coordinates(const Octonion& x, const Octonion& v);

struct Polar {
    double radius;
    Octonion unit;
};

/// x = radius * unit with |unit| = 1. Throws DomainError for x = 0.
Polar polar(const Octonion& x);

}  // namespace octowind
