#include "octowind/errors.hpp"
#include "octowind/octonion.hpp"
#include "octowind/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

using namespace octowind;

namespace {

// Reference product written straight from e_i e_j = -delta_ij e0 + eps_ijk e_k
// with eps = 1 on the cyclic triples below, evaluated term by term.
Octonion reference_mul(const Octonion& a, const Octonion& b) {
    static const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                      {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    auto eps = [&](int i, int j, int k) {
        for (const auto& t : triples) {
            for (int r = 0; r < 3; ++r) {
                const int p = t[r], q = t[(r + 1) % 3], s = t[(r + 2) % 3];
                if (i == p && j == q && k == s) return 1;
                if (i == q && j == p && k == s) return -1;
            }
        }
        return 0;
    };
    Octonion out;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double w = a.c[i] * b.c[j];
            if (i == 0) {
                out.c[j] += w;
            } else if (j == 0) {
                out.c[i] += w;
            } else if (i == j) {
                out.c[0] -= w;
            } else {
                for (int k = 1; k < 8; ++k) out.c[k] += eps(i, j, k) * w;
            }
        }
    }
    return out;
}

Octonion random_octonion(Rng& rng) {
    Octonion x;
    for (auto& c : x.c) c = rng.normal();
    return x;
}

double max_diff(const Octonion& a, const Octonion& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 8; ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
    return m;
}

double max_diff(const ImVector7& a, const ImVector7& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 7; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Octonion e(std::size_t j) { return Octonion::basis(j); }

}  // namespace

TEST(Octonion, BasisProducts) {
    EXPECT_EQ(e(1) * e(2), e(3));
    EXPECT_EQ(e(2) * e(1), -e(3));
    EXPECT_EQ(e(1) * e(1), -e(0));
    EXPECT_EQ(e(1) * e(7), e(6));
}

TEST(Octonion, TableMatchesReference) {
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            EXPECT_EQ(e(i) * e(j), reference_mul(e(i), e(j))) << "e" << i << " e" << j;
        }
    }
    Rng rng(7);
    for (int n = 0; n < 200; ++n) {
        const Octonion a = random_octonion(rng), b = random_octonion(rng);
        EXPECT_LT(max_diff(a * b, reference_mul(a, b)), 1e-13);
    }
}

TEST(Octonion, IdentityIsTwoSided) {
    Rng rng(11);
    for (int n = 0; n < 100; ++n) {
        const Octonion x = random_octonion(rng);
        EXPECT_EQ(e(0) * x, x);
        EXPECT_EQ(x * e(0), x);
    }
}

TEST(Octonion, Conjugate) {
    EXPECT_EQ(conj(e(0)), e(0));
    EXPECT_EQ(conj(e(3)), -e(3));
    Rng rng(3);
    for (int n = 0; n < 100; ++n) {
        const Octonion x = random_octonion(rng);
        EXPECT_EQ(conj(conj(x)), x);
        const Octonion c = conj(x);
        EXPECT_EQ(c.c[0], x.c[0]);
        for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(c.c[i], -x.c[i]);
    }
}

TEST(Octonion, NormSquared) {
    for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(norm_sq(e(j)), 1.0);
    Octonion ones;
    ones.c.fill(1.0);
    EXPECT_EQ(norm_sq(ones), 8.0);
    EXPECT_EQ(norm_sq(Octonion{}), 0.0);
}

TEST(Octonion, NormIsMultiplicative) {
    Rng rng(2024);
    double worst = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const Octonion x = random_octonion(rng), y = random_octonion(rng);
        const double p = norm_sq(x) * norm_sq(y);
        worst = std::max(worst, std::abs(norm_sq(x * y) - p) / p);
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Octonion, Alternative) {
    Rng rng(99);
    for (int n = 0; n < 20000; ++n) {
        const Octonion x = random_octonion(rng), y = random_octonion(rng);
        const double scale = norm_sq(x) * norm(y);
        EXPECT_LT(max_diff(x * (x * y), (x * x) * y) / scale, 1e-12);
        EXPECT_LT(max_diff((y * x) * x, y * (x * x)) / scale, 1e-12);
    }
}

TEST(Octonion, NotAssociative) {
    EXPECT_NE(e(1) * (e(2) * e(4)), (e(1) * e(2)) * e(4));
}

TEST(Octonion, Inverse) {
    EXPECT_EQ(inv(e(0)), e(0));
    EXPECT_EQ(inv(Octonion::real(2.0)), Octonion::real(0.5));
    EXPECT_EQ(inv(e(1)), -e(1));
    EXPECT_EQ(e(1) * -e(1), e(0));
    EXPECT_THROW(inv(Octonion{}), DomainError);
    Rng rng(5);
    for (int n = 0; n < 1000; ++n) {
        const Octonion x = random_octonion(rng);
        EXPECT_LT(max_diff(x * inv(x), e(0)), 1e-14);
        EXPECT_LT(max_diff(inv(x) * x, e(0)), 1e-14);
    }
}

TEST(Octonion, ImaginaryPart) {
    EXPECT_EQ(imag(e(0)), ImVector7{});
    EXPECT_EQ(imag(e(5)), ImVector7::unit(5));
    Rng rng(8);
    const Octonion x = random_octonion(rng);
    const ImVector7 v = imag(x);
    for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(v[i], x.c[i + 1]);
    EXPECT_EQ(Octonion::from_imag(v) + Octonion::real(x.c[0]), x);
}

TEST(WindingForm, Examples) {
    EXPECT_EQ(winding_form(e(0), e(1)), ImVector7::unit(1));
    EXPECT_EQ(winding_form(Octonion::real(2.0), e(1)), ImVector7::unit(1) * 0.5);
    EXPECT_THROW(winding_form(Octonion{}, e(1)), DomainError);
}

TEST(WindingForm, CoordinateFormulasAgree) {
    Rng rng(123);
    for (int n = 0; n < 10000; ++n) {
        const Octonion x = random_octonion(rng), v = random_octonion(rng);
        const ImVector7 a = winding_form(x, v);
        EXPECT_LT(max_diff(a, winding_form_coordinates(x, v)), 1e-12 * std::max(1.0, a.norm()));
    }
}

TEST(WindingForm, MatchesReferenceProduct) {
    Rng rng(321);
    for (int n = 0; n < 1000; ++n) {
        const Octonion x = random_octonion(rng), v = random_octonion(rng);
        const ImVector7 ref = imag(reference_mul(conj(x), v)) * (1.0 / norm_sq(x));
        EXPECT_LT(max_diff(winding_form(x, v), ref), 1e-13);
    }
}

TEST(WindingForm, SelfIsExactlyZero) {
    Rng rng(17);
    for (int n = 0; n < 10000; ++n) {
        const Octonion x = random_octonion(rng);
        EXPECT_EQ(winding_form(x, x), ImVector7{});
    }
}

TEST(WindingForm, ScaleInvariant) {
    Rng rng(19);
    for (int n = 0; n < 1000; ++n) {
        const Octonion x = random_octonion(rng), v = random_octonion(rng);
        const double s = n % 2 == 0 ? -3.7 : 0.02;
        EXPECT_LT(max_diff(winding_form(x * s, v * s), winding_form(x, v)), 1e-12);
    }
}

TEST(Polar, Decomposition) {
    const auto p = polar(e(2) * 3.0);
    EXPECT_EQ(p.radius, 3.0);
    EXPECT_EQ(p.unit, e(2));
    EXPECT_THROW(polar(Octonion{}), DomainError);
    Rng rng(23);
    for (int n = 0; n < 1000; ++n) {
        const Octonion x = random_octonion(rng);
        const auto q = polar(x);
        EXPECT_NEAR(norm_sq(q.unit), 1.0, 1e-15);
        EXPECT_LT(max_diff(q.unit * q.radius, x), 1e-14 * q.radius);
        const auto u = polar(q.unit);
        EXPECT_NEAR(u.radius, 1.0, 1e-15);
    }
}
