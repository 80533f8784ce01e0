#include "octowind/octonion.hpp"

#include "octowind/errors.hpp"


namespace octowind {

ImVector7 ImVector7::unit(std::size_t slot) {
    if (slot < 1 || slot > 7) throw DomainError("ImVector7::unit: slot must be in 1..7");
    ImVector7 u;
    u.v[slot - 1] = 1.0;
    return u;
}

double ImVector7::norm_sq() const noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double ImVector7::dot(const ImVector7& o) const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < 7; ++i) s += v[i] * o.v[i];
    return s;
}

ImVector7& ImVector7::operator+=(const ImVector7& o) noexcept {
    for (std::size_t i = 0; i < 7; ++i) v[i] += o.v[i];
    return *this;
}

ImVector7& ImVector7::operator-=(const ImVector7& o) noexcept {
    for (std::size_t i = 0; i < 7; ++i) v[i] -= o.v[i];
    return *this;
}

ImVector7& ImVector7::operator*=(double s) noexcept {
    for (double& x : v) x *= s;
    return *this;
}

Octonion Octonion::from_imag(const ImVector7& v) noexcept {
    Octonion o;
    for (std::size_t i = 0; i < 7; ++i) o.c[i + 1] = v.v[i];
    return o;
}

Octonion& Octonion::operator+=(const Octonion& o) noexcept {
    for (std::size_t i = 0; i < 8; ++i) c[i] += o.c[i];
    return *this;
}

Octonion& Octonion::operator-=(const Octonion& o) noexcept {
    for (std::size_t i = 0; i < 8; ++i) c[i] -= o.c[i];
    return *this;
}

Octonion& Octonion::operator*=(double s) noexcept {
    for (double& x : c) x *= s;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Octonion& x) {
    os << '(';
    for (std::size_t i = 0; i < 8; ++i) os << (i ? ", " : "") << x.c[i];
    return os << ')';
}

std::ostream& operator<<(std::ostream& os, const ImVector7& v) {
    os << '[';
    for (std::size_t i = 0; i < 7; ++i) os << (i ? ", " : "") << v.v[i];
    return os << ']';
}

Octonion mul(const Octonion& a, const Octonion& b) noexcept {
    Octonion r;
    double re = a.c[0] * b.c[0];
    for (int i = 1; i < 8; ++i) re -= a.c[i] * b.c[i];
    r.c[0] = re;
    for (int k = 1; k < 8; ++k) {
        double s = a.c[0] * b.c[k] + a.c[k] * b.c[0];
        for (const auto& p : detail::kPairTable[k]) {
            s += p.sign * (a.c[p.i] * b.c[p.j] - a.c[p.j] * b.c[p.i]);
        }
        r.c[k] = s;
    }
    return r;
}

Octonion conj(const Octonion& a) noexcept {
    Octonion r = a;
    for (int i = 1; i < 8; ++i) r.c[i] = -a.c[i];
    return r;
}

double norm_sq(const Octonion& a) noexcept {
    double s = 0.0;
    for (double x : a.c) s += x * x;
    return s;
}

Octonion inv(const Octonion& a) {
    const double n2 = norm_sq(a);
    if (!(n2 > 0.0)) throw DomainError("inv: zero octonion has no inverse");
    return conj(a) * (1.0 / n2);
}

ImVector7 imag(const Octonion& a) noexcept {
    ImVector7 v;
    for (std::size_t i = 0; i < 7; ++i) v.v[i] = a.c[i + 1];
    return v;
}

ImVector7 winding_form(const Octonion& x, const Octonion& v) {
    const double n2 = norm_sq(x);
    if (!(n2 > 0.0)) throw DomainError("winding_form: base point is the origin");
    return imag(mul(conj(x), v)) * (1.0 / n2);
}

ImVector7 winding_form_coordinates(const Octonion& xo, const Octonion& d) {
    const double n2 = norm_sq(xo);
    if (!(n2 > 0.0)) throw DomainError("winding_form_coordinates: base point is the origin");
    const auto& x = xo.c;
    ImVector7 e;
    e[0] = -x[1] * d[0] + x[0] * d[1] + x[3] * d[2] - x[2] * d[3] + x[5] * d[4] - x[4] * d[5]
           - x[7] * d[6] + x[6] * d[7];
    e[1] = -x[2] * d[0] - x[3] * d[1] + x[0] * d[2] + x[1] * d[3] + x[6] * d[4] + x[7] * d[5]
           - x[4] * d[6] - x[5] * d[7];
    e[2] = -x[3] * d[0] + x[2] * d[1] - x[1] * d[2] + x[0] * d[3] + x[7] * d[4] - x[6] * d[5]
           + x[5] * d[6] - x[4] * d[7];
    e[3] = -x[4] * d[0] - x[5] * d[1] - x[6] * d[2] - x[7] * d[3] + x[0] * d[4] + x[1] * d[5]
           + x[2] * d[6] + x[3] * d[7];
    e[4] = -x[5] * d[0] + x[4] * d[1] - x[7] * d[2] + x[6] * d[3] - x[1] * d[4] + x[0] * d[5]
           - x[3] * d[6] + x[2] * d[7];
    e[5] = -x[6] * d[0] + x[7] * d[1] + x[4] * d[2] - x[5] * d[3] - x[2] * d[4] + x[3] * d[5]
           + x[0] * d[6] - x[1] * d[7];
    e[6] = -x[7] * d[0] - x[6] * d[1] + x[5] * d[2] + x[4] * d[3] - x[3] * d[4] - x[2] * d[5]
           + x[1] * d[6] + x[0] * d[7];
    return e * (1.0 / n2);
}

Polar polar(const Octonion& x) {
    const double r = norm(x);
    if (!(r > 0.0)) throw DomainError("polar: zero octonion has no direction");
    return {r, x * (1.0 / r)};
}

}  // namespace octowind
