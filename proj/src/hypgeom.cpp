#include "orbihall/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbihall/errors.hpp"

namespace orbihall {

point::point(cplx value, const tolerances& tol) : z(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || std::abs(value) >= 1.0 - tol.boundary_guard) {
        throw numerical_error("point outside the disk boundary guard");
    }
}

isometry::isometry(double a, double b, double c, double d, const tolerances& tol) : m_{a, b, c, d} {
    double det = a * d - b * c;
    double scale = std::max({1.0, std::abs(a * d), std::abs(b * c)});
    if (!std::isfinite(det) || std::abs(det - 1.0) > tol.determinant * scale) {
        throw validation_error("isometry requires unit determinant");
    }
    canonicalize();
}

isometry::isometry(const std::array<double, 4>& m, unchecked) : m_(m) { canonicalize(); }

void isometry::canonicalize() {
    for (double v : m_) {
        if (std::abs(v) > 1e-12) {
            if (v < 0) {
                for (double& w : m_) w = -w;
            }
            return;
        }
    }
}

isometry isometry::from_su11(const su11& u) {
    std::array<double, 4> m{u.alpha.real() + u.beta.real(), u.alpha.imag() - u.beta.imag(),
                            -u.alpha.imag() - u.beta.imag(), u.alpha.real() - u.beta.real()};
    double det = m[0] * m[3] - m[1] * m[2];
    if (!(det > 0.0)) throw validation_error("SU(1,1) data must have positive determinant");
    double s = 1.0 / std::sqrt(det);
    for (double& v : m) v *= s;
    return isometry(m, unchecked{});
}

su11 isometry::to_su11() const {
    const auto& [a, b, c, d] = m_;
    return {cplx((a + d) / 2.0, (b - c) / 2.0), cplx((a - d) / 2.0, -(b + c) / 2.0)};
}

isometry isometry::inverse() const { return isometry({m_[3], -m_[1], -m_[2], m_[0]}, unchecked{}); }

isometry isometry::operator*(const isometry& o) const {
    const auto& x = m_;
    const auto& y = o.m_;
    return isometry({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                     x[2] * y[1] + x[3] * y[3]},
                    unchecked{});
}

double isometry::distance_to(const isometry& o) const {
    double plus = 0.0, minus = 0.0;
    for (int i = 0; i < 4; ++i) {
        plus = std::max(plus, std::abs(m_[i] - o.m_[i]));
        minus = std::max(minus, std::abs(m_[i] + o.m_[i]));
    }
    return std::min(plus, minus);
}

bool isometry::is_identity(double tol) const { return distance_to(isometry()) < tol; }

point apply(const isometry& g, const point& p, const tolerances& tol) {
    su11 u = g.to_su11();
    cplx w = (u.alpha * p.z + u.beta) / (std::conj(u.beta) * p.z + std::conj(u.alpha));
    return point(w, tol);
}

isometry compose(const isometry& g, const isometry& h) { return g * h; }

isometry rotation_about_origin(double angle) {
    return isometry::from_su11({std::polar(1.0, angle / 2.0), cplx(0.0, 0.0)});
}

isometry translation_along_real_axis(double t) {
    return isometry::from_su11({cplx(std::cosh(t / 2.0), 0.0), cplx(std::sinh(t / 2.0), 0.0)});
}

isometry translation_to(const point& p) {
    double s = 1.0 / std::sqrt(1.0 - std::norm(p.z));
    return isometry::from_su11({cplx(s, 0.0), p.z * s});
}

isometry rotation_about(const point& p, double angle) {
    if (std::abs(angle) > 2.0 * std::numbers::pi + 1e-12) throw validation_error("rotation angle must satisfy |angle| <= 2pi");
    isometry t = translation_to(p);
    return t * rotation_about_origin(angle) * t.inverse();
}

double distance(const point& p, const point& q) {
    double r = std::abs(p.z - q.z) / std::abs(1.0 - std::conj(q.z) * p.z);
    return 2.0 * std::atanh(std::min(r, 1.0));
}

double displacement(const isometry& g) { return 2.0 * std::asinh(std::abs(g.to_su11().beta)); }

polar_point orbit_polar(const isometry& g) {
    su11 u = g.to_su11();
    double s = std::abs(u.beta);
    double ang = s > 0.0 ? std::arg(u.beta) + std::arg(u.alpha) : 0.0;
    return {std::asinh(s), s, ang};
}

polar_point polar_of(const point& p) {
    double t = std::abs(p.z);
    double h = std::atanh(t);
    return {h, std::sinh(h), t > 0.0 ? std::arg(p.z) : 0.0};
}

double signed_area_at_origin(const polar_point& p1, const polar_point& p2) {
    double delta = p2.angle - p1.angle;
    double ss = p1.sinh_half * p2.sinh_half;
    double sh = std::sin(delta / 2.0);
    return 2.0 * std::atan2(ss * std::sin(delta), std::cosh(p1.half_distance - p2.half_distance) + 2.0 * ss * sh * sh);
}

double signed_area_at_origin(const isometry& x, const isometry& y) {
    return signed_area_at_origin(orbit_polar(x), orbit_polar(y));
}

double signed_triangle_area(const point& p1, const point& p2, const point& p3) {
    if (p1.z == p2.z || p2.z == p3.z || p3.z == p1.z) return 0.0;
    isometry back = translation_to(p1).inverse();
    tolerances loose = default_tolerances();
    loose.boundary_guard = 0.0;
    point q2 = apply(back, p2, loose);
    point q3 = apply(back, p3, loose);
    return signed_area_at_origin(polar_of(q2), polar_of(q3));
}

isometry_kind classify(const isometry& g, const tolerances& tol) {
    if (g.is_identity(tol.identity)) return isometry_kind::identity;
    double t = std::abs(g.trace());
    if (std::abs(t - 2.0) <= tol.parabolic) return isometry_kind::parabolic;
    return t < 2.0 ? isometry_kind::elliptic : isometry_kind::hyperbolic;
}

const char* to_string(isometry_kind k) {
    switch (k) {
        case isometry_kind::identity: return "identity";
        case isometry_kind::elliptic: return "elliptic";
        case isometry_kind::parabolic: return "parabolic";
        case isometry_kind::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

double elliptic_angle(const isometry& g) {
    double h = std::clamp(std::abs(g.trace()) / 2.0, 0.0, 1.0);
    return 2.0 * std::acos(h);
}

double translation_length(const isometry& g) {
    double h = std::abs(g.trace()) / 2.0;
    return h <= 1.0 ? 0.0 : 2.0 * std::acosh(h);
}

cplx to_upper_half_plane(const point& p) { return cplx(0.0, 1.0) * (1.0 + p.z) / (1.0 - p.z); }

point from_upper_half_plane(cplx w) {
    if (w.imag() <= 0.0) throw validation_error("upper half-plane point requires Im w > 0");
    return point((w - cplx(0.0, 1.0)) / (w + cplx(0.0, 1.0)));
}

}  // namespace orbihall
