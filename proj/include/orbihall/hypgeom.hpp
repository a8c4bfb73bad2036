#pragma once

#include <array>
#include <complex>

#include "orbihall/tolerances.hpp"

namespace orbihall {

using cplx = std::complex<double>;

// Point of the Poincare disk, |z| < 1 - boundary_guard.
struct point {
    cplx z;

    point() = default;
    explicit point(cplx value, const tolerances& tol = default_tolerances());
    static point origin() { return point(cplx(0.0, 0.0)); }
};

// SU(1,1) form (alpha, beta) of a disk isometry: z -> (alpha z + beta)/(conj(beta) z + conj(alpha)).
struct su11 {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};
};

// Element of PSL(2,R): real (a,b,c,d) with ad - bc = 1, stored with the first
// non-negligible entry positive.
class isometry {
public:
    isometry() = default;
    isometry(double a, double b, double c, double d, const tolerances& tol = default_tolerances());

    static isometry identity() { return isometry(); }
    static isometry from_su11(const su11& u);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    const std::array<double, 4>& entries() const { return m_; }

    double trace() const { return m_[0] + m_[3]; }
    su11 to_su11() const;
    isometry inverse() const;
    isometry operator*(const isometry& o) const;

    // max |entry difference| modulo the sign ambiguity
    double distance_to(const isometry& o) const;
    bool is_identity(double tol = default_tolerances().identity) const;

private:
    struct unchecked {};
    isometry(const std::array<double, 4>& m, unchecked);
    void canonicalize();

    std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

point apply(const isometry& g, const point& p, const tolerances& tol = default_tolerances());
isometry compose(const isometry& g, const isometry& h);

isometry rotation_about_origin(double angle);
// Hyperbolic translation by distance t along the real diameter (moves 0 to tanh(t/2)).
isometry translation_along_real_axis(double t);
// Isometry taking the origin to p along the geodesic through both.
isometry translation_to(const point& p);
isometry rotation_about(const point& p, double angle);

double distance(const point& p, const point& q);
// d(o, g o) computed without cancellation.
double displacement(const isometry& g);

// Orbit point g.o in geodesic polar coordinates about o.
struct polar_point {
    double half_distance = 0.0;  // d(o, g o) / 2
    double sinh_half = 0.0;      // sinh(d/2)
    double angle = 0.0;          // argument of g.o
};
polar_point orbit_polar(const isometry& g);
polar_point polar_of(const point& p);

// Signed area of the geodesic triangle (o, p1, p2); positive when counterclockwise.
double signed_area_at_origin(const polar_point& p1, const polar_point& p2);
// Signed area of (o, x.o, y.o).
double signed_area_at_origin(const isometry& x, const isometry& y);
double signed_triangle_area(const point& p1, const point& p2, const point& p3);

enum class isometry_kind { identity, elliptic, parabolic, hyperbolic };
isometry_kind classify(const isometry& g, const tolerances& tol = default_tolerances());
const char* to_string(isometry_kind k);

// Rotation angle in [0, 2pi) for elliptic elements, from |trace| = 2|cos(angle/2)|.
double elliptic_angle(const isometry& g);
double translation_length(const isometry& g);

// Upper half-plane helpers for debugging.
cplx to_upper_half_plane(const point& p);
point from_upper_half_plane(cplx w);

}  // namespace orbihall
