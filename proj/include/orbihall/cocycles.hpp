#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "orbihall/groups.hpp"
#include "orbihall/signatures.hpp"

namespace orbihall {

// Signed area of (o, x.o, xy.o); the 2-cocycle identity holds by area additivity.
double area_cocycle(const cayley_ball& ball, int x, int y);

// sigma(x, y) = exp(i * theta_tilde * area_cocycle(x, y)).
class magnetic_multiplier {
public:
    magnetic_multiplier(const cayley_ball& ball, double theta_tilde) : ball_(&ball), theta_tilde_(theta_tilde) {}

    const cayley_ball& ball() const { return *ball_; }
    double theta_tilde() const { return theta_tilde_; }
    std::complex<double> operator()(int x, int y) const;
    std::complex<double> from_area(double area) const { return std::polar(1.0, theta_tilde_ * area); }

private:
    const cayley_ball* ball_;
    double theta_tilde_;
};

// theta = theta_tilde * phi reduced into (0,1].
double flux_theta(const signature& sig, double theta_tilde);
// theta = theta_tilde * (fundamental-domain area) / (2 pi) reduced into (0,1]; also covers the lattice.
double flux_theta(const realization& real, double theta_tilde);

// j-th abelianization coordinate, j = 1..2g.
double omega(const cayley_ball& ball, int j, int x);
// sum_j Omega_j(x) Omega_{j+g}(y) - Omega_{j+g}(x) Omega_j(y)
double psi_sum(const cayley_ball& ball, int x, int y);

// Precomputed triples (g0, g1, g2) with g0 g1 g2 = 1 and every id of word length <= inner radius.
struct cocycle_triple {
    std::int32_t g0, g1, g2;
    double area;
    double psi;
    std::complex<double> sigma;
};

class cocycle_table {
public:
    cocycle_table(const cayley_ball& ball, int inner_radius, double theta_tilde);

    int inner_radius() const { return inner_radius_; }
    std::size_t inner_size() const { return inner_size_; }
    double theta_tilde() const { return theta_tilde_; }
    const cayley_ball& ball() const { return *ball_; }
    const std::vector<cocycle_triple>& triples() const { return triples_; }

private:
    const cayley_ball* ball_;
    int inner_radius_;
    double theta_tilde_;
    std::size_t inner_size_;
    std::vector<cocycle_triple> triples_;
};

struct coboundary_result {
    std::vector<double> k;  // one value per ball element, k(e) = 0
    double residual = 0.0;  // root mean square of the defect equations
    double max_residual = 0.0;
    std::size_t equations = 0;
    double scale = 0.0;     // multiplier applied to psi_sum
    int iterations = 0;
};

// Least-squares 1-cochain k with D(x,y) ~ k(x) - k(xy) + k(y), D = scale * psi_sum - area_cocycle,
// over pairs with |x| + |y| <= radius. By default scale is the realization's area-matching scale.
coboundary_result solve_coboundary_defect(const cayley_ball& ball);
coboundary_result solve_coboundary_defect(const cayley_ball& ball, double scale);

}  // namespace orbihall
