#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "orbihall/cocycles.hpp"
#include "orbihall/twistedalg.hpp"

namespace orbihall {

enum class projection_method { automatic, dense, chebyshev };
const char* to_string(projection_method m);

struct system_options {
    projection_method method = projection_method::automatic;
    std::size_t dense_limit = 4000;  // automatic: dense up to this many ball elements
    int chebyshev_degree = 2000;
    int lanczos_steps = 400;
    double bulk_threshold = 1e-4;
    double clearance = 1e-6;  // minimal distance from E to a bulk eigenvalue
};

// Harper operator on a ball together with the spectral data needed for projections.
class harper_system {
public:
    harper_system(const cayley_ball& ball, double theta_tilde, const system_options& opts = {});

    const cayley_ball& ball() const { return *ball_; }
    double theta_tilde() const { return theta_tilde_; }
    double theta() const;
    projection_method method() const { return method_; }
    const system_options& options() const { return opts_; }
    const harper_operator& op() const { return op_; }

    // Basepoint spectral measure: exact for dense systems, Lanczos quadrature otherwise.
    const spectral_measure& measure() const { return measure_; }
    std::vector<double> bulk_spectrum() const { return measure_.bulk(opts_.bulk_threshold); }
    std::vector<interval> bulk_gaps(double min_width) const { return gaps(bulk_spectrum(), min_width); }
    // Full spectrum (dense systems only).
    const Eigen::VectorXd& eigenvalues() const;

    // Column of the spectral projector chi_(-inf, E](H) at the basepoint.
    cvector projection_column(double E) const;
    // Distance from E to the nearest bulk eigenvalue.
    double clearance(double E) const;

private:
    const cayley_ball* ball_;
    double theta_tilde_;
    system_options opts_;
    projection_method method_;
    harper_operator op_;
    eigensystem es_;
    csparse sparse_;
    spectral_measure measure_;
};

struct projection_approx {
    algebra_element p;
    double energy = 0.0;
    int inner_radius = 0;
    double idempotency_defect = 0.0;  // || p*p - p ||_1 on the inner ball
    double hermiticity_defect = 0.0;  // max |p(g) - conj p(g^-1)|
    double leak = 0.0;                // squared mass of the projector column beyond the inner ball
    std::vector<double> decay;        // max |p(g)| per word length over the whole ball
};

projection_approx spectral_projection(const harper_system& sys, double E, int inner_radius);
// Same, reusing a triple table of the matching inner radius.
projection_approx spectral_projection(const harper_system& sys, double E, const cocycle_table& table);

// Cyclic pairings restricted to the table's triples.
std::complex<double> pair_trc(const cocycle_table& t, const algebra_element& a0, const algebra_element& a1,
                              const algebra_element& a2);
std::complex<double> pair_trK(const cocycle_table& t, const algebra_element& a0, const algebra_element& a1,
                              const algebra_element& a2);
// Convenience forms that build a table over the whole ball.
std::complex<double> pair_trc(const algebra_element& a0, const algebra_element& a1, const algebra_element& a2);
std::complex<double> pair_trK(const algebra_element& a0, const algebra_element& a1, const algebra_element& a2);
// Sum_j tr(a0 (d_j a1 * d_{j+g} a2 - d_{j+g} a1 * d_j a2)) with explicit derivations and convolutions.
std::complex<double> pair_trK_literal(const algebra_element& a0, const algebra_element& a1, const algebra_element& a2);

struct lattice_label {
    rational point;
    double distance = 0.0;
};
// Nearest point of Z theta + Z + sum Z/nu_i.
lattice_label gap_label(const signature& sig, const rational& theta, double trace_value);
// Rational approximation with bounded denominator when theta is within tol of one.
std::optional<rational> rationalize(double x, std::int64_t max_den = 1000, double tol = 1e-9);

struct hall_record {
    double energy = 0.0;
    double theta_tilde = 0.0;
    double theta = 0.0;
    int radius = 0;
    int inner_radius = 0;
    std::string method;
    double trace = 0.0;
    std::complex<double> trc;
    std::complex<double> trK;
    double kappa = 0.0;            // area-matching scale applied to trK
    double sigma_c = 0.0;          // -2i tr_c (real part)
    double sigma_c_imag = 0.0;
    double sigma_k = 0.0;          // -2i kappa tr^K (real part)
    double sigma_k_imag = 0.0;
    double quantum = 0.0;          // fundamental area / 2pi (phi for hyperbolic groups)
    double label = 0.0;            // sigma_c / quantum
    long nearest_k = 0;
    double deviation = 0.0;        // |sigma_c - nearest_k * quantum|
    double comparison = 0.0;       // |kappa tr^K - tr_c|
    double comparison_relative = 0.0;
    double idempotency_defect = 0.0;
    double hermiticity_defect = 0.0;
    double leak = 0.0;
    bool in_gap = true;
    std::optional<lattice_label> trace_label;
};

hall_record hall_conductance(const harper_system& sys, double E, const cocycle_table& table);
hall_record hall_conductance(const harper_system& sys, double E, int inner_radius);

struct plateau_row {
    double energy = 0.0;
    bool in_gap = false;
    hall_record record;
};
// Energies inside one bulk gap are evaluated at the gap midpoint, so a plateau carries one projector.
std::vector<plateau_row> plateau_scan(const harper_system& sys, const std::vector<double>& energies, int inner_radius,
                                      double min_width);

}  // namespace orbihall
