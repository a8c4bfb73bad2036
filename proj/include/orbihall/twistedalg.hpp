#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "orbihall/cocycles.hpp"
#include "orbihall/groups.hpp"

namespace orbihall {

using cvector = Eigen::VectorXcd;
using cmatrix = Eigen::MatrixXcd;
using csparse = Eigen::SparseMatrix<std::complex<double>>;

// Finitely supported element of the twisted group algebra, stored densely over the ball ids.
class algebra_element {
public:
    algebra_element(const cayley_ball& ball, double theta_tilde);
    static algebra_element delta(const cayley_ball& ball, double theta_tilde, int id, std::complex<double> coeff = 1.0);

    const cayley_ball& ball() const { return *ball_; }
    double theta_tilde() const { return theta_tilde_; }
    magnetic_multiplier multiplier() const { return magnetic_multiplier(*ball_, theta_tilde_); }

    std::complex<double>& operator[](std::size_t id) { return coeffs_[id]; }
    const std::complex<double>& operator[](std::size_t id) const { return coeffs_[id]; }
    const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
    std::vector<int> support(double cutoff = 0.0) const;
    int max_length() const;  // largest word length in the support, -1 when zero

    double l1_norm() const;
    algebra_element& operator+=(const algebra_element& o);
    algebra_element& operator-=(const algebra_element& o);
    algebra_element& operator*=(std::complex<double> s);
    friend algebra_element operator+(algebra_element a, const algebra_element& b) { return a += b; }
    friend algebra_element operator-(algebra_element a, const algebra_element& b) { return a -= b; }
    friend algebra_element operator*(std::complex<double> s, algebra_element a) { return a *= s; }

    // Drop coefficients of word length > r.
    algebra_element restricted(int r) const;

private:
    void check_compatible(const algebra_element& o) const;

    const cayley_ball* ball_;
    double theta_tilde_;
    std::vector<std::complex<double>> coeffs_;
};

enum class overflow_policy { error, truncate };

struct convolution_result {
    algebra_element value;
    double leaked_mass = 0.0;  // sum |a(x) b(y)| over products outside the ball
};

// (a * b)(g) = sum_{g1 g2 = g} a(g1) b(g2) sigma(g1, g2)
convolution_result convolve(const algebra_element& a, const algebra_element& b, overflow_policy policy);
algebra_element convolve(const algebra_element& a, const algebra_element& b);
// a*(g) = conj(a(g^-1)) conj(sigma(g, g^-1))
algebra_element star(const algebra_element& a);
std::complex<double> trace(const algebra_element& a);

// Generalized Harper operator: sum of lambda(s) over the generating set.
struct harper_operator {
    algebra_element h;
    algebra_element free_part;         // handle generators
    algebra_element interaction_part;  // cone generators
    double norm_bound = 0.0;           // sum of |coefficients|
};
harper_operator harper(const cayley_ball& ball, double theta_tilde);

// Finite section of left multiplication: M[g', g''] = a(g' g''^-1) sigma(g' g''^-1, g'').
cmatrix matrix_on_ball(const algebra_element& a);
csparse sparse_matrix_on_ball(const algebra_element& a);
double hermiticity_residual(const cmatrix& m);

struct eigensystem {
    Eigen::VectorXd values;  // ascending
    cmatrix vectors;         // columns; empty when only values were requested
};
// Dense Hermitian eigensolver (LAPACK zheevd).
eigensystem hermitian_eigensystem(const cmatrix& m, bool with_vectors);
std::vector<double> spectrum(const cmatrix& m);

// Spectral measure of the basepoint vector: eigenvalue and weight |v_k(e)|^2.
struct spectral_measure {
    std::vector<double> nodes;
    std::vector<double> weights;
    // Nodes whose weight reaches the threshold.
    std::vector<double> bulk(double threshold) const;
};
spectral_measure basepoint_measure(const eigensystem& es, int basepoint = 0);
// Gauss quadrature of the basepoint measure from a Lanczos run with full reorthogonalization.
spectral_measure lanczos_measure(const csparse& m, int steps, int basepoint = 0);

using interval = std::pair<double, double>;
// Maximal eigenvalue-free open intervals of width >= min_width inside [min, max].
std::vector<interval> gaps(const std::vector<double>& sorted_spectrum, double min_width);
// Overlaps of gaps found at two truncation radii.
std::vector<interval> stable_gaps(const std::vector<interval>& a, const std::vector<interval>& b, double min_width);

struct spectrum_row {
    double theta_tilde = 0.0;
    double theta = 0.0;
    std::vector<double> eigenvalues;
    std::vector<double> weights;  // basepoint weights, same order
    std::vector<interval> gaps;   // of the bulk part
};

struct butterfly_options {
    double min_width = default_tolerances().gap_min_width;
    double bulk_threshold = 1e-4;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Flux sweep; rows are in grid order regardless of scheduling.
std::vector<spectrum_row> butterfly(const cayley_ball& ball, const std::vector<double>& theta_tilde_grid,
                                    const butterfly_options& opts = {});

}  // namespace orbihall
