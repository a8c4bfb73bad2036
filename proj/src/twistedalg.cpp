#include "orbihall/twistedalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <thread>

#include "orbihall/errors.hpp"

namespace orbihall {

algebra_element::algebra_element(const cayley_ball& ball, double theta_tilde)
    : ball_(&ball), theta_tilde_(theta_tilde), coeffs_(ball.size(), 0.0) {}

algebra_element algebra_element::delta(const cayley_ball& ball, double theta_tilde, int id, std::complex<double> coeff) {
    algebra_element a(ball, theta_tilde);
    a.coeffs_.at(static_cast<std::size_t>(id)) = coeff;
    return a;
}

std::vector<int> algebra_element::support(double cutoff) const {
    std::vector<int> s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (std::abs(coeffs_[i]) > cutoff) s.push_back(static_cast<int>(i));
    }
    return s;
}

int algebra_element::max_length() const {
    int m = -1;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0.0) m = std::max(m, (*ball_)[i].length);
    }
    return m;
}

double algebra_element::l1_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
}

void algebra_element::check_compatible(const algebra_element& o) const {
    if (ball_ != o.ball_ || theta_tilde_ != o.theta_tilde_) {
        throw validation_error("algebra elements belong to different balls or multipliers");
    }
}

algebra_element& algebra_element::operator+=(const algebra_element& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

algebra_element& algebra_element::operator-=(const algebra_element& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

algebra_element& algebra_element::operator*=(std::complex<double> s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

algebra_element algebra_element::restricted(int r) const {
    algebra_element out(*ball_, theta_tilde_);
    std::size_t m = ball_->count_within(r);
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(m), out.coeffs_.begin());
    return out;
}

convolution_result convolve(const algebra_element& a, const algebra_element& b, overflow_policy policy) {
    if (&a.ball() != &b.ball() || a.theta_tilde() != b.theta_tilde()) {
        throw validation_error("convolution of elements over different balls or multipliers");
    }
    const auto& ball = a.ball();
    auto sigma = a.multiplier();
    convolution_result out{algebra_element(ball, a.theta_tilde()), 0.0};
    auto sa = a.support();
    auto sb = b.support();
    for (int x : sa) {
        for (int y : sb) {
            int p = ball.multiply(x, y);
            auto term = a[static_cast<std::size_t>(x)] * b[static_cast<std::size_t>(y)];
            if (p == cayley_ball::out_of_ball) {
                if (policy == overflow_policy::error) throw numerical_error("convolution support left the ball");
                out.leaked_mass += std::abs(term);
                continue;
            }
            out.value[static_cast<std::size_t>(p)] += term * sigma(x, y);
        }
    }
    return out;
}

algebra_element convolve(const algebra_element& a, const algebra_element& b) {
    return convolve(a, b, overflow_policy::error).value;
}

algebra_element star(const algebra_element& a) {
    const auto& ball = a.ball();
    auto sigma = a.multiplier();
    algebra_element out(ball, a.theta_tilde());
    for (int x : a.support()) {
        int xi = ball.inverse(x);
        if (xi == cayley_ball::out_of_ball) throw numerical_error("inverse left the ball");
        out[static_cast<std::size_t>(xi)] = std::conj(a[static_cast<std::size_t>(x)]) * std::conj(sigma(xi, x));
    }
    return out;
}

std::complex<double> trace(const algebra_element& a) { return a[0]; }

harper_operator harper(const cayley_ball& ball, double theta_tilde) {
    if (ball.radius() < 1) throw validation_error("Harper operator needs a ball of radius >= 1");
    harper_operator H{algebra_element(ball, theta_tilde), algebra_element(ball, theta_tilde),
                      algebra_element(ball, theta_tilde), 0.0};
    const int handles = 2 * ball.real().sig.genus;
    for (std::size_t s = 0; s < ball.letters().size(); ++s) {
        const auto& l = ball.letters()[s];
        auto id = ball.find(l.g);
        if (!id) throw numerical_error("generator missing from ball");
        double w = ball.letter_weights()[s];
        H.h[static_cast<std::size_t>(*id)] += w;
        auto& part = std::abs(l.signed_index) <= handles ? H.free_part : H.interaction_part;
        part[static_cast<std::size_t>(*id)] += w;
        H.norm_bound += w;
    }
    return H;
}

namespace {

template <typename Sink>
void assemble(const algebra_element& a, Sink&& sink) {
    const auto& ball = a.ball();
    auto sigma = a.multiplier();
    auto supp = a.support();
    // left letters let Harper-type elements avoid hash lookups
    std::vector<std::ptrdiff_t> letter_of(supp.size(), -1);
    for (std::size_t k = 0; k < supp.size(); ++k) {
        for (std::size_t s = 0; s < ball.letters().size(); ++s) {
            auto id = ball.find(ball.letters()[s].g);
            if (id && *id == supp[k]) letter_of[k] = static_cast<std::ptrdiff_t>(s);
        }
    }
    const int n = static_cast<int>(ball.size());
    for (int col = 0; col < n; ++col) {
        for (std::size_t k = 0; k < supp.size(); ++k) {
            int s = supp[k];
            int row = letter_of[k] >= 0 ? ball.left_neighbor(col, static_cast<std::size_t>(letter_of[k]))
                                        : ball.multiply(s, col);
            if (row == cayley_ball::out_of_ball) continue;
            sink(row, col, a[static_cast<std::size_t>(s)] * sigma(s, col));
        }
    }
}

}  // namespace

cmatrix matrix_on_ball(const algebra_element& a) {
    const auto n = static_cast<Eigen::Index>(a.ball().size());
    cmatrix m = cmatrix::Zero(n, n);
    assemble(a, [&m](int r, int c, std::complex<double> v) { m(r, c) += v; });
    return m;
}

csparse sparse_matrix_on_ball(const algebra_element& a) {
    const auto n = static_cast<Eigen::Index>(a.ball().size());
    std::vector<Eigen::Triplet<std::complex<double>>> t;
    assemble(a, [&t](int r, int c, std::complex<double> v) { t.emplace_back(r, c, v); });
    csparse m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

double hermiticity_residual(const cmatrix& m) {
    if (m.rows() != m.cols()) throw validation_error("matrix is not square");
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

eigensystem hermitian_eigensystem(const cmatrix& m, bool with_vectors) {
    const double herm = hermiticity_residual(m);
    const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
    if (herm > 1e-10 * scale) throw validation_error("eigensolver input is not Hermitian");
    eigensystem es;
    const auto n = static_cast<lapack_int>(m.rows());
    es.values.resize(n);
    if (n == 0) return es;
    cmatrix a = m;
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', n,
                                     reinterpret_cast<lapack_complex_double*>(a.data()), n, es.values.data());
    if (info != 0) throw numerical_error("zheevd failed with info " + std::to_string(info));
    if (with_vectors) es.vectors = std::move(a);
    return es;
}

std::vector<double> spectrum(const cmatrix& m) {
    auto es = hermitian_eigensystem(m, false);
    return {es.values.data(), es.values.data() + es.values.size()};
}

std::vector<double> spectral_measure::bulk(double threshold) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (weights[i] >= threshold) out.push_back(nodes[i]);
    }
    return out;
}

spectral_measure basepoint_measure(const eigensystem& es, int basepoint) {
    if (es.vectors.size() == 0) throw validation_error("basepoint measure needs eigenvectors");
    spectral_measure mu;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        mu.nodes.push_back(es.values(k));
        mu.weights.push_back(std::norm(es.vectors(basepoint, k)));
    }
    return mu;
}

spectral_measure lanczos_measure(const csparse& m, int steps, int basepoint) {
    const auto n = m.rows();
    if (steps < 1) throw validation_error("Lanczos needs at least one step");
    steps = static_cast<int>(std::min<Eigen::Index>(steps, n));
    cmatrix Q(n, steps);
    std::vector<double> alpha, beta;
    cvector q = cvector::Zero(n);
    q(basepoint) = 1.0;
    Q.col(0) = q;
    for (int j = 0; j < steps; ++j) {
        cvector w = m * Q.col(j);
        double a = std::real(Q.col(j).dot(w));
        alpha.push_back(a);
        // full reorthogonalization, applied twice
        for (int pass = 0; pass < 2; ++pass) {
            cvector proj = Q.leftCols(j + 1).adjoint() * w;
            w -= Q.leftCols(j + 1) * proj;
        }
        double b = w.norm();
        if (j + 1 == steps || b < 1e-12) break;
        beta.push_back(b);
        Q.col(j + 1) = w / b;
    }
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    spectral_measure mu;
    for (Eigen::Index i = 0; i < k; ++i) {
        mu.nodes.push_back(es.eigenvalues()(i));
        mu.weights.push_back(es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
    }
    return mu;
}

std::vector<interval> gaps(const std::vector<double>& s, double min_width) {
    if (!std::is_sorted(s.begin(), s.end())) throw validation_error("gaps() expects a sorted spectrum");
    std::vector<interval> out;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] - s[i - 1] >= min_width && s[i] > s[i - 1]) out.emplace_back(s[i - 1], s[i]);
    }
    return out;
}

std::vector<interval> stable_gaps(const std::vector<interval>& a, const std::vector<interval>& b, double min_width) {
    std::vector<interval> out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            double lo = std::max(x.first, y.first), hi = std::min(x.second, y.second);
            if (hi - lo >= min_width) out.emplace_back(lo, hi);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<spectrum_row> butterfly(const cayley_ball& ball, const std::vector<double>& grid, const butterfly_options& opts) {
    if (grid.empty()) throw validation_error("flux grid is empty");
    std::vector<spectrum_row> rows(grid.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(grid.size());
    auto worker = [&]() {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                auto H = harper(ball, grid[i]);
                auto es = hermitian_eigensystem(matrix_on_ball(H.h), true);
                auto mu = basepoint_measure(es);
                spectrum_row row;
                row.theta_tilde = grid[i];
                row.theta = flux_theta(ball.real(), grid[i]);
                row.eigenvalues = mu.nodes;
                row.weights = mu.weights;
                row.gaps = gaps(mu.bulk(opts.bulk_threshold), opts.min_width);
                rows[i] = std::move(row);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    unsigned nt = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, grid.size()));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return rows;
}

}  // namespace orbihall
