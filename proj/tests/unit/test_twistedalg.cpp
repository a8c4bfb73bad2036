#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "orbihall/errors.hpp"
#include "orbihall/twistedalg.hpp"

using namespace orbihall;
using cd = std::complex<double>;

namespace {

const cayley_ball& g2_ball() {
    static const cayley_ball b(surface_group_realization(2), 3);
    return b;
}
const cayley_ball& t237_ball() {
    static const cayley_ball b(triangle_rotation_group(2, 3, 7), 7);
    return b;
}
const cayley_ball& z2_ball() {
    static const cayley_ball b(euclidean_lattice_realization(), 8);
    return b;
}

algebra_element random_element(const cayley_ball& b, double theta_tilde, int radius, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    algebra_element a(b, theta_tilde);
    for (std::size_t i = 0; i < b.count_within(radius); ++i) a[i] = cd(n(rng), n(rng));
    return a;
}

double distance(const algebra_element& a, const algebra_element& b) { return (a - b).l1_norm(); }

}  // namespace

TEST_CASE("element basics") {
    const auto& b = g2_ball();
    auto d = algebra_element::delta(b, 0.3, 5, cd(2.0, -1.0));
    CHECK(d.support() == std::vector<int>{5});
    CHECK(d.max_length() == 1);
    CHECK(d.l1_norm() == doctest::Approx(std::sqrt(5.0)));
    CHECK(algebra_element(b, 0.3).max_length() == -1);
    std::mt19937_64 rng(1);
    auto a = random_element(b, 0.3, 3, rng);
    auto r = a.restricted(1);
    CHECK(r.max_length() == 1);
    for (std::size_t i = 0; i < b.count_within(1); ++i) CHECK(r[i] == a[i]);
    CHECK_THROWS_AS(a + algebra_element(b, 0.4), validation_error);
    CHECK_THROWS_AS(a + algebra_element(t237_ball(), 0.3), validation_error);
}

TEST_CASE("convolution of deltas follows the multiplier") {
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        const double t = 0.7;
        magnetic_multiplier s(*b, t);
        for (int x = 0; x < static_cast<int>(b->count_within(2)); ++x) {
            for (int y = 0; y < static_cast<int>(b->count_within(1)); ++y) {
                auto p = convolve(algebra_element::delta(*b, t, x), algebra_element::delta(*b, t, y));
                int xy = b->multiply(x, y);
                REQUIRE(xy >= 0);
                CHECK(p.support() == std::vector<int>{xy});
                CHECK(std::abs(p[static_cast<std::size_t>(xy)] - s(x, y)) < 1e-14);
            }
        }
    }
}

TEST_CASE("convolution is associative and unital") {
    std::mt19937_64 rng(2);
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        for (double t : {0.0, 0.4, 2.1}) {
            auto a = random_element(*b, t, 1, rng), c = random_element(*b, t, 1, rng), d = random_element(*b, t, 1, rng);
            auto lhs = convolve(convolve(a, c), d), rhs = convolve(a, convolve(c, d));
            CHECK(distance(lhs, rhs) < 1e-10 * (1.0 + lhs.l1_norm()));
            auto e = algebra_element::delta(*b, t, 0);
            CHECK(distance(convolve(e, a), a) < 1e-13);
            CHECK(distance(convolve(a, e), a) < 1e-13);
        }
    }
}

TEST_CASE("star is a conjugate-linear anti-involution") {
    std::mt19937_64 rng(3);
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        const double t = 1.3;
        auto a = random_element(*b, t, 1, rng), c = random_element(*b, t, 1, rng);
        CHECK(distance(star(star(a)), a) < 1e-12);
        CHECK(distance(star(convolve(a, c)), convolve(star(c), star(a))) < 1e-10);
        CHECK(distance(star(cd(0.0, 2.0) * a), cd(0.0, -2.0) * star(a)) < 1e-12);
    }
}

TEST_CASE("trace is tracial and positive") {
    std::mt19937_64 rng(4);
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        const double t = 0.9;
        CHECK(trace(algebra_element::delta(*b, t, 0)) == cd(1.0, 0.0));
        CHECK(trace(algebra_element::delta(*b, t, 1)) == cd(0.0, 0.0));
        auto a = random_element(*b, t, 1, rng), c = random_element(*b, t, 1, rng);
        CHECK(std::abs(trace(convolve(a, c)) - trace(convolve(c, a))) < 1e-10);
        auto aa = trace(convolve(a, star(a)));
        double norm2 = 0.0;
        for (auto z : a.coefficients()) norm2 += std::norm(z);
        CHECK(std::abs(aa.imag()) < 1e-10);
        CHECK(aa.real() == doctest::Approx(norm2));
    }
}

TEST_CASE("overflow policy") {
    const auto& b = t237_ball();
    auto far = algebra_element::delta(b, 0.2, static_cast<int>(b.size() - 1));
    auto step = algebra_element::delta(b, 0.2, 1);
    bool escaped = false;
    for (int s = 1; s < static_cast<int>(b.count_within(1)); ++s) {
        if (b.multiply(static_cast<int>(b.size() - 1), s) < 0) {
            step = algebra_element::delta(b, 0.2, s);
            escaped = true;
            break;
        }
    }
    REQUIRE(escaped);
    CHECK_THROWS_AS(convolve(far, step, overflow_policy::error), numerical_error);
    auto r = convolve(far, step, overflow_policy::truncate);
    CHECK(r.leaked_mass == doctest::Approx(1.0));
    CHECK(r.value.l1_norm() == 0.0);
}

TEST_CASE("finite section represents left multiplication in the interior") {
    std::mt19937_64 rng(5);
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        const double t = 0.55;
        auto a = random_element(*b, t, 1, rng), c = random_element(*b, t, 1, rng);
        cmatrix ma = matrix_on_ball(a), mc = matrix_on_ball(c), mac = matrix_on_ball(convolve(a, c));
        for (Eigen::Index i = 0; i < ma.rows(); ++i) CHECK(ma(i, 0) == a[static_cast<std::size_t>(i)]);
        auto interior = static_cast<Eigen::Index>(b->count_within(b->radius() - 2));
        double err = ((ma * mc).leftCols(interior) - mac.leftCols(interior)).cwiseAbs().maxCoeff();
        CHECK(err < 1e-10);
        cmatrix sparse_dense = cmatrix(sparse_matrix_on_ball(a));
        CHECK((sparse_dense - ma).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((matrix_on_ball(star(a)) - ma.adjoint()).leftCols(interior).topRows(interior).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("untwisted Harper matrix is the weighted Cayley adjacency matrix") {
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        auto H = harper(*b, 0.0);
        cmatrix m = matrix_on_ball(H.h);
        const auto n = static_cast<Eigen::Index>(b->size());
        Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
        const auto& real = b->real();
        for (Eigen::Index col = 0; col < n; ++col) {
            for (std::size_t s = 0; s < b->letters().size(); ++s) {
                auto row = b->find(real.multiply(b->letters()[s].g, (*b)[static_cast<std::size_t>(col)].g));
                if (row) adj(*row, col) += b->letter_weights()[s];
            }
        }
        CHECK((m.real() - adj).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(m.imag().cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(harper(g2_ball(), 0.0).norm_bound == 8.0);
    CHECK(harper(t237_ball(), 0.0).norm_bound == 5.0);
    CHECK(harper(z2_ball(), 0.0).norm_bound == 4.0);
    CHECK(harper(g2_ball(), 0.0).interaction_part.l1_norm() == 0.0);
    CHECK(harper(t237_ball(), 0.0).free_part.l1_norm() == 0.0);
    CHECK_THROWS_AS(harper(cayley_ball(euclidean_lattice_realization(), 0), 0.1), validation_error);
}

TEST_CASE("Harper finite sections are Hermitian with spectrum inside the norm bound") {
    for (const cayley_ball* b : {&g2_ball(), &t237_ball(), &z2_ball()}) {
        for (double t : {0.0, 0.31, 1.0, 2.0 * std::numbers::pi / 3.0, 5.5}) {
            auto H = harper(*b, t);
            cmatrix m = matrix_on_ball(H.h);
            CHECK(hermiticity_residual(m) < 1e-12);
            auto ev = spectrum(m);
            CHECK(std::is_sorted(ev.begin(), ev.end()));
            CHECK(ev.front() >= -H.norm_bound - 1e-9);
            CHECK(ev.back() <= H.norm_bound + 1e-9);
        }
    }
}

TEST_CASE("eigensystem and basepoint measure") {
    auto H = harper(t237_ball(), 0.8);
    cmatrix m = matrix_on_ball(H.h);
    auto es = hermitian_eigensystem(m, true);
    double res = (m * es.vectors - es.vectors * es.values.asDiagonal()).cwiseAbs().maxCoeff();
    CHECK(res < 1e-10);
    CHECK(hermitian_eigensystem(m, false).vectors.size() == 0);
    auto mu = basepoint_measure(es);
    double total = 0.0, first = 0.0, second = 0.0;
    for (std::size_t k = 0; k < mu.nodes.size(); ++k) {
        total += mu.weights[k];
        first += mu.weights[k] * mu.nodes[k];
        second += mu.weights[k] * mu.nodes[k] * mu.nodes[k];
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(std::abs(first - m(0, 0).real()) < 1e-10);
    CHECK(second == doctest::Approx((m * m)(0, 0).real()));
    for (double x : mu.bulk(1e-3)) CHECK(std::find(mu.nodes.begin(), mu.nodes.end(), x) != mu.nodes.end());
    CHECK(mu.bulk(1e-3).size() <= mu.nodes.size());

    cmatrix nonsym = cmatrix::Zero(2, 2);
    nonsym(0, 1) = 1.0;
    CHECK(hermiticity_residual(nonsym) == doctest::Approx(1.0));
    CHECK_THROWS_AS(hermitian_eigensystem(nonsym, false), validation_error);
}

TEST_CASE("Lanczos quadrature reproduces low moments") {
    auto H = harper(g2_ball(), 0.1);
    csparse s = sparse_matrix_on_ball(H.h);
    cmatrix m = cmatrix(s);
    auto exact = basepoint_measure(hermitian_eigensystem(m, true));
    auto approx = lanczos_measure(s, 20);
    for (int k = 0; k <= 20; k += 2) {
        double me = 0.0, ma = 0.0;
        for (std::size_t i = 0; i < exact.nodes.size(); ++i) me += exact.weights[i] * std::pow(exact.nodes[i], k);
        for (std::size_t i = 0; i < approx.nodes.size(); ++i) ma += approx.weights[i] * std::pow(approx.nodes[i], k);
        CHECK(ma == doctest::Approx(me).epsilon(1e-8));
    }
}

TEST_CASE("gap extraction") {
    std::vector<double> spec{-2.0, -1.9, -1.0, -0.95, 0.5, 0.52, 2.0};
    auto g = gaps(spec, 0.5);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == interval(-1.9, -1.0));
    CHECK(g[1] == interval(-0.95, 0.5));
    CHECK(g[2] == interval(0.52, 2.0));
    CHECK(gaps(spec, 1.45).size() == 2);
    CHECK(gaps({}, 0.1).empty());
    CHECK(gaps({1.0}, 0.1).empty());
    auto st = stable_gaps({{-1.0, 1.0}, {2.0, 3.0}}, {{-0.5, 2.5}, {2.9, 4.0}}, 0.2);
    REQUIRE(st.size() == 2);
    CHECK(st[0] == interval(-0.5, 1.0));
    CHECK(st[1] == interval(2.0, 2.5));
    CHECK(stable_gaps({{0.0, 1.0}}, {{0.95, 2.0}}, 0.1).empty());
}

TEST_CASE("butterfly rows are deterministic and in grid order") {
    cayley_ball b(triangle_rotation_group(2, 3, 7), 5);
    std::vector<double> grid;
    for (int i = 0; i < 6; ++i) grid.push_back(0.5 * i);
    butterfly_options one;
    one.threads = 1;
    butterfly_options many;
    many.threads = 3;
    auto a = butterfly(b, grid, one), c = butterfly(b, grid, many);
    REQUIRE(a.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].theta_tilde == grid[i]);
        CHECK(a[i].theta == doctest::Approx(flux_theta(b.real(), grid[i])));
        CHECK(a[i].eigenvalues == c[i].eigenvalues);
        CHECK(a[i].weights == c[i].weights);
        CHECK(a[i].gaps == c[i].gaps);
        CHECK(a[i].eigenvalues.size() == b.size());
    }
}
