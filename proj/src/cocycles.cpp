#include "orbihall/cocycles.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <cmath>
#include <numbers>

#include "orbihall/errors.hpp"

namespace orbihall {

namespace {

double reduce_unit_interval(double x) {
    double f = x - std::floor(x);
    if (f < 1e-12 || f > 1.0 - 1e-12) return 1.0;
    return f;
}

}  // namespace

double area_cocycle(const cayley_ball& ball, int x, int y) {
    const auto& real = ball.real();
    const auto& gx = ball[static_cast<std::size_t>(x)].g;
    return real.area_at_origin(gx, real.multiply(gx, ball[static_cast<std::size_t>(y)].g));
}

std::complex<double> magnetic_multiplier::operator()(int x, int y) const {
    return from_area(area_cocycle(*ball_, x, y));
}

double flux_theta(const signature& sig, double theta_tilde) {
    return reduce_unit_interval(theta_tilde * phi(sig).to_double());
}

double flux_theta(const realization& real, double theta_tilde) {
    return reduce_unit_interval(theta_tilde * real.fundamental_area() / (2.0 * std::numbers::pi));
}

double omega(const cayley_ball& ball, int j, int x) {
    const int g = ball.real().sig.genus;
    if (j < 1 || j > 2 * g) throw validation_error("omega index out of range 1..2g");
    return static_cast<double>(ball[static_cast<std::size_t>(x)].abel[static_cast<std::size_t>(j - 1)]);
}

double psi_sum(const cayley_ball& ball, int x, int y) {
    const int g = ball.real().sig.genus;
    const auto& a = ball[static_cast<std::size_t>(x)].abel;
    const auto& b = ball[static_cast<std::size_t>(y)].abel;
    std::int64_t s = 0;
    for (int j = 0; j < g; ++j) {
        auto uj = static_cast<std::size_t>(j), ujg = static_cast<std::size_t>(j + g);
        s += a[uj] * b[ujg] - a[ujg] * b[uj];
    }
    return static_cast<double>(s);
}

cocycle_table::cocycle_table(const cayley_ball& ball, int inner_radius, double theta_tilde)
    : ball_(&ball), inner_radius_(inner_radius), theta_tilde_(theta_tilde) {
    if (inner_radius < 0 || inner_radius > ball.radius()) throw validation_error("inner radius must lie in [0, R]");
    inner_size_ = ball.count_within(inner_radius);
    magnetic_multiplier sigma(ball, theta_tilde);
    const auto m = static_cast<int>(inner_size_);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            int p = ball.multiply(i, j);
            if (p == cayley_ball::out_of_ball || p >= m) continue;
            double a = area_cocycle(ball, i, j);
            triples_.push_back({ball.inverse(p), i, j, a, psi_sum(ball, i, j), sigma.from_area(a)});
        }
    }
}

coboundary_result solve_coboundary_defect(const cayley_ball& ball) {
    return solve_coboundary_defect(ball, ball.real().area_matching_scale());
}

coboundary_result solve_coboundary_defect(const cayley_ball& ball, double scale) {
    const int R = ball.radius();
    if (R < 3) throw validation_error("coboundary solver needs a ball of radius >= 3");
    const auto n = static_cast<Eigen::Index>(ball.size());
    std::vector<Eigen::Triplet<double>> entries;
    std::vector<double> rhs;
    // unknown index = id - 1 (k(e) = 0 is pinned)
    auto add = [&](int id, double v, Eigen::Index row) {
        if (id != 0) entries.emplace_back(row, id - 1, v);
    };
    for (int r1 = 0; r1 <= R; ++r1) {
        std::size_t lo1 = r1 == 0 ? 0 : ball.count_within(r1 - 1), hi1 = ball.count_within(r1);
        std::size_t hi2 = ball.count_within(R - r1);
        for (std::size_t x = lo1; x < hi1; ++x) {
            for (std::size_t y = 0; y < hi2; ++y) {
                int xi = static_cast<int>(x), yi = static_cast<int>(y);
                int p = ball.multiply(xi, yi);
                if (p == cayley_ball::out_of_ball) throw numerical_error("product of short elements left the ball");
                auto row = static_cast<Eigen::Index>(rhs.size());
                add(xi, 1.0, row);
                add(p, -1.0, row);
                add(yi, 1.0, row);
                rhs.push_back(scale * psi_sum(ball, xi, yi) - area_cocycle(ball, xi, yi));
            }
        }
    }
    coboundary_result out;
    out.scale = scale;
    out.equations = rhs.size();
    out.k.assign(ball.size(), 0.0);
    if (n <= 1) return out;

    Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(rhs.size()), n - 1);
    A.setFromTriplets(entries.begin(), entries.end());
    Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::LeastSquaresConjugateGradient<Eigen::SparseMatrix<double>> solver;
    solver.setTolerance(1e-14);
    solver.setMaxIterations(20 * n);
    solver.compute(A);
    Eigen::VectorXd k = solver.solve(b);
    if (!k.allFinite()) throw numerical_error("coboundary least-squares solve produced non-finite values");
    Eigen::VectorXd r = A * k - b;
    out.iterations = static_cast<int>(solver.iterations());
    out.residual = std::sqrt(r.squaredNorm() / static_cast<double>(rhs.size()));
    out.max_residual = r.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 1; i < n; ++i) out.k[static_cast<std::size_t>(i)] = k(i - 1);
    return out;
}

}  // namespace orbihall
