#pragma once

// Hofstadter model on Z^2 at flux p/q per plaquette, solved in a q x 1 magnetic unit cell.
// Hopping operators obey Ta Tb = exp(2 pi i p/q) Tb Ta.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

struct bloch_bands {
    std::vector<double> lower;  // per band, min over the magnetic Brillouin zone
    std::vector<double> upper;
    std::vector<int> chern;     // per band, Fukui-Hatsugai-Suzuki lattice Chern number
};

inline Eigen::MatrixXcd hofstadter_bloch(int p, int q, double kx, double ky) {
    using cd = std::complex<double>;
    const double two_pi = 2.0 * std::numbers::pi;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(q, q);
    for (int m = 0; m < q; ++m) {
        h(m, m) = 2.0 * std::cos(ky + two_pi * p * m / q);
    }
    if (q == 1) {
        h(0, 0) += 2.0 * std::cos(kx);
        return h;
    }
    for (int m = 0; m + 1 < q; ++m) {
        h(m + 1, m) += 1.0;
        h(m, m + 1) += 1.0;
    }
    cd wrap = std::polar(1.0, kx * q);
    h(0, q - 1) += wrap;
    h(q - 1, 0) += std::conj(wrap);
    return h;
}

inline bloch_bands hofstadter_bands(int p, int q, int grid = 48) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double kx_span = two_pi / q;
    bloch_bands out;
    out.lower.assign(static_cast<std::size_t>(q), 1e300);
    out.upper.assign(static_cast<std::size_t>(q), -1e300);
    std::vector<Eigen::MatrixXcd> vecs(static_cast<std::size_t>(grid * grid));
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hofstadter_bloch(p, q, kx_span * i / grid, two_pi * j / grid));
            for (int b = 0; b < q; ++b) {
                auto B = static_cast<std::size_t>(b);
                out.lower[B] = std::min(out.lower[B], es.eigenvalues()(b));
                out.upper[B] = std::max(out.upper[B], es.eigenvalues()(b));
            }
            vecs[static_cast<std::size_t>(i * grid + j)] = es.eigenvectors();
        }
    }
    auto at = [&](int i, int j) -> const Eigen::MatrixXcd& {
        return vecs[static_cast<std::size_t>(((i + grid) % grid) * grid + (j + grid) % grid)];
    };
    // The Bloch matrix is periodic in kx with period 2 pi / q and in ky with period 2 pi,
    // so plain eigenvectors give a consistent gauge-invariant plaquette product.
    for (int b = 0; b < q; ++b) {
        double total = 0.0;
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                auto link = [&](int i0, int j0, int i1, int j1) {
                    std::complex<double> u = at(i0, j0).col(b).dot(at(i1, j1).col(b));
                    return u / std::abs(u);
                };
                auto loop = link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) * link(i + 1, j + 1, i, j + 1) * link(i, j + 1, i, j);
                total += std::arg(loop);
            }
        }
        out.chern.push_back(static_cast<int>(std::lround(total / two_pi)));
    }
    return out;
}

// Integer t_r with r = s q + t p and |t| <= q/2 for the r-th gap.
inline int diophantine_t(int p, int q, int r) {
    for (int t = -q / 2; t <= q / 2; ++t) {
        int rem = r - t * p;
        if (rem % q == 0) return t;
    }
    return 0;
}

}  // namespace oracle
