#include "orbihall/conductance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "orbihall/errors.hpp"

namespace orbihall {

const char* to_string(projection_method m) {
    switch (m) {
        case projection_method::automatic: return "automatic";
        case projection_method::dense: return "dense";
        case projection_method::chebyshev: return "chebyshev";
    }
    return "unknown";
}

harper_system::harper_system(const cayley_ball& ball, double theta_tilde, const system_options& opts)
    : ball_(&ball), theta_tilde_(theta_tilde), opts_(opts), method_(opts.method), op_(harper(ball, theta_tilde)) {
    if (method_ == projection_method::automatic) {
        method_ = ball.size() <= opts.dense_limit ? projection_method::dense : projection_method::chebyshev;
    }
    if (method_ == projection_method::dense) {
        es_ = hermitian_eigensystem(matrix_on_ball(op_.h), true);
        measure_ = basepoint_measure(es_);
    } else {
        sparse_ = sparse_matrix_on_ball(op_.h);
        measure_ = lanczos_measure(sparse_, opts.lanczos_steps);
    }
}

double harper_system::theta() const { return flux_theta(ball_->real(), theta_tilde_); }

const Eigen::VectorXd& harper_system::eigenvalues() const {
    if (method_ != projection_method::dense) throw unsupported_error("full spectrum is only available for dense systems");
    return es_.values;
}

double harper_system::clearance(double E) const {
    double best = std::numeric_limits<double>::infinity();
    for (double x : bulk_spectrum()) best = std::min(best, std::abs(x - E));
    return best;
}

cvector harper_system::projection_column(double E) const {
    const auto n = static_cast<Eigen::Index>(ball_->size());
    if (method_ == projection_method::dense) {
        Eigen::Index k = 0;
        while (k < es_.values.size() && es_.values(k) <= E) ++k;
        cvector col = cvector::Zero(n);
        if (k == 0) return col;
        // P e = V_k V_k^* e
        col = es_.vectors.leftCols(k) * es_.vectors.leftCols(k).row(0).adjoint();
        return col;
    }
    const double bound = op_.norm_bound * 1.01;
    cvector col = cvector::Zero(n);
    if (E <= -bound) return col;
    if (E >= bound) {
        col(0) = 1.0;
        return col;
    }
    // Jackson-damped Chebyshev expansion of the step function 1{x <= E} on [-bound, bound].
    const int M = opts_.chebyshev_degree;
    const double e = E / bound;
    const double te = std::acos(e);
    const double pi = std::numbers::pi;
    auto jackson = [M, pi](int k) {
        double q = pi / (M + 1);
        return ((M - k + 1) * std::cos(k * q) + std::sin(k * q) / std::tan(q)) / (M + 1);
    };
    auto coeff = [te, pi](int k) { return k == 0 ? 1.0 - te / pi : -2.0 * std::sin(k * te) / (k * pi); };
    cvector t0 = cvector::Zero(n);
    t0(0) = 1.0;
    cvector t1 = (sparse_ * t0) / bound;
    col = coeff(0) * jackson(0) * t0 + coeff(1) * jackson(1) * t1;
    for (int k = 2; k <= M; ++k) {
        cvector t2 = 2.0 * (sparse_ * t1) / bound - t0;
        col += coeff(k) * jackson(k) * t2;
        t0.swap(t1);
        t1.swap(t2);
    }
    return col;
}

namespace {

void require_same_ball(const cocycle_table& t, const algebra_element& a) {
    if (&t.ball() != &a.ball() || t.theta_tilde() != a.theta_tilde()) {
        throw validation_error("pairing inputs and triple table use different balls or multipliers");
    }
}

template <typename Weight>
std::complex<double> pair_sum(const cocycle_table& t, const algebra_element& a0, const algebra_element& a1,
                              const algebra_element& a2, Weight w) {
    require_same_ball(t, a0);
    require_same_ball(t, a1);
    require_same_ball(t, a2);
    std::complex<double> s = 0.0;
    for (const auto& tr : t.triples()) {
        auto c0 = a0[static_cast<std::size_t>(tr.g0)];
        if (c0 == 0.0) continue;
        s += c0 * a1[static_cast<std::size_t>(tr.g1)] * a2[static_cast<std::size_t>(tr.g2)] * w(tr) * tr.sigma;
    }
    return s;
}

}  // namespace

std::complex<double> pair_trc(const cocycle_table& t, const algebra_element& a0, const algebra_element& a1,
                              const algebra_element& a2) {
    return pair_sum(t, a0, a1, a2, [](const cocycle_triple& tr) { return tr.area; });
}

std::complex<double> pair_trK(const cocycle_table& t, const algebra_element& a0, const algebra_element& a1,
                              const algebra_element& a2) {
    return pair_sum(t, a0, a1, a2, [](const cocycle_triple& tr) { return tr.psi; });
}

std::complex<double> pair_trc(const algebra_element& a0, const algebra_element& a1, const algebra_element& a2) {
    cocycle_table t(a0.ball(), a0.ball().radius(), a0.theta_tilde());
    return pair_trc(t, a0, a1, a2);
}

std::complex<double> pair_trK(const algebra_element& a0, const algebra_element& a1, const algebra_element& a2) {
    cocycle_table t(a0.ball(), a0.ball().radius(), a0.theta_tilde());
    return pair_trK(t, a0, a1, a2);
}

std::complex<double> pair_trK_literal(const algebra_element& a0, const algebra_element& a1, const algebra_element& a2) {
    const auto& ball = a0.ball();
    const int g = ball.real().sig.genus;
    auto derive = [&](const algebra_element& a, int j) {
        algebra_element d = a;
        for (int id : a.support()) d[static_cast<std::size_t>(id)] *= omega(ball, j, id);
        return d;
    };
    std::complex<double> total = 0.0;
    for (int j = 1; j <= g; ++j) {
        auto b = convolve(derive(a1, j), derive(a2, j + g), overflow_policy::truncate).value -
                 convolve(derive(a1, j + g), derive(a2, j), overflow_policy::truncate).value;
        total += trace(convolve(a0, b, overflow_policy::truncate).value);
    }
    return total;
}

std::optional<rational> rationalize(double x, std::int64_t max_den, double tol) {
    // continued fraction convergents
    double v = x;
    std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(v);
        if (std::abs(a) > 1e15) break;
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        if (k2 > max_den) break;
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        if (std::abs(static_cast<double>(h0) / static_cast<double>(k0) - x) < tol) return rational(h0, k0);
        double f = v - a;
        if (f < 1e-15) break;
        v = 1.0 / f;
    }
    return std::nullopt;
}

lattice_label gap_label(const signature& sig, const rational& theta, double trace_value) {
    auto lat = trace_range(sig, theta_value::rational_value(theta));
    auto [p, d] = lat.nearest(trace_value);
    return {p, d};
}

projection_approx spectral_projection(const harper_system& sys, double E, int inner_radius) {
    cocycle_table table(sys.ball(), inner_radius, sys.theta_tilde());
    return spectral_projection(sys, E, table);
}

projection_approx spectral_projection(const harper_system& sys, double E, const cocycle_table& table) {
    const auto& ball = sys.ball();
    if (&table.ball() != &ball || table.theta_tilde() != sys.theta_tilde()) {
        throw validation_error("triple table does not match the Harper system");
    }
    auto bulk = sys.bulk_spectrum();
    bool outside = bulk.empty() || E < bulk.front() || E > bulk.back();
    if (!outside && sys.clearance(E) < sys.options().clearance) {
        throw validation_error("energy lies in the spectrum (too close to a bulk eigenvalue)");
    }
    const int inner = table.inner_radius();
    cvector col = sys.projection_column(E);
    projection_approx out{algebra_element(ball, sys.theta_tilde()), E, inner, 0.0, 0.0, 0.0, {}};
    const std::size_t m = table.inner_size();
    double total = 0.0, outer = 0.0;
    out.decay.assign(static_cast<std::size_t>(ball.radius() + 1), 0.0);
    for (std::size_t i = 0; i < ball.size(); ++i) {
        double a = std::abs(col(static_cast<Eigen::Index>(i)));
        total += a * a;
        if (i >= m) outer += a * a;
        auto& d = out.decay[static_cast<std::size_t>(ball[i].length)];
        d = std::max(d, a);
        if (i < m) out.p[i] = col(static_cast<Eigen::Index>(i));
    }
    out.leak = total > 0.0 ? outer / total : 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        int inv = ball.inverse(static_cast<int>(i));
        out.hermiticity_defect = std::max(out.hermiticity_defect, std::abs(out.p[i] - std::conj(out.p[static_cast<std::size_t>(inv)])));
    }
    // p*p on the inner ball from the triples: g1 g2 = g0^-1
    std::vector<std::complex<double>> sq(m, 0.0);
    for (const auto& tr : table.triples()) {
        auto prod = static_cast<std::size_t>(ball.inverse(tr.g0));
        sq[prod] += out.p[static_cast<std::size_t>(tr.g1)] * out.p[static_cast<std::size_t>(tr.g2)] * tr.sigma;
    }
    for (std::size_t i = 0; i < m; ++i) out.idempotency_defect += std::abs(sq[i] - out.p[i]);
    return out;
}

hall_record hall_conductance(const harper_system& sys, double E, int inner_radius) {
    cocycle_table table(sys.ball(), inner_radius, sys.theta_tilde());
    return hall_conductance(sys, E, table);
}

hall_record hall_conductance(const harper_system& sys, double E, const cocycle_table& table) {
    const auto& ball = sys.ball();
    const auto& real = ball.real();
    auto proj = spectral_projection(sys, E, table);
    hall_record r;
    r.energy = E;
    r.theta_tilde = sys.theta_tilde();
    r.theta = sys.theta();
    r.radius = ball.radius();
    r.inner_radius = table.inner_radius();
    r.method = to_string(sys.method());
    r.trace = proj.p[0].real();
    r.trc = pair_trc(table, proj.p, proj.p, proj.p);
    r.trK = pair_trK(table, proj.p, proj.p, proj.p);
    r.kappa = real.area_matching_scale();
    const std::complex<double> minus_2i(0.0, -2.0);
    auto sc = minus_2i * r.trc;
    auto sk = minus_2i * r.kappa * r.trK;
    r.sigma_c = sc.real();
    r.sigma_c_imag = sc.imag();
    r.sigma_k = sk.real();
    r.sigma_k_imag = sk.imag();
    r.quantum = real.fundamental_area() / (2.0 * std::numbers::pi);
    r.label = r.quantum > 0.0 ? r.sigma_c / r.quantum : 0.0;
    r.nearest_k = std::lround(r.label);
    r.deviation = std::abs(r.sigma_c - static_cast<double>(r.nearest_k) * r.quantum);
    r.comparison = std::abs(r.kappa * r.trK - r.trc);
    r.comparison_relative = std::abs(r.trc) > 0.0 ? r.comparison / std::abs(r.trc) : 0.0;
    r.idempotency_defect = proj.idempotency_defect;
    r.hermiticity_defect = proj.hermiticity_defect;
    r.leak = proj.leak;
    auto bulk = sys.bulk_spectrum();
    r.in_gap = bulk.empty() || sys.clearance(E) >= sys.options().clearance;
    if (auto th = rationalize(r.theta)) {
        r.trace_label = gap_label(real.sig, *th, r.trace);
    }
    return r;
}

std::vector<plateau_row> plateau_scan(const harper_system& sys, const std::vector<double>& energies, int inner_radius,
                                      double min_width) {
    if (!std::is_sorted(energies.begin(), energies.end())) throw validation_error("energy grid must be sorted");
    std::vector<plateau_row> rows;
    if (energies.empty()) return rows;
    auto gs = sys.bulk_gaps(min_width);
    auto bulk = sys.bulk_spectrum();
    cocycle_table table(sys.ball(), inner_radius, sys.theta_tilde());
    std::map<double, hall_record> cache;
    for (double E : energies) {
        plateau_row row;
        row.energy = E;
        double rep = E;
        bool below = !bulk.empty() && E < bulk.front();
        bool above = !bulk.empty() && E > bulk.back();
        for (const auto& g : gs) {
            if (E > g.first && E < g.second) {
                rep = 0.5 * (g.first + g.second);
                row.in_gap = true;
            }
        }
        if (below) {
            rep = bulk.front() - 1.0;
            row.in_gap = true;
        } else if (above) {
            rep = bulk.back() + 1.0;
            row.in_gap = true;
        }
        if (!row.in_gap && sys.clearance(E) < sys.options().clearance) continue;
        auto it = cache.find(rep);
        if (it == cache.end()) it = cache.emplace(rep, hall_conductance(sys, rep, table)).first;
        row.record = it->second;
        row.record.energy = E;
        row.record.in_gap = row.in_gap;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace orbihall
