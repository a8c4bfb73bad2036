#include "orbihall/groups.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "orbihall/errors.hpp"

namespace orbihall {

namespace {

constexpr double pi = std::numbers::pi;

point geodesic_midpoint(const point& a, const point& b) {
    isometry t = translation_to(a);
    point b0 = apply(t.inverse(), b);
    double r = std::abs(b0.z);
    double d = 2.0 * std::atanh(r);
    point mid0(r > 0.0 ? std::polar(std::tanh(d / 4.0), std::arg(b0.z)) : cplx(0.0, 0.0));
    return apply(t, mid0);
}

double matrix_residual(const realization& real, const group_element& g) {
    if (real.model == plane_model::euclidean) return std::abs(g.t);
    return g.h.distance_to(isometry::identity());
}

void finish(realization& real) {
    auto res = real.relator_residuals();
    real.relator_residual = res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
    real.cycle_area = evaluate_on_fundamental_cycle(
        real, [&real](const tracked_element& x, const tracked_element& y) {
            return real.area_at_origin(x.g, real.multiply(x.g, y.g));
        });
    int g = real.sig.genus;
    real.cycle_symplectic = evaluate_on_fundamental_cycle(real, [g](const tracked_element& x, const tracked_element& y) {
        double s = 0.0;
        for (int j = 0; j < g; ++j) {
            s += static_cast<double>(x.abel[j] * y.abel[j + g] - x.abel[j + g] * y.abel[j]);
        }
        return s;
    });
}

// Hyperbolic element with repelling/attracting endpoints e^{iu}, e^{iv} and translation length l.
isometry hyperbolic_from_axis(double u, double v, double l) {
    double h = (v - u) / 2.0;
    double m = (u + v) / 2.0;
    double s = std::atanh(std::cos(h));
    isometry t = rotation_about_origin(m) * translation_along_real_axis(s) * rotation_about_origin(pi / 2.0);
    return t * translation_along_real_axis(l) * t.inverse();
}

std::array<double, 3> axis_parameters(const isometry& g) {
    su11 u = g.to_su11();
    double re = u.alpha.real();
    double s = std::sqrt(std::max(re * re - 1.0, 0.0));
    double sg = re >= 0.0 ? 1.0 : -1.0;
    cplx bc = std::conj(u.beta);
    cplx att = (cplx(0.0, u.alpha.imag()) + sg * s) / bc;
    cplx rep = (cplx(0.0, u.alpha.imag()) - sg * s) / bc;
    double a = std::arg(rep);
    double b = std::arg(att);
    if (b < a) b += 2.0 * pi;
    return {a, b, 2.0 * std::acosh(std::abs(re))};
}

}  // namespace

word free_reduce(const word& w) {
    word out;
    for (int x : w) {
        if (x == 0) throw validation_error("word letters are nonzero signed indices");
        if (!out.empty() && out.back() == -x) {
            out.pop_back();
        } else {
            out.push_back(x);
        }
    }
    return out;
}

word inverse_word(const word& w) {
    word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

std::vector<std::string> presentation::generator_names() const {
    std::vector<std::string> names;
    for (int i = 1; i <= genus; ++i) {
        names.push_back("A" + std::to_string(i));
        names.push_back("B" + std::to_string(i));
    }
    for (std::size_t j = 1; j <= cone_orders.size(); ++j) names.push_back("C" + std::to_string(j));
    return names;
}

word presentation::long_relator() const {
    word w;
    for (int i = 0; i < genus; ++i) {
        int a = 2 * i + 1, b = 2 * i + 2;
        w.insert(w.end(), {a, b, -a, -b});
    }
    for (std::size_t j = 0; j < cone_orders.size(); ++j) w.push_back(2 * genus + static_cast<int>(j) + 1);
    return w;
}

std::vector<word> presentation::relators() const {
    std::vector<word> rels{long_relator()};
    for (std::size_t j = 0; j < cone_orders.size(); ++j) {
        rels.emplace_back(static_cast<std::size_t>(cone_orders[j]), 2 * genus + static_cast<int>(j) + 1);
    }
    return rels;
}

std::string presentation::format(const word& w) const {
    if (w.empty()) return "e";
    auto names = generator_names();
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        int k = std::abs(w[i]) - 1;
        out += names.at(static_cast<std::size_t>(k));
        if (w[i] < 0) out += "^-1";
    }
    return out;
}

word presentation::parse_word(const std::string& text) const {
    auto names = generator_names();
    word w;
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '*' && c != '.') s.push_back(c);
    }
    if (s.empty() || s == "e" || s == "1") return w;
    std::size_t i = 0;
    while (i < s.size()) {
        char kind = s[i];
        if (kind != 'A' && kind != 'B' && kind != 'C' && kind != 'a' && kind != 'b' && kind != 'c') {
            throw validation_error("unexpected character in word: '" + text + "'");
        }
        bool lower = std::islower(static_cast<unsigned char>(kind));
        ++i;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw validation_error("generator index missing in word: '" + text + "'");
        std::string name(1, static_cast<char>(std::toupper(static_cast<unsigned char>(kind))));
        name += s.substr(i, j - i);
        i = j;
        int sign = lower ? -1 : 1;
        if (s.compare(i, 3, "^-1") == 0) {
            sign = -sign;
            i += 3;
        }
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw validation_error("unknown generator '" + name + "'");
        w.push_back(sign * static_cast<int>(it - names.begin() + 1));
    }
    return w;
}

group_element realization::multiply(const group_element& x, const group_element& y) const {
    if (model == plane_model::euclidean) return {isometry(), x.t + y.t};
    return {x.h * y.h, {}};
}

group_element realization::inverse(const group_element& x) const {
    if (model == plane_model::euclidean) return {isometry(), -x.t};
    return {x.h.inverse(), {}};
}

group_element realization::letter(int signed_index) const {
    int k = std::abs(signed_index) - 1;
    if (signed_index == 0 || k >= static_cast<int>(generators.size())) throw validation_error("generator index out of range");
    const auto& g = generators[static_cast<std::size_t>(k)];
    return signed_index > 0 ? g : inverse(g);
}

group_element realization::evaluate(const word& w) const {
    group_element acc = identity();
    for (int x : w) acc = multiply(acc, letter(x));
    return acc;
}

double realization::area_at_origin(const group_element& x, const group_element& y) const {
    if (model == plane_model::euclidean) return 0.5 * std::imag(std::conj(x.t) * y.t);
    return signed_area_at_origin(x.h, y.h);
}

cplx realization::orbit_point(const group_element& x) const {
    if (model == plane_model::euclidean) return x.t;
    su11 u = x.h.to_su11();
    return u.beta / std::conj(u.alpha);
}

double realization::displacement(const group_element& x) const {
    if (model == plane_model::euclidean) return std::abs(x.t);
    return orbihall::displacement(x.h);
}

double realization::distance(const group_element& x, const group_element& y) const {
    return displacement(multiply(inverse(x), y));
}

double realization::area_matching_scale() const {
    if (sig.genus == 0 || cycle_symplectic == 0.0) return 0.0;
    return cycle_area / cycle_symplectic;
}

std::vector<double> realization::relator_residuals() const {
    std::vector<double> out;
    for (const auto& r : pres().relators()) out.push_back(matrix_residual(*this, evaluate(r)));
    return out;
}

std::vector<double> realization::cone_angle_errors() const {
    std::vector<double> out;
    if (model == plane_model::euclidean) return out;
    for (std::size_t j = 0; j < sig.cone_orders.size(); ++j) {
        const auto& c = generators[static_cast<std::size_t>(2 * sig.genus) + j].h;
        out.push_back(std::abs(elliptic_angle(c) - 2.0 * pi / sig.cone_orders[j]));
    }
    return out;
}

void realization::validate(const tolerances& tol) const {
    if (generators.size() != static_cast<std::size_t>(pres().generator_count())) {
        throw numerical_error("realization has the wrong number of generators");
    }
    if (!(relator_residual < tol.relator)) {
        std::ostringstream os;
        os << "relator residual " << relator_residual << " exceeds " << tol.relator;
        throw numerical_error(os.str());
    }
    if (model == plane_model::euclidean) return;
    for (double e : cone_angle_errors()) {
        if (!(e < tol.relator)) throw numerical_error("cone generator does not have the prescribed rotation angle");
    }
    for (int i = 0; i < 2 * sig.genus; ++i) {
        if (classify(generators[static_cast<std::size_t>(i)].h, tol) != isometry_kind::hyperbolic) {
            throw numerical_error("handle generator is not hyperbolic");
        }
    }
    for (const auto& g : generators) {
        if (displacement(g) < tol.quantization * tol.separation_factor) throw numerical_error("a generator fixes the basepoint");
    }
}

double evaluate_on_fundamental_cycle(const realization& real, const element_cochain& c) {
    const int g = real.sig.genus;
    auto track_letter = [&](int x) {
        tracked_element t{real.letter(x), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g), 0)};
        int k = std::abs(x) - 1;
        if (k < 2 * g) {
            std::size_t slot = static_cast<std::size_t>(k % 2 == 0 ? k / 2 : g + k / 2);
            t.abel[slot] = x > 0 ? 1 : -1;
        }
        return t;
    };
    auto mul = [&](const tracked_element& a, const tracked_element& b) {
        tracked_element r{real.multiply(a.g, b.g), a.abel};
        for (std::size_t i = 0; i < r.abel.size(); ++i) r.abel[i] += b.abel[i];
        return r;
    };
    const tracked_element one{real.identity(), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g), 0)};

    double total = 0.0;
    tracked_element prefix = one;
    for (int x : real.pres().long_relator()) {
        tracked_element l = track_letter(x);
        total += c(prefix, l);
        prefix = mul(prefix, l);
    }
    for (int k = 1; k <= 2 * g; ++k) {
        total -= c(track_letter(k), track_letter(-k)) + c(one, one);
    }
    for (std::size_t j = 0; j < real.sig.cone_orders.size(); ++j) {
        int nu = real.sig.cone_orders[j];
        tracked_element cj = track_letter(2 * g + static_cast<int>(j) + 1);
        tracked_element power = cj;
        double s = c(one, one);
        for (int k = 1; k < nu; ++k) {
            s += c(cj, power);
            power = mul(power, cj);
        }
        total -= s / nu;
    }
    return total;
}

realization surface_group_realization(int g) {
    if (g < 2) throw validation_error("surface group realization requires genus >= 2");
    const int n = 4 * g;
    const double beta = 2.0 * pi / n;
    const double d = std::acosh(std::cos(beta / 2.0) / std::sin(pi / n));
    auto alpha = [n](int k) { return 2.0 * pi * k / n; };
    auto side_pairing = [&](int i, int j) {
        return rotation_about_origin(alpha(j) - pi) * translation_along_real_axis(-2.0 * d) * rotation_about_origin(-alpha(i));
    };
    realization real;
    real.sig = signature(g, {});
    real.construction = "regular-polygon";
    for (int h = 0; h < g; ++h) {
        real.generators.push_back({side_pairing(4 * h + 2, 4 * h), {}});
        real.generators.push_back({side_pairing(4 * h + 1, 4 * h + 3), {}});
    }
    finish(real);
    return real;
}

realization triangle_rotation_group(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2) throw validation_error("triangle group orders must be >= 2");
    std::array<int, 3> o{p, q, r};
    std::sort(o.begin(), o.end());
    signature sig(0, {o[0], o[1], o[2]});
    if (sig.geometry() != geometry_class::hyperbolic) {
        throw validation_error("triangle (" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) +
                               ") is " + to_string(sig.geometry()) + ", not hyperbolic");
    }
    const double A = pi / o[0], B = pi / o[1], C = pi / o[2];
    const double side_pq = std::acosh((std::cos(C) + std::cos(A) * std::cos(B)) / (std::sin(A) * std::sin(B)));
    const double side_pr = std::acosh((std::cos(B) + std::cos(A) * std::cos(C)) / (std::sin(A) * std::sin(C)));
    point P = point::origin();
    point Q(cplx(std::tanh(side_pq / 2.0), 0.0));
    point R(std::polar(std::tanh(side_pr / 2.0), A));
    point m = geodesic_midpoint(P, geodesic_midpoint(Q, R));
    isometry t = translation_to(m);
    isometry ti = t.inverse();
    realization real;
    real.sig = sig;
    real.construction = "triangle";
    for (auto [c, nu] : {std::pair{P, o[0]}, std::pair{Q, o[1]}, std::pair{R, o[2]}}) {
        real.generators.push_back({ti * rotation_about(c, 2.0 * pi / nu) * t, {}});
    }
    finish(real);
    return real;
}

realization signature_group_realization(const signature& sig, std::uint64_t seed, const tolerances& tol) {
    if (sig.geometry() != geometry_class::hyperbolic) {
        throw validation_error("signature " + sig.str() + " is not hyperbolic");
    }
    const int g = sig.genus;
    const int n = sig.n();
    const int N = 4 * g + 2 * n;
    const double ph = phi(sig).to_double();
    const double beta = ((N - 2) * pi - 2.0 * pi * ph) / N;
    const double d = std::acosh(std::cos(beta / 2.0) / std::sin(pi / N));
    const double rv = std::acosh(1.0 / (std::tan(pi / N) * std::tan(beta / 2.0)));
    auto alpha = [N](int k) { return 2.0 * pi * k / N; };
    auto side_pairing = [&](int i, int j) {
        return rotation_about_origin(alpha(j) - pi) * translation_along_real_axis(-2.0 * d) * rotation_about_origin(-alpha(i));
    };

    Eigen::VectorXd x0(6 * g + 2 * n);
    int k = 0;
    for (int h = 0; h < g; ++h) {
        for (const auto& m : {side_pairing(4 * h + 2, 4 * h), side_pairing(4 * h + 1, 4 * h + 3)}) {
            auto p = axis_parameters(m);
            x0(k++) = p[0];
            x0(k++) = p[1];
            x0(k++) = p[2];
        }
    }
    for (int j = 0; j < n; ++j) {
        x0(k++) = rv;
        x0(k++) = alpha(4 * g + 2 * j) + pi / N;
    }

    auto build = [&](const Eigen::VectorXd& x) {
        std::vector<group_element> gens;
        int i = 0;
        for (int h = 0; h < 2 * g; ++h, i += 3) gens.push_back({hyperbolic_from_axis(x(i), x(i + 1), x(i + 2)), {}});
        for (int j = 0; j < n; ++j, i += 2) {
            point c(std::polar(std::tanh(x(i) / 2.0), x(i + 1)));
            gens.push_back({rotation_about(c, 2.0 * pi / sig.cone_orders[static_cast<std::size_t>(j)]), {}});
        }
        return gens;
    };
    auto residual = [&](const Eigen::VectorXd& x) {
        Eigen::Vector4d r;
        try {
            auto gens = build(x);
            isometry acc;
            for (int h = 0; h < g; ++h) {
                const auto& a = gens[static_cast<std::size_t>(2 * h)].h;
                const auto& b = gens[static_cast<std::size_t>(2 * h + 1)].h;
                acc = acc * a * b * a.inverse() * b.inverse();
            }
            for (int j = 0; j < n; ++j) acc = acc * gens[static_cast<std::size_t>(2 * g + j)].h;
            const auto& e = acc.entries();
            Eigen::Vector4d plus(e[0] - 1.0, e[1], e[2], e[3] - 1.0);
            Eigen::Vector4d minus(-e[0] - 1.0, -e[1], -e[2], -e[3] - 1.0);
            r = plus.cwiseAbs().maxCoeff() <= minus.cwiseAbs().maxCoeff() ? plus : minus;
        } catch (const std::exception&) {
            r.setConstant(std::numeric_limits<double>::infinity());
        }
        if (!r.allFinite()) r.setConstant(1e30);
        return r;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    const double target_area = -2.0 * pi * ph;
    double best_residual = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < tol.newton_restarts; ++attempt) {
        Eigen::VectorXd x = x0;
        const double amp = 0.01 * (1 + attempt);
        for (int i = 0; i < x.size(); ++i) x(i) += amp * jitter(rng);
        double lambda = 1e-3;
        int it = 0;
        Eigen::Vector4d r = residual(x);
        for (; it < tol.newton_max_iterations && r.norm() > tol.newton_target; ++it) {
            Eigen::MatrixXd J(4, x.size());
            const double h = 1e-7;
            for (int i = 0; i < x.size(); ++i) {
                Eigen::VectorXd xp = x, xm = x;
                xp(i) += h;
                xm(i) -= h;
                J.col(i) = (residual(xp) - residual(xm)) / (2.0 * h);
            }
            bool improved = false;
            while (lambda < 1e10) {
                Eigen::Matrix4d M = J * J.transpose() + lambda * Eigen::Matrix4d::Identity();
                Eigen::VectorXd dx = -J.transpose() * M.ldlt().solve(r);
                Eigen::Vector4d rn = residual(x + dx);
                if (rn.norm() < r.norm()) {
                    x += dx;
                    r = rn;
                    lambda = std::max(lambda / 3.0, 1e-12);
                    improved = true;
                    break;
                }
                lambda *= 4.0;
            }
            if (!improved) break;
        }
        best_residual = std::min(best_residual, r.norm());
        if (!(r.norm() < tol.relator * 1e-1)) continue;
        realization real;
        real.sig = sig;
        real.construction = "least-squares";
        real.generators = build(x);
        real.solver_iterations = it;
        real.solver_attempts = attempt + 1;
        finish(real);
        if (std::abs(real.cycle_area - target_area) > 1e-6 * std::max(1.0, std::abs(target_area))) continue;
        return real;
    }
    std::ostringstream os;
    os << "relator solver did not converge to a Fuchsian realization of " << sig.str() << " (best residual "
       << best_residual << ")";
    throw numerical_error(os.str());
}

realization euclidean_lattice_realization() {
    realization real;
    real.model = plane_model::euclidean;
    real.sig = signature(1, {});
    real.construction = "unit-translations";
    real.generators = {{isometry(), cplx(1.0, 0.0)}, {isometry(), cplx(0.0, 1.0)}};
    finish(real);
    return real;
}

realization realize(const signature& sig, std::uint64_t seed, realization_method method, const tolerances& tol) {
    auto geom = sig.geometry();
    if (method == realization_method::automatic) {
        if (geom == geometry_class::euclidean) {
            method = realization_method::euclidean;
        } else if (geom == geometry_class::spherical) {
            throw validation_error("signature " + sig.str() + " is spherical; only hyperbolic and euclidean groups are realized");
        } else if (sig.n() == 0) {
            method = realization_method::surface;
        } else if (sig.genus == 0 && sig.n() == 3) {
            method = realization_method::triangle;
        } else {
            method = realization_method::solver;
        }
    }
    realization real;
    switch (method) {
        case realization_method::surface:
            if (sig.n() != 0) throw validation_error("surface construction needs a signature without cone points");
            real = surface_group_realization(sig.genus);
            break;
        case realization_method::triangle:
            if (sig.genus != 0 || sig.n() != 3) throw validation_error("triangle construction needs a signature (0;p,q,r)");
            real = triangle_rotation_group(sig.cone_orders[0], sig.cone_orders[1], sig.cone_orders[2]);
            break;
        case realization_method::solver: real = signature_group_realization(sig, seed, tol); break;
        case realization_method::euclidean:
            if (!(sig == signature(1, {}))) {
                throw validation_error("euclidean mode realizes only the lattice signature (1;), got " + sig.str());
            }
            real = euclidean_lattice_realization();
            break;
        case realization_method::automatic: break;
    }
    real.validate(tol);
    return real;
}

std::size_t cayley_ball::key_hash::operator()(const key_type& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : k) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

cayley_ball::cayley_ball(const realization& real, int radius, generator_convention conv, const tolerances& tol)
    : real_(real), radius_(radius), convention_(conv), tol_(tol), dims_(real.model == plane_model::euclidean ? 2 : 4) {
    if (radius < 0) throw validation_error("ball radius must be non-negative");
    build();
    run_audit();
}

std::array<double, 4> cayley_ball::coords(const group_element& g) const {
    if (real_.model == plane_model::euclidean) return {g.t.real(), g.t.imag(), 0.0, 0.0};
    return g.h.entries();
}

cayley_ball::key_type cayley_ball::key_of(const std::array<double, 4>& c, double cell) const {
    key_type k{0, 0, 0, 0};
    for (int i = 0; i < dims_; ++i) k[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(c[static_cast<std::size_t>(i)] / cell));
    return k;
}

std::optional<int> cayley_ball::lookup(const std::array<double, 4>& c, double cell,
                                       const std::unordered_multimap<key_type, int, key_hash>& index, int reach) const {
    // reach 0: exact-match probe, tolerance a tenth of a cell so that neighbours are
    // visited only near cell boundaries; reach 1: all adjacent cells.
    const double match = reach == 0 ? cell / 10.0 : cell;
    auto search = [&](const std::array<double, 4>& v) -> std::optional<int> {
        key_type base = key_of(v, cell);
        std::array<std::array<std::int64_t, 3>, 4> offs{};
        std::array<int, 4> counts{1, 1, 1, 1};
        for (int i = 0; i < dims_; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (reach == 0) {
                double f = v[ui] / cell - static_cast<double>(base[ui]);
                if (f < 0.1) {
                    offs[ui] = {0, -1, 0};
                    counts[ui] = 2;
                } else if (f > 0.9) {
                    offs[ui] = {0, 1, 0};
                    counts[ui] = 2;
                }
            } else {
                offs[ui] = {0, -1, 1};
                counts[ui] = 3;
            }
        }
        for (int i0 = 0; i0 < counts[0]; ++i0)
            for (int i1 = 0; i1 < counts[1]; ++i1)
                for (int i2 = 0; i2 < counts[2]; ++i2)
                    for (int i3 = 0; i3 < counts[3]; ++i3) {
                        key_type k{base[0] + offs[0][static_cast<std::size_t>(i0)], base[1] + offs[1][static_cast<std::size_t>(i1)],
                                   base[2] + offs[2][static_cast<std::size_t>(i2)], base[3] + offs[3][static_cast<std::size_t>(i3)]};
                        auto range = index.equal_range(k);
                        for (auto it = range.first; it != range.second; ++it) {
                            const auto& w = coords(elements_[static_cast<std::size_t>(it->second)].g);
                            double dist = 0.0;
                            for (int j = 0; j < dims_; ++j) dist = std::max(dist, std::abs(w[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(j)]));
                            if (dist < match) return it->second;
                        }
                    }
        return std::nullopt;
    };
    if (auto hit = search(c)) return hit;
    if (real_.model == plane_model::hyperbolic) {
        // canonical sign is ambiguous when the leading entry is tiny
        double lead = 0.0;
        for (double v : c) {
            if (std::abs(v) > 1e-12) {
                lead = std::abs(v);
                break;
            }
        }
        if (lead < 10.0 * cell) {
            std::array<double, 4> neg{-c[0], -c[1], -c[2], -c[3]};
            return search(neg);
        }
    }
    return std::nullopt;
}

std::optional<int> cayley_ball::find(const group_element& g) const {
    return lookup(coords(g), tol_.quantization, index_, 0);
}

std::optional<int> cayley_ball::find_word(const word& w) const { return find(real_.evaluate(w)); }

int cayley_ball::multiply(int x, int y) const {
    auto r = find(real_.multiply(elements_[static_cast<std::size_t>(x)].g, elements_[static_cast<std::size_t>(y)].g));
    return r ? *r : out_of_ball;
}

double cayley_ball::area(int x, int y) const {
    const auto& a = elements_[static_cast<std::size_t>(x)];
    const auto& b = elements_[static_cast<std::size_t>(y)];
    if (real_.model == plane_model::euclidean) return 0.5 * std::imag(std::conj(a.point) * b.point);
    return signed_area_at_origin(a.polar, b.polar);
}

std::size_t cayley_ball::count_within(int r) const {
    auto it = std::upper_bound(elements_.begin(), elements_.end(), r,
                               [](int v, const ball_element& e) { return v < e.length; });
    return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::size_t> cayley_ball::sphere_sizes() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(radius_ + 1), 0);
    for (const auto& e : elements_) ++out[static_cast<std::size_t>(e.length)];
    return out;
}

void cayley_ball::build() {
    const int ngen = real_.pres().generator_count();
    const int g = real_.sig.genus;
    for (int k = 1; k <= ngen; ++k) {
        group_element x = real_.letter(k);
        group_element xi = real_.letter(-k);
        bool involution = real_.model == plane_model::hyperbolic && x.h.distance_to(xi.h) < tol_.quantization;
        letters_.push_back({k, x});
        if (involution) {
            letter_weights_.push_back(convention_ == generator_convention::multiset ? 2.0 : 1.0);
        } else {
            letter_weights_.push_back(1.0);
            letters_.push_back({-k, xi});
            letter_weights_.push_back(1.0);
        }
    }

    auto add = [&](const group_element& ge, word w, int len) {
        ball_element e;
        e.g = ge;
        e.w = std::move(w);
        e.length = len;
        if (real_.model == plane_model::hyperbolic) {
            e.polar = orbit_polar(ge.h);
        } else {
            e.polar = {std::abs(ge.t) / 2.0, 0.0, std::arg(ge.t)};
        }
        e.point = real_.orbit_point(ge);
        e.abel = abelianize_word(e.w, g);
        int id = static_cast<int>(elements_.size());
        index_.emplace(key_of(coords(ge), tol_.quantization), id);
        elements_.push_back(std::move(e));
        return id;
    };

    add(real_.identity(), {}, 0);
    std::size_t frontier_begin = 0;
    for (int r = 1; r <= radius_; ++r) {
        std::size_t frontier_end = elements_.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& l : letters_) {
                group_element p = real_.multiply(elements_[i].g, l.g);
                if (auto hit = find(p)) {
                    const auto& other = elements_[static_cast<std::size_t>(*hit)];
                    if (real_.distance(other.g, p) > tol_.quantization) ++audit_.inconsistent_merges;
                    continue;
                }
                word w = elements_[i].w;
                w.push_back(l.signed_index);
                add(p, std::move(w), r);
            }
        }
        frontier_begin = frontier_end;
    }

    const std::size_t n = elements_.size(), L = letters_.size();
    inverse_.assign(n, out_of_ball);
    left_.assign(n * L, out_of_ball);
    right_.assign(n * L, out_of_ball);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = elements_[i];
        if (auto hit = find(real_.inverse(e.g))) inverse_[i] = *hit;
        for (std::size_t s = 0; s < L; ++s) {
            if (auto hit = find(real_.multiply(letters_[s].g, e.g))) left_[i * L + s] = *hit;
            if (auto hit = find(real_.multiply(e.g, letters_[s].g))) right_[i * L + s] = *hit;
        }
    }
}

void cayley_ball::run_audit() {
    const double wide = tol_.quantization * tol_.separation_factor;
    std::unordered_multimap<key_type, int, key_hash> coarse;
    coarse.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) coarse.emplace(key_of(coords(elements_[i].g), wide), static_cast<int>(i));

    audit_.ambiguous_pairs = 0;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        // count neighbours other than i itself within the coarse radius
        auto c = coords(elements_[i].g);
        key_type base = key_of(c, wide);
        for (int d0 = -1; d0 <= 1; ++d0)
            for (int d1 = -1; d1 <= 1; ++d1)
                for (int d2 = (dims_ > 2 ? -1 : 0); d2 <= (dims_ > 2 ? 1 : 0); ++d2)
                    for (int d3 = (dims_ > 2 ? -1 : 0); d3 <= (dims_ > 2 ? 1 : 0); ++d3) {
                        key_type k{base[0] + d0, base[1] + d1, base[2] + d2, base[3] + d3};
                        auto range = coarse.equal_range(k);
                        for (auto it = range.first; it != range.second; ++it) {
                            auto j = static_cast<std::size_t>(it->second);
                            if (j <= i) continue;
                            if (real_.model == plane_model::hyperbolic) {
                                if (elements_[i].g.h.distance_to(elements_[j].g.h) < wide) ++audit_.ambiguous_pairs;
                            } else if (std::abs(elements_[i].g.t - elements_[j].g.t) < wide) {
                                ++audit_.ambiguous_pairs;
                            }
                        }
                    }
    }

    audit_.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < elements_.size(); ++i) {
        audit_.min_separation = std::min(audit_.min_separation, real_.displacement(elements_[i].g));
    }
    if (elements_.size() == 1) audit_.min_separation = 0.0;

    audit_.inverse_closed = true;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        int j = inverse_[i];
        if (j == out_of_ball || elements_[static_cast<std::size_t>(j)].length != elements_[i].length) audit_.inverse_closed = false;
    }
    audit_.clean = audit_.ambiguous_pairs == 0 && audit_.inconsistent_merges == 0 && audit_.inverse_closed &&
                   (elements_.size() == 1 || audit_.min_separation > wide);
    if (!audit_.clean) {
        std::ostringstream os;
        os << "Cayley ball collision audit failed at radius " << radius_ << " (ambiguous pairs " << audit_.ambiguous_pairs
           << ", inconsistent merges " << audit_.inconsistent_merges << ", min separation " << audit_.min_separation
           << "); use a smaller radius or a tighter quantization";
        throw numerical_error(os.str());
    }
}

std::vector<std::int64_t> abelianize_word(const word& w, int genus) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(2 * genus), 0);
    for (int x : w) {
        int k = std::abs(x) - 1;
        if (k >= 2 * genus) continue;
        std::size_t slot = static_cast<std::size_t>(k % 2 == 0 ? k / 2 : genus + k / 2);
        v[slot] += x > 0 ? 1 : -1;
    }
    return v;
}

std::vector<std::int64_t> abelianization(const cayley_ball& ball, int id) {
    return ball[static_cast<std::size_t>(id)].abel;
}

}  // namespace orbihall
