#include "orbihall/signatures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "orbihall/errors.hpp"

namespace orbihall {

std::string to_string(geometry_class g) {
    switch (g) {
        case geometry_class::hyperbolic: return "hyperbolic";
        case geometry_class::euclidean: return "euclidean";
        case geometry_class::spherical: return "spherical";
    }
    return "unknown";
}

signature::signature(int g, std::vector<int> orders) : genus(g) {
    if (g < 0) throw validation_error("genus must be non-negative");
    for (int v : orders) {
        if (v < 1) throw validation_error("cone orders must be positive integers");
        if (v > 1) cone_orders.push_back(v);
    }
    std::sort(cone_orders.begin(), cone_orders.end());
}

signature signature::parse(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    if (s.empty()) throw validation_error("empty signature");
    auto semi = s.find(';');
    std::string head = semi == std::string::npos ? s : s.substr(0, semi);
    std::string tail = semi == std::string::npos ? std::string() : s.substr(semi + 1);
    auto parse_int = [](const std::string& tok) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw validation_error("malformed signature token '" + tok + "'");
        }
        if (tok.size() > 9) throw validation_error("signature entry too large: " + tok);
        return std::stoi(tok);
    };
    int g = parse_int(head);
    std::vector<int> orders;
    if (!tail.empty() && tail != "-" && tail != "\u2014") {
        std::stringstream ss(tail);
        std::string tok;
        while (std::getline(ss, tok, ',')) orders.push_back(parse_int(tok));
        if (tail.back() == ',') throw validation_error("trailing comma in signature");
    }
    return signature(g, std::move(orders));
}

std::string signature::str() const {
    std::string out = std::to_string(genus) + ";";
    for (std::size_t i = 0; i < cone_orders.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(cone_orders[i]);
    }
    return out;
}

rational signature::inverse_order_sum() const {
    rational s(0);
    for (int v : cone_orders) s += rational(1, v);
    return s;
}

geometry_class signature::geometry() const {
    rational chi = orbifold_euler_characteristic(*this);
    if (chi < rational(0)) return geometry_class::hyperbolic;
    if (chi == rational(0)) return geometry_class::euclidean;
    return geometry_class::spherical;
}

rational orbifold_euler_characteristic(const signature& sig) {
    return rational(2 - 2 * static_cast<std::int64_t>(sig.genus)) - rational(sig.n()) + sig.inverse_order_sum();
}

rational phi(const signature& sig) { return -orbifold_euler_characteristic(sig); }

k_theory_rank_pair k_theory_ranks(const signature& sig) {
    std::int64_t s = 0;
    for (int v : sig.cone_orders) s += v;
    return {2 - sig.n() + s, 2 * static_cast<std::int64_t>(sig.genus)};
}

theta_value theta_value::rational_value(const rational& r) {
    theta_value t;
    t.exact = r;
    return t;
}

theta_value theta_value::irrational(std::string name) {
    if (name.empty()) throw validation_error("irrational flux symbol must be named");
    theta_value t;
    t.symbol = std::move(name);
    return t;
}

rational trace_lattice::minimal_positive() const {
    if (!is_rational()) throw unsupported_error("minimal positive element requires a rational lattice");
    std::int64_t L = 1;
    for (const auto& r : rational_generators) L = lcm64(L, r.den());
    std::int64_t g = 0;
    for (const auto& r : rational_generators) g = gcd64(g, r.num() * (L / r.den()));
    if (g == 0) throw validation_error("trivial lattice has no positive element");
    return rational(g, L);
}

bool trace_lattice::contains(const rational& x) const {
    rational q = x / minimal_positive();
    return q.is_integer();
}

std::pair<rational, double> trace_lattice::nearest(double x) const {
    rational b = minimal_positive();
    double k = std::round(x / b.to_double());
    rational p = b * rational(static_cast<std::int64_t>(k));
    return {p, std::abs(x - p.to_double())};
}

namespace {

void check_theta(const rational& t) {
    if (t <= rational(0) || t > rational(1)) throw validation_error("theta must lie in (0,1], got " + t.str());
}

}  // namespace

trace_lattice trace_range(const signature& sig, const theta_value& theta) {
    trace_lattice out;
    std::vector<rational> gens;
    if (theta.is_rational()) {
        check_theta(*theta.exact);
        gens.push_back(*theta.exact);
    } else {
        out.irrational_generator = theta.symbol;
    }
    gens.emplace_back(1);
    for (int v : sig.cone_orders) gens.emplace_back(1, v);
    for (const auto& gtor : gens) {
        if (std::find(out.rational_generators.begin(), out.rational_generators.end(), gtor) ==
            out.rational_generators.end()) {
            out.rational_generators.push_back(gtor);
        }
    }
    return out;
}

rational kadison_bound(const signature& sig, const theta_value& theta) {
    if (!theta.is_rational()) throw unsupported_error("Kadison bound requires rational theta");
    return trace_range(sig, theta).minimal_positive();
}

rational kadison_bound(const signature& sig, const rational& theta) {
    return kadison_bound(sig, theta_value::rational_value(theta));
}

std::int64_t smallest_smooth_cover_order(const signature& sig) {
    if (sig.geometry() == geometry_class::spherical) {
        throw validation_error("smooth covers are only computed for hyperbolic or euclidean signatures");
    }
    std::int64_t L = 1;
    for (int v : sig.cone_orders) L = lcm64(L, v);
    rational p = phi(sig);
    // m = k*L; need k*L*phi in 2Z. The search terminates by k = 2*den(L*phi).
    rational x = p * rational(L);
    for (std::int64_t k = 1; k <= 2 * x.den(); ++k) {
        rational mp = x * rational(k);
        if (mp.is_integer() && mp.num() % 2 == 0) return k * L;
    }
    throw numerical_error("no admissible cover order found");
}

std::int64_t covering_genus(const signature& sig, std::int64_t m) {
    if (m < 1) throw validation_error("cover order must be positive");
    for (int v : sig.cone_orders) {
        if (m % v != 0) throw validation_error("cover order " + std::to_string(m) + " not divisible by cone order " + std::to_string(v));
    }
    rational g = rational(1) + rational(m, 2) * phi(sig);
    if (!g.is_integer()) throw validation_error("cover order " + std::to_string(m) + " gives non-integral genus " + g.str());
    return g.num();
}

std::vector<rational> cone_residues(const signature& sig) {
    std::int64_t L = 1;
    for (int v : sig.cone_orders) L = lcm64(L, v);
    if (L > 50'000'000) throw unsupported_error("cone residue table too large");
    std::vector<char> reach(static_cast<std::size_t>(L), 0);
    reach[0] = 1;
    for (int v : sig.cone_orders) {
        std::vector<char> next(reach.size(), 0);
        std::int64_t step = L / v;
        for (std::int64_t r = 0; r < L; ++r) {
            if (!reach[static_cast<std::size_t>(r)]) continue;
            for (std::int64_t b = 0; b < v; ++b) next[static_cast<std::size_t>((r + b * step) % L)] = 1;
        }
        reach.swap(next);
    }
    std::vector<rational> out;
    for (std::int64_t r = 0; r < L; ++r) {
        if (reach[static_cast<std::size_t>(r)]) out.emplace_back(r, L);
    }
    return out;
}

bool classification_equivalent(const signature& sig, const rational& theta, const rational& theta_prime) {
    check_theta(theta);
    check_theta(theta_prime);
    auto residues = cone_residues(sig);
    auto in_set = [&](const rational& x) {
        rational f = frac(x);
        return std::binary_search(residues.begin(), residues.end(), f);
    };
    return in_set(theta_prime - theta) || in_set(theta_prime - (rational(1) - theta));
}

void seifert_data::validate() const {
    for (auto [b, v] : pairs) {
        if (v < 2) throw validation_error("Seifert order must be at least 2");
        if (b <= 0 || b >= v) throw validation_error("Seifert invariant requires 0 < beta < nu");
    }
}

rational orbifold_euler_number(const seifert_data& data) {
    data.validate();
    rational e(data.c1);
    for (auto [b, v] : data.pairs) e += rational(b, v);
    return e;
}

chern_character_components chern_character(const seifert_data& data) {
    data.validate();
    chern_character_components out;
    out.c1 = data.c1;
    for (auto [b, v] : data.pairs) {
        std::vector<rational> ph;
        for (std::int64_t k = 1; k < v; ++k) ph.push_back(frac(rational(b * k, v)));
        out.phases.push_back(std::move(ph));
    }
    return out;
}

std::complex<double> equivariant_euler_pairing(const seifert_data& data) {
    auto ch = chern_character(data);
    std::complex<double> s(static_cast<double>(ch.c1), 0.0);
    for (const auto& ph : ch.phases) {
        for (const auto& r : ph) s += std::polar(1.0, 2.0 * std::numbers::pi * r.to_double());
    }
    return s;
}

}  // namespace orbihall
