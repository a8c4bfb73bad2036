#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbihall/rational.hpp"

namespace orbihall {

enum class geometry_class { hyperbolic, euclidean, spherical };

std::string to_string(geometry_class g);

// Fuchsian signature (g; nu_1, ..., nu_n). Cone orders equal to 1 are dropped on construction.
struct signature {
    int genus = 0;
    std::vector<int> cone_orders;

    signature() = default;
    signature(int g, std::vector<int> orders);

    // Grammar: "g;v1,v2,..." with an empty order list allowed ("2;" or "2").
    static signature parse(std::string_view text);
    std::string str() const;

    int n() const { return static_cast<int>(cone_orders.size()); }
    rational inverse_order_sum() const;  // sum of 1/nu_j
    geometry_class geometry() const;

    friend bool operator==(const signature&, const signature&) = default;
};

rational orbifold_euler_characteristic(const signature& sig);
rational phi(const signature& sig);

struct k_theory_rank_pair {
    std::int64_t k0 = 0;
    std::int64_t k1 = 0;
};
k_theory_rank_pair k_theory_ranks(const signature& sig);

// Flux parameter in (0,1]: an exact rational or an opaque irrational symbol.
struct theta_value {
    std::optional<rational> exact;
    std::string symbol;

    static theta_value rational_value(const rational& r);
    static theta_value irrational(std::string name);
    bool is_rational() const { return exact.has_value(); }
    std::string str() const { return exact ? exact->str() : symbol; }
};

// Subgroup Z*theta + Z + sum_i Z/nu_i of the reals.
struct trace_lattice {
    std::vector<rational> rational_generators;
    std::optional<std::string> irrational_generator;

    bool is_rational() const { return !irrational_generator.has_value(); }
    // gcd of numerators over the common denominator; only for rational lattices.
    rational minimal_positive() const;
    bool contains(const rational& x) const;
    // Nearest lattice point to x and |x - point|.
    std::pair<rational, double> nearest(double x) const;
};

trace_lattice trace_range(const signature& sig, const theta_value& theta);
rational kadison_bound(const signature& sig, const theta_value& theta);
rational kadison_bound(const signature& sig, const rational& theta);

// Smallest m with every nu_j | m and m*phi an even non-negative integer.
std::int64_t smallest_smooth_cover_order(const signature& sig);
// g' = 1 + m*phi/2; throws validation_error when the result is not an integer.
std::int64_t covering_genus(const signature& sig, std::int64_t m);

// Residues sum_i beta_i/nu_i mod 1 over all 0 <= beta_i < nu_i, as sorted fractions in [0,1).
std::vector<rational> cone_residues(const signature& sig);
bool classification_equivalent(const signature& sig, const rational& theta, const rational& theta_prime);

struct seifert_data {
    std::int64_t c1 = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (beta_j, nu_j), 0 < beta_j < nu_j

    void validate() const;
};

rational orbifold_euler_number(const seifert_data& data);

struct chern_character_components {
    std::int64_t rank = 1;
    std::int64_t c1 = 0;
    std::vector<std::vector<rational>> phases;  // per pair: beta*k/nu mod 1 for k = 1..nu-1
};

chern_character_components chern_character(const seifert_data& data);
std::complex<double> equivariant_euler_pairing(const seifert_data& data);

}  // namespace orbihall
