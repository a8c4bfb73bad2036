#pragma once

// Brute-force enumeration of a theta + b + sum c_i / nu_i modulo 1 over small coefficients,
// for rational theta = tp / tq.

#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// Smallest positive element of the lattice as a reduced (numerator, denominator) pair. The lattice
// contains Z, so this is the smallest positive residue, or 1 when every combination is an integer.
inline std::pair<std::int64_t, std::int64_t> min_positive_mod_one(std::int64_t tp, std::int64_t tq,
                                                                   const std::vector<int>& orders, int theta_range = 64) {
    std::int64_t den = tq;
    for (int v : orders) den = std::lcm(den, static_cast<std::int64_t>(v));
    std::set<std::int64_t> residues;  // numerators over den, in [0, den)
    std::vector<std::int64_t> partial{0};
    for (int v : orders) {
        std::vector<std::int64_t> next;
        for (auto s : partial) {
            for (int c = 0; c < v; ++c) next.push_back(s + c * (den / v));
        }
        partial = std::move(next);
    }
    for (auto s : partial) {
        for (int a = -theta_range; a <= theta_range; ++a) {
            std::int64_t x = s + a * tp * (den / tq);
            residues.insert(((x % den) + den) % den);
        }
    }
    residues.erase(0);
    if (residues.empty()) return {1, 1};
    std::int64_t n = *residues.begin();
    std::int64_t g = std::gcd(n, den);
    return {n / g, den / g};
}

}  // namespace oracle
