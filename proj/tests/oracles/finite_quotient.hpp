#pragma once

// Finite quotients used to count distinct group elements independently of floating point.
// The (2,3,7) triangle group surjects onto PSL(2,7); words are evaluated there exactly.

#include <array>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

struct psl2 {
    int p;
    using mat = std::array<int, 4>;

    mat mul(const mat& x, const mat& y) const {
        return {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
                (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p};
    }
    mat normal(mat x) const {
        for (auto& e : x) e = ((e % p) + p) % p;
        mat neg{(p - x[0]) % p, (p - x[1]) % p, (p - x[2]) % p, (p - x[3]) % p};
        return std::min(x, neg);
    }
    mat inv(const mat& x) const { return normal({x[3], p - x[1], p - x[2], x[0]}); }
    int order(const mat& x) const {
        mat id = normal({1, 0, 0, 1});
        mat y = normal(x);
        for (int k = 1; k <= 2 * p * p; ++k) {
            if (y == id) return k;
            y = normal(mul(y, x));
        }
        return 0;
    }
    std::vector<mat> elements() const {
        std::set<mat> all;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                for (int c = 0; c < p; ++c)
                    for (int d = 0; d < p; ++d)
                        if (((a * d - b * c) % p + p) % p == 1) all.insert(normal({a, b, c, d}));
        return {all.begin(), all.end()};
    }
};

// Images of generators (x, y, z) with x^a = y^b = z^c = xyz = 1 in PSL(2, p).
inline std::optional<std::array<psl2::mat, 3>> triangle_images(const psl2& G, int a, int b, int c) {
    auto els = G.elements();
    for (const auto& x : els) {
        if (G.order(x) != a) continue;
        for (const auto& y : els) {
            if (G.order(y) != b) continue;
            auto z = G.inv(G.mul(x, y));
            if (G.order(z) == c) return std::array<psl2::mat, 3>{G.normal(x), G.normal(y), z};
        }
    }
    return std::nullopt;
}

// Number of distinct images of words of length <= radius over the letters (with inverses).
inline std::size_t quotient_ball_size(const psl2& G, const std::vector<psl2::mat>& letters, int radius) {
    std::set<psl2::mat> seen{G.normal({1, 0, 0, 1})};
    std::vector<psl2::mat> frontier(seen.begin(), seen.end());
    for (int r = 0; r < radius; ++r) {
        std::vector<psl2::mat> next;
        for (const auto& w : frontier) {
            for (const auto& l : letters) {
                auto v = G.normal(G.mul(w, l));
                if (seen.insert(v).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

// Genus-g surface group with the standard one-relator presentation: spheres of the free group
// until length 2g, where each half of a cyclic relator word has exactly two geodesic spellings.
inline std::vector<std::size_t> surface_sphere_sizes(int g, int max_radius) {
    std::vector<std::size_t> s{1};
    std::size_t gens = static_cast<std::size_t>(4 * g);
    for (int r = 1; r <= max_radius && r <= 2 * g; ++r) {
        std::size_t free = gens;
        for (int k = 1; k < r; ++k) free *= gens - 1;
        if (r == 2 * g) free -= static_cast<std::size_t>(8 * g) / 2;
        s.push_back(free);
    }
    return s;
}

}  // namespace oracle
