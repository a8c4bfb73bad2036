#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "finite_quotient.hpp"
#include "orbihall/errors.hpp"
#include "orbihall/groups.hpp"

using namespace orbihall;
using std::numbers::pi;

namespace {

const realization& genus2() {
    static const realization r = surface_group_realization(2);
    return r;
}
const realization& t237() {
    static const realization r = triangle_rotation_group(2, 3, 7);
    return r;
}
const realization& s2233() {
    static const realization r = signature_group_realization(signature(0, {2, 2, 3, 3}), 1);
    return r;
}

std::vector<double> sorted_abs_traces(const cayley_ball& b) {
    std::vector<double> t;
    for (const auto& e : b.elements()) t.push_back(std::abs(e.g.h.trace()));
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

TEST_CASE("presentation layout") {
    presentation p(signature(2, {3, 5}));
    CHECK(p.generator_count() == 6);
    CHECK(p.generator_names() == std::vector<std::string>{"A1", "B1", "A2", "B2", "C1", "C2"});
    CHECK(p.long_relator() == word{1, 2, -1, -2, 3, 4, -3, -4, 5, 6});
    auto rel = p.relators();
    REQUIRE(rel.size() == 3);
    CHECK(rel[1] == word{5, 5, 5});
    CHECK(rel[2] == word{6, 6, 6, 6, 6});
    CHECK(p.format(word{1, -2, 5}) == "A1 B1^-1 C1");
    CHECK(p.format(word{}) == "e");
    CHECK(p.parse_word("A1 b1 C1^-1") == word{1, -2, -5});
    CHECK(p.parse_word("A1B1^-1C1") == word{1, -2, 5});
    CHECK(p.parse_word("e").empty());
    CHECK_THROWS_AS(p.parse_word("D1"), validation_error);
    CHECK_THROWS_AS(p.parse_word("A7"), validation_error);
}

TEST_CASE("free reduction") {
    CHECK(free_reduce(word{1, -1, 2}) == word{2});
    CHECK(free_reduce(word{1, 2, -2, -1}).empty());
    CHECK(inverse_word(word{1, 2, -3}) == word{3, -2, -1});
    CHECK_THROWS_AS(free_reduce(word{1, 0}), validation_error);
}

TEST_CASE("octagon surface group") {
    const auto& r = genus2();
    CHECK(r.relator_residual < 1e-9);
    for (const auto& g : r.generators) CHECK(classify(g.h) == isometry_kind::hyperbolic);
    CHECK(r.fundamental_area() == doctest::Approx(4 * pi).epsilon(1e-6));
    CHECK(std::abs(r.cycle_area + 4 * pi) < 1e-6);
    CHECK_THROWS_AS(surface_group_realization(1), validation_error);
}

TEST_CASE("triangle rotation group") {
    const auto& r = t237();
    CHECK(r.relator_residual < 1e-9);
    for (double e : r.cone_angle_errors()) CHECK(e < 1e-9);
    for (double e : r.relator_residuals()) CHECK(e < 1e-9);
    CHECK(r.evaluate(word{1, 1}).h.is_identity());
    CHECK(r.evaluate(word{2, 2, 2}).h.is_identity());
    CHECK(r.evaluate(word{3, 3, 3, 3, 3, 3, 3}).h.is_identity());
    CHECK(r.evaluate(word{1, 2, 3}).h.is_identity());
    CHECK(r.fundamental_area() == doctest::Approx(2 * pi / 42).epsilon(1e-9));
    CHECK_THROWS_AS(triangle_rotation_group(2, 3, 6), validation_error);
    CHECK_THROWS_AS(triangle_rotation_group(2, 3, 5), validation_error);
}

TEST_CASE("least-squares realization of (0;2,2,3,3)") {
    const auto& r = s2233();
    CHECK(r.relator_residual < 1e-9);
    for (double e : r.cone_angle_errors()) CHECK(e < 1e-9);
    std::vector<int> orders{2, 2, 3, 3};
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(classify(r.generators[j].h) == isometry_kind::elliptic);
        CHECK(elliptic_angle(r.generators[j].h) == doctest::Approx(2 * pi / orders[j]).epsilon(1e-9));
    }
    CHECK(r.fundamental_area() == doctest::Approx(2 * pi / 3).epsilon(1e-6));
    auto again = signature_group_realization(signature(0, {2, 2, 3, 3}), 1);
    for (std::size_t j = 0; j < 4; ++j) CHECK(again.generators[j].h.distance_to(r.generators[j].h) == 0.0);
    CHECK_THROWS_AS(signature_group_realization(signature(0, {2, 3, 6}), 1), validation_error);
}

TEST_CASE("solver realization of (0;2,3,7) matches the triangle group up to conjugacy") {
    auto solved = signature_group_realization(signature(0, {2, 3, 7}), 4);
    CHECK(solved.relator_residual < 1e-9);
    auto a = sorted_abs_traces(cayley_ball(solved, 3));
    auto b = sorted_abs_traces(cayley_ball(t237(), 3));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-8));
}

TEST_CASE("solver realization of a surface signature") {
    auto solved = signature_group_realization(signature(2, {}), 2);
    CHECK(solved.relator_residual < 1e-9);
    CHECK(solved.fundamental_area() == doctest::Approx(4 * pi).epsilon(1e-6));
}

TEST_CASE("automatic dispatch") {
    CHECK(realize(signature(2, {})).construction == genus2().construction);
    CHECK(realize(signature(1, {})).model == plane_model::euclidean);
    CHECK(realize(signature(0, {2, 3, 7})).construction == t237().construction);
    CHECK_THROWS_AS(realize(signature(0, {2, 3, 5})), validation_error);
    CHECK_THROWS_AS(realize(signature(0, {2, 3, 6})), validation_error);
    CHECK_THROWS_AS(realize(signature(0, {2, 2, 3, 3}), 0, realization_method::triangle), validation_error);
}

TEST_CASE("ball sizes") {
    CHECK(cayley_ball(genus2(), 1).size() == 9);
    CHECK(cayley_ball(euclidean_lattice_realization(), 2).size() == 13);
    CHECK(cayley_ball(euclidean_lattice_realization(), 5).size() == 61);
    CHECK(cayley_ball(genus2(), 0).size() == 1);
}

TEST_CASE("genus-2 sphere sizes match the one-relator growth count") {
    cayley_ball b(genus2(), 4);
    auto expect = oracle::surface_sphere_sizes(2, 4);
    auto got = b.sphere_sizes();
    REQUIRE(got.size() == expect.size());
    for (std::size_t r = 0; r < got.size(); ++r) CHECK(got[r] == expect[r]);
}

TEST_CASE("(2,3,7) ball sizes match the PSL(2,7) quotient count") {
    oracle::psl2 G{7};
    auto gens = oracle::triangle_images(G, 2, 3, 7);
    REQUIRE(gens.has_value());
    auto [x, y, z] = *gens;
    std::vector<oracle::psl2::mat> letters{x, y, G.inv(y), z, G.inv(z)};
    for (int R = 1; R <= 3; ++R) {
        CHECK(cayley_ball(t237(), R).size() == oracle::quotient_ball_size(G, letters, R));
    }
    CHECK(cayley_ball(t237(), 2).size() == 15);
}

TEST_CASE("ball structure") {
    for (const realization* r : {&genus2(), &t237(), &s2233()}) {
        cayley_ball b(*r, 3);
        CHECK(b.audit().clean);
        CHECK(b[0].length == 0);
        CHECK(b[0].g.h.is_identity());
        for (std::size_t x = 0; x < b.size(); ++x) {
            int X = static_cast<int>(x);
            CHECK(b.multiply(0, X) == X);
            CHECK(b.multiply(X, b.inverse(X)) == 0);
            CHECK(b[static_cast<std::size_t>(b.inverse(X))].length == b[x].length);
            // word length is BFS depth
            int best = b[x].length == 0 ? 0 : 1 << 20;
            for (std::size_t l = 0; l < b.letters().size(); ++l) {
                int n = b.right_neighbor(X, l);
                if (n != cayley_ball::out_of_ball) {
                    CHECK(std::abs(b[static_cast<std::size_t>(n)].length - b[x].length) <= 1);
                    best = std::min(best, b[static_cast<std::size_t>(n)].length + 1);
                }
            }
            CHECK(best == b[x].length);
            CHECK(b.find_word(b[x].w) == X);
            CHECK(static_cast<int>(b[x].w.size()) == b[x].length);
        }
        CHECK(b.count_within(1) == 1 + b.letters().size());
    }
}

TEST_CASE("associativity of ball multiplication") {
    cayley_ball b(t237(), 4);
    std::size_t inner = b.count_within(2);
    std::size_t checked = 0;
    for (std::size_t x = 0; x < inner; ++x) {
        for (std::size_t y = 0; y < inner; ++y) {
            for (std::size_t z = 0; z < inner; z += 3) {
                int xy = b.multiply(static_cast<int>(x), static_cast<int>(y));
                int yz = b.multiply(static_cast<int>(y), static_cast<int>(z));
                if (xy < 0 || yz < 0) continue;
                int l = b.multiply(xy, static_cast<int>(z)), r = b.multiply(static_cast<int>(x), yz);
                if (l < 0 || r < 0) continue;
                CHECK(l == r);
                ++checked;
            }
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("relator closure") {
    for (const realization* r : {&genus2(), &t237(), &s2233()}) {
        cayley_ball b(*r, 4);
        auto rels = r->pres().relators();
        std::size_t walks = 0;
        for (std::size_t x = 0; x < b.count_within(2); ++x) {
            for (const auto& rel : rels) {
                int cur = static_cast<int>(x);
                for (int letter : rel) {
                    auto id = b.find(r->multiply(b[static_cast<std::size_t>(cur)].g, r->letter(letter)));
                    if (!id) {
                        cur = -1;
                        break;
                    }
                    cur = *id;
                }
                if (cur < 0) continue;
                CHECK(cur == static_cast<int>(x));
                ++walks;
            }
        }
        CHECK(walks > 0);
    }
}

TEST_CASE("abelianization") {
    cayley_ball b(genus2(), 4);
    auto id = [&](const char* w) { return *b.find_word(genus2().pres().parse_word(w)); };
    CHECK(abelianization(b, id("A1")) == std::vector<std::int64_t>{1, 0, 0, 0});
    CHECK(abelianization(b, id("B2")) == std::vector<std::int64_t>{0, 0, 0, 1});
    CHECK(abelianization(b, id("A1B1a1b1")) == std::vector<std::int64_t>{0, 0, 0, 0});
    CHECK(abelianize_word(word{5, 5, 5}, 2) == std::vector<std::int64_t>{0, 0, 0, 0});
    // well-defined: additive along every in-ball product
    for (std::size_t x = 0; x < b.count_within(2); ++x) {
        for (std::size_t y = 0; y < b.count_within(2); ++y) {
            int xy = b.multiply(static_cast<int>(x), static_cast<int>(y));
            REQUIRE(xy >= 0);
            auto ax = b[x].abel, ay = b[y].abel, axy = b[static_cast<std::size_t>(xy)].abel;
            for (std::size_t j = 0; j < 4; ++j) CHECK(axy[j] == ax[j] + ay[j]);
        }
    }
    cayley_ball c(t237(), 3);
    for (const auto& e : c.elements()) CHECK(e.abel.empty());
}

TEST_CASE("multiset convention counts involutions twice") {
    cayley_ball set_ball(t237(), 2, generator_convention::set);
    cayley_ball multi(t237(), 2, generator_convention::multiset);
    CHECK(set_ball.size() == multi.size());
    double total = 0;
    for (double w : multi.letter_weights()) total += w;
    CHECK(total == doctest::Approx(6.0));
    CHECK(set_ball.letter_weights().size() == 5);
}

TEST_CASE("collision audit up to radius 5") {
    CHECK(cayley_ball(genus2(), 5).audit().clean);
    CHECK(cayley_ball(t237(), 6).audit().clean);
    CHECK(cayley_ball(s2233(), 5).audit().clean);
    CHECK(cayley_ball(genus2(), 5).audit().min_separation > 1e-3);
}
