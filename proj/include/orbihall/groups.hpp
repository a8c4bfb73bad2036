#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbihall/hypgeom.hpp"
#include "orbihall/signatures.hpp"
#include "orbihall/tolerances.hpp"

namespace orbihall {

enum class plane_model { hyperbolic, euclidean };

// Signed generator index: +k is generator k-1, -k its inverse (k >= 1).
using word = std::vector<int>;

word free_reduce(const word& w);
word inverse_word(const word& w);

struct presentation {
    int genus = 0;
    std::vector<int> cone_orders;

    explicit presentation(const signature& sig) : genus(sig.genus), cone_orders(sig.cone_orders) {}

    int generator_count() const { return 2 * genus + static_cast<int>(cone_orders.size()); }
    // A1, B1, ..., Ag, Bg, C1, ..., Cn
    std::vector<std::string> generator_names() const;
    // prod [A_i, B_i] * C_1 ... C_n, then C_j^{nu_j}
    std::vector<word> relators() const;
    // Letters of the long relator in order.
    word long_relator() const;
    std::string format(const word& w) const;
    word parse_word(const std::string& text) const;
};

// Group element in either model: an isometry of the disk or a translation of the plane.
struct group_element {
    isometry h;
    cplx t{0.0, 0.0};
};

class realization {
public:
    plane_model model = plane_model::hyperbolic;
    signature sig;
    std::vector<group_element> generators;
    std::string construction;
    double relator_residual = 0.0;   // max over relators of distance to identity
    double cycle_area = 0.0;         // area cocycle evaluated on the fundamental 2-cycle
    double cycle_symplectic = 0.0;   // abelianization symplectic form on the same cycle
    int solver_iterations = 0;
    int solver_attempts = 0;

    presentation pres() const { return presentation(sig); }

    group_element identity() const { return {}; }
    group_element multiply(const group_element& x, const group_element& y) const;
    group_element inverse(const group_element& x) const;
    group_element letter(int signed_index) const;
    group_element evaluate(const word& w) const;

    // Area of (o, x.o, y.o), hyperbolic or flat.
    double area_at_origin(const group_element& x, const group_element& y) const;
    cplx orbit_point(const group_element& x) const;
    double displacement(const group_element& x) const;
    double distance(const group_element& x, const group_element& y) const;

    // 2*pi*phi in the hyperbolic case, the cell area in the euclidean case.
    double fundamental_area() const { return std::abs(cycle_area); }
    // Scale that matches the symplectic abelianization cocycle to the area class.
    double area_matching_scale() const;

    std::vector<double> relator_residuals() const;
    std::vector<double> cone_angle_errors() const;
    void validate(const tolerances& tol = default_tolerances()) const;
};

// Closed-form regular 4g-gon side pairings.
realization surface_group_realization(int g);
// Rotations about the vertices of the (pi/p, pi/q, pi/r) triangle, conjugated so o is a free point.
realization triangle_rotation_group(int p, int q, int r);
// Damped least-squares solve of the long relator.
realization signature_group_realization(const signature& sig, std::uint64_t seed,
                                        const tolerances& tol = default_tolerances());
// Z^2 acting by unit translations of the plane; signature (1; -).
realization euclidean_lattice_realization();

enum class realization_method { automatic, surface, triangle, solver, euclidean };
realization realize(const signature& sig, std::uint64_t seed = 0,
                    realization_method method = realization_method::automatic,
                    const tolerances& tol = default_tolerances());

// Pairing of a 2-cochain with the fundamental cycle of the presentation.
// The cochain receives group elements and their abelianization vectors.
struct tracked_element {
    group_element g;
    std::vector<std::int64_t> abel;
};
using element_cochain = std::function<double(const tracked_element&, const tracked_element&)>;
double evaluate_on_fundamental_cycle(const realization& real, const element_cochain& c);

enum class generator_convention { set, multiset };

struct generator_letter {
    int signed_index = 0;  // +k / -k
    group_element g;
};

struct ball_element {
    group_element g;
    word w;
    int length = 0;
    polar_point polar;
    cplx point{0.0, 0.0};
    std::vector<std::int64_t> abel;  // length 2g
};

struct collision_report {
    bool clean = true;
    std::size_t ambiguous_pairs = 0;      // distinct ids closer than the separation threshold
    std::size_t inconsistent_merges = 0;  // merges whose orbit points disagree
    double min_separation = 0.0;          // min over nontrivial ball elements of d(o, g o) or |t|
    bool inverse_closed = true;
};

class cayley_ball {
public:
    static constexpr int out_of_ball = -1;

    cayley_ball(const realization& real, int radius, generator_convention conv = generator_convention::set,
                const tolerances& tol = default_tolerances());

    const realization& real() const { return real_; }
    int radius() const { return radius_; }
    std::size_t size() const { return elements_.size(); }
    const ball_element& operator[](std::size_t id) const { return elements_[id]; }
    const std::vector<ball_element>& elements() const { return elements_; }

    // Distinct generating letters used for the BFS.
    const std::vector<generator_letter>& letters() const { return letters_; }
    // Harper weights per letter (1 each under set semantics; 2 for merged involutions under multiset).
    const std::vector<double>& letter_weights() const { return letter_weights_; }
    generator_convention convention() const { return convention_; }

    std::optional<int> find(const group_element& g) const;
    int multiply(int x, int y) const;  // out_of_ball when the product is not enumerated
    int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }
    int left_neighbor(int x, std::size_t letter) const { return left_[static_cast<std::size_t>(x) * letters_.size() + letter]; }
    int right_neighbor(int x, std::size_t letter) const { return right_[static_cast<std::size_t>(x) * letters_.size() + letter]; }

    // Ids with word length <= r (a prefix of the id range, since ids follow BFS order).
    std::size_t count_within(int r) const;
    std::vector<std::size_t> sphere_sizes() const;

    const collision_report& audit() const { return audit_; }
    std::optional<int> find_word(const word& w) const;

    // Signed area of (o, x.o, y.o) for ball ids.
    double area(int x, int y) const;

private:
    using key_type = std::array<std::int64_t, 4>;
    struct key_hash {
        std::size_t operator()(const key_type& k) const;
    };

    void build();
    void run_audit();
    std::array<double, 4> coords(const group_element& g) const;
    std::optional<int> lookup(const std::array<double, 4>& c, double cell,
                              const std::unordered_multimap<key_type, int, key_hash>& index, int reach) const;
    key_type key_of(const std::array<double, 4>& c, double cell) const;

    realization real_;
    int radius_;
    generator_convention convention_;
    tolerances tol_;
    int dims_;
    std::vector<generator_letter> letters_;
    std::vector<double> letter_weights_;
    std::vector<ball_element> elements_;
    std::vector<int> inverse_;
    std::vector<int> left_;
    std::vector<int> right_;
    std::unordered_multimap<key_type, int, key_hash> index_;
    collision_report audit_;
};

// Signed generator counts of A_i (slot i) and B_i (slot g+i).
std::vector<std::int64_t> abelianization(const cayley_ball& ball, int id);
std::vector<std::int64_t> abelianize_word(const word& w, int genus);

}  // namespace orbihall
