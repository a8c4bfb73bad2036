#include "orbihall/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "orbihall/cocycles.hpp"
#include "orbihall/conductance.hpp"
#include "orbihall/errors.hpp"
#include "orbihall/groups.hpp"
#include "orbihall/signatures.hpp"
#include "orbihall/twistedalg.hpp"

namespace orbihall::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
    return buf;
}

json rationals(const std::vector<rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

json complex_json(std::complex<double> z) { return json{{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}}; }

json intervals(const std::vector<interval>& gs) {
    json a = json::array();
    for (const auto& g : gs) a.push_back(json::array({g.first, g.second}));
    return a;
}

theta_value parse_theta(const std::string& text) {
    if (!text.empty() && std::isalpha(static_cast<unsigned char>(text.front()))) return theta_value::irrational(text);
    return theta_value::rational_value(rational::parse(text));
}

// "a:b:n" -> n evenly spaced points from a to b inclusive.
std::vector<double> parse_grid(const std::string& text) {
    auto first = text.find(':');
    auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw validation_error("grid must have the form a:b:n, got '" + text + "'");
    }
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        std::size_t used = 0;
        a = std::stod(text.substr(0, first), &used);
        b = std::stod(text.substr(first + 1, second - first - 1), &used);
        n = std::stol(text.substr(second + 1), &used);
    } catch (const std::logic_error&) {
        throw validation_error("grid must have the form a:b:n, got '" + text + "'");
    }
    if (n < 1) throw validation_error("grid needs at least one point");
    if (n > 1 && b < a) throw validation_error("grid end must not precede its start");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

realization_method parse_method(const std::string& s) {
    if (s == "automatic") return realization_method::automatic;
    if (s == "surface") return realization_method::surface;
    if (s == "triangle") return realization_method::triangle;
    if (s == "solver") return realization_method::solver;
    if (s == "euclidean") return realization_method::euclidean;
    throw validation_error("unknown realization method '" + s + "'");
}

projection_method parse_projection(const std::string& s) {
    if (s == "automatic") return projection_method::automatic;
    if (s == "dense") return projection_method::dense;
    if (s == "chebyshev") return projection_method::chebyshev;
    throw validation_error("unknown projection method '" + s + "'");
}

std::string join_ints(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

struct global_options {
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::optional<int> radius;
    bool print_config = false;
};

struct emitter {
    const global_options& opts;
    std::ostream& out;

    void emit(const std::string& name, const std::string& body) const {
        std::string ext = opts.format == "csv" ? ".csv" : ".json";
        if (opts.output.empty()) {
            out << body;
            return;
        }
        std::filesystem::create_directories(opts.output);
        auto path = std::filesystem::path(opts.output) / (name + ext);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw validation_error("cannot write " + path.string());
        f << body;
    }
    void emit_json(const std::string& name, const json& doc) const {
        if (opts.format != "json") throw validation_error(name + " supports only --format json");
        emit(name, doc.dump(2) + "\n");
    }
    bool csv() const { return opts.format == "csv"; }
};

json invariants_doc(const signature& sig, const std::string& theta_text) {
    json d;
    d["signature"] = sig.str();
    d["genus"] = sig.genus;
    d["cone_orders"] = sig.cone_orders;
    d["geometry"] = to_string(sig.geometry());
    d["orbifold_euler_characteristic"] = orbifold_euler_characteristic(sig).str();
    d["phi"] = phi(sig).str();
    d["inverse_order_sum"] = sig.inverse_order_sum().str();
    auto k = k_theory_ranks(sig);
    d["k_theory_ranks"] = {{"k0", k.k0}, {"k1", k.k1}};
    if (sig.geometry() == geometry_class::spherical) {
        d["smooth_cover"] = nullptr;
    } else {
        auto m = smallest_smooth_cover_order(sig);
        d["smooth_cover"] = {{"order", m}, {"genus", covering_genus(sig, m)}};
    }
    d["cone_residues"] = rationals(cone_residues(sig));
    auto theta = parse_theta(theta_text);
    auto lattice = trace_range(sig, theta);
    json t;
    t["theta"] = theta.str();
    t["generators"] = rationals(lattice.rational_generators);
    if (lattice.is_rational()) {
        t["irrational_generator"] = nullptr;
        t["minimal_positive"] = lattice.minimal_positive().str();
        t["kadison_bound"] = kadison_bound(sig, theta).str();
    } else {
        t["irrational_generator"] = *lattice.irrational_generator;
        t["minimal_positive"] = nullptr;
        t["kadison_bound"] = nullptr;
    }
    d["trace_lattice"] = t;
    return d;
}

json realization_doc(const realization& r) {
    json d;
    auto names = r.pres().generator_names();
    d["signature"] = r.sig.str();
    d["model"] = r.model == plane_model::euclidean ? "euclidean" : "hyperbolic";
    d["construction"] = r.construction;
    json gens = json::array();
    for (std::size_t i = 0; i < r.generators.size(); ++i) {
        json g;
        g["name"] = names[i];
        if (r.model == plane_model::euclidean) {
            g["translation"] = {r.generators[i].t.real(), r.generators[i].t.imag()};
        } else {
            const auto& e = r.generators[i].h.entries();
            g["matrix"] = {e[0], e[1], e[2], e[3]};
            g["kind"] = to_string(classify(r.generators[i].h));
        }
        gens.push_back(g);
    }
    d["generators"] = gens;
    d["relator_residual"] = r.relator_residual;
    d["relator_residuals"] = r.relator_residuals();
    d["cone_angle_errors"] = r.cone_angle_errors();
    d["cycle_area"] = r.cycle_area;
    d["fundamental_area"] = r.fundamental_area();
    d["area_matching_scale"] = r.area_matching_scale();
    d["solver_iterations"] = r.solver_iterations;
    d["solver_attempts"] = r.solver_attempts;
    d["tolerance"] = default_tolerances().relator;
    return d;
}

std::string realization_csv(const realization& r) {
    std::ostringstream s;
    auto names = r.pres().generator_names();
    s << "name,a,b,c,d,tx,ty\n";
    for (std::size_t i = 0; i < r.generators.size(); ++i) {
        const auto& e = r.generators[i].h.entries();
        s << names[i] << ',' << num(e[0]) << ',' << num(e[1]) << ',' << num(e[2]) << ',' << num(e[3]) << ','
          << num(r.generators[i].t.real()) << ',' << num(r.generators[i].t.imag()) << '\n';
    }
    return s.str();
}

json record_doc(const hall_record& r) {
    json d;
    d["energy"] = r.energy;
    d["theta_tilde"] = r.theta_tilde;
    d["theta"] = r.theta;
    d["radius"] = r.radius;
    d["inner_radius"] = r.inner_radius;
    d["method"] = r.method;
    d["in_gap"] = r.in_gap;
    d["trace"] = r.trace;
    d["trc"] = complex_json(r.trc);
    d["trK"] = complex_json(r.trK);
    d["kappa"] = r.kappa;
    d["sigma_c"] = r.sigma_c;
    d["sigma_c_imag"] = r.sigma_c_imag;
    d["sigma_k"] = r.sigma_k;
    d["sigma_k_imag"] = r.sigma_k_imag;
    d["quantum"] = r.quantum;
    d["label"] = r.label;
    d["nearest_k"] = r.nearest_k;
    d["deviation"] = r.deviation;
    d["comparison"] = r.comparison;
    d["comparison_relative"] = r.comparison_relative;
    d["idempotency_defect"] = r.idempotency_defect;
    d["hermiticity_defect"] = r.hermiticity_defect;
    d["leak"] = r.leak;
    if (r.trace_label) {
        d["trace_label"] = {{"point", r.trace_label->point.str()}, {"distance", r.trace_label->distance}};
    } else {
        d["trace_label"] = nullptr;
    }
    d["tolerance"] = default_tolerances().hermitian;
    return d;
}

constexpr const char* ball_columns = "CSV columns: id,word,length,x,y,abelianization (space separated A/B exponent sums)";
constexpr const char* spectrum_columns = "CSV columns: theta_tilde,theta,index,eigenvalue";
constexpr const char* plateau_columns =
    "CSV columns: E,trace,trc,trK,nearest_k,deviation (trc and trK are the real conductances "
    "-2i tr_c(p,p,p) and -2i kappa tr^K(p,p,p))";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted index theory on hyperbolic 2-orbifolds", "orbihall"};
    app.set_config("--config", "", "TOML file mirroring the command-line flags; flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    global_options g;
    app.add_option("--output", g.output, "Directory for output files (default: standard output)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", g.seed, "Seed for randomized constructions");
    app.add_option("--radius", g.radius, "Word-length radius of the Cayley ball")->check(CLI::Range(0, 64));
    app.add_flag("--print-config", g.print_config, "Print the resolved configuration and exit")->configurable(false);

    std::string sig_text = "2;";
    std::string theta_text = "1";
    std::string theta_prime_text;
    std::string method = "automatic";
    std::string convention = "set";
    std::string grid_text;
    std::string pairs_text;
    std::string x_word = "e";
    std::string y_word = "e";
    std::int64_t c1 = 0;
    double theta_tilde = 0.1;
    double energy = 0.0;
    double min_width = default_tolerances().gap_min_width;
    std::optional<int> inner_radius;
    int chebyshev_degree = 2000;
    int lanczos_steps = 400;
    unsigned threads = 0;
    bool stable = false;

    auto add_sig = [&](CLI::App* s) { s->add_option("--signature", sig_text, "Signature \"g;v1,v2,...\"")->required(); };

    auto* inv = app.add_subcommand("invariants", "Exact topological invariants of a signature");
    add_sig(inv);
    inv->add_option("--theta", theta_text, "Flux theta as p/q, or a symbol name for an irrational value");

    auto* cls = app.add_subcommand("classify-theta", "Decide whether two fluxes give isomorphic twisted algebras");
    add_sig(cls);
    cls->add_option("--theta", theta_text, "First flux p/q")->required();
    cls->add_option("--theta-prime", theta_prime_text, "Second flux p/q")->required();

    auto* sei = app.add_subcommand("seifert", "Orbifold Euler number and Chern character of Seifert data");
    sei->add_option("--c1", c1, "First Chern class of the underlying bundle");
    sei->add_option("--pairs", pairs_text, "Comma separated beta/nu pairs");

    auto* rea = app.add_subcommand("realize", "Matrix realization of a signature group");
    add_sig(rea);
    rea->add_option("--method", method, "Construction")->check(CLI::IsMember({"automatic", "surface", "triangle", "solver", "euclidean"}));

    auto* bal = app.add_subcommand("ball", std::string("Cayley ball enumeration. ") + ball_columns);
    add_sig(bal);
    bal->add_option("--convention", convention, "Generator convention")->check(CLI::IsMember({"set", "multiset"}));

    auto* spe = app.add_subcommand("spectrum", std::string("Harper spectrum on a ball. ") + spectrum_columns);
    add_sig(spe);
    spe->add_option("--theta-tilde", theta_tilde, "Flux density");

    auto* but = app.add_subcommand("butterfly", std::string("Flux sweep of Harper spectra. ") + spectrum_columns);
    add_sig(but);
    but->add_option("--grid", grid_text, "Flux-density grid a:b:n")->required();
    but->add_option("--threads", threads, "Worker threads (0: all cores)");

    auto* gap = app.add_subcommand("gaps", "Spectral gaps of the basepoint spectral measure. CSV columns: lo,hi");
    add_sig(gap);
    gap->add_option("--theta-tilde", theta_tilde, "Flux density");
    gap->add_option("--min-width", min_width, "Smallest reported gap width")->check(CLI::PositiveNumber);
    gap->add_flag("--stable", stable, "Keep only gaps that persist at radius - 1");

    auto* con = app.add_subcommand("conductance", "Hall conductance diagnostics at one energy");
    add_sig(con);
    con->add_option("--theta-tilde", theta_tilde, "Flux density");
    con->add_option("--energy", energy, "Fermi energy")->required();
    con->add_option("--inner-radius", inner_radius, "Radius of the pairing window (default radius - 2)");
    con->add_option("--method", method, "Projection method")->check(CLI::IsMember({"automatic", "dense", "chebyshev"}));
    con->add_option("--chebyshev-degree", chebyshev_degree, "Polynomial degree of the smoothed step");
    con->add_option("--lanczos-steps", lanczos_steps, "Lanczos steps for the spectral measure");

    auto* pla = app.add_subcommand("plateau-scan", std::string("Conductance over an energy grid. ") + plateau_columns);
    add_sig(pla);
    pla->add_option("--theta-tilde", theta_tilde, "Flux density");
    pla->add_option("--energies", grid_text, "Energy grid a:b:n")->required();
    pla->add_option("--inner-radius", inner_radius, "Radius of the pairing window (default radius - 2)");
    pla->add_option("--min-width", min_width, "Smallest gap width")->check(CLI::PositiveNumber);
    pla->add_option("--method", method, "Projection method")->check(CLI::IsMember({"automatic", "dense", "chebyshev"}));

    auto* coc = app.add_subcommand("cocycle", "Cocycle spot checks");
    coc->require_subcommand(1);
    auto* eva = coc->add_subcommand("eval", "Area cocycle, multiplier and psi sum for two words");
    add_sig(eva);
    eva->add_option("--x", x_word, "First word, e.g. A1B1a1");
    eva->add_option("--y", y_word, "Second word");
    eva->add_option("--theta-tilde", theta_tilde, "Flux density");

    for (auto* sub : app.get_subcommands({})) sub->configurable();
    eva->configurable();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return validation_failure;
    } catch (const CLI::ConversionError& e) {
        err << "error: " << e.what() << "\n";
        return validation_failure;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return usage_failure;
    }

    if (g.print_config) {
        out << app.config_to_str(false, false);
        return ok;
    }

    emitter em{g, out};
    try {
        if (inv->parsed()) {
            em.emit_json("invariants", invariants_doc(signature::parse(sig_text), theta_text));
        } else if (cls->parsed()) {
            auto sig = signature::parse(sig_text);
            auto t = rational::parse(theta_text);
            auto tp = rational::parse(theta_prime_text);
            json d;
            d["signature"] = sig.str();
            d["theta"] = unit_interval_rep(t).str();
            d["theta_prime"] = unit_interval_rep(tp).str();
            d["equivalent"] = classification_equivalent(sig, t, tp);
            d["cone_residues"] = rationals(cone_residues(sig));
            em.emit_json("classify-theta", d);
        } else if (sei->parsed()) {
            seifert_data data;
            data.c1 = c1;
            std::stringstream ss(pairs_text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                auto slash = item.find('/');
                std::int64_t beta = 0, nu = 0;
                try {
                    if (slash == std::string::npos) throw std::invalid_argument(item);
                    beta = std::stoll(item.substr(0, slash));
                    nu = std::stoll(item.substr(slash + 1));
                } catch (const std::logic_error&) {
                    throw validation_error("pair must be beta/nu, got '" + item + "'");
                }
                data.pairs.emplace_back(beta, nu);
            }
            data.validate();
            auto ch = chern_character(data);
            json d;
            d["c1"] = data.c1;
            json pairs = json::array();
            for (auto [b, n] : data.pairs) pairs.push_back({b, n});
            d["pairs"] = pairs;
            d["orbifold_euler_number"] = orbifold_euler_number(data).str();
            json phases = json::array();
            for (const auto& p : ch.phases) phases.push_back(rationals(p));
            d["chern_character"] = {{"rank", ch.rank}, {"c1", ch.c1}, {"phases", phases}};
            d["equivariant_euler_pairing"] = complex_json(equivariant_euler_pairing(data));
            d["tolerance"] = default_tolerances().hermitian;
            em.emit_json("seifert", d);
        } else if (rea->parsed()) {
            auto r = realize(signature::parse(sig_text), g.seed, parse_method(method));
            if (em.csv()) {
                em.emit("realize", realization_csv(r));
            } else {
                em.emit_json("realize", realization_doc(r));
            }
        } else if (bal->parsed()) {
            auto r = realize(signature::parse(sig_text), g.seed);
            cayley_ball b(r, g.radius.value_or(3),
                          convention == "multiset" ? generator_convention::multiset : generator_convention::set);
            auto pres = r.pres();
            if (em.csv()) {
                std::ostringstream s;
                s << "id,word,length,x,y,abelianization\n";
                for (std::size_t i = 0; i < b.size(); ++i) {
                    const auto& e = b[i];
                    s << i << ',' << pres.format(e.w) << ',' << e.length << ',' << num(e.point.real()) << ','
                      << num(e.point.imag()) << ',' << join_ints(e.abel) << '\n';
                }
                em.emit("ball", s.str());
            } else {
                const auto& a = b.audit();
                json d;
                d["signature"] = r.sig.str();
                d["radius"] = b.radius();
                d["convention"] = convention;
                d["size"] = b.size();
                d["sphere_sizes"] = b.sphere_sizes();
                d["audit"] = {{"clean", a.clean},
                              {"ambiguous_pairs", a.ambiguous_pairs},
                              {"inconsistent_merges", a.inconsistent_merges},
                              {"min_separation", a.min_separation},
                              {"inverse_closed", a.inverse_closed}};
                d["tolerance"] = default_tolerances().quantization;
                em.emit_json("ball", d);
            }
        } else if (spe->parsed() || but->parsed()) {
            auto r = realize(signature::parse(sig_text), g.seed);
            cayley_ball b(r, g.radius.value_or(3));
            std::vector<double> grid = spe->parsed() ? std::vector<double>{theta_tilde} : parse_grid(grid_text);
            butterfly_options bo;
            bo.threads = threads;
            auto rows = butterfly(b, grid, bo);
            std::string name = spe->parsed() ? "spectrum" : "butterfly";
            if (em.csv()) {
                std::ostringstream s;
                s << "theta_tilde,theta,index,eigenvalue\n";
                for (const auto& row : rows) {
                    for (std::size_t i = 0; i < row.eigenvalues.size(); ++i) {
                        s << num(row.theta_tilde) << ',' << num(row.theta) << ',' << i << ',' << num(row.eigenvalues[i]) << '\n';
                    }
                }
                em.emit(name, s.str());
            } else {
                json d;
                d["signature"] = r.sig.str();
                d["radius"] = b.radius();
                d["size"] = b.size();
                json rs = json::array();
                for (const auto& row : rows) {
                    rs.push_back({{"theta_tilde", row.theta_tilde},
                                  {"theta", row.theta},
                                  {"eigenvalues", row.eigenvalues},
                                  {"weights", row.weights},
                                  {"gaps", intervals(row.gaps)}});
                }
                d["rows"] = rs;
                d["tolerance"] = default_tolerances().hermitian;
                em.emit_json(name, d);
            }
        } else if (gap->parsed()) {
            auto r = realize(signature::parse(sig_text), g.seed);
            int R = g.radius.value_or(3);
            butterfly_options bo;
            bo.min_width = min_width;
            auto row = butterfly(cayley_ball(r, R), {theta_tilde}, bo).front();
            auto gs = row.gaps;
            if (stable) {
                if (R < 1) throw validation_error("--stable needs radius >= 1");
                auto prev = butterfly(cayley_ball(r, R - 1), {theta_tilde}, bo).front();
                gs = stable_gaps(gs, prev.gaps, min_width);
            }
            if (em.csv()) {
                std::ostringstream s;
                s << "lo,hi\n";
                for (const auto& iv : gs) s << num(iv.first) << ',' << num(iv.second) << '\n';
                em.emit("gaps", s.str());
            } else {
                json d;
                d["theta_tilde"] = theta_tilde;
                d["theta"] = row.theta;
                d["radius"] = R;
                d["stable"] = stable;
                d["gaps"] = intervals(gs);
                d["tolerance"] = min_width;
                em.emit_json("gaps", d);
            }
        } else if (con->parsed() || pla->parsed()) {
            auto r = realize(signature::parse(sig_text), g.seed);
            int R = g.radius.value_or(4);
            int inner = inner_radius.value_or(R - 2);
            if (inner < 0 || inner > R) throw validation_error("inner radius must lie in [0, radius]");
            cayley_ball b(r, R);
            system_options so;
            so.method = parse_projection(method);
            so.chebyshev_degree = chebyshev_degree;
            so.lanczos_steps = lanczos_steps;
            harper_system sys(b, theta_tilde, so);
            if (con->parsed()) {
                auto rec = hall_conductance(sys, energy, inner);
                json d = record_doc(rec);
                d["signature"] = r.sig.str();
                em.emit_json("conductance", d);
            } else {
                auto rows = plateau_scan(sys, parse_grid(grid_text), inner, min_width);
                if (em.csv()) {
                    std::ostringstream s;
                    s << "E,trace,trc,trK,nearest_k,deviation\n";
                    for (const auto& row : rows) {
                        const auto& rec = row.record;
                        s << num(row.energy) << ',' << num(rec.trace) << ',' << num(rec.sigma_c) << ',' << num(rec.sigma_k)
                          << ',' << rec.nearest_k << ',' << num(rec.deviation) << '\n';
                    }
                    em.emit("plateau-scan", s.str());
                } else {
                    json d;
                    d["signature"] = r.sig.str();
                    json rs = json::array();
                    for (const auto& row : rows) rs.push_back(record_doc(row.record));
                    d["rows"] = rs;
                    em.emit_json("plateau-scan", d);
                }
            }
        } else if (eva->parsed()) {
            auto r = realize(signature::parse(sig_text), g.seed);
            auto pres = r.pres();
            auto wx = pres.parse_word(x_word);
            auto wy = pres.parse_word(y_word);
            auto x = r.evaluate(wx);
            auto xy = r.multiply(x, r.evaluate(wy));
            double area = r.area_at_origin(x, xy);
            auto ax = abelianize_word(wx, r.sig.genus);
            auto ay = abelianize_word(wy, r.sig.genus);
            double psi = 0.0;
            int gg = r.sig.genus;
            for (int j = 0; j < gg; ++j) {
                auto J = static_cast<std::size_t>(j), K = static_cast<std::size_t>(j + gg);
                psi += static_cast<double>(ax[J] * ay[K] - ax[K] * ay[J]);
            }
            json d;
            d["signature"] = r.sig.str();
            d["x"] = pres.format(free_reduce(wx));
            d["y"] = pres.format(free_reduce(wy));
            d["theta_tilde"] = theta_tilde;
            d["area"] = area;
            d["sigma"] = complex_json(std::polar(1.0, theta_tilde * area));
            d["psi_sum"] = psi;
            d["x_orbit"] = complex_json(r.orbit_point(x));
            d["xy_orbit"] = complex_json(r.orbit_point(xy));
            d["tolerance"] = default_tolerances().relator;
            em.emit_json("cocycle", d);
        }
    } catch (const numerical_error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const std::overflow_error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return validation_failure;
    } catch (const std::logic_error& e) {
        err << "unsupported: " << e.what() << "\n";
        return validation_failure;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return numerical_failure;
    }
    return ok;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace orbihall::cli
