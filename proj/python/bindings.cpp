#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "orbihall/conductance.hpp"
#include "orbihall/errors.hpp"
#include "orbihall/signatures.hpp"

namespace py = pybind11;
using namespace orbihall;

namespace {

py::object to_fraction(const rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.num(), r.den());
}

rational from_python(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return rational::parse(h.cast<std::string>());
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator") && !py::isinstance<py::float_>(h)) {
        return rational(h.attr("numerator").cast<std::int64_t>(), h.attr("denominator").cast<std::int64_t>());
    }
    throw validation_error("expected an int, a fractions.Fraction or a 'p/q' string");
}

signature as_signature(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return signature::parse(h.cast<std::string>());
    return h.cast<signature>();
}

realization_method realization_method_from(const std::string& s) {
    if (s == "automatic") return realization_method::automatic;
    if (s == "surface") return realization_method::surface;
    if (s == "triangle") return realization_method::triangle;
    if (s == "solver") return realization_method::solver;
    if (s == "euclidean") return realization_method::euclidean;
    throw validation_error("unknown realization method '" + s + "'");
}

projection_method projection_method_from(const std::string& s) {
    if (s == "automatic") return projection_method::automatic;
    if (s == "dense") return projection_method::dense;
    if (s == "chebyshev") return projection_method::chebyshev;
    throw validation_error("unknown projection method '" + s + "'");
}

py::list interval_list(const std::vector<interval>& gs) {
    py::list out;
    for (const auto& [lo, hi] : gs) out.append(py::make_tuple(lo, hi));
    return out;
}

py::dict record_dict(const hall_record& r) {
    py::dict d;
    d["energy"] = r.energy;
    d["theta_tilde"] = r.theta_tilde;
    d["theta"] = r.theta;
    d["radius"] = r.radius;
    d["inner_radius"] = r.inner_radius;
    d["method"] = r.method;
    d["trace"] = r.trace;
    d["trc"] = r.trc;
    d["trK"] = r.trK;
    d["kappa"] = r.kappa;
    d["sigma_c"] = std::complex<double>(r.sigma_c, r.sigma_c_imag);
    d["sigma_k"] = std::complex<double>(r.sigma_k, r.sigma_k_imag);
    d["quantum"] = r.quantum;
    d["label"] = r.label;
    d["nearest_k"] = r.nearest_k;
    d["deviation"] = r.deviation;
    d["comparison_relative"] = r.comparison_relative;
    d["idempotency_defect"] = r.idempotency_defect;
    d["hermiticity_defect"] = r.hermiticity_defect;
    d["leak"] = r.leak;
    d["in_gap"] = r.in_gap;
    if (r.trace_label) {
        d["trace_label"] = to_fraction(r.trace_label->point);
    } else {
        d["trace_label"] = py::none();
    }
    return d;
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

}  // namespace

PYBIND11_MODULE(_orbihall, m) {
    m.doc() = "Magnetic Harper operators on Fuchsian groups and their Hall conductance";

    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<signature>(m, "Signature")
        .def(py::init(&signature::parse), py::arg("text"))
        .def(py::init<int, std::vector<int>>(), py::arg("genus"), py::arg("cone_orders") = std::vector<int>{})
        .def_readonly("genus", &signature::genus)
        .def_readonly("cone_orders", &signature::cone_orders)
        .def_property_readonly("geometry", [](const signature& s) { return to_string(s.geometry()); })
        .def("__str__", &signature::str)
        .def("__repr__", [](const signature& s) { return "Signature('" + s.str() + "')"; })
        .def("__eq__", [](const signature& a, const signature& b) { return a == b; })
        .def("__hash__", [](const signature& s) { return py::hash(py::str(s.str())); });
    py::implicitly_convertible<py::str, signature>();

    m.def("phi", [](const signature& s) { return to_fraction(phi(s)); }, py::arg("signature"));
    m.def("orbifold_euler_characteristic", [](const signature& s) { return to_fraction(orbifold_euler_characteristic(s)); },
          py::arg("signature"));
    m.def("k_theory_ranks", [](const signature& s) {
        auto k = k_theory_ranks(s);
        return py::make_tuple(k.k0, k.k1);
    }, py::arg("signature"));
    m.def("smallest_smooth_cover_order", &smallest_smooth_cover_order, py::arg("signature"));
    m.def("covering_genus", &covering_genus, py::arg("signature"), py::arg("order"));
    m.def("minimal_trace", [](const signature& s, const py::object& theta) {
        return to_fraction(trace_range(s, theta_value::rational_value(from_python(theta))).minimal_positive());
    }, py::arg("signature"), py::arg("theta"));
    m.def("classification_equivalent", [](const signature& s, const py::object& a, const py::object& b) {
        return classification_equivalent(s, from_python(a), from_python(b));
    }, py::arg("signature"), py::arg("theta"), py::arg("theta_prime"));
    m.def("cone_residues", [](const signature& s) {
        py::list out;
        for (const auto& r : cone_residues(s)) out.append(to_fraction(r));
        return out;
    }, py::arg("signature"));

    py::class_<realization>(m, "Realization")
        .def_readonly("signature", &realization::sig)
        .def_readonly("construction", &realization::construction)
        .def_readonly("relator_residual", &realization::relator_residual)
        .def_property_readonly("fundamental_area", &realization::fundamental_area)
        .def_property_readonly("area_matching_scale", &realization::area_matching_scale)
        .def("relator_residuals", &realization::relator_residuals)
        .def("cone_angle_errors", &realization::cone_angle_errors);
    m.def("realize", [](const py::object& sig, std::uint64_t seed, const std::string& method) {
        return realize(as_signature(sig), seed, realization_method_from(method));
    }, py::arg("signature"), py::arg("seed") = 0, py::arg("method") = "automatic");
    m.def("euclidean_lattice", &euclidean_lattice_realization);

    py::class_<cayley_ball>(m, "CayleyBall")
        .def(py::init([](const realization& r, int radius, const std::string& convention) {
                 if (convention != "set" && convention != "multiset") throw validation_error("convention must be set or multiset");
                 return cayley_ball(r, radius, convention == "set" ? generator_convention::set : generator_convention::multiset);
             }),
             py::arg("realization"), py::arg("radius"), py::arg("convention") = "set")
        .def("__len__", &cayley_ball::size)
        .def_property_readonly("radius", &cayley_ball::radius)
        .def_property_readonly("realization", &cayley_ball::real)
        .def("sphere_sizes", &cayley_ball::sphere_sizes)
        .def("count_within", &cayley_ball::count_within, py::arg("radius"))
        .def("words", [](const cayley_ball& b) {
            std::vector<std::string> out;
            auto pres = b.real().pres();
            for (const auto& e : b.elements()) out.push_back(pres.format(e.w));
            return out;
        })
        .def("lengths", [](const cayley_ball& b) {
            std::vector<int> out;
            for (const auto& e : b.elements()) out.push_back(e.length);
            return to_array(out);
        })
        .def("points", [](const cayley_ball& b) {
            std::vector<std::complex<double>> out;
            for (const auto& e : b.elements()) out.push_back(e.point);
            return to_array(out);
        })
        .def("abelianization", [](const cayley_ball& b, int id) { return b[static_cast<std::size_t>(id)].abel; }, py::arg("id"))
        .def("find_word", [](const cayley_ball& b, const std::string& w) { return b.find_word(b.real().pres().parse_word(w)); },
             py::arg("word"))
        .def("multiply", &cayley_ball::multiply, py::arg("x"), py::arg("y"))
        .def("inverse", &cayley_ball::inverse, py::arg("x"))
        .def_property_readonly("audit_clean", [](const cayley_ball& b) { return b.audit().clean; })
        .def_property_readonly("min_separation", [](const cayley_ball& b) { return b.audit().min_separation; });

    m.def("flux_theta", py::overload_cast<const realization&, double>(&flux_theta), py::arg("realization"),
          py::arg("theta_tilde"));
    m.def("area_cocycle", &area_cocycle, py::arg("ball"), py::arg("x"), py::arg("y"));
    m.def("multiplier", [](const cayley_ball& b, double t, int x, int y) { return magnetic_multiplier(b, t)(x, y); },
          py::arg("ball"), py::arg("theta_tilde"), py::arg("x"), py::arg("y"));
    m.def("psi_sum", &psi_sum, py::arg("ball"), py::arg("x"), py::arg("y"));
    m.def("solve_coboundary_defect", [](const cayley_ball& b, std::optional<double> scale) {
        auto r = scale ? solve_coboundary_defect(b, *scale) : solve_coboundary_defect(b);
        py::dict d;
        d["residual"] = r.residual;
        d["max_residual"] = r.max_residual;
        d["equations"] = r.equations;
        d["scale"] = r.scale;
        d["iterations"] = r.iterations;
        d["k"] = to_array(r.k);
        return d;
    }, py::arg("ball"), py::arg("scale") = py::none());

    m.def("harper_spectrum", [](const cayley_ball& b, double t) { return to_array(spectrum(matrix_on_ball(harper(b, t).h))); },
          py::arg("ball"), py::arg("theta_tilde"));
    m.def("gaps", [](std::vector<double> ev, double min_width) {
        std::sort(ev.begin(), ev.end());
        return interval_list(gaps(ev, min_width));
    }, py::arg("eigenvalues"), py::arg("min_width") = default_tolerances().gap_min_width);
    m.def("butterfly", [](const cayley_ball& b, const std::vector<double>& grid, unsigned threads, double min_width) {
        butterfly_options o;
        o.threads = threads;
        o.min_width = min_width;
        std::vector<spectrum_row> rows;
        {
            py::gil_scoped_release release;
            rows = butterfly(b, grid, o);
        }
        py::list out;
        for (const auto& r : rows) {
            py::dict d;
            d["theta_tilde"] = r.theta_tilde;
            d["theta"] = r.theta;
            d["eigenvalues"] = to_array(r.eigenvalues);
            d["weights"] = to_array(r.weights);
            d["gaps"] = interval_list(r.gaps);
            out.append(d);
        }
        return out;
    }, py::arg("ball"), py::arg("theta_tilde_grid"), py::arg("threads") = 0,
          py::arg("min_width") = default_tolerances().gap_min_width);

    py::class_<harper_system>(m, "HarperSystem")
        .def(py::init([](const cayley_ball& b, double t, const std::string& method, int degree, int steps) {
                 system_options o;
                 o.method = projection_method_from(method);
                 o.chebyshev_degree = degree;
                 o.lanczos_steps = steps;
                 return harper_system(b, t, o);
             }),
             py::arg("ball"), py::arg("theta_tilde"), py::arg("method") = "automatic",
             py::arg("chebyshev_degree") = system_options{}.chebyshev_degree,
             py::arg("lanczos_steps") = system_options{}.lanczos_steps, py::keep_alive<1, 2>())
        .def_property_readonly("theta", &harper_system::theta)
        .def_property_readonly("method", [](const harper_system& s) { return to_string(s.method()); })
        .def("bulk_spectrum", [](const harper_system& s) { return to_array(s.bulk_spectrum()); })
        .def("bulk_gaps", [](const harper_system& s, double w) { return interval_list(s.bulk_gaps(w)); },
             py::arg("min_width") = default_tolerances().gap_min_width)
        .def("hall_conductance", [](const harper_system& s, double E, std::optional<int> inner) {
            return record_dict(hall_conductance(s, E, inner.value_or(s.ball().radius() - 2)));
        }, py::arg("energy"), py::arg("inner_radius") = py::none())
        .def("plateau_scan", [](const harper_system& s, const std::vector<double>& es, std::optional<int> inner, double w) {
            py::list out;
            for (const auto& row : plateau_scan(s, es, inner.value_or(s.ball().radius() - 2), w)) {
                auto d = record_dict(row.record);
                d["in_gap"] = row.in_gap;
                out.append(d);
            }
            return out;
        }, py::arg("energies"), py::arg("inner_radius") = py::none(),
             py::arg("min_width") = default_tolerances().gap_min_width);
}
