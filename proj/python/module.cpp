#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "terraced/report.hpp"
#include "terraced/verify.hpp"

namespace py = pybind11;
using namespace terraced;

namespace {

py::array_t<complex> to_numpy(const DenseMatrix& m)
{
    py::array_t<complex> out({m.rows(), m.cols()});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
    return out;
}

DenseMatrix from_numpy(py::array_t<complex, py::array::c_style | py::array::forcecast> a)
{
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
    DenseMatrix m(a.shape(0), a.shape(1));
    auto v = a.unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = v(i, j);
    return m;
}

// reports travel as JSON text; the python side parses them
std::string js(const Json& j) { return dump_json(j); }

} // namespace

PYBIND11_MODULE(_terraced, m)
{
    m.attr("SCHEMA") = kSchema;

    py::class_<SequenceSpec>(m, "Sequence")
        .def_static("finite", &SequenceSpec::finite, py::arg("values"))
        .def_static("power", &SequenceSpec::power, py::arg("s"), py::arg("scale") = 1.0, py::arg("alternating") = false)
        .def_static("log_power", &SequenceSpec::log_power, py::arg("s"), py::arg("t"), py::arg("scale") = 1.0,
                    py::arg("alternating") = false)
        .def_static("cesaro", &SequenceSpec::cesaro)
        .def_static(
            "moments",
            [](const std::vector<std::pair<complex, double>>& atoms) {
                std::vector<Atom> a;
                for (const auto& [w, t] : atoms) a.push_back({w, t});
                return SequenceSpec::moments(std::move(a));
            },
            py::arg("atoms"))
        .def_static(
            "custom",
            [](std::string name, std::function<complex(std::size_t)> fn) {
                // calls back into python, so hold the GIL on every evaluation
                auto guarded = [fn = std::move(fn)](std::size_t k) {
                    py::gil_scoped_acquire gil;
                    return fn(k);
                };
                return SequenceSpec::custom(std::move(name), guarded);
            },
            py::arg("name"), py::arg("fn"))
        .def_static("load", [](const std::string& path) { return load_sequence(path); }, py::arg("path"))
        .def("save", [](const SequenceSpec& s, const std::string& path, std::optional<std::size_t> n) {
            save_sequence(s, path, n);
        }, py::arg("path"), py::arg("length") = py::none())
        .def("__call__", &SequenceSpec::eval, py::arg("k"))
        .def("describe", &SequenceSpec::describe)
        .def_property_readonly("support_end", &SequenceSpec::support_end)
        .def_property_readonly("kind", [](const SequenceSpec& s) { return std::string(to_string(s.kind())); })
        .def("__repr__", [](const SequenceSpec& s) { return "<Sequence " + s.describe() + ">"; });

    m.def("truncate_rhaly", [](const SequenceSpec& s, std::size_t N) { return to_numpy(truncate_rhaly(s, N).matrix); },
          py::arg("spec"), py::arg("N"));
    m.def("truncate_factorable",
          [](const SequenceSpec& a, const SequenceSpec& b, std::size_t N) { return to_numpy(truncate_factorable(a, b, N)); },
          py::arg("alpha"), py::arg("beta"), py::arg("N"));
    m.def("gram_lshape", [](const SequenceSpec& s, std::size_t N) { return to_numpy(gram_lshape(s, N)); },
          py::arg("spec"), py::arg("N"));
    m.def("build_Tc", [](const SequenceSpec& c, std::size_t N) { return to_numpy(build_Tc(c, N)); }, py::arg("c"),
          py::arg("N"));
    m.def("apply_rhaly", [](const SequenceSpec& s, const std::vector<complex>& f) { return apply_rhaly(s, f); },
          py::arg("spec"), py::arg("f"));
    m.def("singular_values", [](py::array_t<complex, py::array::c_style | py::array::forcecast> a) {
        return singular_values(from_numpy(a));
    }, py::arg("matrix"));

    m.def("mu", [](const SequenceSpec& s, std::size_t a, std::size_t b) { return mu(s, {a, b}); });
    m.def("L_value", [](const SequenceSpec& s, std::size_t a, std::size_t b) { return L_value(s, {a, b}); });
    m.def("K_value", [](const SequenceSpec& s, std::size_t a, std::size_t b) { return K_value(s, {a, b}); });
    m.def("J_value", [](const SequenceSpec& s, std::size_t a, std::size_t b) { return J_value(s, {a, b}); });
    m.def("l_form", [](const SequenceSpec& s, std::size_t a, std::size_t b, const std::vector<complex>& f) {
        return l_form(s, {a, b}, f);
    });
    m.def("eigen_check", &eigen_check, py::arg("c"), py::arg("k"), py::arg("N"));
    m.def("zeta_bracket", [](double p) {
        const auto z = zeta_bracket(p);
        return std::make_pair(z.lo, z.hi);
    });

    // Report builders drop the GIL; custom sequences take it back per evaluation,
    // which keeps worker threads from deadlocking against the caller.
    const auto nogil = py::call_guard<py::gil_scoped_release>();

    m.def("_interval_report", [](const SequenceSpec& s, std::size_t a, std::size_t b) {
        return js(to_json(interval_report(s, {a, b})));
    }, nogil);
    m.def("_sigma_profile", [](const SequenceSpec& s, std::size_t k_max) { return js(to_json(sigma_profile(s, k_max))); }, nogil);
    m.def("_J_n", [](const SequenceSpec& s, std::size_t n) { return js(to_json(J_n_bracket(s, n))); }, nogil);
    m.def("_bennett_K2", [](const SequenceSpec& a, const SequenceSpec& b) { return js(to_json(bennett_K2(a, b))); }, nogil);
    m.def("_criteria_report", [](const SequenceSpec& s, const std::vector<double>& q, std::size_t k_max) {
        NormOptions opt;
        opt.k_max = k_max;
        return js(to_json(criteria_report(s, q, opt)));
    }, nogil);
    m.def("_eps_l", [](const SequenceSpec& s, double eps, std::size_t cap) {
        const auto seq = build_eps_l(s, eps, cap);
        Json j = to_json(seq);
        j["approx_number_bounds"] = to_json(approx_number_bounds(seq));
        return js(j);
    }, nogil);
    m.def("_spectral_report",
          [](const SequenceSpec& s, std::size_t n_max, const std::vector<double>& q, const std::vector<std::size_t>& sched) {
              return js(to_json(spectral_report(s, n_max, q, sched)));
          }, nogil);
    m.def("_main4_report", [](const SequenceSpec& c, const std::vector<double>& q) { return js(to_json(main4_report(c, q))); }, nogil);
    m.def("_verify", [](std::uint64_t seed, std::size_t count) { return js(to_json(run_verify(seed, count))); }, nogil);

    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "SequenceParseError", PyExc_ValueError);
}
