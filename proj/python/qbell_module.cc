// Python bindings for the qbell core.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbell/acceptance.h"
#include "qbell/bell.h"
#include "qbell/entanglement.h"
#include "qbell/error.h"
#include "qbell/io.h"
#include "qbell/models.h"
#include "qbell/tee.h"

namespace py = pybind11;
using namespace qbell;

namespace {

using Rows = std::vector<std::vector<Complex>>;

ComplexMatrix matrix_from_rows(const Rows &rows) {
    std::vector<Complex> entries;
    for (const auto &row : rows) {
        if (row.size() != rows.size()) {
            throw ValidationError("density matrix must be square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(rows.size(), rows.size(), std::move(entries));
}

Rows matrix_rows(const ComplexMatrix &m) {
    Rows rows(m.rows(), std::vector<Complex>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = 0; c < m.cols(); c++) {
            rows[r][c] = m(r, c);
        }
    }
    return rows;
}

BellForm parse_form(const std::string &form) {
    if (form == "full") {
        return BellForm::Full;
    }
    if (form == "reduced") {
        return BellForm::Reduced;
    }
    throw ValidationError("form must be \"full\" or \"reduced\", got \"" + form + "\"");
}

py::dict bound_dict(const BellBoundReport &report) {
    py::dict d;
    d["gamma_bound"] = report.gamma_bound;
    d["gram_eigenvalues"] = std::vector<double>(report.gram_eigenvalues.begin(), report.gram_eigenvalues.end());
    d["pivot"] = report.pivot;
    d["site_order"] = report.site_order;
    return d;
}

py::dict settings_dict(const BellSettings &s) {
    py::dict d;
    d["b"] = s.b;
    d["b_prime"] = s.b_prime;
    d["a"] = s.a;
    d["a_prime"] = s.a_prime;
    return d;
}

py::dict optimize_dict(const OptimizerResult &r) {
    py::dict d;
    d["gamma_star"] = r.gamma_star;
    d["settings"] = settings_dict(r.best);
    d["restarts_used"] = r.restarts_used;
    d["converged"] = r.converged;
    d["best_restart"] = r.best_restart;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qbell, m) {
    m.doc() = "Bell-inequality bounds, concurrences and entanglement entropies for n-qubit states";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
    py::register_exception<NotPsdError>(m, "NotPsdError", error.ptr());

    py::class_<PureState>(m, "PureState")
        .def(py::init([](std::vector<Complex> amplitudes) {
                 std::size_t n = 0;
                 while ((std::size_t{1} << n) < amplitudes.size()) {
                     n++;
                 }
                 return PureState::from_amplitudes(n, std::move(amplitudes));
             }),
             py::arg("amplitudes"))
        .def_property_readonly("n_sites", &PureState::n_sites)
        .def_property_readonly("amplitudes",
                               [](const PureState &psi) {
                                   auto a = psi.amplitudes();
                                   return std::vector<Complex>(a.begin(), a.end());
                               })
        .def("density", &density_from_pure)
        .def("to_json", [](const PureState &psi) { return state_to_json(psi).dump(); });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const Rows &rows) {
                 std::size_t n = 0;
                 while ((std::size_t{1} << n) < rows.size()) {
                     n++;
                 }
                 return DensityMatrix::from_matrix(n, matrix_from_rows(rows));
             }),
             py::arg("matrix"))
        .def_property_readonly("n_sites", &DensityMatrix::n_sites)
        .def_property_readonly("matrix", [](const DensityMatrix &rho) { return matrix_rows(rho.matrix()); })
        .def("to_json", [](const DensityMatrix &rho) { return state_to_json(rho).dump(); });

    m.def(
        "load_state",
        [](const std::string &text) -> std::variant<PureState, DensityMatrix> { return parse_state_text(text); },
        py::arg("text"), "Parses a state file document.");

    m.def(
        "reduced_density",
        [](const PureState &psi, std::vector<std::size_t> keep) {
            return reduced_density(psi, Bipartition(psi.n_sites(), std::move(keep)));
        },
        py::arg("state"), py::arg("keep"));
    m.def(
        "reduced_density",
        [](const DensityMatrix &rho, std::vector<std::size_t> keep) {
            return partial_trace(rho, Bipartition(rho.n_sites(), std::move(keep)));
        },
        py::arg("state"), py::arg("keep"));
    m.def("purity", &purity, py::arg("rho"));
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("renyi_entropy", &renyi_entropy, py::arg("rho"), py::arg("order"));

    m.def(
        "pauli_expectation",
        [](const PureState &psi, const std::string &p) { return pauli_expectation(psi, PauliString::parse(p)); },
        py::arg("state"), py::arg("pauli"));
    m.def(
        "pauli_expectation",
        [](const DensityMatrix &rho, const std::string &p) { return pauli_expectation(rho, PauliString::parse(p)); },
        py::arg("state"), py::arg("pauli"));

    m.def(
        "bell_bound",
        [](const PureState &psi, std::size_t pivot, std::vector<std::size_t> order) {
            return bound_dict(bell_bound(psi, pivot, std::move(order)));
        },
        py::arg("state"), py::arg("pivot") = 0, py::arg("site_order") = std::vector<std::size_t>{});
    m.def(
        "bell_bound",
        [](const DensityMatrix &rho, std::size_t pivot, std::vector<std::size_t> order) {
            return bound_dict(bell_bound(rho, pivot, std::move(order)));
        },
        py::arg("state"), py::arg("pivot") = 0, py::arg("site_order") = std::vector<std::size_t>{});

    auto optimize = [](const auto &state, const std::string &form, std::size_t restarts, std::size_t max_iterations,
                       double tolerance, std::uint64_t seed) {
        OptimizerConfig cfg{restarts, max_iterations, tolerance, seed};
        return optimize_dict(maximize_bell(state, parse_form(form), cfg));
    };
    m.def(
        "maximize_bell",
        [optimize](const PureState &psi, const std::string &form, std::size_t restarts, std::size_t max_iterations,
                   double tolerance, std::uint64_t seed) {
            return optimize(psi, form, restarts, max_iterations, tolerance, seed);
        },
        py::arg("state"), py::arg("form") = "reduced", py::arg("restarts") = 64, py::arg("max_iterations") = 500,
        py::arg("tolerance") = 1e-9, py::arg("seed") = 0);
    m.def(
        "maximize_bell",
        [optimize](const DensityMatrix &rho, const std::string &form, std::size_t restarts,
                   std::size_t max_iterations, double tolerance, std::uint64_t seed) {
            return optimize(rho, form, restarts, max_iterations, tolerance, seed);
        },
        py::arg("state"), py::arg("form") = "reduced", py::arg("restarts") = 64, py::arg("max_iterations") = 500,
        py::arg("tolerance") = 1e-9, py::arg("seed") = 0);

    m.def(
        "concurrence",
        [](const PureState &psi, std::vector<std::size_t> cut, std::size_t delta) {
            return generalized_concurrence(psi, Bipartition(psi.n_sites(), std::move(cut)), delta);
        },
        py::arg("state"), py::arg("cut"), py::arg("delta") = 1);
    m.def(
        "wootters_concurrence", [](const DensityMatrix &rho) { return wootters_concurrence(rho).concurrence; },
        py::arg("rho"));
    m.def("f_alpha", &f_alpha, py::arg("alpha"), py::arg("c"));
    m.def("lambda_from_concurrence", &lambda_from_concurrence, py::arg("c"));

    m.def(
        "xy_thermal",
        [](double j, double g, double b, double d, double t) { return xy_thermal({j, g, b, d}, t); }, py::arg("J"),
        py::arg("gamma"), py::arg("B"), py::arg("delta"), py::arg("T"));
    m.def(
        "xy_eigenstate",
        [](double j, double g, double b, double d, const std::string &label) {
            auto pair = xy_eigenstate({j, g, b, d}, label);
            return std::make_pair(pair.state, pair.energy);
        },
        py::arg("J"), py::arg("gamma"), py::arg("B"), py::arg("delta"), py::arg("label"));
    m.def(
        "xy_critical_temperature",
        [](double j, double g, double b, double d) { return xy_critical_temperature({j, g, b, d}); }, py::arg("J"),
        py::arg("gamma"), py::arg("B"), py::arg("delta"));
    m.def("wen_plaquette_state", &wen_plaquette_states, py::arg("sites"), py::arg("index"));
    m.def("wen_plaquette_6_family", &wen_plaquette_6_family, py::arg("which"), py::arg("lp"), py::arg("lm"));
    m.def("ghz2n_state", &ghz2n_state, py::arg("n"), py::arg("lp"), py::arg("lm"));
    m.def(
        "cylinder_renyi",
        [](std::size_t n_l, Complex a00, Complex a01, double order) { return cylinder_renyi({n_l, a00, a01}, order); },
        py::arg("n_L"), py::arg("alpha00"), py::arg("alpha01"), py::arg("order"));
    m.def("disk_entropy", &disk_entropy, py::arg("n_L"));

    m.def("lambda_from_gamma", &lambda_from_gamma, py::arg("gamma"));
    m.def("entropy_from_gamma", &entropy_from_gamma, py::arg("gamma"), py::arg("delta"));
    m.def(
        "area_law_fit",
        [](const std::vector<std::pair<double, double>> &points) {
            std::vector<AreaLawPoint> in;
            for (auto [l, s] : points) {
                in.push_back({l, s});
            }
            auto fit = area_law_fit(in);
            py::dict d;
            d["slope_alpha"] = fit.slope_alpha;
            d["s_tee"] = fit.s_tee;
            d["d_quasi"] = fit.d_quasi;
            d["residual"] = fit.residual;
            return d;
        },
        py::arg("points"));

    m.def(
        "run_acceptance",
        [](std::uint64_t seed, std::vector<int> ids) {
            py::list out;
            if (ids.empty()) {
                for (int id = 1; id <= kAcceptanceCriteria; id++) {
                    ids.push_back(id);
                }
            }
            for (int id : ids) {
                CriterionResult r;
                {
                    py::gil_scoped_release release;
                    r = run_criterion(id, seed);
                }
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = 0, py::arg("ids") = std::vector<int>{});
}
