#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "turncp/cpd.hpp"
#include "turncp/harness.hpp"
#include "turncp/serialize.hpp"
#include "turncp/version.hpp"

namespace py = pybind11;
using namespace turncp;
using nlohmann::json;

namespace {

json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json out = json::object();
        for (auto item : obj.cast<py::dict>())
            out[py::str(item.first).cast<std::string>()] = py_to_json(item.second);
        return out;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        json out = json::array();
        for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw py::type_error("cannot convert object to a configuration value");
}

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
            return out;
        }
        default:
            throw py::type_error("unsupported value in report");
    }
}

linproc::LinearProcessSpec spec_from_dict(const py::dict& d) {
    return py_to_json(d).get<linproc::LinearProcessSpec>();
}

linproc::BreakSpec break_spec_from_dict(const py::dict& d) {
    return py_to_json(d).get<linproc::BreakSpec>();
}

ordpat::Pattern pattern_from_ranks(const std::vector<int>& ranks) {
    return ordpat::Pattern(ranks);
}

std::vector<std::vector<int>> matrix_rows(const ordpat::PatternMatrix& m) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(m.dim()));
    for (int r = 0; r < m.dim(); ++r) {
        rows[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(m.dim()));
        for (int c = 0; c < m.dim(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m.at(r, c);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_turncp, m) {
    m.doc() = "Ordinal-pattern turning rates and self-normalized change-point tests";
    m.attr("__version__") = TURNCP_VERSION;

    py::register_exception<InvalidInputError>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<DegenerateInputError>(m, "DegenerateInput", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // ---- ordinal patterns ----
    m.def(
        "pattern_of",
        [](const std::vector<double>& window) {
            return py::tuple(py::cast(ordpat::pattern_of(window).ranks()));
        },
        py::arg("window"), "Rank tuple of a window of consecutive values (0 = smallest).");
    m.def(
        "enumerate_patterns",
        [](int order) {
            py::list out;
            for (const auto& p : ordpat::enumerate_patterns(order))
                out.append(py::tuple(py::cast(p.ranks())));
            return out;
        },
        py::arg("order"), "All (order+1)! rank tuples in lexicographic order.");
    m.def(
        "pattern_matrix",
        [](const std::vector<int>& ranks) {
            return matrix_rows(ordpat::pattern_matrix(pattern_from_ranks(ranks)));
        },
        py::arg("ranks"),
        "Integer matrix V with: the pattern occurs iff V @ increments <= 0 componentwise.");
    m.def(
        "pattern_at_via_matrix",
        [](const std::vector<int>& ranks, const std::vector<double>& increments) {
            return ordpat::pattern_at_via_matrix(pattern_from_ranks(ranks), increments);
        },
        py::arg("ranks"), py::arg("increments"));
    m.def(
        "count_patterns",
        [](const std::vector<double>& series, int order) {
            const auto counts = ordpat::count_patterns(series, order);
            py::dict out;
            for (const auto& [pattern, count] : counts.counts)
                out[py::tuple(py::cast(pattern.ranks()))] = count;
            return py::make_tuple(out, counts.total_windows);
        },
        py::arg("series"), py::arg("order"),
        "(counts dict, total windows) for sliding windows of length order+1.");
    m.def(
        "pattern_frequencies",
        [](const std::vector<double>& series, int order) {
            py::dict out;
            for (const auto& [pattern, freq] : estimate::pattern_frequencies(series, order))
                out[py::tuple(py::cast(pattern.ranks()))] = freq;
            return out;
        },
        py::arg("series"), py::arg("order"));

    // ---- turning rates ----
    py::class_<estimate::TurningRateSeries>(m, "TurningRateSeries")
        .def_readonly("values", &estimate::TurningRateSeries::values)
        .def_readonly("block_m", &estimate::TurningRateSeries::block_m)
        .def_readonly("source_length", &estimate::TurningRateSeries::source_length)
        .def_property_readonly("n_b", &estimate::TurningRateSeries::n_b)
        .def("__len__", &estimate::TurningRateSeries::n_b);

    m.def("turning_rate", [](const std::vector<double>& epoch) { return estimate::turning_rate(epoch); },
          py::arg("epoch"), "Fraction of order-3 windows carrying a local extremum.");
    m.def(
        "turning_rate_series",
        [](const std::vector<double>& series, int block_m) {
            return estimate::turning_rate_series(series, block_m);
        },
        py::arg("series"), py::arg("block_m"),
        "Turning rate per disjoint block of block_m + 2 samples.");
    m.def("permutation_entropy", &estimate::permutation_entropy, py::arg("q"));
    m.def(
        "plug_in_long_run_variance",
        [](const std::vector<double>& series, int max_lag) {
            return estimate::plug_in_long_run_variance(series, max_lag);
        },
        py::arg("series"), py::arg("max_lag"));
    m.def(
        "spectral_centroid_check",
        [](const std::vector<double>& series) {
            const auto c = estimate::spectral_centroid_check(series);
            py::dict out;
            out["mean_q"] = c.mean_q;
            out["cos_pi_q"] = c.cos_pi_q;
            out["rho1"] = c.rho1;
            return out;
        },
        py::arg("series"));

    // ---- simulation ----
    m.def(
        "sample_noise",
        [](const py::dict& noise, std::size_t n, std::uint64_t seed) {
            return linproc::sample_noise(py_to_json(noise).get<linproc::NoiseSpec>(), n, seed);
        },
        py::arg("noise"), py::arg("n"), py::arg("seed"));
    m.def("farima_coefficients", &linproc::farima_coefficients, py::arg("d"), py::arg("truncation"));
    m.def(
        "simulate_increments",
        [](const py::dict& spec, std::size_t n, std::uint64_t seed) {
            return linproc::simulate_increments(spec_from_dict(spec), n, seed).samples;
        },
        py::arg("spec"), py::arg("n"), py::arg("seed"),
        "Simulate a linear increment process from a spec dict.");
    m.def(
        "simulate_with_break",
        [](const py::dict& spec, std::size_t n, std::uint64_t seed) {
            return linproc::simulate_with_break(break_spec_from_dict(spec), n, seed).samples;
        },
        py::arg("spec"), py::arg("n"), py::arg("seed"));
    m.def(
        "integrate",
        [](const std::vector<double>& increments, double xi0) {
            linproc::TimeSeries ts;
            ts.samples = increments;
            return linproc::integrate(ts, xi0).samples;
        },
        py::arg("increments"), py::arg("xi0") = 0.0);

    // ---- change-point statistics ----
    m.def(
        "cusum_statistic",
        [](const std::vector<double>& values) {
            const auto r = cpd::cusum_statistic(values);
            return py::make_tuple(r.value, r.argmax);
        },
        py::arg("values"));
    m.def(
        "self_normalizer",
        [](const std::vector<double>& values, std::size_t k) {
            return cpd::self_normalizer(values, k);
        },
        py::arg("values"), py::arg("k"));
    m.def(
        "sn_cusum_statistic",
        [](const std::vector<double>& values) {
            const auto r = cpd::sn_cusum_statistic(values);
            return py::make_tuple(r.value, r.argmax);
        },
        py::arg("values"));
    m.def("block_size_from_rule", &cpd::block_size_from_rule, py::arg("n"),
          py::arg("exponent") = 0.6);

    py::class_<cpd::NullQuantileTable>(m, "NullQuantileTable")
        .def_property_readonly("kind",
                               [](const cpd::NullQuantileTable& t) { return cpd::to_string(t.kind); })
        .def_readonly("grid_size", &cpd::NullQuantileTable::grid_size)
        .def_readonly("replications", &cpd::NullQuantileTable::replications)
        .def_readonly("seed", &cpd::NullQuantileTable::seed)
        .def_readonly("quantiles", &cpd::NullQuantileTable::quantiles)
        .def_readonly("sample", &cpd::NullQuantileTable::sample)
        .def("critical_value", &cpd::NullQuantileTable::critical_value, py::arg("alpha"))
        .def("p_value", &cpd::NullQuantileTable::p_value, py::arg("statistic"))
        .def(
            "save",
            [](const cpd::NullQuantileTable& t, const std::string& path) {
                cpd::save_quantile_table(t, path);
            },
            py::arg("path"))
        .def_static(
            "load", [](const std::string& path) { return cpd::load_quantile_table(path); },
            py::arg("path"));

    m.def(
        "null_quantiles",
        [](const std::string& kind, const std::vector<double>& alphas, int grid_size,
           int replications, std::uint64_t seed, int threads) {
            return cpd::null_quantiles(cpd::statistic_kind_from_string(kind), alphas, grid_size,
                                       replications, seed, threads);
        },
        py::arg("kind"), py::arg("alphas"), py::arg("grid_size"), py::arg("replications"),
        py::arg("seed"), py::arg("threads") = 0,
        "Monte-Carlo critical values of the limit law on a Brownian grid.");

    m.def(
        "run_test",
        [](const std::vector<double>& series, int block_m, double alpha,
           const cpd::NullQuantileTable& table) {
            const json report = cpd::run_test(series, block_m, alpha, table);
            return json_to_py(report);
        },
        py::arg("series"), py::arg("block_m"), py::arg("alpha"), py::arg("table"),
        "Self-normalized turning-rate change-point test; returns the report as a dict.");
}
