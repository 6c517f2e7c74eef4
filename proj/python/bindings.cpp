#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <variant>

#include "dsoar/config.hpp"
#include "dsoar/esc_augmented.hpp"
#include "dsoar/lti.hpp"
#include "dsoar/record_io.hpp"
#include "dsoar/scenarios.hpp"
#include "dsoar/wind.hpp"

namespace py = pybind11;
using namespace dsoar;

namespace {

WindModel wind_from_args(const std::string& kind, py::kwargs kw) {
    if (kind == "still") return StillAir{};
    if (kind == "logistic")
        return LogisticShear(kw["w0"].cast<double>(), kw["delta"].cast<double>(),
                             kw["zm"].cast<double>());
    if (kind == "logarithmic")
        return LogarithmicShear(kw["v_ref"].cast<double>(), kw["z_ref"].cast<double>(),
                                kw["z0"].cast<double>());
    throw py::value_error("unknown wind kind: " + kind);
}

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["aborted"] = s.aborted;
    if (s.aborted) d["abort_reason"] = s.abort_reason;
    d["objective_initial"] = s.objective_initial;
    d["objective_final"] = s.objective_final;
    if (s.energy) {
        py::dict e;
        e["te_initial"] = s.energy->te_initial;
        e["te_final"] = s.energy->te_final;
        e["te_min"] = s.energy->te_min;
        e["te_max"] = s.energy->te_max;
        e["relative_span"] = s.energy->relative_span;
        e["rate_identity_rms"] = s.energy->rate_identity_rms;
        d["energy"] = e;
    }
    py::list states;
    for (const auto& ex : s.controller_extrema) {
        py::dict st;
        st["name"] = ex.name;
        st["min"] = ex.min;
        st["max"] = ex.max;
        st["final"] = ex.final;
        states.append(st);
    }
    d["controller_states"] = states;
    return d;
}

py::dict record_dict(const RunRecord& r) {
    py::dict d;
    d["scenario"] = r.scenario_name;
    d["columns"] = r.columns;
    d["rows"] = r.rows;
    d["summary"] = summary_dict(r.summary);
    return d;
}

py::dict report_dict(const DesignReport& rep) {
    auto cond = [](const ConditionCheck& c) {
        py::dict d;
        d["ok"] = c.ok;
        d["checked"] = c.checked;
        d["evidence"] = c.evidence;
        return d;
    };
    py::dict d;
    d["c1"] = cond(rep.c1);
    d["c2"] = cond(rep.c2);
    d["c3"] = cond(rep.c3);
    d["c4"] = cond(rep.c4);
    d["c5_stability"] = cond(rep.c5_stability);
    d["c5_loop"] = cond(rep.c5_loop);
    d["overall"] = rep.overall();
    return d;
}

Scenario scenario_with_overrides(const std::string& name, std::optional<double> dt,
                                 std::optional<double> duration,
                                 std::optional<std::uint64_t> seed) {
    auto sc = find_scenario(name);
    if (!sc) throw py::value_error("unknown scenario: " + name);
    if (dt) sc->dt = *dt;
    if (duration) sc->duration = *duration;
    if (seed) sc->seed = *seed;
    return *sc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "extremum-seeking dynamic soaring simulator";

    py::register_exception<SingularState>(m, "SingularStateError");
    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<ImproperTransferFunction>(m, "ImproperTransferFunctionError");

    py::class_<TransferFunction>(m, "TransferFunction")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("num"), py::arg("den"))
        .def_property_readonly("num", &TransferFunction::num)
        .def_property_readonly("den", &TransferFunction::den)
        .def("poles", &TransferFunction::poles)
        .def("zeros", &TransferFunction::zeros)
        .def("is_proper", &TransferFunction::is_proper)
        .def("is_strictly_proper", &TransferFunction::is_strictly_proper)
        .def("is_hurwitz", &TransferFunction::is_hurwitz, py::arg("margin") = kStabilityMargin)
        .def("dc_gain", &TransferFunction::dc_gain)
        .def("__mul__", [](const TransferFunction& a, const TransferFunction& b) { return a * b; })
        .def("__rmul__", [](const TransferFunction& tf, double k) { return k * tf; })
        .def("__repr__", &TransferFunction::to_string);

    m.def(
        "wind_speed",
        [](const std::string& kind, double z, py::kwargs kw) {
            return wind_speed(wind_from_args(kind, std::move(kw)), z);
        },
        py::arg("kind"), py::arg("z"));
    m.def(
        "wind_gradient",
        [](const std::string& kind, double z, py::kwargs kw) {
            return wind_gradient(wind_from_args(kind, std::move(kw)), z);
        },
        py::arg("kind"), py::arg("z"));

    m.def("list_scenarios", [] {
        py::list out;
        for (const auto& sc : builtin_scenarios()) {
            py::dict d;
            d["name"] = sc.name;
            d["description"] = sc.description;
            d["duration"] = sc.duration;
            d["dt"] = sc.dt;
            out.append(d);
        }
        return out;
    });

    m.def("scenario_json", [](const std::string& name) {
        auto sc = find_scenario(name);
        if (!sc) throw py::value_error("unknown scenario: " + name);
        return scenario_to_json(*sc);
    });

    m.def(
        "run_case",
        [](const std::string& name, std::optional<double> dt, std::optional<double> duration,
           std::optional<std::uint64_t> seed) {
            return record_dict(run(scenario_with_overrides(name, dt, duration, seed)));
        },
        py::arg("name"), py::arg("dt") = std::nullopt, py::arg("duration") = std::nullopt,
        py::arg("seed") = std::nullopt);

    m.def(
        "run_config",
        [](const std::string& json_text) {
            return record_dict(run(scenario_from_json(json_text)));
        },
        py::arg("json_text"));

    m.def(
        "validate_case",
        [](const std::string& name, std::optional<double> curvature) {
            auto sc = find_scenario(name);
            if (!sc) throw py::value_error("unknown scenario: " + name);
            const auto* esc2 = std::get_if<Esc2Controller>(&sc->controller);
            if (esc2 == nullptr)
                throw py::value_error("scenario " + name + " does not use the augmented loop");
            return report_dict(validate_design(esc2->design, curvature));
        },
        py::arg("name"), py::arg("curvature") = std::nullopt);

    m.def(
        "record_csv",
        [](const std::string& name, std::optional<double> dt, std::optional<double> duration,
           std::optional<std::uint64_t> seed) {
            return record_to_csv(run(scenario_with_overrides(name, dt, duration, seed)));
        },
        py::arg("name"), py::arg("dt") = std::nullopt, py::arg("duration") = std::nullopt,
        py::arg("seed") = std::nullopt);
}
