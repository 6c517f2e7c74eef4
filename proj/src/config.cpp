#include "dsoar/config.hpp"

#include <set>

#include <json.hpp>

namespace dsoar {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (allowed.find(key) == allowed.end())
            throw ConfigError(where + ": unknown key \"" + key + "\"");
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    if (!obj[key].is_number()) throw ConfigError(where + ": \"" + key + "\" must be a number");
    return obj[key].get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(where + ": \"" + key + "\" must be a number");
    return obj[key].get<double>();
}

bool bool_or(const json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) throw ConfigError(where + ": \"" + key + "\" must be a boolean");
    return obj[key].get<bool>();
}

std::vector<double> number_list(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ConfigError(where + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

TransferFunction tf_from_json(const json& obj, const std::string& where) {
    check_keys(obj, {"num", "den"}, where);
    if (!obj.contains("num") || !obj.contains("den"))
        throw ConfigError(where + ": transfer function needs \"num\" and \"den\"");
    return TransferFunction(number_list(obj["num"], where + ".num"),
                            number_list(obj["den"], where + ".den"));
}

json tf_to_json(const TransferFunction& tf) { return {{"num", tf.num()}, {"den", tf.den()}}; }

WindModel wind_from_json(const json& obj) {
    const std::string where = "plant.wind";
    if (!obj.contains("type")) throw ConfigError(where + ": missing \"type\"");
    const std::string type = obj["type"].get<std::string>();
    if (type == "still") {
        check_keys(obj, {"type"}, where);
        return StillAir{};
    }
    if (type == "logistic") {
        check_keys(obj, {"type", "w0", "delta", "zm"}, where);
        return LogisticShear(require_number(obj, "w0", where), require_number(obj, "delta", where),
                             require_number(obj, "zm", where));
    }
    if (type == "logarithmic") {
        check_keys(obj, {"type", "v_ref", "z_ref", "z0"}, where);
        return LogarithmicShear(require_number(obj, "v_ref", where),
                                require_number(obj, "z_ref", where),
                                require_number(obj, "z0", where));
    }
    throw ConfigError(where + ": unknown wind type \"" + type + "\"");
}

json wind_to_json(const WindModel& w) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StillAir>) return {{"type", "still"}};
            else if constexpr (std::is_same_v<T, LogisticShear>)
                return {{"type", "logistic"}, {"w0", m.w0}, {"delta", m.delta}, {"zm", m.zm}};
            else
                return {{"type", "logarithmic"},
                        {"v_ref", m.v_ref},
                        {"z_ref", m.z_ref},
                        {"z0", m.z0}};
        },
        w);
}

PlantConfig plant_from_json(const json& obj) {
    const std::string where = "plant";
    if (!obj.contains("type")) throw ConfigError(where + ": missing \"type\"");
    const std::string type = obj["type"].get<std::string>();
    if (type == "dynamic_soaring") {
        check_keys(obj, {"type", "wind", "vehicle", "cl", "objective"}, where);
        DynamicSoaringPlant p;
        if (obj.contains("wind")) p.wind = wind_from_json(obj["wind"]);
        if (obj.contains("vehicle")) {
            const auto& v = obj["vehicle"];
            check_keys(v, {"mass", "wing_area", "cd0", "induced_drag", "rho", "gravity"},
                       "plant.vehicle");
            VehicleParams d = VehicleParams::albatross();
            p.vehicle = {number_or(v, "mass", d.mass, where),
                         number_or(v, "wing_area", d.wing_area, where),
                         number_or(v, "cd0", d.cd0, where),
                         number_or(v, "induced_drag", d.induced_drag, where),
                         number_or(v, "rho", d.rho, where),
                         number_or(v, "gravity", d.gravity, where)};
        }
        p.lift_coefficient = number_or(obj, "cl", 1.5, where);
        if (obj.contains("objective")) {
            const std::string o = obj["objective"].get<std::string>();
            if (o == "j1") p.objective = DsObjective::EnergyGainRate;
            else if (o == "j2")
                p.objective = DsObjective::TotalEnergy;
            else
                throw ConfigError(where + ": objective must be \"j1\" or \"j2\"");
        }
        return p;
    }
    if (type == "toy_classic") {
        check_keys(obj, {"type"}, where);
        return ToyClassicPlant{};
    }
    if (type == "toy_augmented") {
        check_keys(obj, {"type", "input_dynamics", "output_dynamics"}, where);
        ToyAugmentedPlant p{TransferFunction({1.0, -1.0}, {1.0, 3.0, 2.0}),
                            TransferFunction({1.0}, {1.0, 1.0})};
        if (obj.contains("input_dynamics"))
            p.input_dynamics = tf_from_json(obj["input_dynamics"], where + ".input_dynamics");
        if (obj.contains("output_dynamics"))
            p.output_dynamics = tf_from_json(obj["output_dynamics"], where + ".output_dynamics");
        return p;
    }
    throw ConfigError(where + ": unknown plant type \"" + type + "\"");
}

json plant_to_json(const PlantConfig& cfg) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DynamicSoaringPlant>) {
                return {{"type", "dynamic_soaring"},
                        {"wind", wind_to_json(p.wind)},
                        {"vehicle",
                         {{"mass", p.vehicle.mass},
                          {"wing_area", p.vehicle.wing_area},
                          {"cd0", p.vehicle.cd0},
                          {"induced_drag", p.vehicle.induced_drag},
                          {"rho", p.vehicle.rho},
                          {"gravity", p.vehicle.gravity}}},
                        {"cl", p.lift_coefficient},
                        {"objective", p.objective == DsObjective::EnergyGainRate ? "j1" : "j2"}};
            } else if constexpr (std::is_same_v<T, ToyClassicPlant>) {
                return {{"type", "toy_classic"}};
            } else {
                return {{"type", "toy_augmented"},
                        {"input_dynamics", tf_to_json(p.input_dynamics)},
                        {"output_dynamics", tf_to_json(p.output_dynamics)}};
            }
        },
        cfg);
}

ControllerConfig controller_from_json(const json& obj) {
    const std::string where = "controller";
    if (!obj.contains("type")) throw ConfigError(where + ": missing \"type\"");
    const std::string type = obj["type"].get<std::string>();
    if (type == "open_loop") {
        check_keys(obj, {"type", "phi"}, where);
        return OpenLoopController{number_or(obj, "phi", 0.0, where)};
    }
    if (type == "esc1") {
        check_keys(obj,
                   {"type", "a", "b", "omega", "phi_phase", "k", "omega_h", "omega_l",
                    "use_high_pass", "use_low_pass", "theta_hat0", "settle_high_pass"},
                   where);
        Esc1Controller c;
        c.params.a = require_number(obj, "a", where);
        c.params.omega = require_number(obj, "omega", where);
        c.params.b = number_or(obj, "b", 1.0, where);
        c.params.phi_phase = number_or(obj, "phi_phase", 0.0, where);
        c.params.k = number_or(obj, "k", 1.0, where);
        c.params.omega_h = number_or(obj, "omega_h", 0.0, where);
        c.params.omega_l = number_or(obj, "omega_l", 0.0, where);
        c.params.use_high_pass = bool_or(obj, "use_high_pass", c.params.omega_h > 0.0, where);
        c.params.use_low_pass = bool_or(obj, "use_low_pass", c.params.omega_l > 0.0, where);
        c.theta_hat0 = number_or(obj, "theta_hat0", 0.0, where);
        c.settle_high_pass = bool_or(obj, "settle_high_pass", true, where);
        c.params.validate();
        return c;
    }
    if (type == "esc2") {
        check_keys(obj, {"type", "a", "b", "omega", "phi_phase", "k2", "constants", "blocks",
                         "settle_block1", "initial_state"},
                   where);
        const double a = require_number(obj, "a", where);
        const double b = number_or(obj, "b", 1.0, where);
        const double omega = require_number(obj, "omega", where);
        const double phi_phase = number_or(obj, "phi_phase", 0.0, where);
        const double k2 = number_or(obj, "k2", 1.0, where);
        Esc2Controller c;
        if (obj.contains("constants")) {
            const auto& cc = obj["constants"];
            check_keys(cc, {"c0", "c1", "c2", "c3", "c4", "c5", "c6"}, where + ".constants");
            DsCompensatorConstants k;
            k.c0 = number_or(cc, "c0", k.c0, where);
            k.c1 = require_number(cc, "c1", where + ".constants");
            k.c2 = require_number(cc, "c2", where + ".constants");
            k.c3 = require_number(cc, "c3", where + ".constants");
            k.c4 = require_number(cc, "c4", where + ".constants");
            k.c5 = require_number(cc, "c5", where + ".constants");
            k.c6 = require_number(cc, "c6", where + ".constants");
            c.design = build_ds_design(k, k2, a, b, omega, phi_phase);
        } else if (obj.contains("blocks")) {
            const auto& bb = obj["blocks"];
            check_keys(bb,
                       {"block1", "block2", "input_compensator", "output_compensator", "gamma_phi",
                        "gamma_j", "input_dynamics", "output_dynamics", "lambda_phi", "lambda_j"},
                       where + ".blocks");
            EscAugmentedDesign d;
            auto tf_or = [&](const char* key, TransferFunction fallback) {
                return bb.contains(key) ? tf_from_json(bb[key], where + ".blocks." + key)
                                        : fallback;
            };
            d.block1 = tf_from_json(bb.at("block1"), where + ".blocks.block1");
            d.block2 = tf_from_json(bb.at("block2"), where + ".blocks.block2");
            d.input_compensator = tf_or("input_compensator", TransferFunction());
            d.output_compensator = tf_or("output_compensator", TransferFunction());
            d.reference.gamma_phi = tf_or("gamma_phi", TransferFunction());
            d.reference.gamma_j = tf_or("gamma_j", TransferFunction());
            d.input_dynamics = tf_or("input_dynamics", TransferFunction());
            d.output_dynamics = tf_or("output_dynamics", TransferFunction());
            d.reference.lambda_phi = number_or(bb, "lambda_phi", 1.0, where);
            d.reference.lambda_j = number_or(bb, "lambda_j", 1.0, where);
            d.a = a;
            d.b = b;
            d.omega = omega;
            d.phi_phase = phi_phase;
            d.k2 = k2;
            if (!d.block1.is_proper() || !d.block2.is_proper())
                throw ConfigError(where + ": blocks must be proper to be realizable");
            c.design = d;
        } else {
            throw ConfigError(where + ": esc2 needs \"constants\" or \"blocks\"");
        }
        c.settle_block1 = bool_or(obj, "settle_block1", true, where);
        if (obj.contains("initial_state"))
            c.initial_state = number_list(obj["initial_state"], where + ".initial_state");
        return c;
    }
    throw ConfigError(where + ": unknown controller type \"" + type + "\"");
}

json controller_to_json(const ControllerConfig& cfg) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, OpenLoopController>) {
                return {{"type", "open_loop"}, {"phi", c.phi}};
            } else if constexpr (std::is_same_v<T, Esc1Controller>) {
                return {{"type", "esc1"},
                        {"a", c.params.a},
                        {"b", c.params.b},
                        {"omega", c.params.omega},
                        {"phi_phase", c.params.phi_phase},
                        {"k", c.params.k},
                        {"omega_h", c.params.omega_h},
                        {"omega_l", c.params.omega_l},
                        {"use_high_pass", c.params.use_high_pass},
                        {"use_low_pass", c.params.use_low_pass},
                        {"theta_hat0", c.theta_hat0},
                        {"settle_high_pass", c.settle_high_pass}};
            } else {
                const EscAugmentedDesign& d = c.design;
                json out = {{"type", "esc2"},        {"a", d.a},
                            {"b", d.b},              {"omega", d.omega},
                            {"phi_phase", d.phi_phase}, {"k2", d.k2},
                            {"settle_block1", c.settle_block1}};
                if (!c.initial_state.empty()) out["initial_state"] = c.initial_state;
                if (d.constants != std::array<double, 7>{}) {
                    out["constants"] = {{"c0", d.constants[0]}, {"c1", d.constants[1]},
                                        {"c2", d.constants[2]}, {"c3", d.constants[3]},
                                        {"c4", d.constants[4]}, {"c5", d.constants[5]},
                                        {"c6", d.constants[6]}};
                } else {
                    out["blocks"] = {{"block1", tf_to_json(d.block1)},
                                     {"block2", tf_to_json(d.block2)},
                                     {"input_compensator", tf_to_json(d.input_compensator)},
                                     {"output_compensator", tf_to_json(d.output_compensator)},
                                     {"gamma_phi", tf_to_json(d.reference.gamma_phi)},
                                     {"gamma_j", tf_to_json(d.reference.gamma_j)},
                                     {"input_dynamics", tf_to_json(d.input_dynamics)},
                                     {"output_dynamics", tf_to_json(d.output_dynamics)},
                                     {"lambda_phi", d.reference.lambda_phi},
                                     {"lambda_j", d.reference.lambda_j}};
                }
                return out;
            }
        },
        cfg);
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    check_keys(doc,
               {"name", "description", "plant", "controller", "x0", "duration", "dt",
                "disturbance", "seed"},
               "config");
    if (!doc.contains("plant")) throw ConfigError("config: missing \"plant\"");
    if (!doc.contains("controller")) throw ConfigError("config: missing \"controller\"");

    Scenario sc;
    sc.name = doc.contains("name") ? doc["name"].get<std::string>() : "custom";
    sc.description = doc.contains("description") ? doc["description"].get<std::string>() : "";
    sc.plant = plant_from_json(doc["plant"]);
    sc.controller = controller_from_json(doc["controller"]);
    sc.duration = number_or(doc, "duration", 10.0, "config");
    sc.dt = number_or(doc, "dt", 1e-3, "config");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer()) throw ConfigError("config: seed must be an integer");
        sc.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("disturbance")) {
        const auto& d = doc["disturbance"];
        check_keys(d, {"relative_amplitude", "hold_interval", "seed"}, "disturbance");
        DisturbanceConfig dc;
        dc.relative_amplitude = number_or(d, "relative_amplitude", 0.05, "disturbance");
        dc.hold_interval = number_or(d, "hold_interval", 0.0, "disturbance");
        dc.seed = d.contains("seed") ? d["seed"].get<std::uint64_t>() : 0;
        sc.disturbance = dc;
    }
    if (doc.contains("x0")) {
        sc.x0 = number_list(doc["x0"], "config.x0");
    } else if (std::holds_alternative<ToyClassicPlant>(sc.plant)) {
        sc.x0 = {0.0, 0.0};
    } else if (const auto* toy = std::get_if<ToyAugmentedPlant>(&sc.plant)) {
        const int n =
            toy->input_dynamics.denominator_degree() + toy->output_dynamics.denominator_degree();
        sc.x0.assign(static_cast<std::size_t>(n), 0.0);
    } else {
        throw ConfigError("config: gliding scenarios need \"x0\" (x,y,z,V,gamma,psi)");
    }
    sc.validate();
    return sc;
}

std::string scenario_to_json(const Scenario& sc) {
    json doc;
    doc["name"] = sc.name;
    doc["description"] = sc.description;
    doc["plant"] = plant_to_json(sc.plant);
    doc["controller"] = controller_to_json(sc.controller);
    doc["x0"] = sc.x0;
    doc["duration"] = sc.duration;
    doc["dt"] = sc.dt;
    if (sc.disturbance)
        doc["disturbance"] = {{"relative_amplitude", sc.disturbance->relative_amplitude},
                              {"hold_interval", sc.disturbance->hold_interval},
                              {"seed", sc.disturbance->seed}};
    doc["seed"] = sc.seed;
    return doc.dump(2) + "\n";
}

}  // namespace dsoar
