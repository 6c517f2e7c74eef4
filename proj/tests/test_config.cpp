#include <doctest.h>

#include <variant>

#include "dsoar/config.hpp"
#include "dsoar/scenarios.hpp"

using namespace dsoar;

TEST_CASE("round trip through the config schema") {
    for (const auto& sc : builtin_scenarios()) {
        CAPTURE(sc.name);
        const std::string text = scenario_to_json(sc);
        const Scenario back = scenario_from_json(text);
        CHECK(back.name == sc.name);
        CHECK(back.x0 == sc.x0);
        CHECK(back.duration == sc.duration);
        CHECK(back.dt == sc.dt);
        CHECK(back.plant.index() == sc.plant.index());
        CHECK(back.controller.index() == sc.controller.index());
        CHECK(back.disturbance.has_value() == sc.disturbance.has_value());
        // a second round trip is textually stable
        CHECK(scenario_to_json(back) == text);
    }
}

TEST_CASE("minimal gliding config") {
    const char* text = R"({
        "plant": {"type": "dynamic_soaring",
                  "wind": {"type": "logistic", "w0": 7.8, "delta": 0.6667, "zm": 5.0},
                  "objective": "j1"},
        "controller": {"type": "esc1", "a": 0.5, "omega": 1.2, "omega_h": 0.4},
        "x0": [0, 0, 10, 14, 0, 0]
    })";
    const Scenario sc = scenario_from_json(text);
    CHECK(sc.duration == 10.0);
    CHECK(sc.dt == 1e-3);
    const auto& plant = std::get<DynamicSoaringPlant>(sc.plant);
    CHECK(plant.vehicle.mass == 8.5);  // defaults fill in
    CHECK(plant.objective == DsObjective::EnergyGainRate);
    const auto& ctrl = std::get<Esc1Controller>(sc.controller);
    CHECK(ctrl.params.use_high_pass);
    CHECK_FALSE(ctrl.params.use_low_pass);
    CHECK(ctrl.params.b == 1.0);
    CHECK(ctrl.params.k == 1.0);
}

TEST_CASE("esc2 config from design constants") {
    const char* text = R"({
        "plant": {"type": "dynamic_soaring", "wind": {"type": "still"}},
        "controller": {"type": "esc2", "a": 0.4, "b": 1.8, "omega": 1.0, "phi_phase": -0.8,
                       "k2": 1.5,
                       "constants": {"c1": 8.2, "c2": 1.8, "c3": 1.5,
                                      "c4": 0.1, "c5": 8.8, "c6": 8.1}},
        "x0": [0, 0, 10, 14, 0, 0]
    })";
    const Scenario sc = scenario_from_json(text);
    const auto& ctrl = std::get<Esc2Controller>(sc.controller);
    CHECK(ctrl.design.block1.den()[3] == doctest::Approx(7.128));
    CHECK(validate_design(ctrl.design).overall());
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "toy_classic"},
        "controller": {"type": "open_loop"}, "x0": [0,0], "typo": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "toy_classic", "mass": 1},
        "controller": {"type": "open_loop"}, "x0": [0,0]})"),
                    ConfigError);
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "toy_classic"},
        "controller": {"type": "esc1", "a": 1, "omega": 1, "omega_h": 1, "gain": 2},
        "x0": [0,0]})"),
                    ConfigError);
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "dynamic_soaring",
        "wind": {"type": "logistic", "w0": 7.8, "delta": 0.6, "zm": 5, "thickness": 1}},
        "controller": {"type": "open_loop"}, "x0": [0,0,10,14,0,0]})"),
                    ConfigError);
}

TEST_CASE("config errors carry useful messages") {
    CHECK_THROWS_AS(scenario_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(R"({"controller": {"type": "open_loop"}})"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "warp_drive"},
        "controller": {"type": "open_loop"}, "x0": []})"),
                    ConfigError);
    // gliding scenarios require an explicit initial state
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "dynamic_soaring"},
        "controller": {"type": "open_loop"}})"),
                    ConfigError);
    // esc1 requires its mandatory numbers
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "toy_classic"},
        "controller": {"type": "esc1", "omega": 1}, "x0": [0,0]})"),
                    ConfigError);
    // esc2 needs constants or blocks
    CHECK_THROWS_AS(scenario_from_json(R"({"plant": {"type": "toy_classic"},
        "controller": {"type": "esc2", "a": 1, "omega": 1}, "x0": [0,0]})"),
                    ConfigError);
}

TEST_CASE("toy plants default their initial state") {
    const Scenario sc = scenario_from_json(R"({"plant": {"type": "toy_classic"},
        "controller": {"type": "open_loop"}})");
    CHECK(sc.x0 == std::vector<double>{0.0, 0.0});

    const Scenario ta = scenario_from_json(R"({"plant": {"type": "toy_augmented"},
        "controller": {"type": "open_loop"}})");
    CHECK(ta.x0.size() == 3);
}
