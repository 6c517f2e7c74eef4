#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string cli = DSOAR_CLI_PATH;

struct CommandResult {
    int exit_code;
    std::string out;
};

CommandResult run_cli(const std::string& args) {
    const fs::path out_path = fs::temp_directory_path() / "dsoar_cli_out.txt";
    const std::string cmd = cli + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("list prints the registry and feeds run") {
    const auto res = run_cli("list");
    CHECK(res.exit_code == 0);
    for (const char* name : {"case1-esc1", "case5-esc2", "toy-classic", "toy-augmented",
                             "baseline-still"})
        CHECK(res.out.find(name) != std::string::npos);

    const auto js = run_cli("list --format json");
    CHECK(js.exit_code == 0);
    const auto doc = nlohmann::json::parse(js.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 13);

    // every listed name is accepted by run verbatim
    const std::string first = doc[0]["name"].get<std::string>();
    const auto rerun = run_cli("run --case " + first + " --duration 0.01");
    CHECK(rerun.exit_code == 0);
}

TEST_CASE("run writes a record and a summary") {
    const fs::path out = fs::temp_directory_path() / "case1.csv";
    const auto res = run_cli("run --case case1-esc1 --out " + out.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("TE initial") != std::string::npos);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("t,x,y,z,V,gamma,psi,phi,J_measured,J_clean,e,TE,KE,PE,W,Wdot,n\n", 0) == 0);
    // header + duration/dt + 1 rows
    CHECK(count_lines(csv) == 1 + 5001);
}

TEST_CASE("identical seeds give identical output files") {
    const fs::path a = fs::temp_directory_path() / "det_a.csv";
    const fs::path b = fs::temp_directory_path() / "det_b.csv";
    CHECK(run_cli("run --case case5-esc2 --seed 7 --duration 2 --out " + a.string()).exit_code == 0);
    CHECK(run_cli("run --case case5-esc2 --seed 7 --duration 2 --out " + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("json record format") {
    const fs::path out = fs::temp_directory_path() / "rec.json";
    const auto res = run_cli("run --case toy-augmented --duration 0.5 --format json --out " +
                             out.string());
    CHECK(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["scenario"] == "toy-augmented");
    CHECK(doc["columns"].size() == 7);
    CHECK(doc["rows"].size() == 501);
    CHECK(doc["summary"].contains("objective_final"));
}

TEST_CASE("validate reports conditions and exit codes") {
    const auto good = run_cli("validate --case case1-esc2");
    CHECK(good.exit_code == 0);
    for (const char* token : {"C1: PASS", "C2: PASS", "C3: PASS", "C4: PASS", "not checked"})
        CHECK(good.out.find(token) != std::string::npos);

    const auto wrong_kind = run_cli("validate --case case1-esc1");
    CHECK(wrong_kind.exit_code == 1);

    // a planted right-half-plane pole fails C5
    const fs::path cfg = fs::temp_directory_path() / "bad_design.json";
    {
        std::ofstream out(cfg);
        out << R"({"plant": {"type": "dynamic_soaring", "wind": {"type": "still"}},
                   "controller": {"type": "esc2", "a": 0.4, "b": 1.8, "omega": 1.0,
                                  "k2": 1.5,
                                  "constants": {"c1": 8.2, "c2": 1.8, "c3": 1.5,
                                                 "c4": -1.0, "c5": 8.8, "c6": 8.1}},
                   "x0": [0, 0, 10, 14, 0, 0]})";
    }
    const auto bad = run_cli("validate --config " + cfg.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("C5") != std::string::npos);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("config and usage errors exit 1") {
    CHECK(run_cli("run --case does-not-exist").exit_code == 1);
    CHECK(run_cli("run").exit_code == 1);
    CHECK(run_cli("run --case case1-esc1 --config x.json").exit_code == 1);
    CHECK(run_cli("run --config /nonexistent/path.json").exit_code == 1);

    const fs::path cfg = fs::temp_directory_path() / "unknown_key.json";
    {
        std::ofstream out(cfg);
        out << R"({"plant": {"type": "toy_classic"}, "controller": {"type": "open_loop"},
                   "x0": [0, 0], "wibble": true})";
    }
    CHECK(run_cli("run --config " + cfg.string()).exit_code == 1);
}

TEST_CASE("physically singular runs exit 2") {
    const fs::path cfg = fs::temp_directory_path() / "stall.json";
    {
        std::ofstream out(cfg);
        out << R"({"plant": {"type": "dynamic_soaring", "wind": {"type": "still"}},
                   "controller": {"type": "open_loop", "phi": 0.0},
                   "x0": [0, 0, 100, 3.0, 1.5, 0], "duration": 5.0})";
    }
    const auto res = run_cli("run --config " + cfg.string());
    CHECK(res.exit_code == 2);
    CHECK(res.out.find("SingularState") != std::string::npos);
}
