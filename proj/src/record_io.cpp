#include "dsoar/record_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace dsoar {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string record_to_csv(const RunRecord& record) {
    std::string out;
    out.reserve(record.rows.size() * record.columns.size() * 12);
    for (std::size_t i = 0; i < record.columns.size(); ++i) {
        if (i) out += ',';
        out += record.columns[i];
    }
    out += '\n';
    for (const auto& row : record.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json summary_to_json(const RunSummary& s) {
    nlohmann::json j;
    j["aborted"] = s.aborted;
    if (s.aborted) j["abort_reason"] = s.abort_reason;
    j["objective_initial"] = s.objective_initial;
    j["objective_final"] = s.objective_final;
    if (s.energy) {
        j["energy"] = {
            {"te_initial", s.energy->te_initial},
            {"te_final", s.energy->te_final},
            {"te_min", s.energy->te_min},
            {"te_max", s.energy->te_max},
            {"relative_span", s.energy->relative_span},
            {"rate_identity_rms", s.energy->rate_identity_rms},
        };
    }
    auto arr = nlohmann::json::array();
    for (const auto& e : s.controller_extrema)
        arr.push_back({{"name", e.name}, {"min", e.min}, {"max", e.max}, {"final", e.final}});
    j["controller_states"] = arr;
    return j;
}

}  // namespace

std::string record_to_json(const RunRecord& record) {
    nlohmann::json j;
    j["scenario"] = record.scenario_name;
    j["columns"] = record.columns;
    j["rows"] = record.rows;
    j["summary"] = summary_to_json(record.summary);
    return j.dump(2) + "\n";
}

std::string summary_text(const RunRecord& record) {
    std::ostringstream os;
    os << "scenario:           " << record.scenario_name << "\n";
    os << "rows:               " << record.rows.size() << "\n";
    const auto& s = record.summary;
    os << "status:             " << (s.aborted ? "ABORTED (" + s.abort_reason + ")" : "completed")
       << "\n";
    os << "J initial:          " << format_double(s.objective_initial) << "\n";
    os << "J final:            " << format_double(s.objective_final) << "\n";
    if (s.energy) {
        os << "TE initial [J]:     " << format_double(s.energy->te_initial) << "\n";
        os << "TE final [J]:       " << format_double(s.energy->te_final) << "\n";
        os << "TE min [J]:         " << format_double(s.energy->te_min) << "\n";
        os << "TE max [J]:         " << format_double(s.energy->te_max) << "\n";
        os << "TE relative span:   " << format_double(s.energy->relative_span) << "\n";
        os << "e-rate RMS residual: " << format_double(s.energy->rate_identity_rms) << "\n";
    }
    for (const auto& e : s.controller_extrema)
        os << "state " << e.name << ": min " << format_double(e.min) << ", max "
           << format_double(e.max) << ", final " << format_double(e.final) << "\n";
    return os.str();
}

}  // namespace dsoar
