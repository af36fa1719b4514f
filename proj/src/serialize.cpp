#include "ssbsim/serialize.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

namespace ssbsim {

namespace {

void write_value(std::string& out, const Json& value) {
    switch (value.type()) {
        case Json::value_t::null:
            out += "null";
            break;
        case Json::value_t::boolean:
            out += value.get<bool>() ? "true" : "false";
            break;
        case Json::value_t::number_integer:
            out += std::to_string(value.get<std::int64_t>());
            break;
        case Json::value_t::number_unsigned:
            out += std::to_string(value.get<std::uint64_t>());
            break;
        case Json::value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", value.get<double>());
            out += buf;
            break;
        }
        case Json::value_t::string:
            out += Json(value.get<std::string>()).dump();
            break;
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : value) {
                if (!first) {
                    out += ',';
                }
                first = false;
                write_value(out, item);
            }
            out += ']';
            break;
        }
        case Json::value_t::object: {
            // nlohmann::json objects iterate in key order already.
            out += '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += Json(key).dump();
                out += ':';
                write_value(out, item);
            }
            out += '}';
            break;
        }
        default:
            throw ContractViolation("canonical_json: unsupported value type");
    }
}

char outcome_char(int sign) {
    if (sign == +1) {
        return '+';
    }
    if (sign == -1) {
        return '-';
    }
    throw DataError("outcome eigenvalue must be +1 or -1");
}

}  // namespace

Json to_json(const ExperimentConfig& config) {
    return Json{
        {"experiment", to_string(config.experiment)},
        {"model", to_string(config.model)},
        {"trials", config.trials},
        {"seed", config.seed},
        {"reversal", to_string(config.reversal)},
        {"tomography_shots", config.tomography_shots},
        {"exact_tomography", config.exact_tomography},
    };
}

Json to_json(const TomographyResult& result) {
    return Json{
        {"rho_hat", matrix_to_json(result.rho_hat.matrix())},
        {"purity_hat", result.purity_hat},
        {"fidelity_hat", result.fidelity_hat},
        {"shots_per_setting", result.shots_per_setting},
        {"method", result.method},
    };
}

Json to_json(const ComparisonReport& report) {
    return Json{
        {"chi_square", report.chi_square},
        {"p_value", report.p_value},
        {"dof", report.dof},
        {"purity_diff", report.purity_diff},
        {"fidelity_diff", report.fidelity_diff},
        {"p_threshold", report.p_threshold},
        {"diff_threshold", report.diff_threshold},
        {"verdict", report.verdict()},
    };
}

Json to_json(const VerificationReport& report) {
    Json checks = Json::array();
    for (const auto& check : report.checks) {
        checks.push_back(Json{
            {"name", check.name},
            {"deviation", check.deviation},
            {"tolerance", check.tolerance},
            {"sense", check.sense},
            {"pass", check.pass},
        });
    }
    return Json{
        {"tol", report.tol},
        {"samples", report.samples},
        {"seed", report.seed},
        {"checks", std::move(checks)},
        {"overall", report.overall ? "pass" : "fail"},
    };
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json result_document(const ExperimentResult& result,
                     const std::optional<ComparisonReport>& comparison) {
    Json counts = Json::object();
    for (const auto& [key, count] : result.counts) {
        counts[key] = count;
    }
    Json doc{
        {"config", to_json(result.config)},
        {"counts", std::move(counts)},
        {"exact_ensemble", matrix_to_json(result.exact_ensemble.matrix())},
        {"purity_exact", result.purity_exact},
        {"fidelity_to_target", result.fidelity_to_target},
        {"stats",
         Json{
             {"kept_trials", result.kept_trials},
             {"discarded_trials", result.discarded_trials},
             {"min_kept_fidelity", result.min_kept_fidelity},
             {"max_kept_fidelity", result.max_kept_fidelity},
         }},
        {"tomography", result.tomography ? to_json(*result.tomography) : Json()},
        {"comparison", comparison ? to_json(*comparison) : Json()},
    };
    return doc;
}

std::string canonical_json(const Json& value) {
    std::string out;
    write_value(out, value);
    out += '\n';
    return out;
}

std::string counts_to_csv(const CountsTable& table) {
    std::string out = "setting,outcome,count\n";
    for (const auto& row : table.rows) {
        out += row.setting.label();
        out += ',';
        for (int sign : row.outcome) {
            out += outcome_char(sign);
        }
        out += ',';
        out += std::to_string(row.count);
        out += '\n';
    }
    return out;
}

CountsTable counts_from_csv(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;

    if (!std::getline(in, line)) {
        throw DataError("counts CSV: empty input");
    }
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "setting,outcome,count") {
        throw DataError("counts CSV line 1: expected header 'setting,outcome,count'");
    }

    // (setting label, outcome string) -> accumulated count
    std::map<std::pair<std::string, std::string>, std::uint64_t> cells;
    int nqubits = 0;

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fail = [line_number](const std::string& what) {
            return DataError("counts CSV line " + std::to_string(line_number) +
                             ": " + what);
        };

        const auto first_comma = line.find(',');
        const auto second_comma =
            first_comma == std::string::npos ? std::string::npos
                                             : line.find(',', first_comma + 1);
        if (second_comma == std::string::npos ||
            line.find(',', second_comma + 1) != std::string::npos) {
            throw fail("expected exactly three comma-separated fields");
        }

        const std::string setting = line.substr(0, first_comma);
        const std::string outcome =
            line.substr(first_comma + 1, second_comma - first_comma - 1);
        const std::string count_text = line.substr(second_comma + 1);

        if (setting.empty() || setting.size() > 2) {
            throw fail("setting must be 1 or 2 Pauli axes");
        }
        for (char c : setting) {
            if (c != 'X' && c != 'Y' && c != 'Z') {
                throw fail(std::string("invalid Pauli axis '") + c + "'");
            }
        }
        if (nqubits == 0) {
            nqubits = static_cast<int>(setting.size());
        } else if (static_cast<int>(setting.size()) != nqubits) {
            throw fail("setting width differs from earlier rows");
        }
        if (outcome.size() != setting.size()) {
            throw fail("outcome width must match the setting");
        }
        for (char c : outcome) {
            if (c != '+' && c != '-') {
                throw fail(std::string("invalid outcome character '") + c + "'");
            }
        }

        std::uint64_t count = 0;
        try {
            std::size_t consumed = 0;
            if (count_text.empty() || count_text[0] == '-') {
                throw std::invalid_argument("negative");
            }
            count = std::stoull(count_text, &consumed);
            if (consumed != count_text.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw fail("count must be a nonnegative integer, got '" + count_text + "'");
        }

        cells[{setting, outcome}] += count;
    }

    if (cells.empty()) {
        throw DataError("counts CSV: no data rows");
    }

    // Settings must agree on the shot total.
    std::map<std::string, std::uint64_t> per_setting;
    for (const auto& [key, count] : cells) {
        per_setting[key.first] += count;
    }
    const std::uint64_t shots = per_setting.begin()->second;
    for (const auto& [setting, total] : per_setting) {
        if (total != shots) {
            throw DataError("counts CSV: setting " + setting + " totals " +
                            std::to_string(total) + " shots, expected " +
                            std::to_string(shots));
        }
    }
    if (shots == 0) {
        throw DataError("counts CSV: zero shots per setting");
    }

    CountsTable table;
    table.shots_per_setting = shots;
    for (const auto& [key, count] : cells) {
        PauliSetting setting;
        for (char c : key.first) {
            setting.axes.push_back(pauli_axis_from_char(c));
        }
        std::vector<int> outcome;
        for (char c : key.second) {
            outcome.push_back(c == '+' ? +1 : -1);
        }
        table.rows.push_back(CountsRow{std::move(setting), std::move(outcome), count});
    }
    return table;
}

}  // namespace ssbsim
