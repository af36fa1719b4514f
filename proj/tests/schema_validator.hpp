#pragma once

// Minimal JSON Schema checker for the subset the shipped schemas use:
// type, enum, required, properties, additionalProperties, items,
// minItems/maxItems, minimum/maximum, oneOf. Enough to validate every
// document the CLI emits against the published schema files.

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

namespace ssbsim::testutil {

using nlohmann::json;

inline bool matches_type(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    if (type == "number") return value.is_number();
    if (type == "integer") {
        if (value.is_number_integer() || value.is_number_unsigned()) return true;
        if (value.is_number_float()) {
            const double d = value.get<double>();
            return std::floor(d) == d;
        }
        return false;
    }
    return false;
}

inline void validate_schema(const json& schema, const json& value,
                            const std::string& path,
                            std::vector<std::string>& errors) {
    if (schema.contains("oneOf")) {
        for (const auto& option : schema.at("oneOf")) {
            std::vector<std::string> attempt;
            validate_schema(option, value, path, attempt);
            if (attempt.empty()) {
                return;
            }
        }
        errors.push_back(path + ": no oneOf branch matched");
        return;
    }

    if (schema.contains("type") &&
        !matches_type(value, schema.at("type").get<std::string>())) {
        errors.push_back(path + ": expected type " +
                         schema.at("type").get<std::string>());
        return;
    }

    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& candidate : schema.at("enum")) {
            if (candidate == value) {
                found = true;
                break;
            }
        }
        if (!found) {
            errors.push_back(path + ": value not in enum");
            return;
        }
    }

    if (value.is_number() && schema.contains("minimum") &&
        value.get<double>() < schema.at("minimum").get<double>()) {
        errors.push_back(path + ": below minimum");
    }
    if (value.is_number() && schema.contains("maximum") &&
        value.get<double>() > schema.at("maximum").get<double>()) {
        errors.push_back(path + ": above maximum");
    }

    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required")) {
                if (!value.contains(key.get<std::string>())) {
                    errors.push_back(path + ": missing required key " +
                                     key.get<std::string>());
                }
            }
        }
        const json properties =
            schema.contains("properties") ? schema.at("properties") : json::object();
        for (const auto& [key, member] : value.items()) {
            if (properties.contains(key)) {
                validate_schema(properties.at(key), member, path + "/" + key, errors);
            } else if (schema.contains("additionalProperties")) {
                const json& extra = schema.at("additionalProperties");
                if (extra.is_boolean() && !extra.get<bool>()) {
                    errors.push_back(path + ": unexpected key " + key);
                } else if (extra.is_object()) {
                    validate_schema(extra, member, path + "/" + key, errors);
                }
            }
        }
    }

    if (value.is_array()) {
        if (schema.contains("minItems") &&
            value.size() < schema.at("minItems").get<std::size_t>()) {
            errors.push_back(path + ": too few items");
        }
        if (schema.contains("maxItems") &&
            value.size() > schema.at("maxItems").get<std::size_t>()) {
            errors.push_back(path + ": too many items");
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                validate_schema(schema.at("items"), value.at(i),
                                path + "/" + std::to_string(i), errors);
            }
        }
    }
}

inline std::vector<std::string> schema_errors(const json& schema, const json& value) {
    std::vector<std::string> errors;
    validate_schema(schema, value, "$", errors);
    return errors;
}

}  // namespace ssbsim::testutil
