#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include <json.hpp>

#include "datesat/calendar.hpp"
#include "datesat/expr.hpp"

namespace datesat {

using Value = std::variant<bool, std::int64_t, Date>;

/// Satisfying assignment / evaluation environment: variable name to value.
using Assignment = std::map<std::string, Value, std::less<>>;

Sort sort_of(const Value& v);
std::string to_string(const Value& v);

/// Dates as ISO strings, integers and booleans as JSON scalars.
nlohmann::json to_json(const Value& v);
nlohmann::json to_json(const Assignment& a);

/// Reads {"name": value, ...}. Strings are parsed as ISO dates. Throws
/// std::invalid_argument on anything else.
Assignment assignment_from_json(const nlohmann::json& doc);

}  // namespace datesat
