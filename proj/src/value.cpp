#include "datesat/value.hpp"

#include <stdexcept>

namespace datesat {

Sort sort_of(const Value& v) {
  switch (v.index()) {
    case 0: return Sort::Bool;
    case 1: return Sort::Int;
    default: return Sort::Date;
  }
}

std::string to_string(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "True" : "False";
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return to_string(std::get<Date>(v));
}

nlohmann::json to_json(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return to_string(std::get<Date>(v));
}

nlohmann::json to_json(const Assignment& a) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [name, value] : a) doc[name] = to_json(value);
  return doc;
}

Assignment assignment_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("model must be a JSON object");
  Assignment a;
  for (const auto& [name, value] : doc.items()) {
    if (value.is_boolean()) {
      a.emplace(name, value.get<bool>());
    } else if (value.is_number_integer()) {
      a.emplace(name, value.get<std::int64_t>());
    } else if (value.is_string()) {
      auto d = parse_date(value.get<std::string>());
      if (!d) throw std::invalid_argument("invalid date for '" + name + "': " + value.get<std::string>());
      a.emplace(name, *d);
    } else {
      throw std::invalid_argument("unsupported value for '" + name + "'");
    }
  }
  return a;
}

}  // namespace datesat
