#include "datesat/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

namespace datesat {

namespace {

constexpr char kInternalPrefix = '$';

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  if (s == "True" || s == "False" || s == "Date" || s == "Period") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<Sort> sort_from_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "date") return Sort::Date;
  if (name == "int" || name == "integer") return Sort::Int;
  if (name == "bool" || name == "boolean") return Sort::Bool;
  return std::nullopt;
}

Period fold_period_value(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::PeriodLit: return e.period();
    case ExprKind::PeriodAdd: return fold_period_value(*e.arg(0)) + fold_period_value(*e.arg(1));
    case ExprKind::PeriodSub: return fold_period_value(*e.arg(0)) - fold_period_value(*e.arg(1));
    case ExprKind::PeriodScale: return e.value() * fold_period_value(*e.arg(0));
    default: throw std::logic_error("not a period expression");
  }
}

ExprPtr map_children(const ExprPtr& e, const auto& fn) {
  if (e->args().empty()) return e;
  std::vector<ExprPtr> args;
  args.reserve(e->args().size());
  bool changed = false;
  for (const auto& a : e->args()) {
    args.push_back(fn(a));
    changed = changed || args.back() != a;
  }
  return changed ? e->with_args(std::move(args)) : e;
}

class Desugarer {
 public:
  explicit Desugarer(Problem& out) : out_(out) {
    for (const auto& d : out_.declarations) taken_.insert(d.name);
  }

  ExprPtr rewrite(const ExprPtr& e) {
    ExprPtr node = map_children(e, [this](const ExprPtr& a) { return rewrite(a); });
    if (node->kind() != ExprKind::DateLit) return node;

    std::vector<ExprPtr> comps = node->args();
    for (auto& c : comps) {
      if (c->kind() != ExprKind::IntConst && is_ground_int(*c)) {
        c = Expr::int_const(eval_ground_int(*c));
      }
    }
    node = Expr::date_lit(comps[0], comps[1], comps[2]);
    if (is_constant_date_lit(*node)) {
      const Date d{comps[0]->value(), comps[1]->value(), comps[2]->value()};
      if (!valid(d)) throw WellFormednessError("invalid date literal " + render(*node));
      return node;
    }

    const std::string key = render(*node);
    if (auto it = fresh_.find(key); it != fresh_.end()) return it->second;
    std::string name;
    do {
      name = std::string(1, kInternalPrefix) + "lit" + std::to_string(counter_++);
    } while (taken_.contains(name));
    taken_.insert(name);
    auto var = Expr::date_var(name);
    out_.declarations.push_back({name, Sort::Date});
    pending_.push_back(Expr::int_cmp(CmpOp::Eq, Expr::date_field(var, Field::Year), comps[0]));
    pending_.push_back(Expr::int_cmp(CmpOp::Eq, Expr::date_field(var, Field::Month), comps[1]));
    pending_.push_back(Expr::int_cmp(CmpOp::Eq, Expr::date_field(var, Field::Day), comps[2]));
    fresh_.emplace(key, var);
    return var;
  }

  std::vector<ExprPtr> take_pending() { return std::exchange(pending_, {}); }

 private:
  Problem& out_;
  std::set<std::string> taken_;
  std::unordered_map<std::string, ExprPtr> fresh_;
  std::vector<ExprPtr> pending_;
  int counter_ = 0;
};

void collect_into(const ExprPtr& e, std::set<std::string>& seen, std::vector<ExprPtr>& out) {
  for (const auto& a : e->args()) collect_into(a, seen, out);
  if (e->sort() == Sort::Date && seen.insert(render(*e)).second) out.push_back(e);
}

}  // namespace

Declarations Problem::sort_map() const {
  Declarations m;
  for (const auto& d : declarations) m.emplace(d.name, d.sort);
  return m;
}

bool Problem::is_internal(std::string_view name) const {
  return !name.empty() && name.front() == kInternalPrefix;
}

Problem load_problem(const nlohmann::json& doc) {
  if (!doc.is_object()) throw IngestError("benchmark document must be a JSON object");
  if (!doc.contains("declarations") || !doc["declarations"].is_array()) {
    throw IngestError("missing \"declarations\" array");
  }
  if (!doc.contains("constraints") || !doc["constraints"].is_array()) {
    throw IngestError("missing \"constraints\" array");
  }
  Problem p;
  if (doc.contains("description") && doc["description"].is_string()) {
    p.description = doc["description"].get<std::string>();
  }
  if (doc.contains("coverage_tags")) {
    for (const auto& t : doc["coverage_tags"]) {
      if (!t.is_string()) throw IngestError("coverage_tags entries must be strings");
      p.coverage_tags.push_back(t.get<std::string>());
    }
  }

  std::set<std::string> names;
  for (const auto& entry : doc["declarations"]) {
    if (!entry.is_string()) throw IngestError("declaration must be a string", entry.dump());
    const std::string text = entry.get<std::string>();
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw IngestError("expected \"name: sort\"", text);
    const auto sort = sort_from_name(trim(std::string_view(text).substr(colon + 1)));
    if (!sort) throw IngestError("unknown sort", text);
    std::string_view lhs = std::string_view(text).substr(0, colon);
    while (true) {
      const auto comma = lhs.find(',');
      const std::string name = trim(lhs.substr(0, comma));
      if (!is_identifier(name)) throw IngestError("invalid variable name '" + name + "'", text);
      if (!names.insert(name).second) throw IngestError("duplicate declaration '" + name + "'", text);
      p.declarations.push_back({name, *sort});
      if (comma == std::string_view::npos) break;
      lhs.remove_prefix(comma + 1);
    }
  }

  const Declarations scope = p.sort_map();
  for (const auto& entry : doc["constraints"]) {
    if (!entry.is_string()) throw IngestError("constraint must be a string", entry.dump());
    const std::string text = entry.get<std::string>();
    ExprPtr e;
    try {
      e = parse(text, scope);
    } catch (const LanguageError& err) {
      throw IngestError(err.what(), text);
    }
    if (e->sort() != Sort::Bool) throw IngestError("constraint is not boolean", text);
    p.constraints.push_back(std::move(e));
  }
  return p;
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& err) {
    throw IngestError(std::string("malformed JSON: ") + err.what(), path);
  }
  return load_problem(doc);
}

nlohmann::json problem_to_json(const Problem& p) {
  nlohmann::json doc = nlohmann::json::object();
  if (p.description) doc["description"] = *p.description;
  doc["declarations"] = nlohmann::json::array();
  for (const auto& d : p.declarations) {
    doc["declarations"].push_back(d.name + ": " + std::string(to_string(d.sort)));
  }
  doc["constraints"] = nlohmann::json::array();
  for (const auto& c : p.constraints) doc["constraints"].push_back(render(*c));
  if (!p.coverage_tags.empty()) doc["coverage_tags"] = p.coverage_tags;
  return doc;
}

ExprPtr fold_periods(const ExprPtr& e) {
  if (e->sort() == Sort::Period) {
    if (e->kind() == ExprKind::PeriodLit) return e;
    return Expr::period_lit(fold_period_value(*e));
  }
  if (e->kind() == ExprKind::DateSubPeriod) {
    return Expr::date_add_period(fold_periods(e->arg(0)),
                                 Expr::period_lit(-fold_period_value(*e->arg(1))));
  }
  return map_children(e, [](const ExprPtr& a) { return fold_periods(a); });
}

Problem fold_periods(const Problem& p) {
  Problem out = p;
  for (auto& c : out.constraints) c = fold_periods(c);
  return out;
}

Problem desugar_date_literals(const Problem& p) {
  Problem out = p;
  out.constraints.clear();
  Desugarer d(out);
  for (const auto& c : p.constraints) out.constraints.push_back(d.rewrite(c));
  // Field constraints may themselves mention date literals.
  for (auto pending = d.take_pending(); !pending.empty(); pending = d.take_pending()) {
    for (const auto& c : pending) out.constraints.push_back(d.rewrite(c));
  }
  return out;
}

Problem prepare(const Problem& p) { return desugar_date_literals(fold_periods(p)); }

std::vector<ExprPtr> collect_date_subexprs(const Problem& p) {
  std::set<std::string> seen;
  std::vector<ExprPtr> out;
  for (const auto& c : p.constraints) collect_into(c, seen, out);
  return out;
}

}  // namespace datesat
