#include "datesat/differential.hpp"

#include <algorithm>
#include <future>

namespace datesat {
namespace {

StrategyOutcome run_one(const Problem& p, Strategy s, const DiffOptions& options) {
  StrategyOutcome out;
  out.strategy = s;
  try {
    SolveOptions so;
    so.strategy = s;
    so.bounds = options.bounds;
    so.timeout_ms = options.timeout_ms;
    so.solver = options.solver;
    SolveResult r = solve(p, so);
    out.status = r.status;
    out.time_ms = r.time_ms;
    out.encode_ms = r.encode_ms;
    if (r.model) {
      out.validation = validate_model(p, *r.model, options.bounds);
      out.model = std::move(r.model);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

bool is_connective(ExprKind k) {
  switch (k) {
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Implies:
    case ExprKind::Iff:
    case ExprKind::Xor: return true;
    default: return false;
  }
}

// Each candidate drops one connective in favour of one of its operands.
void shrink_candidates(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (!is_connective(e->kind())) return;
  for (const auto& a : e->args()) out.push_back(a);
  for (std::size_t i = 0; i < e->args().size(); ++i) {
    std::vector<ExprPtr> inner;
    shrink_candidates(e->arg(i), inner);
    for (auto& c : inner) {
      auto args = e->args();
      args[i] = std::move(c);
      out.push_back(e->with_args(std::move(args)));
    }
  }
}

}  // namespace

DiffReport differential_run(const Problem& p, std::span<const Strategy> strategies,
                            const DiffOptions& options) {
  DiffReport report;
  if (options.parallel) {
    std::vector<std::future<StrategyOutcome>> jobs;
    for (Strategy s : strategies) {
      jobs.push_back(std::async(std::launch::async, [&p, s, &options] { return run_one(p, s, options); }));
    }
    for (auto& j : jobs) report.outcomes.push_back(j.get());
  } else {
    for (Strategy s : strategies) report.outcomes.push_back(run_one(p, s, options));
  }

  bool any_sat = false, any_unsat = false;
  for (const auto& o : report.outcomes) {
    if (!o.finished()) continue;
    any_sat |= o.status == smt::Status::Sat;
    any_unsat |= o.status == smt::Status::Unsat;
    if (o.validation && !o.validation->ok()) report.models_valid = false;
  }
  report.agree = !(any_sat && any_unsat);

  if (!report.ok() && options.minimize && !p.constraints.empty()) {
    DiffOptions inner = options;
    inner.minimize = false;
    const std::vector<Strategy> list(strategies.begin(), strategies.end());
    report.witness = minimize_problem(p, [&](const Problem& q) {
      return !differential_run(q, list, inner).ok();
    });
  }
  return report;
}

nlohmann::json to_json(const DiffReport& r) {
  nlohmann::json doc;
  doc["agree"] = r.agree;
  doc["models_valid"] = r.models_valid;
  doc["ok"] = r.ok();
  doc["strategies"] = nlohmann::json::array();
  for (const auto& o : r.outcomes) {
    nlohmann::json item{{"strategy", to_string(o.strategy)},
                        {"status", o.error.empty() ? smt::to_string(o.status) : "error"},
                        {"time_ms", o.time_ms},
                        {"encode_ms", o.encode_ms}};
    if (o.model) item["model"] = to_json(*o.model);
    if (o.validation) item["validation"] = to_json(*o.validation);
    if (!o.error.empty()) item["error"] = o.error;
    doc["strategies"].push_back(std::move(item));
  }
  doc["witness"] = r.witness ? problem_to_json(*r.witness) : nlohmann::json(nullptr);
  return doc;
}

std::vector<std::size_t> ddmin(std::size_t count,
                               const std::function<bool(const std::vector<std::size_t>&)>& fails) {
  std::vector<std::size_t> current(count);
  for (std::size_t i = 0; i < count; ++i) current[i] = i;
  std::size_t n = 2;
  while (current.size() >= 2) {
    n = std::min(n, current.size());
    std::vector<std::vector<std::size_t>> chunks(n);
    for (std::size_t i = 0; i < current.size(); ++i) chunks[i * n / current.size()].push_back(current[i]);

    bool reduced = false;
    for (const auto& chunk : chunks) {
      if (fails(chunk)) {
        current = chunk;
        n = 2;
        reduced = true;
        break;
      }
    }
    if (!reduced && n > 2) {
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != k) rest.insert(rest.end(), chunks[j].begin(), chunks[j].end());
        }
        std::sort(rest.begin(), rest.end());
        if (fails(rest)) {
          current = std::move(rest);
          n = std::max<std::size_t>(n - 1, 2);
          reduced = true;
          break;
        }
      }
    }
    if (!reduced) {
      if (n >= current.size()) break;
      n = std::min(2 * n, current.size());
    }
  }
  return current;
}

Problem minimize_problem(const Problem& p, const std::function<bool(const Problem&)>& fails) {
  const auto subset = [&](const std::vector<std::size_t>& keep) {
    Problem q = p;
    q.constraints.clear();
    for (std::size_t i : keep) q.constraints.push_back(p.constraints[i]);
    return q;
  };
  Problem best = subset(ddmin(p.constraints.size(),
                              [&](const std::vector<std::size_t>& keep) { return fails(subset(keep)); }));

  for (std::size_t i = 0; i < best.constraints.size(); ++i) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<ExprPtr> candidates;
      shrink_candidates(best.constraints[i], candidates);
      for (auto& c : candidates) {
        Problem q = best;
        q.constraints[i] = c;
        if (fails(q)) {
          best = std::move(q);
          changed = true;
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace datesat
