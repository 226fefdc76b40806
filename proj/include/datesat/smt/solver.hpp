#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "datesat/smt/session.hpp"

namespace datesat::smt {

enum class Status { Sat, Unsat, Unknown };

std::string_view to_string(Status s);

/// The backend could not be launched or produced output outside the
/// protocol. Never reported as Status::Unknown.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawModel {
  std::map<std::string, std::int64_t> values;  // booleans as 0/1

  std::optional<std::int64_t> get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
};

struct SolverConfig {
  std::string executable = "z3";
  std::vector<std::string> args;

  /// DATESAT_SOLVER names the executable (default z3); DATESAT_SOLVER_ARGS
  /// holds whitespace-separated extra arguments for non-z3 backends.
  static SolverConfig from_env();
};

struct ScriptResult {
  Status status = Status::Unknown;
  RawModel model;
  double elapsed_ms = 0;
  std::string output;
};

/// Runs an SMT-LIB2 script in a fresh backend process. The process is killed
/// once the timeout (plus a short grace period) has passed; that case and a
/// solver "unknown" are both Status::Unknown. A timeout of 0 returns Unknown
/// without starting the backend.
ScriptResult run_script(const std::string& script, int timeout_ms, const SolverConfig& config);

/// Parses (model (define-fun x () Int 3) ...) or the bare-parenthesized
/// form. Array and function entries are skipped.
RawModel parse_model(const std::string& text);

class SolverSession {
 public:
  explicit SolverSession(const Session& session, SolverConfig config = SolverConfig::from_env());

  Status check(int timeout_ms);
  /// Valid only after check() returned Sat; throws SolverError otherwise.
  const RawModel& model() const;
  double elapsed_ms() const { return result_.elapsed_ms; }

 private:
  const Session& session_;
  SolverConfig config_;
  ScriptResult result_;
  bool checked_ = false;
};

}  // namespace datesat::smt
