#include "datesat/smt/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <sstream>

extern char** environ;

namespace datesat::smt {

namespace {

constexpr int kGraceMs = 500;

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : s_(text) {}

  bool next(SExpr& out) {
    skip();
    if (pos_ >= s_.size()) return false;
    out = read();
    return true;
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) throw SolverError("unexpected end of solver output");
    SExpr e;
    if (s_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      for (skip(); pos_ < s_.size() && s_[pos_] != ')'; skip()) e.list.push_back(read());
      if (pos_ >= s_.size()) throw SolverError("unbalanced parentheses in solver output");
      ++pos_;
      return e;
    }
    if (s_[pos_] == ')') throw SolverError("unexpected ')' in solver output");
    if (s_[pos_] == '|' || s_[pos_] == '"') {
      const char close = s_[pos_];
      const auto end = s_.find(close, pos_ + 1);
      if (end == std::string_view::npos) throw SolverError("unterminated literal in solver output");
      e.atom = std::string(s_.substr(pos_ + 1, end - pos_ - 1));
      if (close == '"') e.atom = "\"" + e.atom + "\"";
      pos_ = end + 1;
      return e;
    }
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')') {
      ++pos_;
    }
    e.atom = std::string(s_.substr(start, pos_ - start));
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::optional<std::int64_t> integer_value(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "true") return 1;
    if (e.atom == "false") return 0;
    if (e.atom.empty() || !std::all_of(e.atom.begin(), e.atom.end(), ::isdigit)) return std::nullopt;
    return std::stoll(e.atom);
  }
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") {
    if (auto v = integer_value(e.list[1])) return -*v;
  }
  return std::nullopt;
}

void collect_definitions(const SExpr& e, RawModel& model) {
  for (const auto& item : e.list) {
    if (!item.is_list || item.list.size() != 5 || item.list[0].is_list ||
        item.list[0].atom != "define-fun") {
      continue;
    }
    const auto& params = item.list[2];
    const auto& sort = item.list[3];
    if (!params.is_list || !params.list.empty() || sort.is_list) continue;
    if (sort.atom != "Int" && sort.atom != "Bool") continue;
    if (auto v = integer_value(item.list[4])) model.values[item.list[1].atom] = *v;
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

SolverConfig SolverConfig::from_env() {
  SolverConfig c;
  if (const char* exe = std::getenv("DATESAT_SOLVER"); exe && *exe) c.executable = exe;
  if (const char* extra = std::getenv("DATESAT_SOLVER_ARGS")) {
    std::istringstream in(extra);
    for (std::string a; in >> a;) c.args.push_back(a);
  }
  return c;
}

RawModel parse_model(const std::string& text) {
  RawModel model;
  SExprReader reader(text);
  SExpr e;
  while (reader.next(e)) {
    if (!e.is_list) continue;
    if (!e.list.empty() && !e.list[0].is_list && e.list[0].atom == "error") {
      throw SolverError("solver error while printing model: " + e.list.back().atom);
    }
    collect_definitions(e, model);
  }
  return model;
}

ScriptResult run_script(const std::string& script, int timeout_ms, const SolverConfig& config) {
  ScriptResult result;
  if (timeout_ms <= 0) return result;

  std::vector<std::string> argv_store{config.executable};
  const bool is_z3 = config.executable == "z3" ||
                     config.executable.ends_with("/z3");
  if (is_z3) {
    argv_store.insert(argv_store.end(), {"-in", "-smt2", "-t:" + std::to_string(timeout_ms)});
  }
  argv_store.insert(argv_store.end(), config.args.begin(), config.args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  argv.push_back(nullptr);

  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  }
  signal(SIGPIPE, SIG_IGN);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], 0);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], 1);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], 2);
  posix_spawn_file_actions_addclose(&actions, in_pipe[1]);
  posix_spawn_file_actions_addclose(&actions, out_pipe[0]);

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, config.executable.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(in_pipe[0]);
  close(out_pipe[1]);
  if (rc != 0) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    throw SolverError("cannot launch solver '" + config.executable + "': " + std::strerror(rc));
  }

  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  const auto deadline = start + std::chrono::milliseconds(timeout_ms + kGraceMs);
  std::size_t written = 0;
  int write_fd = in_pipe[1];
  bool killed = false;
  char buf[65536];
  while (true) {
    pollfd fds[2];
    int n = 0;
    fds[n++] = {out_pipe[0], POLLIN, 0};
    if (write_fd >= 0) fds[n++] = {write_fd, POLLOUT, 0};
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now()).count();
    if (left <= 0) {
      kill(pid, SIGKILL);
      killed = true;
      break;
    }
    if (poll(fds, n, static_cast<int>(left)) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (write_fd >= 0 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t w = write(write_fd, script.data() + written, script.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      if (w < 0 && errno != EAGAIN) written = script.size();
      if (written >= script.size()) {
        close(write_fd);
        write_fd = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t r = read(out_pipe[0], buf, sizeof buf);
      if (r > 0) {
        result.output.append(buf, static_cast<std::size_t>(r));
      } else if (r == 0 || errno != EAGAIN) {
        break;
      }
    }
  }
  if (write_fd >= 0) close(write_fd);
  close(out_pipe[0]);
  int wstatus = 0;
  waitpid(pid, &wstatus, 0);
  result.elapsed_ms = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start).count();

  const auto& out = result.output;
  std::size_t pos = 0;
  std::optional<Status> status;
  while (pos < out.size()) {
    auto eol = out.find('\n', pos);
    if (eol == std::string::npos) eol = out.size();
    const std::string line = trim(out.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;
    if (line == "sat") status = Status::Sat;
    else if (line == "unsat") status = Status::Unsat;
    else if (line == "unknown" || line == "timeout") status = Status::Unknown;
    else if (line.starts_with("(error")) throw SolverError("solver reported: " + line);
    else continue;
    break;
  }
  if (!status) {
    if (killed) return result;
    throw SolverError("no verdict from solver '" + config.executable + "': " + trim(out));
  }
  result.status = *status;
  if (result.status == Status::Sat) {
    try {
      result.model = parse_model(out.substr(std::min(pos, out.size())));
    } catch (const SolverError&) {
      if (!killed) throw;
      result.status = Status::Unknown;
    }
  }
  return result;
}

SolverSession::SolverSession(const Session& session, SolverConfig config)
    : session_(session), config_(std::move(config)) {}

Status SolverSession::check(int timeout_ms) {
  result_ = run_script(session_.dump(), timeout_ms, config_);
  checked_ = true;
  return result_.status;
}

const RawModel& SolverSession::model() const {
  if (!checked_ || result_.status != Status::Sat) throw SolverError("no model: last check was not sat");
  return result_.model;
}

}  // namespace datesat::smt
