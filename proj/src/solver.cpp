#include "coca/solver.hpp"

#include "coca/error.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace coca {

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

struct TempFile {
  std::string path;
  TempFile() {
    std::string tmpl = (std::getenv("TMPDIR") ? std::string(std::getenv("TMPDIR")) : std::string("/tmp")) +
                       "/coca-XXXXXX.smt2";
    const int fd = mkstemps(tmpl.data(), 5);
    if (fd < 0) throw SolverError("cannot create a temporary file");
    close(fd);
    path = tmpl;
  }
  ~TempFile() { std::remove(path.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

}  // namespace

std::string to_string(SolveResult r) {
  switch (r) {
    case SolveResult::Sat: return "sat";
    case SolveResult::Unsat: return "unsat";
    case SolveResult::Unknown: return "unknown";
  }
  return "unknown";
}

SolveResult run_solver(const std::string& script, const SolverConfig& cfg) {
  TempFile file;
  {
    std::ofstream out(file.path);
    out << script;
    if (!out) throw SolverError("cannot write " + file.path);
  }
  const std::string cmd = "timeout " + std::to_string(cfg.timeout_s) + " sh -c " + quote(cfg.command) + " < " +
                          quote(file.path) + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw SolverNotFound("cannot start '" + cfg.command + "'");
  std::string output;
  std::array<char, 4096> buf{};
  while (const auto n = fread(buf.data(), 1, buf.size(), pipe)) output.append(buf.data(), n);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code == 124) return SolveResult::Unknown;
  if (code == 127 || code == 126) throw SolverNotFound("solver command '" + cfg.command + "' not found");
  std::istringstream in(output);
  std::string first;
  in >> first;
  if (first == "sat") return SolveResult::Sat;
  if (first == "unsat") return SolveResult::Unsat;
  if (first == "unknown" || first == "timeout") return SolveResult::Unknown;
  throw MalformedSolverOutput("unexpected solver output: " + output.substr(0, 200));
}

SolveResult solve(const Sentence& s, const SolverConfig& cfg) { return run_solver(emit_smtlib(s), cfg); }

std::optional<std::string> detect_solver() {
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return "z3 -in";
  return std::nullopt;
}

}  // namespace coca
