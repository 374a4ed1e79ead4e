// Acceptance suite: one pass/fail line per criterion. Criteria 1-11 run in-process;
// criterion 12 drives the command-line tool given as the first argument.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "besselft/acceptance.hpp"

namespace {

using besselft::acceptance::Outcome;

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) c.out.append(buf, n);
  int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

Outcome cli_determinism(const std::string& cli) {
  auto start = std::chrono::steady_clock::now();
  const std::string quiet = " 2>/dev/null";
  Captured first = capture(cli + " selftest" + quiet);
  Captured second = capture(cli + " selftest" + quiet);
  bool identical = !first.out.empty() && first.out == second.out && first.code == second.code;

  struct Case {
    std::string args;
    int expected;
  };
  const Case cases[] = {
      {"verify main --mu 0.6", 3},
      {"verify consistency --mu 0.3 --y 1 --theta 0.7 --tol 1e-300", 1},
      {"verify consistency --mu 0.3+ --y 1", 2},
  };
  int honored = 0;
  std::string mismatches;
  for (const auto& c : cases) {
    int code = capture(cli + " " + c.args + " >/dev/null" + quiet).code;
    if (code == c.expected) ++honored;
    else mismatches += " [" + c.args + " -> " + std::to_string(code) + "]";
  }

  Outcome o;
  o.id = 12;
  o.title = "CLI determinism and exit codes";
  o.accurate = identical && honored == 3;
  o.detail = std::string("selftest reports ") + (identical ? "byte-identical" : "DIFFER") + " (exit " +
             std::to_string(first.code) + "), exit codes honored " + std::to_string(honored) + "/3" + mismatches;
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.budget_seconds = besselft::acceptance::budget_seconds(12);
  return o;
}

void report(const Outcome& o, int& failures) {
  std::string text = besselft::acceptance::line(o);
  if (o.accurate && !o.within_budget()) text.replace(text.find("PASS"), 4, "FAIL (over time budget)");
  std::printf("%s [%.1f s, budget %.0f s]\n", text.c_str(), o.seconds, o.budget_seconds);
  std::fflush(stdout);
  if (!o.pass()) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to besselft_cli>\n";
    return 2;
  }
  int failures = 0;
  for (int id : besselft::acceptance::in_process_criteria()) report(besselft::acceptance::run(id), failures);
  report(cli_determinism(argv[1]), failures);
  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
