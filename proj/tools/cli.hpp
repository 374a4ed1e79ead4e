#pragma once

// Command-line front end: eval, verify, sweep and selftest.

#include <iosfwd>
#include <optional>
#include <string>

#include "besselft/identities.hpp"

namespace besselft::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kPrecondition = 3 };

enum class Command { none, eval, verify, sweep, selftest };
enum class Format { text, json, csv };

struct RunConfig {
  Command command = Command::none;
  std::string target;  // function for eval, identity for verify and sweep
  ParamList params;    // bindings in the order given
  std::optional<double> arg;  // eval: branch of arg z, principal if unset
  VerifyConfig overrides;
  std::optional<Format> format;  // eval/verify default to text, sweep to csv
  std::string output;            // empty: standard output
  std::string grid;              // sweep: grid file
};

// Strict JSON form of RunConfig; ParseError on unknown keys or bad values.
RunConfig config_from_json(const std::string& text);

// Grid file: {"identity": tag, "axes": {name: [values]}, "config": {...}}.
// An empty file or {} is an empty grid. ParseError on unknown keys.
struct GridFile {
  std::string identity;
  ParamGrid grid;
};
GridFile grid_from_json(const std::string& text);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace besselft::cli
