#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "besselft/acceptance.hpp"
#include "besselft/bessel.hpp"
#include "besselft/report_io.hpp"
#include "besselft/spherical.hpp"
#include "json.hpp"

namespace besselft::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* const kParamNames[] = {"nu", "mu", "z", "y", "sign", "a", "b", "c", "p", "theta"};

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ParseError("unknown format '" + s + "'");
}

Command parse_command(const std::string& s) {
  if (s == "eval") return Command::eval;
  if (s == "verify") return Command::verify;
  if (s == "sweep") return Command::sweep;
  if (s == "selftest") return Command::selftest;
  throw ParseError("unknown command '" + s + "'");
}

cplx json_complex(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_complex(j.get<std::string>());
  throw ParseError("expected a number or complex literal, got " + j.dump());
}

void set_param(ParamList& params, const std::string& name, cplx value) {
  for (auto& [n, v] : params)
    if (n == name) {
      v = value;
      return;
    }
  params.emplace_back(name, value);
}

// Reads one of the shared override keys; false if the key is not one of them.
bool read_override(VerifyConfig& cfg, const std::string& key, const Json& value) {
  if (key == "tol") cfg.tol = value.get<double>();
  else if (key == "eps_start") cfg.eps_start = value.get<double>();
  else if (key == "eps_ratio") cfg.eps_ratio = value.get<double>();
  else if (key == "eps_steps") cfg.eps_steps = value.get<int>();
  else if (key == "richardson_depth") cfg.richardson_depth = value.get<int>();
  else return false;
  return true;
}

void merge_overrides(VerifyConfig& base, const VerifyConfig& top) {
  if (top.tol) base.tol = top.tol;
  if (top.eps_start) base.eps_start = top.eps_start;
  if (top.eps_ratio) base.eps_ratio = top.eps_ratio;
  if (top.eps_steps) base.eps_steps = top.eps_steps;
  if (top.richardson_depth) base.richardson_depth = top.richardson_depth;
}

Json parse_json_object(const std::string& text, const char* what) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + cfg.output + "'");
  file << text;
}

cplx bound(const ParamList& params, const std::string& name) {
  for (const auto& [n, v] : params)
    if (n == name) return v;
  throw UsageError("missing --" + name);
}

EvalRecord evaluate(const RunConfig& cfg) {
  static const std::map<std::string, std::function<EvalResult(cplx, const BranchedArgument&)>> functions = {
      {"J", [](cplx nu, const BranchedArgument& z) { return bessel_j(nu, z); }},
      {"Y", [](cplx nu, const BranchedArgument& z) { return bessel_y(nu, z); }},
      {"I", [](cplx nu, const BranchedArgument& z) { return bessel_i(nu, z); }},
      {"H1", [](cplx nu, const BranchedArgument& z) { return hankel(1, nu, z); }},
      {"H2", [](cplx nu, const BranchedArgument& z) { return hankel(2, nu, z); }},
      {"sphericalJ", [](cplx mu, const BranchedArgument& z) { return spherical_j(mu, z); }},
  };
  auto fn = functions.find(cfg.target);
  if (fn == functions.end()) throw UsageError("unknown function '" + cfg.target + "'");
  const std::string order = cfg.target == "sphericalJ" ? "mu" : "nu";
  for (const auto& [name, value] : cfg.params)
    if (name != order && name != "z") throw UsageError("--" + name + " does not apply to " + cfg.target);

  EvalRecord rec;
  rec.function = cfg.target;
  rec.inputs = {{order, bound(cfg.params, order)}, {"z", bound(cfg.params, "z")}};
  BranchedArgument z(rec.inputs[1].second);
  if (cfg.arg) {
    try {
      z = BranchedArgument::with_arg(rec.inputs[1].second, *cfg.arg);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  rec.arg = z.arg();
  rec.result = fn->second(rec.inputs[0].second, z);
  return rec;
}

int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  EvalRecord rec;
  try {
    rec = evaluate(cfg);
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kFail;
  }
  switch (cfg.format.value_or(Format::text)) {
    case Format::text: emit(cfg, eval_to_text(rec), out); break;
    case Format::json: emit(cfg, eval_to_json(rec) + "\n", out); break;
    case Format::csv: emit(cfg, eval_to_csv(rec), out); break;
  }
  return kPass;
}

std::string render(const RunConfig& cfg, Format fallback, const std::string& tag, const SweepSummary& s,
                   bool single) {
  switch (cfg.format.value_or(fallback)) {
    case Format::text: return single ? report_to_text(s.reports.front()) : sweep_to_text(s);
    case Format::json: return (single ? report_to_json(s.reports.front()) : sweep_to_json(tag, s)) + "\n";
    case Format::csv: return sweep_to_csv(tag, s);
  }
  return "";
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  ParamList params;
  try {
    params = complete_params(cfg.target, cfg.params);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  SweepSummary s;
  s.reports.push_back(verify(cfg.target, params, cfg.overrides));
  s.pass_count = s.reports.front().pass ? 1 : 0;
  s.max_rel_err = s.reports.front().rel_err;
  emit(cfg, render(cfg, Format::text, cfg.target, s, true), out);
  return s.reports.front().pass ? kPass : kFail;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.grid.empty()) throw UsageError("sweep needs --grid");
  GridFile file = grid_from_json(read_file(cfg.grid));
  std::string tag = cfg.target.empty() ? file.identity : cfg.target;
  if (tag.empty()) throw UsageError("no identity given on the command line or in the grid file");
  if (!cfg.target.empty() && !file.identity.empty() && cfg.target != file.identity)
    throw UsageError("grid file is for '" + file.identity + "', not '" + cfg.target + "'");
  merge_overrides(file.grid.config, cfg.overrides);
  SweepSummary s;
  try {
    identity_info(tag);
    s = sweep(file.grid, tag);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  emit(cfg, render(cfg, Format::csv, tag, s, false), out);
  return s.pass_count == static_cast<int>(s.reports.size()) ? kPass : kFail;
}

int run_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  int accurate = 0;
  bool green = true;
  const auto ids = acceptance::in_process_criteria();
  for (int id : ids) {
    acceptance::Outcome o = acceptance::run(id);
    text += acceptance::line(o) + "\n";
    if (cfg.output.empty()) out << acceptance::line(o) << "\n" << std::flush;
    err << "criterion " << id << ": " << o.seconds << " s (budget " << o.budget_seconds << " s)"
        << (o.within_budget() ? "" : " OVER BUDGET") << "\n";
    accurate += o.accurate ? 1 : 0;
    green = green && o.pass();
  }
  std::string tail = "selftest: " + std::to_string(accurate) + "/" + std::to_string(ids.size()) + " criteria passed\n";
  if (cfg.output.empty()) out << tail;
  else emit(cfg, text + tail, out);
  return green ? kPass : kFail;
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  Json j = parse_json_object(text, "config");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") cfg.command = parse_command(value.get<std::string>());
      else if (key == "target") cfg.target = value.get<std::string>();
      else if (key == "params") {
        if (!value.is_object()) throw ParseError("config: params must be an object");
        for (const auto& [name, v] : value.items()) set_param(cfg.params, name, json_complex(v));
      } else if (key == "arg") cfg.arg = value.get<double>();
      else if (key == "format") cfg.format = parse_format(value.get<std::string>());
      else if (key == "output") cfg.output = value.get<std::string>();
      else if (key == "grid") cfg.grid = value.get<std::string>();
      else if (!read_override(cfg.overrides, key, value)) throw ParseError("config: unknown key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return cfg;
}

GridFile grid_from_json(const std::string& text) {
  GridFile file;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return file;
  Json j = parse_json_object(text, "grid");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "identity") file.identity = value.get<std::string>();
      else if (key == "axes") {
        if (!value.is_object()) throw ParseError("grid: axes must be an object");
        for (const auto& [name, values] : value.items()) {
          if (!values.is_array()) throw ParseError("grid: axis '" + name + "' must be an array");
          std::vector<cplx> points;
          for (const auto& v : values) points.push_back(json_complex(v));
          file.grid.axes.emplace_back(name, std::move(points));
        }
      } else if (key == "config") {
        if (!value.is_object()) throw ParseError("grid: config must be an object");
        for (const auto& [k, v] : value.items())
          if (!read_override(file.grid.config, k, v)) throw ParseError("grid: unknown config key '" + k + "'");
      } else {
        throw ParseError("grid: unknown key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("grid: ") + e.what());
  }
  return file;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if ((cfg.command == Command::eval || cfg.command == Command::verify) && cfg.target.empty())
      throw UsageError("missing function or identity name");
    switch (cfg.command) {
      case Command::none: throw UsageError("no command given");
      case Command::eval: return run_eval(cfg, out, err);
      case Command::verify: return run_verify(cfg, out);
      case Command::sweep: return run_sweep(cfg, out);
      case Command::selftest: return run_selftest(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const SectorError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bessel functions of complex order and numerical checks of their integral identities."};
  app.name("besselft");
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON file with RunConfig fields");

  std::string target, format, output, grid;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> param_options;
  double arg = 0.0, tol = 0.0, eps_start = 0.0, eps_ratio = 0.0;
  int eps_steps = 0, depth = 0;
  std::map<std::string, CLI::Option*> opt;

  auto common = [&](CLI::App* sub) {
    sub->fallthrough();
    opt[sub->get_name() + ":format"] =
        sub->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    opt[sub->get_name() + ":output"] = sub->add_option("--output", output, "write to a file instead of stdout");
  };
  auto param = [&](CLI::App* sub, const std::string& name) {
    param_options[sub->get_name() + ":" + name] = sub->add_option("--" + name, raw[name], "complex literal a+bi");
  };
  auto overrides = [&](CLI::App* sub) {
    const std::string prefix = sub->get_name() + ":";
    opt[prefix + "tol"] = sub->add_option("--tol", tol, "pass tolerance");
    opt[prefix + "eps_start"] = sub->add_option("--eps-start", eps_start, "first regularization epsilon");
    opt[prefix + "eps_ratio"] = sub->add_option("--eps-ratio", eps_ratio, "epsilon ratio between steps");
    opt[prefix + "eps_steps"] = sub->add_option("--eps-steps", eps_steps, "number of epsilon steps");
    opt[prefix + "depth"] = sub->add_option("--richardson-depth", depth, "Richardson table depth");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate J, Y, I, H1, H2 or sphericalJ");
  eval->add_option("function", target, "J, Y, I, H1, H2 or sphericalJ");
  for (const char* name : {"nu", "mu", "z"}) param(eval, name);
  opt["eval:arg"] = eval->add_option("--arg", arg, "branch of arg z (default: principal)");
  common(eval);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check one identity at one parameter point");
  verify_cmd->add_option("identity", target,
                         "weber, hardy, weber2, lemma1, emot, lemma2, main, pipeline or consistency");
  for (const char* name : kParamNames)
    if (std::string(name) != "z") param(verify_cmd, name);
  overrides(verify_cmd);
  common(verify_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "check one identity over a parameter grid");
  sweep_cmd->add_option("identity", target, "identity tag (or \"identity\" in the grid file)");
  sweep_cmd->add_option("--grid", grid, "JSON grid file");
  overrides(sweep_cmd);
  common(sweep_cmd);

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = config_from_json(read_file(config_path));
    const std::pair<CLI::App*, Command> subs[] = {
        {eval, Command::eval}, {verify_cmd, Command::verify}, {sweep_cmd, Command::sweep}, {selftest, Command::selftest}};
    CLI::App* used = nullptr;
    for (const auto& [sub, command] : subs)
      if (sub->parsed()) {
        used = sub;
        if (cfg.command != Command::none && cfg.command != command)
          throw UsageError("command conflicts with the config file");
        cfg.command = command;
      }
    const std::string prefix = used ? used->get_name() + ":" : "";
    auto given = [&](const std::string& key) {
      auto it = opt.find(prefix + key);
      return it != opt.end() && it->second->count() > 0;
    };
    for (const auto& [key, option] : param_options)
      if (used && key.rfind(prefix, 0) == 0 && option->count()) {
        std::string name = key.substr(prefix.size());
        set_param(cfg.params, name, parse_complex(raw[name]));
      }
    if (!target.empty()) cfg.target = target;
    if (given("format")) cfg.format = parse_format(format);
    if (given("output")) cfg.output = output;
    if (given("arg")) cfg.arg = arg;
    if (!grid.empty()) cfg.grid = grid;
    VerifyConfig flags;
    if (given("tol")) flags.tol = tol;
    if (given("eps_start")) flags.eps_start = eps_start;
    if (given("eps_ratio")) flags.eps_ratio = eps_ratio;
    if (given("eps_steps")) flags.eps_steps = eps_steps;
    if (given("depth")) flags.richardson_depth = depth;
    merge_overrides(cfg.overrides, flags);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  }
  if (cfg.command == Command::none) {
    err << app.help();
    return kUsage;
  }
  return execute(cfg, out, err);
}

}  // namespace besselft::cli
