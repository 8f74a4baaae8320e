// Copyright 2026 The sortc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sortc/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sortc/eval.hpp"
#include "sortc/signatures.hpp"
#include "sortc/surface.hpp"
#include "sortc/typecheck.hpp"

namespace sortc {
namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string file;
  bool json = false;
};

struct Report {
  std::string command;
  std::vector<Diagnostic> diagnostics;
  Json result = nullptr;
  std::vector<std::string> lines;  // human-readable body
};

bool use_color(const std::ostream& out) {
  const char* mode = std::getenv("SORTC_COLOR");
  std::string m = mode ? mode : "auto";
  if (m == "always") return true;
  if (m == "never") return false;
  return &out == &std::cout && isatty(fileno(stdout));
}

Json diagnostic_json(const Diagnostic& d) {
  Json extra = Json::object();
  for (const auto& [k, v] : d.extra) extra[k] = v;
  return Json{{"code", d.code},
              {"severity", d.severity == Severity::Error ? "error" : "warning"},
              {"message", d.message},
              {"line", d.span.line},
              {"col", d.span.col},
              {"extra", extra}};
}

int emit(const Common& c, Report r, std::ostream& out) {
  sort_diagnostics(r.diagnostics);
  int code = exit_code_for(r.diagnostics);
  if (c.json) {
    Json diags = Json::array();
    for (const auto& d : r.diagnostics) diags.push_back(diagnostic_json(d));
    Json doc{{"version", kOutputVersion},
             {"command", r.command},
             {"ok", code == 0},
             {"diagnostics", diags},
             {"result", r.result}};
    out << doc.dump(2) << "\n";
    return code;
  }
  bool color = use_color(out);
  for (const auto& d : r.diagnostics) {
    std::string sev = d.severity == Severity::Error ? "error" : "warning";
    if (color) sev = "\033[1;31m" + sev + "\033[0m";
    out << c.file << ":" << d.span.line << ":" << d.span.col << ": " << sev
        << "[" << d.code << "]: " << d.message << "\n";
    for (const auto& [k, v] : d.extra) out << "  " << k << ": " << v << "\n";
  }
  for (const auto& l : r.lines) out << l << "\n";
  return code;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses the input file; on failure fills the report and returns nothing.
std::optional<Program> load(const Common& c, Report& r, std::ostream& err,
                            int& usage) {
  auto text = read_file(c.file);
  if (!text) {
    err << "sortc: cannot read '" << c.file << "'\n";
    usage = kExitUsage;
    return std::nullopt;
  }
  auto parsed = parse_program(*text);
  if (!parsed.ok()) {
    r.diagnostics = parsed.diagnostics;
    return std::nullopt;
  }
  return std::move(*parsed.value);
}

std::optional<std::optional<Type>> parse_goal(const std::string& goal,
                                              std::ostream& err) {
  if (goal.empty()) return std::optional<Type>{};
  auto t = parse_type(goal);
  if (!t.ok()) {
    err << "sortc: cannot parse --goal '" << goal << "'\n";
    return std::nullopt;
  }
  return std::optional<Type>{*t.value};
}

bool signature_ok(const Program& p, Report& r) {
  r.diagnostics = ursig_wf(p.ursig);
  auto more = sig_wf(p.sig, p.ursig);
  r.diagnostics.insert(r.diagnostics.end(), more.begin(), more.end());
  return r.diagnostics.empty();
}

struct CheckFlags {
  std::string goal;
  bool optimize = false;
  bool no_memo = false;
};

int cmd_check(const Common& c, const CheckFlags& f, std::ostream& out,
              std::ostream& err) {
  Report r{"check", {}, nullptr, {}};
  int usage = 0;
  auto prog = load(c, r, err, usage);
  if (usage) return usage;
  if (prog) {
    auto goal = parse_goal(f.goal, err);
    if (!goal) return kExitUsage;
    CheckOptions opts;
    opts.optimize_tracks = f.optimize;
    opts.memoize = !f.no_memo;
    auto outcome = check_program(*prog, *goal, opts);
    r.diagnostics = outcome.diagnostics;
    if (outcome.ok()) {
      r.result = Json{{"type", print_type(*outcome.type)}};
      r.lines.push_back("ok: main : " + print_type(*outcome.type));
    }
  }
  return emit(c, std::move(r), out);
}

struct RunFlags {
  std::string goal;
  std::size_t fuel = 100000;
  bool trace = false;
  bool erase = false;
  bool no_check = false;
};

int cmd_run(const Common& c, const RunFlags& f, std::ostream& out,
            std::ostream& err) {
  Report r{"run", {}, nullptr, {}};
  int usage = 0;
  auto prog = load(c, r, err, usage);
  if (usage) return usage;
  if (!prog) return emit(c, std::move(r), out);
  auto goal = parse_goal(f.goal, err);
  if (!goal) return kExitUsage;
  if (f.no_check) {
    if (!signature_ok(*prog, r)) return emit(c, std::move(r), out);
  } else {
    auto outcome = check_program(*prog, *goal);
    r.diagnostics = outcome.diagnostics;
    if (!outcome.ok()) return emit(c, std::move(r), out);
  }
  Expr cur = f.erase ? erase(prog->main) : prog->main;
  Json trace = Json::array();
  std::size_t steps = 0;
  EvalStatus status = EvalStatus::Value;
  while (true) {
    if (f.trace) {
      trace.push_back(print_expr(cur));
      r.lines.push_back("[" + std::to_string(steps) + "] " + print_expr(cur));
    }
    if (is_value(cur)) {
      status = EvalStatus::Value;
      break;
    }
    if (steps == f.fuel) {
      status = EvalStatus::OutOfFuel;
      break;
    }
    auto next = step(cur);
    if (!next) {
      status = EvalStatus::Stuck;
      break;
    }
    cur = *next;
    ++steps;
  }
  if (status != EvalStatus::Value) {
    r.diagnostics.push_back(make_diagnostic(
        status == EvalStatus::Stuck ? "STUCK" : "OUT_OF_FUEL",
        std::string("evaluation ended ") +
            (status == EvalStatus::Stuck ? "in a stuck state"
                                         : "without reaching a value") +
            ": " + print_expr(cur)));
  }
  r.result = Json{{"status", status_name(status)},
                  {"term", print_expr(cur)},
                  {"steps", steps}};
  if (f.trace) r.result["trace"] = trace;
  if (status == EvalStatus::Value) r.lines.push_back(print_expr(cur));
  return emit(c, std::move(r), out);
}

int cmd_sig(const Common& c, bool closure, std::ostream& out,
            std::ostream& err) {
  Report r{"sig", {}, nullptr, {}};
  int usage = 0;
  auto prog = load(c, r, err, usage);
  if (usage) return usage;
  if (!prog || !signature_ok(*prog, r)) return emit(c, std::move(r), out);
  SigEnv env(prog->sig);
  Json sorts = Json::array(), edges = Json::array(), ctors = Json::array();
  for (const auto& s : env.closure().sorts()) {
    sorts.push_back(Json{{"name", s}, {"refines", *env.datatype_of(s)}});
    r.lines.push_back("sort " + s + " of " + *env.datatype_of(s));
  }
  if (closure) {
    for (const auto& [a, b] : env.closure().pairs()) {
      if (a == b) continue;
      edges.push_back(Json::array({a, b}));
      r.lines.push_back(a + " <= " + b);
    }
  } else {
    for (const auto& blk : prog->sig.blocks)
      for (const auto& it : blk.items)
        if (auto e = it.subsort()) {
          edges.push_back(Json::array({e->sub, e->sup}));
          r.lines.push_back(e->sub + " <= " + e->sup);
        }
  }
  for (const auto& k : env.typings()) {
    ctors.push_back(Json{
        {"ctor", k.ctor}, {"arg", print_type(k.arg)}, {"result", k.result}});
    r.lines.push_back(k.ctor + " : " + print_type(k.arg) + " -> " + k.result);
  }
  r.result = Json{{"sorts", sorts}, {"edges", edges}, {"ctors", ctors}};
  return emit(c, std::move(r), out);
}

int cmd_coverage(const Common& c, const CheckFlags& f, std::ostream& out,
                 std::ostream& err) {
  Report r{"coverage", {}, nullptr, {}};
  int usage = 0;
  auto prog = load(c, r, err, usage);
  if (usage) return usage;
  if (!prog) return emit(c, std::move(r), out);
  auto goal = parse_goal(f.goal, err);
  if (!goal) return kExitUsage;
  CheckOptions opts;
  opts.optimize_tracks = f.optimize;
  opts.memoize = !f.no_memo;
  CoverageLog log;
  auto outcome = check_program(*prog, *goal, opts, &log);
  r.diagnostics = outcome.diagnostics;
  Json cases = Json::array();
  for (const auto& rec : log) {
    Json arms = Json::array();
    r.lines.push_back("case at " + std::to_string(rec.loc.line) + ":" +
                      std::to_string(rec.loc.col) + " on " +
                      print_type(rec.scrutinee));
    for (const auto& arm : rec.arms) {
      Json tracks = Json::array();
      r.lines.push_back("  arm " + print_pattern(arm.pattern));
      for (const auto& t : arm.tracks) {
        tracks.push_back(print_track(t));
        r.lines.push_back("    " + print_track(t));
      }
      arms.push_back(
          Json{{"pattern", print_pattern(arm.pattern)}, {"tracks", tracks}});
    }
    r.lines.push_back("  residual " + print_pattern(rec.residual) +
                      (rec.exhaustive ? " (exhaustive)" : " (not exhaustive)"));
    cases.push_back(Json{{"line", rec.loc.line},
                         {"col", rec.loc.col},
                         {"scrutinee", print_type(rec.scrutinee)},
                         {"arms", arms},
                         {"residual", print_pattern(rec.residual)},
                         {"exhaustive", rec.exhaustive}});
  }
  r.result = Json{{"cases", cases}};
  return emit(c, std::move(r), out);
}

}  // namespace

int run_sortc(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  CLI::App app{"sortc: checker and evaluator for datasort-refined programs",
               "sortc"};
  app.require_subcommand(1);

  Common common;
  CheckFlags check_flags, coverage_flags;
  RunFlags run_flags;
  bool closure = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", common.file, "program file (.dsr)")->required();
    sub->add_flag("--json", common.json, "machine-readable output");
  };

  auto* check = app.add_subcommand("check", "check the program's signature and main");
  add_common(check);
  check->add_option("--goal", check_flags.goal, "type to check main against");
  check->add_flag("--optimize", check_flags.optimize, "prune subsumed tracks");
  check->add_flag("--no-memo", check_flags.no_memo, "disable memoization");

  auto* run = app.add_subcommand("run", "check, then evaluate main");
  add_common(run);
  run->add_option("--goal", run_flags.goal, "type to check main against");
  run->add_option("--fuel", run_flags.fuel, "maximum number of steps");
  run->add_flag("--trace", run_flags.trace, "print every intermediate term");
  run->add_flag("--erase", run_flags.erase, "drop annotations before running");
  run->add_flag("--no-check", run_flags.no_check, "skip typechecking main");

  auto* sig = app.add_subcommand("sig", "print the checked signature");
  add_common(sig);
  sig->add_flag("--closure", closure, "list the full subsort relation");

  auto* coverage = app.add_subcommand("coverage", "show tracks per case arm");
  add_common(coverage);
  coverage->add_option("--goal", coverage_flags.goal, "type to check main against");
  coverage->add_flag("--optimize", coverage_flags.optimize, "prune subsumed tracks");
  coverage->add_flag("--no-memo", coverage_flags.no_memo, "disable memoization");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "sortc: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (*check) return cmd_check(common, check_flags, out, err);
  if (*run) return cmd_run(common, run_flags, out, err);
  if (*sig) return cmd_sig(common, closure, out, err);
  return cmd_coverage(common, coverage_flags, out, err);
}

}  // namespace sortc
