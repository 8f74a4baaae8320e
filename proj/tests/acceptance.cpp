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
// End-to-end acceptance checks. Runs the installed sortc and sortc-meta
// binaries and prints one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sortc/surface.hpp"
#include "sortc/typecheck.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::string& bin, const std::vector<std::string>& args) {
  std::string cmd = quote(bin);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Run sortc(const std::vector<std::string>& args) { return run(SORTC_BIN, args); }

std::string corpus(const std::string& name) {
  return std::string(SORTC_CORPUS_DIR) + "/" + name + ".dsr";
}

// Notes why a criterion failed; empty when everything held.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) notes_.push_back(what);
  }
  void exit_code(const std::string& file, std::vector<std::string> args, int want) {
    args.insert(args.begin(), corpus(file));
    args.insert(args.begin(), "check");
    int got = sortc(args).code;
    expect(got == want, file + " exited " + std::to_string(got) + ", expected " +
                            std::to_string(want));
  }
  bool ok() const { return notes_.empty(); }
  std::string notes() const {
    std::string s;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    return s;
  }

 private:
  std::vector<std::string> notes_;
};

bool has_diag(const Json& doc, const std::string& code) {
  for (const auto& d : doc["diagnostics"])
    if (d["code"] == code) return true;
  return false;
}

Json json_of(const std::string& cmd, const std::string& file,
             std::vector<std::string> extra = {}) {
  std::vector<std::string> args{cmd, corpus(file), "--json"};
  args.insert(args.end(), extra.begin(), extra.end());
  auto r = sortc(args);
  try {
    return Json::parse(r.out);
  } catch (const Json::exception&) {
    return Json::object();
  }
}

void parity(Check& c) {
  c.exit_code("parity", {"--goal", "even"}, 0);
  c.exit_code("parity", {"--goal", "odd"}, 1);
}

void nominal(Check& c) {
  c.expect(has_diag(json_of("check", "tainted"), "TYPE_MISMATCH"),
           "tainted has no TYPE_MISMATCH");
  c.exit_code("tainted", {}, 1);
  c.exit_code("untainted", {}, 0);
}

void cnf_coverage(Check& c) {
  c.exit_code("cnf", {}, 0);
  c.exit_code("cnf_missing_var", {}, 1);
  auto doc = json_of("check", "cnf_missing_var");
  bool found = false;
  for (const auto& d : doc["diagnostics"])
    if (d["code"] == "NONEXHAUSTIVE" && d["extra"].contains("witness") &&
        d["extra"]["witness"].get<std::string>().rfind("Var(", 0) == 0)
      found = true;
  c.expect(found, "no NONEXHAUSTIVE diagnostic with a Var(...) witness");
}

void backpatch(Check& c) {
  c.exit_code("sigstar", {}, 3);
  c.expect(has_diag(json_of("check", "sigstar"), "SUBSORT_BACKPATCH"),
           "sigstar has no SUBSORT_BACKPATCH");
}

void inversion(Check& c) {
  c.exit_code("list_bad_ext", {}, 3);
  c.exit_code("list_bad_declare", {}, 3);
  c.exit_code("list_empty", {}, 0);
  c.exit_code("list_subempty", {}, 0);
  c.exit_code("list_subempty_declare", {}, 0);
}

void domain_up(Check& c) {
  c.exit_code("sig2_case", {}, 0);
  c.exit_code("sig2_bad_ext", {}, 3);
  c.expect(has_diag(json_of("check", "sig2_bad_ext"), "UNSAFE_CTOR"),
           "sig2_bad_ext has no UNSAFE_CTOR");
}

Json cons_tracks(const Json& doc) {
  try {
    return doc.at("result").at("cases").at(0).at("arms").at(0).at("tracks");
  } catch (const Json::exception&) {
    return Json();
  }
}

void intersect_tracks(Check& c) {
  auto all = cons_tracks(json_of("coverage", "sigopt"));
  auto opt = cons_tracks(json_of("coverage", "sigopt", {"--optimize"}));
  c.expect(all == Json::parse(R"(["x : empty |- list", "x : list |- list"])"),
           "tracks were " + all.dump());
  c.expect(opt == Json::parse(R"(["x : list |- list"])"), "optimized tracks were " + opt.dump());
  auto text = sortc({"coverage", corpus("sigopt")}).out;
  auto a = text.find("x : empty |- list");
  auto b = text.find("x : list |- list");
  c.expect(a != std::string::npos && b != std::string::npos && a < b,
           "text output does not list both tracks in order");
}

void backtracking(Check& c) {
  c.exit_code("backtrack_app", {}, 0);
  std::ifstream in(corpus("backtrack_app"));
  std::stringstream ss;
  ss << in.rdbuf();
  auto prog = sortc::parse_program(ss.str());
  if (!prog.ok()) {
    c.expect(false, "backtrack_app does not parse");
    return;
  }
  auto f = sortc::parse_type("(even -> odd) & (odd -> even)");
  auto odd = sortc::parse_type("odd");
  auto even = sortc::parse_type("even");
  auto app = sortc::parse_expr("f b");
  sortc::CheckSession s(prog.value->ursig, prog.value->sig);
  auto out = s.synth({{"f", *f.value}, {"b", *odd.value}}, *app.value);
  c.expect(out.ok() && out.types.front() == *even.value, "f b does not synthesize even");
}

void identity(Check& c) {
  c.exit_code("identity_inter", {}, 0);
  c.exit_code("identity_anno_even", {}, 1);
  c.exit_code("identity_anno_odd", {}, 1);
  c.exit_code("identity_anno_both", {}, 0);
}

Json meta_report(const std::vector<std::string>& extra, int& code) {
  fs::path report = fs::temp_directory_path() /
                    ("sortc_acceptance_" + std::to_string(::getpid()) + ".json");
  std::vector<std::string> args{"--corpus", SORTC_CORPUS_DIR, "--report", report.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  code = run(SORTC_META_BIN, args).code;
  std::ifstream in(report);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception&) {
    j = Json::object();
  }
  fs::remove(report);
  return j;
}

void metatheory(Check& c) {
  const std::vector<std::string> required{
      "dichotomy",          "pattern_intersection", "intersect_covers",
      "subtype_reflexivity", "subtype_transitivity", "typing_weakening",
      "interleaving",       "preservation",         "progress",
      "soundness",          "annotatability"};
  int code = 0;
  Json report = meta_report({}, code);
  c.expect(code == 0, "sortc-meta exited " + std::to_string(code));
  std::map<std::string, Json> by_name;
  for (const auto& p : report.value("properties", Json::array())) by_name[p["name"]] = p;
  for (const auto& name : required) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      c.expect(false, name + " missing from report");
      continue;
    }
    int trials = it->second["trials"];
    int failures = it->second["failures"];
    c.expect(trials >= 500, name + " ran " + std::to_string(trials) + " trials");
    c.expect(failures == 0, name + " had " + std::to_string(failures) + " failures");
  }
  int mutant_code = 0;
  Json mutant = meta_report({"--mutant"}, mutant_code);
  int failing = 0;
  for (const auto& p : mutant.value("properties", Json::array()))
    failing += p["failures"].get<int>() > 0;
  c.expect(mutant_code == 1 && failing >= 1, "mutant run failed " + std::to_string(failing) +
                                                 " suites, exit " + std::to_string(mutant_code));
}

void determinism(Check& c) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(SORTC_CORPUS_DIR))
    if (e.path().extension() == ".dsr") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  c.expect(!files.empty(), "empty corpus");
  for (const auto& f : files) {
    auto a = sortc({"check", f, "--json"});
    auto b = sortc({"check", f, "--json"});
    c.expect(a.out == b.out && a.code == b.code && !a.out.empty(),
             fs::path(f).filename().string() + " differs between runs");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"parity", parity},
      {"nominal sorts", nominal},
      {"cnf coverage", cnf_coverage},
      {"backpatching rejection", backpatch},
      {"inversion-principle safety", inversion},
      {"domain-up rejection", domain_up},
      {"intersect tracks", intersect_tracks},
      {"backtracking application", backtracking},
      {"multi-annotation identity", identity},
      {"metatheory suites", metatheory},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    criteria[i].second(c);
    failed += !c.ok();
    std::cout << (c.ok() ? "PASS " : "FAIL ") << (i + 1) << " " << criteria[i].first;
    if (!c.ok()) std::cout << ": " << c.notes();
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
