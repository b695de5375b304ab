// Copyright (c) mzia contributors.
// SPDX-License-Identifier: Apache-2.0
//
// The command-line surface.  Everything here is presentation: models are
// loaded and validated, the library does the work, and the results are
// rendered either as fixed-layout text or as JSON whose field names follow
// the library types, so identical inputs always produce identical bytes.
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mzia/frontend.hpp"
#include "mzia/refinement.hpp"
#include "mzia/zonegraph.hpp"

namespace mzia {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<Mzia> load_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open " << path << "\n";
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const ModelSource src{path, ss.str()};
  try {
    ValidationReport rep;
    Mzia m = load_model(src, rep);
    for (const auto& f : rep.errors) err << "error: " << finding_string(f) << "\n";
    if (!rep.ok()) return std::nullopt;
    return m;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return std::nullopt;
  }
}

int do_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open " << path << "\n";
    return 2;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  const ModelSource src{path, ss.str()};
  ValidationReport rep;
  try {
    load_model(src, rep);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  for (const auto& f : rep.errors) out << "error: " << finding_string(f) << "\n";
  for (const auto& f : rep.warnings) out << "warning: " << finding_string(f) << "\n";
  if (!rep.ok()) return 2;
  out << "ok\n";
  return 0;
}

void put_indented(const std::string& block, std::ostream& out) {
  std::istringstream lines(block);
  std::string line;
  while (std::getline(lines, line)) out << "  " << line << "\n";
}

ordered_json clock_interval(const Dcm& zone, const std::string& clockName) {
  const std::size_t ci = zone.index_of(clockName);
  const Bound& lo = zone.entry(0, ci);  // bounds -clock
  const Bound& hi = zone.entry(ci, 0);
  ordered_json j;
  j["lo"] = lo.infinite() ? ordered_json(nullptr) : ordered_json(to_string(-lo.value()));
  j["hi"] = hi.infinite() ? ordered_json(nullptr) : ordered_json(to_string(hi.value()));
  return j;
}

int do_reach(const std::string& path, bool dump, bool json, std::ostream& out, std::ostream& err) {
  const std::optional<Mzia> m = load_file(path, err);
  if (!m) return 2;
  const ZoneAutomaton za = build_zone_automaton(*m);
  if (json) {
    ordered_json j;
    j["automaton"] = m->name;
    j["states"] = ordered_json::array();
    for (std::size_t i = 0; i < za.states.size(); ++i) {
      const SymState& st = za.states[i];
      ordered_json s;
      s["id"] = i;
      s["name"] = "s" + std::to_string(i);
      s["location"] = st.location;
      s["zone"] = st.zone.project(m->clockName).zone_string();
      s["clock"] = clock_interval(st.zone, m->clockName);
      if (auto it = za.subsumed.find(i); it != za.subsumed.end()) s["subsumedBy"] = it->second;
      if (za.frontier.count(i)) s["frontier"] = true;
      if (dump) s["dcm"] = st.zone.table();
      j["states"].push_back(std::move(s));
    }
    j["initials"] = za.initials;
    j["transitions"] = ordered_json::array();
    for (const auto& e : za.transitions)
      j["transitions"].push_back({{"from", e.from}, {"action", e.action}, {"to", e.to}});
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "automaton " << m->name << ": " << za.states.size() << " states, "
      << za.transitions.size() << " transitions\n";
  for (std::size_t i = 0; i < za.states.size(); ++i) {
    const SymState& st = za.states[i];
    out << "s" << i << " " << st.location << ": " << st.zone.project(m->clockName).zone_string();
    if (auto it = za.subsumed.find(i); it != za.subsumed.end())
      out << " [subsumed by s" << it->second << "]";
    if (za.frontier.count(i)) out << " [frontier]";
    out << "\n";
    if (dump) put_indented(st.zone.table(), out);
  }
  for (const auto& e : za.transitions)
    out << "s" << e.from << " -" << e.action << "-> s" << e.to << "\n";
  return 0;
}

int do_check(const std::string& pathP, const std::string& pathQ, bool strict, bool witness,
             bool json, std::ostream& out, std::ostream& err) {
  const std::optional<Mzia> mp = load_file(pathP, err);
  if (!mp) return 2;
  const std::optional<Mzia> mq = load_file(pathQ, err);
  if (!mq) return 2;
  const FiniteSystem fp = to_finite_system(*mp, build_zone_automaton(*mp));
  const FiniteSystem fq = to_finite_system(*mq, build_zone_automaton(*mq));
  RcOptions opts;
  opts.mode = strict ? RelMode::Strict : RelMode::Guarded;
  const Verdict v = rc(fp, fq, opts);
  if (json) {
    ordered_json j;
    j["refines"] = v.refines;
    j["mode"] = v.mode == RelMode::Strict ? "strict" : "guarded";
    j["finalizedPairs"] = v.finalizedPairs;
    j["bodyRuns"] = v.bodyRuns;
    if (!v.refines) {
      j["witness"] = ordered_json::array();
      for (const auto& st : v.witness)
        j["witness"].push_back(
            {{"p", fp.states[st.p]}, {"q", fq.states[st.q]}, {"action", st.action}});
      if (v.failPair)
        j["failPair"] = {{"p", fp.states[v.failPair->first]}, {"q", fq.states[v.failPair->second]}};
      if (v.failKind) j["failKind"] = fail_kind_string(*v.failKind);
      if (v.failAction) j["failAction"] = *v.failAction;
    }
    j["pairResults"] = ordered_json::array();
    for (const auto& [pq, related] : v.pairResults)
      j["pairResults"].push_back(
          {{"p", fp.states[pq.first]}, {"q", fq.states[pq.second]}, {"related", related}});
    out << j.dump(2) << "\n";
    return v.refines ? 0 : 1;
  }
  out << (v.refines ? "refines\n" : "does not refine\n");
  if (witness && !v.refines) {
    out << "witness:\n";
    for (const auto& st : v.witness)
      out << "  (" << fp.states[st.p] << ", " << fq.states[st.q] << ") --" << st.action << "-->\n";
    if (v.failPair) {
      out << "  " << fail_kind_string(*v.failKind) << " fails at (" << fp.states[v.failPair->first]
          << ", " << fq.states[v.failPair->second] << ")";
      if (v.failAction) out << " on " << *v.failAction;
      out << "\n";
    }
  }
  return v.refines ? 0 : 1;
}

int do_simulate(const std::string& path, std::uint64_t seed, std::size_t steps, std::ostream& out,
                std::ostream& err) {
  const std::optional<Mzia> m = load_file(path, err);
  if (!m) return 2;
  const Trajectory t = simulate(*m, seed, steps);
  out << "init " << t.initialLocation;
  for (const auto& v : m->continuousVars)
    out << " " << v.name << "=" << to_string(t.initialValues.at(v.name));
  out << "\n";
  for (const auto& st : t.steps) {
    if (st.isDelay) out << "delay " << to_string(st.delay);
    else out << st.action;
    out << " -> " << st.location;
    for (const auto& v : m->continuousVars)
      out << " " << v.name << "=" << to_string(st.values.at(v.name));
    out << " clock=" << to_string(st.clock) << "\n";
  }
  if (t.deadlocked) out << "deadlocked\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reachability and refinement checking for multirate hybrid interface automata",
               "mzia"};
  app.require_subcommand(1);

  std::string vFile;
  CLI::App* vCmd = app.add_subcommand("validate", "Parse a model and report validation findings");
  vCmd->add_option("file", vFile, "model file (.mzia)")->required();

  std::string rFile, rFormat = "text";
  bool rDump = false;
  CLI::App* rCmd = app.add_subcommand("reach", "List the reachable symbolic states");
  rCmd->add_option("file", rFile, "model file (.mzia)")->required();
  rCmd->add_flag("--dump-dcm", rDump, "also print each state's constraint matrix");
  rCmd->add_option("--format", rFormat, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string cFileP, cFileQ, cMode = "guarded", cFormat = "text";
  bool cWitness = false;
  CLI::App* cCmd =
      app.add_subcommand("check", "Decide whether the second model refines the first");
  cCmd->add_option("file_p", cFileP, "the abstract model")->required();
  cCmd->add_option("file_q", cFileQ, "the refined model")->required();
  cCmd->add_option("--mode", cMode, "schema comparison mode")
      ->check(CLI::IsMember({"guarded", "strict"}));
  cCmd->add_flag("--witness", cWitness, "print the failure path when the check fails");
  cCmd->add_option("--format", cFormat, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string sFile;
  std::uint64_t sSeed = 0;
  std::size_t sSteps = 0;
  CLI::App* sCmd = app.add_subcommand("simulate", "Run a random concrete execution");
  sCmd->add_option("file", sFile, "model file (.mzia)")->required();
  sCmd->add_option("--seed", sSeed, "random seed")->required();
  sCmd->add_option("--steps", sSteps, "number of steps to attempt")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mzia");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (vCmd->parsed()) return do_validate(vFile, out, err);
    if (rCmd->parsed()) return do_reach(rFile, rDump, rFormat == "json", out, err);
    if (cCmd->parsed())
      return do_check(cFileP, cFileQ, cMode == "strict", cWitness, cFormat == "json", out, err);
    return do_simulate(sFile, sSeed, sSteps, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mzia
