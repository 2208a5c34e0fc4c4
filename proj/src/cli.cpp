#include "epik/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "epik/common_knowledge.hpp"
#include "epik/ipc.hpp"
#include "epik/lemma_scripts.hpp"
#include "epik/models.hpp"

namespace epik {

namespace {

constexpr int kOk = 0;
constexpr int kLogicalFailure = 1;
constexpr int kUsageError = 2;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LogicId makeLogic(const std::string& name, int agents) {
  auto l = logicFromName(name);
  if (!l) throw CLI::ValidationError("--logic", "unknown logic " + name);
  return LogicId(*l, agents);
}

Assignment parseAssignment(const std::string& text, const HeytingAlgebra& h) {
  Assignment g;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t eqPos = item.find('=');
    if (eqPos == std::string::npos)
      throw std::runtime_error("assignment entries look like x=3 or x=1/2; got '" +
                               item + "'");
    std::string var = item.substr(0, eqPos);
    std::string val = item.substr(eqPos + 1);
    int elem = h.elementByName(val);
    if (elem < 0) {
      try {
        elem = std::stoi(val);
      } catch (const std::exception&) {
        throw std::runtime_error("unknown element '" + val + "'");
      }
    }
    if (elem < 0 || elem >= h.size)
      throw std::runtime_error("element index out of range in '" + item + "'");
    g[var] = elem;
  }
  return g;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::vector<std::string> logics;
  int tables = 2000;
  int modelsPerAlgebra = 12;
  std::uint64_t seed = 20240817;
  std::string format = "text";
};

struct SuiteLine {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> fields;
  bool pass = true;
};

void printLines(const std::vector<SuiteLine>& lines, const std::string& format,
                std::ostream& out) {
  bool all = true;
  for (const SuiteLine& l : lines) all = all && l.pass;
  if (format == "records") {
    for (const SuiteLine& l : lines) {
      out << "suite=" << l.suite;
      for (const auto& [k, v] : l.fields) out << " " << k << "=" << v;
      out << " pass=" << (l.pass ? "yes" : "no") << "\n";
    }
    out << "result=" << (all ? "PASS" : "FAIL") << "\n";
  } else {
    for (const SuiteLine& l : lines) {
      out << (l.pass ? "[pass] " : "[FAIL] ") << l.suite;
      for (const auto& [k, v] : l.fields) out << "  " << k << "=" << v;
      out << "\n";
    }
    out << (all ? "all suites green" : "suite failures present") << "\n";
  }
}

int runSweep(const SweepOptions& opt, std::ostream& out) {
  std::vector<LogicId> logics;
  if (opt.logics.empty()) {
    logics = {LogicId(Logic::IEL), LogicId(Logic::L5), LogicId(Logic::EL5),
              LogicId(Logic::L5ACminus, 2), LogicId(Logic::L5AC, 2)};
  } else {
    for (const std::string& name : opt.logics)
      logics.push_back(makeLogic(
          name, (name == "L5AC" || name == "L5ACminus" || name == "L5AC-")
                    ? 2
                    : 1));
  }

  std::vector<SuiteLine> lines;

  {
    SuiteLine l{"filter-theory", {}, true};
    long long algebras = 0;
    std::string firstFailure;
    for (const CorpusEntry& entry : algebraCorpus()) {
      ++algebras;
      FilterTheoryReport r = checkFilterTheory(entry.algebra);
      if (!r.ok && l.pass) {
        l.pass = false;
        firstFailure = entry.label + ": " + r.failure;
      }
    }
    l.fields = {{"algebras", std::to_string(algebras)}};
    if (!firstFailure.empty()) l.fields.emplace_back("first", firstFailure);
    lines.push_back(std::move(l));
  }

  for (const LogicId& logic : logics) {
    ScriptReport scriptReport = runRegressionScripts(logic);
    {
      SuiteLine l{"scripts", {}, true};
      int green = 0, red = 0;
      for (const auto& o : scriptReport.outcomes) (o.pass ? green : red)++;
      l.pass = scriptReport.allAsExpected;
      l.fields = {{"logic", logic.name()},
                  {"green", std::to_string(green)},
                  {"red", std::to_string(red)}};
      lines.push_back(std::move(l));
    }
    {
      SuiteLine l{"validator-equivalence", {}, true};
      EquivalenceReport r =
          validatorEquivalenceSweep(logic, opt.tables, opt.seed);
      l.pass = r.disagreements == 0;
      l.fields = {{"logic", logic.name()},
                  {"candidates", std::to_string(r.candidates)},
                  {"valid", std::to_string(r.valid)},
                  {"disagreements", std::to_string(r.disagreements)}};
      if (!r.firstDisagreement.empty())
        l.fields.emplace_back("first", r.firstDisagreement);
      lines.push_back(std::move(l));
    }
    std::vector<ModelExpansion> corpus =
        modelCorpus(logic, opt.modelsPerAlgebra);
    {
      SuiteLine l{"soundness", {}, true};
      SweepReport r = soundnessSweep(logic, corpus);
      l.pass = r.ok();
      l.fields = {{"logic", logic.name()},
                  {"models", std::to_string(corpus.size())},
                  {"checks", std::to_string(r.checks)},
                  {"violations", std::to_string(r.violations.size())}};
      if (!r.violations.empty())
        l.fields.emplace_back("first", r.violations[0].model + " " +
                                           r.violations[0].instance);
      lines.push_back(std::move(l));
    }
    {
      SuiteLine l{"theorem-truth", {}, true};
      long long theorems = 0, violations = 0;
      std::string first;
      for (const ScriptOutcome& o : scriptReport.outcomes) {
        if (!o.expectedPass || !o.pass) continue;  // certified theorems only
        ++theorems;
        auto vars = o.theorem.vars();
        for (const ModelExpansion& m : corpus) {
          std::vector<int> tuple(vars.size(), 0);
          for (;;) {
            Assignment g;
            for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = tuple[i];
            if (!satisfies(logic, m, g, o.theorem)) {
              ++violations;
              if (first.empty()) first = o.name + " in " + m.label;
            }
            std::size_t k = 0;
            while (k < tuple.size() && ++tuple[k] == m.algebra.size)
              tuple[k++] = 0;
            if (k == tuple.size() || tuple.empty()) break;
          }
        }
      }
      l.pass = violations == 0;
      l.fields = {{"logic", logic.name()},
                  {"theorems", std::to_string(theorems)},
                  {"violations", std::to_string(violations)}};
      if (!first.empty()) l.fields.emplace_back("first", first);
      lines.push_back(std::move(l));
    }
    {
      SuiteLine l{"operator-laws", {}, true};
      long long violations = 0;
      std::string first;
      for (const ModelExpansion& m : corpus) {
        if (m.knowTables.empty() && m.commonTables.empty()) continue;
        OperatorLawsReport r = checkOperatorLaws(m);
        if (!r.ok) {
          ++violations;
          if (first.empty()) first = m.label + ": " + r.failure;
        }
      }
      l.pass = violations == 0;
      l.fields = {{"logic", logic.name()},
                  {"models", std::to_string(corpus.size())},
                  {"violations", std::to_string(violations)}};
      if (!first.empty()) l.fields.emplace_back("first", first);
      lines.push_back(std::move(l));
    }
    if (logic.hasCommon()) {
      SuiteLine l{"closure-analysis", {}, true};
      long long violations = 0;
      std::string first;
      for (const ModelExpansion& m : corpus) {
        ClosureSoundnessReport cs = checkClosureSoundness(m);
        ClosureNestingReport cn = checkClosureNesting(m);
        IntendedReport rep = analyzeIntended(m);
        if (!cs.ok || !cn.ok || !rep.crossChecksAgree) {
          ++violations;
          if (first.empty())
            first = m.label + ": " +
                    (!cs.ok ? cs.failure
                            : (!cn.ok ? cn.failure : "fixpoint cross-check"));
        }
      }
      l.pass = violations == 0;
      l.fields = {{"logic", logic.name()},
                  {"models", std::to_string(corpus.size())},
                  {"violations", std::to_string(violations)}};
      if (!first.empty()) l.fields.emplace_back("first", first);
      lines.push_back(std::move(l));
    }
  }

  printLines(lines, opt.format, out);
  for (const SuiteLine& l : lines)
    if (!l.pass) return kLogicalFailure;
  return kOk;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"epik: proof checking and algebraic model analysis for logics "
               "of proof-based knowledge"};
  app.require_subcommand(1);

  // parse
  std::string parseText;
  int parseAgents = 2;
  CLI::App* parseCmd =
      app.add_subcommand("parse", "parse a formula and print its reading");
  parseCmd->add_option("formula", parseText, "formula text")->required();
  parseCmd->add_option("--agents", parseAgents, "agent count (default 2)");

  // ipc
  CLI::App* ipcCmd = app.add_subcommand("ipc", "intuitionistic propositional "
                                               "decisions");
  std::string ipcFile;
  CLI::App* ipcCheck = ipcCmd->add_subcommand(
      "check", "classify each line as TAUT / NON-TAUT");
  ipcCheck->add_option("file", ipcFile, "formula file")->required();
  std::string ipcCmFile;
  int maxWorlds = 5;
  CLI::App* ipcCm = ipcCmd->add_subcommand(
      "countermodel", "search rooted models refuting each line");
  ipcCm->add_option("file", ipcCmFile, "formula file")->required();
  ipcCm->add_option("--max-worlds", maxWorlds, "world bound (default 5)");

  // check-proof
  std::string proofPath;
  CLI::App* proofCmd =
      app.add_subcommand("check-proof", "check a derivation file");
  proofCmd->add_option("file", proofPath, "proof file")->required();

  // lemmas
  std::string lemmasLogic;
  int lemmasAgents = 2;
  CLI::App* lemmasCmd = app.add_subcommand(
      "lemmas", "check the bundled derivation scripts under a logic");
  lemmasCmd->add_option("--logic", lemmasLogic, "IEL|L5|EL5|L5ACminus|L5AC")
      ->required();
  lemmasCmd->add_option("--agents", lemmasAgents, "agent count (default 2)");

  // algebra
  CLI::App* algebraCmd =
      app.add_subcommand("algebra", "finite Heyting algebra utilities");
  std::string algebraCheckFile;
  CLI::App* algebraCheck = algebraCmd->add_subcommand(
      "check", "build the algebra and verify the lattice laws");
  algebraCheck->add_option("file", algebraCheckFile, "algebra file")
      ->required();
  std::string algebraFiltersFile;
  CLI::App* algebraFilters = algebraCmd->add_subcommand(
      "filters", "list all filters with their flags");
  algebraFilters->add_option("file", algebraFiltersFile, "algebra file")
      ->required();

  // check-model
  std::string cmLogic, cmFile;
  int cmAgents = 0;
  CLI::App* checkModelCmd = app.add_subcommand(
      "check-model", "run both validator routes on a model file");
  checkModelCmd->add_option("--logic", cmLogic, "logic id")->required();
  checkModelCmd->add_option("--agents", cmAgents,
                            "agent count (default: from the file)");
  checkModelCmd->add_option("file", cmFile, "model file")->required();

  // eval
  std::string evalLogic, evalModel, evalAssign, evalFormula;
  CLI::App* evalCmd =
      app.add_subcommand("eval", "evaluate a formula in a model");
  evalCmd->add_option("--logic", evalLogic, "logic id")->required();
  evalCmd->add_option("model", evalModel, "model file")->required();
  evalCmd->add_option("assignment", evalAssign, "e.g. x=1/4,y=0")->required();
  evalCmd->add_option("formula", evalFormula, "formula text")->required();

  // countermodel
  std::string searchLogic, searchFormula;
  int searchAgents = 2, maxSize = 6;
  CLI::App* searchCmd = app.add_subcommand(
      "countermodel", "search valid models for one refuting the formula");
  searchCmd->add_option("--logic", searchLogic, "logic id")->required();
  searchCmd->add_option("--agents", searchAgents, "agent count (default 2)");
  searchCmd->add_option("--max-size", maxSize, "algebra size bound (default 6)");
  searchCmd->add_option("formula", searchFormula, "formula text")->required();

  // gen-model
  std::string fixtureName;
  CLI::App* genCmd =
      app.add_subcommand("gen-model", "print one of the bundled fixtures");
  genCmd->add_option("--fixture", fixtureName, "A|B|C|D")->required();

  // intended
  std::string intLogic = "L5AC", intFile;
  CLI::App* intendedCmd = app.add_subcommand(
      "intended", "compare common knowledge against its greatest fixpoint");
  intendedCmd->add_option("file", intFile, "model file")->required();
  intendedCmd->add_option("--logic", intLogic, "logic id (default L5AC)");

  // sweep
  SweepOptions sweepOpt;
  CLI::App* sweepCmd = app.add_subcommand(
      "sweep", "run the regression suites and print a summary");
  sweepCmd->add_option("--logic", sweepOpt.logics,
                       "restrict to these logics (repeatable)");
  sweepCmd->add_option("--tables", sweepOpt.tables,
                       "candidate expansions per logic (default 2000)");
  sweepCmd->add_option("--models-per-algebra", sweepOpt.modelsPerAlgebra,
                       "generated model cap per algebra (default 12)");
  sweepCmd->add_option("--seed", sweepOpt.seed, "generator seed");
  sweepCmd->add_option("--format", sweepOpt.format, "text|records")
      ->check(CLI::IsMember({"text", "records"}));

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*parseCmd) {
      try {
        Formula f = parseFormula(parseText, parseAgents);
        out << printFormula(f) << "\n";
        return kOk;
      } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kUsageError;
      }
    }

    if (*ipcCheck || *ipcCm) {
      const std::string& path = *ipcCheck ? ipcFile : ipcCmFile;
      std::string text = readFile(path);
      auto lines = parseFormulaLines(text, 1);
      bool anyCountermodel = false;
      for (const auto& [lineNo, f] : lines) {
        if (!f.isPropositional()) {
          err << "line " << lineNo << ": formula is not propositional\n";
          return kUsageError;
        }
        if (*ipcCheck) {
          out << "line " << lineNo << ": "
              << (isIpcTautology(f) ? "TAUT" : "NON-TAUT") << "  "
              << printFormula(f) << "\n";
        } else {
          auto model = kripkeCountermodel(f, maxWorlds);
          out << "line " << lineNo << ": " << printFormula(f) << "\n";
          if (model) {
            anyCountermodel = true;
            out << model->str();
          } else {
            out << "no countermodel with at most " << maxWorlds
                << " worlds\n";
          }
        }
      }
      if (*ipcCm) return anyCountermodel ? kLogicalFailure : kOk;
      return kOk;
    }

    if (*proofCmd) {
      std::string text;
      try {
        text = readFile(proofPath);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
      }
      ProofFile pf;
      try {
        pf = parseProofFile(text);
      } catch (const ParseError& e) {
        err << proofPath << ": " << e.what() << "\n";
        return kUsageError;
      }
      CheckResult r = checkDerivation(pf.logic, pf.derivation);
      if (r.ok) {
        out << "valid derivation under " << pf.logic.name() << " (agents "
            << pf.logic.agents << ")\n";
        out << "theorem: " << printFormula(*r.theorem) << "\n";
        return kOk;
      }
      out << "invalid derivation under " << pf.logic.name() << ":\n";
      for (const StepDiagnostic& d : r.diagnostics)
        out << "  step " << d.step << ": " << d.reason << "\n";
      return kLogicalFailure;
    }

    if (*lemmasCmd) {
      ScriptReport report =
          runRegressionScripts(makeLogic(lemmasLogic, lemmasAgents));
      out << report.str();
      return report.allAsExpected ? kOk : kLogicalFailure;
    }

    if (*algebraCheck) {
      HeytingAlgebra h;
      try {
        h = parseAlgebraText(readFile(algebraCheckFile));
      } catch (const AlgebraError& e) {
        out << "not a Heyting algebra: " << e.what() << "\n";
        return kLogicalFailure;
      }
      out << "Heyting algebra with " << h.size << " elements, bot "
          << h.name(h.bot) << ", top " << h.name(h.top) << "\n";
      out << "disjunction property: "
          << (h.hasDisjunctionProperty() ? "yes" : "no") << "\n";
      FilterTheoryReport r = checkFilterTheory(h);
      out << "filter theory: " << (r.ok ? "verified" : r.failure) << "\n";
      return r.ok ? kOk : kLogicalFailure;
    }

    if (*algebraFilters) {
      HeytingAlgebra h;
      try {
        h = parseAlgebraText(readFile(algebraFiltersFile));
      } catch (const AlgebraError& e) {
        out << "not a Heyting algebra: " << e.what() << "\n";
        return kLogicalFailure;
      }
      for (const FilterSet& f : enumerateFilters(h)) {
        out << "filter at " << h.name(f.generator) << ": {";
        for (std::size_t i = 0; i < f.elements.size(); ++i)
          out << (i ? "," : "") << h.name(f.elements[i]);
        out << "}";
        if (f.ultra)
          out << " ultra";
        else if (f.prime)
          out << " prime";
        else if (f.proper)
          out << " proper";
        else
          out << " improper";
        out << "\n";
      }
      return kOk;
    }

    if (*checkModelCmd) {
      ModelExpansion m;
      try {
        m = parseModelText(readFile(cmFile));
      } catch (const std::exception& e) {
        err << cmFile << ": " << e.what() << "\n";
        return kUsageError;
      }
      LogicId logic = makeLogic(cmLogic, cmAgents > 0 ? cmAgents
                                         : (m.agents > 0 ? m.agents : 1));
      if (m.label.empty()) m.label = cmFile;
      ValidationReport filter = validateFilterRoute(logic, m);
      ValidationReport ineq = validateInequationalRoute(logic, m);
      out << filter.str(m.label);
      out << ineq.str(m.label);
      out << "routes agree: " << (filter.valid == ineq.valid ? "yes" : "NO")
          << "\n";
      return (filter.valid && ineq.valid) ? kOk : kLogicalFailure;
    }

    if (*evalCmd) {
      ModelExpansion m;
      try {
        m = parseModelText(readFile(evalModel));
      } catch (const std::exception& e) {
        err << evalModel << ": " << e.what() << "\n";
        return kUsageError;
      }
      LogicId logic = makeLogic(evalLogic, m.agents > 0 ? m.agents : 1);
      Formula f = parseFormula(evalFormula, logic.agents);
      Assignment g = parseAssignment(evalAssign, m.algebra);
      int v = evaluate(m, g, f);
      out << "value: " << m.algebra.name(v) << "\n";
      if (logic.logic == Logic::IEL)
        out << "satisfied (top): " << (v == m.algebra.top ? "yes" : "no")
            << "\n";
      else
        out << "satisfied (in TRUE): " << (m.inTrue(v) ? "yes" : "no") << "\n";
      return kOk;
    }

    if (*searchCmd) {
      LogicId logic = makeLogic(searchLogic, searchAgents);
      Formula f = parseFormula(searchFormula, logic.agents);
      SearchBounds bounds;
      bounds.maxAlgebraSize = maxSize;
      auto result = countermodelSearch(logic, f, bounds);
      if (!result) {
        out << "no countermodel within algebra size " << maxSize
            << " (inconclusive)\n";
        return kOk;
      }
      out << "countermodel found in " << result->model.label << ":\n";
      out << modelToText(result->model);
      out << "assignment:";
      for (const auto& [var, val] : result->assignment)
        out << " " << var << "=" << result->model.algebra.name(val);
      out << "\n";
      return kLogicalFailure;
    }

    if (*genCmd) {
      auto f = fixtureFromName(fixtureName);
      if (!f) {
        err << "error: unknown fixture '" << fixtureName << "'\n";
        return kUsageError;
      }
      out << modelToText(makeFixture(*f));
      return kOk;
    }

    if (*intendedCmd) {
      ModelExpansion m;
      try {
        m = parseModelText(readFile(intFile));
      } catch (const std::exception& e) {
        err << intFile << ": " << e.what() << "\n";
        return kUsageError;
      }
      if (m.label.empty()) m.label = intFile;
      LogicId logic = makeLogic(intLogic, m.agents > 0 ? m.agents : 1);
      if (!logic.hasCommon()) {
        err << "error: intended-model analysis needs a logic with common "
               "knowledge\n";
        return kUsageError;
      }
      ValidationReport v = validateInequationalRoute(logic, m);
      if (!v.valid) {
        out << v.str(m.label);
        out << "model is invalid; analysis aborted\n";
        return kLogicalFailure;
      }
      IntendedReport report = analyzeIntended(m);
      out << report.str(m.algebra);
      return report.intended ? kOk : kLogicalFailure;
    }

    if (*sweepCmd) return runSweep(sweepOpt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kLogicalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << "error: no command\n";
  return kUsageError;
}

}  // namespace epik
