// assistkit: analyze, instrument and evaluate QScript programs.
//
// Exit status: 0 success, 1 findings that need attention (a conflict under
// --conflict=error, or an attack that survives instrumentation), 2 usage,
// I/O or input errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "assistkit/emitter.h"
#include "assistkit/eval.h"
#include "assistkit/parser.h"
#include "assistkit/pipeline.h"
#include "assistkit/report.h"
#include "assistkit/test_suite.h"

namespace fs = std::filesystem;
using namespace assistkit;

namespace {

constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents) || !out.flush()) throw Failure{"cannot write " + path};
}

struct CommonArgs {
  std::string program;
  std::string schema;
  std::string mode = "covering";
  std::size_t cap = kDefaultQueryCap;
  std::string conflict = "error";
  std::string unresolvable = "string";
  bool dump_flowgraph = false;
  bool dump_queries = false;
  std::string report;
  bool no_timing = false;

  void Register(CLI::App& app) {
    app.add_option("program", program, "QScript source file")->required()->check(CLI::ExistingFile);
    app.add_option("--schema", schema, "Database schema file")->required()->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "Concatenation mode for query fragments")
        ->check(CLI::IsMember({"exact", "covering"}))
        ->capture_default_str();
    app.add_option("--cap", cap, "Maximum fragments per node")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--conflict", conflict, "Policy for inputs used as both string and number")
        ->check(CLI::IsMember({"numeric", "error"}))
        ->capture_default_str();
    app.add_option("--unresolvable", unresolvable, "Policy for inputs only found in invalid queries")
        ->check(CLI::IsMember({"string", "skip"}))
        ->capture_default_str();
    app.add_flag("--dump-flowgraph", dump_flowgraph, "Print the flow graph in DOT format");
    app.add_flag("--dump-queries", dump_queries, "Print abstract queries and resolutions");
    app.add_option("--report", report, "Write the JSON report here instead of stdout");
    app.add_flag("--no-timing", no_timing, "Leave phase timings out of the report");
  }

  PipelineOptions Options() const {
    PipelineOptions o;
    o.qfs.mode = mode == "exact" ? ConcatMode::kExact : ConcatMode::kCovering;
    o.qfs.cap = cap;
    o.plan.conflict = conflict == "numeric" ? ConflictPolicy::kNumeric : ConflictPolicy::kError;
    o.plan.unresolvable = unresolvable == "skip" ? UnresolvablePolicy::kSkip : UnresolvablePolicy::kString;
    return o;
  }

  std::string ProgramId() const { return fs::path(program).stem().string(); }
};

AnalysisResult Analyze(const CommonArgs& args) {
  ParseOptions parse;
  parse.file = args.program;
  // Instrumented output must be analyzable again.
  parse.allow_sanitizers = true;
  Program program = ParseProgram(ReadFile(args.program), parse);
  Schema schema = LoadSchema(ReadFile(args.schema));
  return AnalyzeProgram(std::move(program), schema, args.Options(), args.ProgramId());
}

void PrintDiagnostics(const AnalysisResult& result) {
  for (const Diagnostic& d : result.plan.diagnostics) {
    std::cerr << ToString(d.loc) << ": " << ToString(d.severity) << ": " << d.placeholder_name << ": "
              << d.detail;
    if (!d.action.empty()) std::cerr << " (" << d.action << ")";
    std::cerr << "\n";
  }
}

void EmitAnalysis(const CommonArgs& args, const AnalysisResult& result, bool report_to_stdout) {
  if (args.dump_flowgraph) std::cout << result.graph.ToDot();
  if (args.dump_queries) std::cout << RenderQueries(result);
  ReportOptions ro;
  ro.include_timing = !args.no_timing;
  std::string json = AnalysisReportJson(result, ro);
  if (!args.report.empty()) {
    WriteFile(args.report, json);
  } else if (report_to_stdout) {
    std::cout << json;
  }
  PrintDiagnostics(result);
}

std::size_t StepBudget() {
  const char* env = std::getenv("ASSISTKIT_STEP_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultStepBudget;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size() || v == 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Failure{std::string("ASSISTKIT_STEP_BUDGET must be a positive integer, got '") + env + "'"};
  }
}

int RunAnalyze(const CommonArgs& args) {
  AnalysisResult result = Analyze(args);
  EmitAnalysis(args, result, !args.dump_flowgraph && !args.dump_queries);
  return result.plan.failed ? kExitFindings : 0;
}

int RunInstrument(const CommonArgs& args, const std::string& out) {
  AnalysisResult result = Analyze(args);
  EmitAnalysis(args, result, false);
  if (result.plan.failed) return kExitFindings;
  std::string source = EmitSource(*result.instrumented);
  if (out.empty() || out == "-") {
    std::cout << source;
  } else {
    WriteFile(out, source);
  }
  return 0;
}

int RunEval(const CommonArgs& args, const std::string& suite_path, const std::string& logs,
            unsigned jobs) {
  AnalysisResult result = Analyze(args);
  EmitAnalysis(args, result, false);
  if (result.plan.failed) return kExitFindings;
  std::vector<TestInput> suite = ParseTestSuite(ReadFile(suite_path));
  EvalOptions eo;
  eo.run.step_budget = StepBudget();
  eo.jobs = jobs;
  Schema schema = LoadSchema(ReadFile(args.schema));
  EvalResult eval = Evaluate(result.program, *result.instrumented, schema, suite, eo, result.program_id);

  if (!logs.empty()) {
    fs::create_directories(logs);
    WriteFile((fs::path(logs) / (result.program_id + ".original.log")).string(), OriginalLog(eval).Serialize());
    WriteFile((fs::path(logs) / (result.program_id + ".instrumented.log")).string(),
              InstrumentedLog(eval).Serialize());
  }
  std::string json = EvalReportJson(eval);
  if (!args.report.empty()) WriteFile(args.report, json);

  const EvalSummary& s = eval.summary;
  std::cout << "inputs                     " << s.inputs << "\n"
            << "attack-neutralized         " << s.attack_neutralized << "\n"
            << "attack-unchanged           " << s.attack_unchanged << "\n"
            << "legit-unchanged            " << s.legit_unchanged << "\n"
            << "legit-modified             " << s.legit_modified << "\n"
            << "legit-modified (structural) " << s.legit_modified_structural << "\n"
            << "unsuccessful attacks       " << s.unsuccessful_attacks << "\n"
            << "successful attacks         " << s.successful_attacks << "\n"
            << "run errors                 " << s.run_errors << "\n";
  return s.successful_attacks > 0 ? kExitFindings : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SQL-injection sanitizer placement for QScript programs"};
  app.require_subcommand(1);

  CommonArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Report abstract queries, typing and the sanitization plan");
  analyze_args.Register(*analyze);

  CommonArgs instrument_args;
  std::string out;
  CLI::App* instrument = app.add_subcommand("instrument", "Write the program with sanitizer calls inserted");
  instrument_args.Register(*instrument);
  instrument->add_option("--out", out, "Output path (default stdout)");

  CommonArgs eval_args;
  std::string suite;
  std::string logs;
  unsigned jobs = 1;
  CLI::App* eval = app.add_subcommand("eval", "Run original and instrumented program on a test suite");
  eval_args.Register(*eval);
  eval->add_option("--suite,--testsuite", suite, "Labelled input vectors")->required()->check(CLI::ExistingFile);
  eval->add_option("--logs", logs, "Directory for the original and instrumented query logs");
  eval->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*analyze) return RunAnalyze(analyze_args);
    if (*instrument) return RunInstrument(instrument_args, out);
    return RunEval(eval_args, suite, logs, jobs);
  } catch (const Failure& e) {
    std::cerr << "assistkit: " << e.message << "\n";
  } catch (const SyntaxError& e) {
    std::cerr << "assistkit: syntax error: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    std::cerr << "assistkit: schema error: " << e.what() << "\n";
  } catch (const CrossProductOverflow& e) {
    std::cerr << "assistkit: " << ToString(e.location()) << ": " << e.what() << "\n";
  } catch (const AnalysisError& e) {
    std::cerr << "assistkit: analysis error: " << e.what() << "\n";
  } catch (const TestSuiteError& e) {
    std::cerr << "assistkit: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "assistkit: " << e.what() << "\n";
  }
  return kExitError;
}
