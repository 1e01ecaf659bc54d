#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "quartred/pipeline.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw quartred::Error(quartred::ErrorKind::Input, "cli", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potentially good hyperelliptic reduction of plane quartics over p-adic fields"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "run the pipeline on a job file");
  std::string input, out, mode;
  int precision = 0, guard = -1, working = 0;
  bool text = false;
  analyze->add_option("--input", input, "job JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--mode", mode, "classify | full | bitangents-only | count-aronhold");
  analyze->add_option("--precision", precision, "report precision N (overrides the job)");
  analyze->add_option("--guard", guard, "zero threshold margin g (default N/4)");
  analyze->add_option("--working-precision", working, "fixed internal precision");
  analyze->add_option("--out", out, "output file (default: stdout)");
  analyze->add_flag("--text", text, "human-readable rendering instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage problems are input errors (exit 1); --help exits 0
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  quartred::Report report;
  try {
    quartred::JobSpec job = quartred::parse_job(read_file(input));
    if (!mode.empty()) job.mode = quartred::parse_mode(mode);
    if (precision > 0) job.precision = precision;
    if (guard >= 0) job.guard = guard;
    if (working > 0) job.working_precision = working;
    report = quartred::run_pipeline(job);
  } catch (const quartred::Error& e) {
    report.verdict = "error";
    report.error = quartred::ErrorRecord{quartred::to_string(e.kind()), e.stage(), e.what(), e.hint()};
  }
  std::string body = text ? quartred::emit_report_text(report) : quartred::emit_report_json(report);
  if (out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 1;
    }
    f << body;
  }
  if (report.error) std::cerr << "error: " << report.error->message << "\n";
  return quartred::exit_code(report);
}
