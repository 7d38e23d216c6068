// Command-line front end: reads a JSON problem file, dispatches to the
// library, writes a JSON report and optional CSV table.
//
//   ampforge <task> --in problem.json [--out report.json] [--csv table.csv]
//            [--seed N] [--tol X]
//
// Exit code reflects execution health only; infeasible or unsatisfied
// verdicts still exit 0.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ampforge/errors.hpp"
#include "ampforge/io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ampforge::ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ampforge::Error("cannot open output file: " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state amplification toolkit"};
  app.require_subcommand(1);

  std::string in_path, out_path, csv_path;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool seed_set = false, tol_set = false;

  const char* task_names[] = {"feasibility", "synthesize",      "classify",
                              "theorem",     "gain-probability", "homodyne",
                              "channel"};
  std::string chosen;
  for (const char* name : task_names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--in", in_path, "problem JSON file")->required();
    sub->add_option("--out", out_path, "report JSON path (default: stdout)");
    sub->add_option("--csv", csv_path, "CSV table path (sweep tasks)");
    sub->add_option("--seed", seed, "override params.seed")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--tol", tol, "override params.tol")
        ->each([&](const std::string&) { tol_set = true; });
    sub->callback([&, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    auto problem = ampforge::io::parse_problem(read_file(in_path));
    if (ampforge::io::task_name(problem.task) != chosen) {
      std::cerr << "error: problem file declares task '"
                << ampforge::io::task_name(problem.task)
                << "' but subcommand is '" << chosen << "'\n";
      return 2;
    }
    ampforge::io::RunOptions opts;
    if (seed_set) opts.seed = seed;
    if (tol_set) opts.tol = tol;

    auto report = ampforge::io::run_task(problem, opts);
    if (out_path.empty())
      std::cout << report.to_string();
    else
      write_file(out_path, report.to_string());
    if (!csv_path.empty()) {
      if (report.csv.empty()) {
        std::cerr << "error: task '" << chosen << "' produces no CSV table\n";
        return 2;
      }
      write_file(csv_path, report.csv);
    }
    return 0;
  } catch (const ampforge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
