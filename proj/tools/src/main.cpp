#include <fstream>
#include <iostream>
#include <iterator>
#include <map>

#include <CLI11.hpp>

#include "qsos/cli/commands.hpp"

namespace {

struct Flags {
  std::string mode = "float";
  double tol = 1e-6;
  int max_retries = 3;
  bool json = false;
  bool trace = false;
  std::uint64_t seed = 0;
  std::string input = "-";
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--mode", f.mode, "Arithmetic for parsing and checks")->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--tol", f.tol, "Residual tolerance");
  sub->add_option("--max-retries", f.max_retries, "Perturbed attempts after the first")->check(CLI::NonNegativeNumber);
  sub->add_flag("--json", f.json, "Write JSON to stdout");
  sub->add_flag("--trace", f.trace, "Include per-path states");
  sub->add_option("--seed", f.seed, "Seed for perturbations");
  sub->add_option("input", f.input, "JSON file, or - for stdin");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sums of three squares for psd ternary quartics"};
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::string> commands{
      {"decompose", "Write F as p1^2 + p2^2 + p3^2"},
      {"classes", "All inequivalent representations of F"},
      {"genericity", "Exceptional conditions E1..E11 of a pencil triple"},
      {"phi", "The pencil invariant Phi_{m,n}(f, g, h)"},
      {"normform", "Rotate and scale F to z^4 + f2 z^2 + f3 z + f4"},
      {"verify", "Residual of a claimed triple"},
  };
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);
  CLI11_PARSE(app, argc, argv);

  qsos::cli::JobSpec job;
  job.command = app.get_subcommands().front()->get_name();
  job.mode = flags.mode == "exact" ? qsos::cli::Mode::exact : qsos::cli::Mode::floating;
  job.tol = flags.tol;
  job.max_retries = flags.max_retries;
  job.json_output = flags.json;
  job.trace = flags.trace;
  job.seed = flags.seed;

  std::string text;
  if (flags.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(flags.input);
    if (!in) {
      std::cerr << "error: cannot open " << flags.input << "\n";
      return qsos::cli::kFailure;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    job.input = qsos::cli::json::parse(text);
  } catch (const qsos::cli::json::parse_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return qsos::cli::kFailure;
  }
  return qsos::cli::run(job, std::cout, std::cerr);
}
