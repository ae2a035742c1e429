#include "mcn/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mcn/crt.hpp"
#include "mcn/description.hpp"
#include "mcn/error.hpp"

namespace mcn {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct SynthArgs {
  std::string input;
  std::string mode = "crt";
  bool verify = true;
  bool stats = false;
  std::string output;
  std::uint64_t cap = kDefaultMembershipCap;
};

int synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  Description d = parse_description(read_file(a.input));
  Term t;
  std::size_t regions = 0;
  std::uint64_t max_bound = 0;
  if (a.mode == "crt") {
    CrtSynthesis s = synthesize_crt_detailed(d.expr, a.cap);
    t = std::move(s.term);
    regions = s.regions.groups.size();
    max_bound = s.max_bound;
  } else {
    t = synthesize_direct(d.expr);
  }
  std::string text = print_term(t) + "\n";
  if (a.output.empty()) {
    out << text;
  } else {
    std::ofstream o(a.output, std::ios::binary);
    if (!o || !(o << text)) throw InputError("cannot write " + a.output);
  }
  if (a.stats) {
    err << "nodes: " << t.tree_size() << "\n"
        << "dag_nodes: " << dag_size(t) << "\n"
        << "oplus_depth: " << t.oplus_depth() << "\n"
        << "regions: " << regions << "\n"
        << "max_bound: " << max_bound << "\n";
  }
  return kExitOk;
}

int eval(const std::string& term_file, const std::string& point_text, std::ostream& out) {
  Term t = parse_term(read_file(term_file));
  Point p = parse_point(point_text);
  out << to_string(eval_term(t, p)) << "\n";
  return kExitOk;
}

PwlExpr load_function(const std::string& path, std::size_t vars) {
  if (ends_with(path, ".term")) {
    Term t = parse_term(read_file(path));
    if (t.max_var() > vars)
      throw InputError(path + " uses x" + std::to_string(t.max_var()) + " but --vars is " + std::to_string(vars));
    return term_to_pwl(t, vars);
  }
  if (ends_with(path, ".json")) {
    Description d = parse_description(read_file(path));
    if (d.vars != vars)
      throw InputError(path + " declares " + std::to_string(d.vars) + " variables but --vars is " +
                       std::to_string(vars));
    return d.expr;
  }
  throw InputError(path + ": expected a .term or .json file");
}

int check(const std::string& left, const std::string& right, std::size_t vars, std::ostream& out) {
  if (vars < 1) throw InputError("--vars must be >= 1");
  PwlExpr F = load_function(left, vars);
  PwlExpr G = load_function(right, vars);
  Decision d = decide_eq(F, G, Polytope::cube(vars));
  if (d) {
    out << "EQUAL\n";
    return kExitOk;
  }
  out << "DIFFER at " << to_string(*d.witness) << "\n";
  return kExitDiffer;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile piecewise-linear functions on the unit cube to MV-algebra terms", "mcn"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a term from a function description");
  synth_cmd->add_option("--input", sa.input, "Description file (JSON)")->required();
  synth_cmd->add_option("--mode", sa.mode, "crt or direct")->check(CLI::IsMember({"crt", "direct"}));
  synth_cmd->add_flag("--verify", sa.verify, "Certify the result (always on)");
  synth_cmd->add_flag("--stats", sa.stats, "Print term statistics to stderr");
  synth_cmd->add_option("--output", sa.output, "Write the term here instead of stdout");
  synth_cmd->add_option("--cap", sa.cap, "Membership search cap")->check(CLI::PositiveNumber);

  std::string term_file, point_text;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a term at a rational point");
  eval_cmd->add_option("--term", term_file, "Term file")->required();
  eval_cmd->add_option("--point", point_text, "Comma-separated rationals, e.g. 1/3,1/2")->required();

  std::string left, right;
  std::size_t vars = 0;
  auto* check_cmd = app.add_subcommand("check", "Decide whether two functions are equal on the cube");
  check_cmd->add_option("--left", left, ".term or .json file")->required();
  check_cmd->add_option("--right", right, ".term or .json file")->required();
  check_cmd->add_option("--vars", vars, "Number of variables")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*synth_cmd) return synth(sa, out, err);
    if (*eval_cmd) {
      try {
        return eval(term_file, point_text, out);
      } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
      }
    }
    if (*check_cmd) return check(left, right, vars, out);
  } catch (const InvalidDescriptionError& e) {
    err << "error: " << e.what() << "\nwitness: " << to_string(e.witness()) << "\n";
    return kExitInvalid;
  } catch (const NotCongruentError& e) {
    err << "error: " << e.what() << "\nwitness: " << to_string(e.witness()) << "\n";
    return kExitInvalid;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace mcn
