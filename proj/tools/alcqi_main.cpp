// alcqi: decide concept satisfiability w.r.t. a TBox.
//
//   alcqi problem.txt [--stats] [--trace]
//   alcqi --tbox tbox.txt --concept '(and A (atleast 1 R B))'
//   alcqi generate --seed 7 --count 20

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "alcqi/engine.hpp"
#include "alcqi/errors.hpp"
#include "alcqi/oracle.hpp"
#include "alcqi/parser.hpp"
#include "alcqi/problem_file.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string file;
  std::string tbox;
  std::string query_text;
  bool trace = false;
  bool stats = false;
  bool dump_lii = false;
  int oracle_check = 0;
  alcqi::Limits limits;
};

struct GenerateOptions {
  std::uint64_t seed = 1;
  std::size_t count = 1;
  alcqi::CorpusProfile profile;
  std::string out_dir;
};

void print_stats(const alcqi::Stats& s) {
  std::cout << "restarts: " << s.restarts << "\n"
            << "nodes: " << s.nodes << "\n"
            << "nogoods: " << s.nogoods << "\n"
            << "lii_solves: " << s.lii_solves << "\n"
            << "max_lambda: " << s.max_lambda << "\n"
            << "wall_ms: " << s.wall_ms << "\n";
}

int run_oracle(const alcqi::Problem& problem, bool engine_sat, int max_domain) {
  try {
    const auto search = alcqi::find_model(problem.goal, problem.axiom, max_domain);
    if (search.found()) {
      if (engine_sat) {
        std::cout << "oracle: agree, model of size " << search.model->domain_size << "\n";
      } else {
        std::cout << "oracle: DISAGREE, counterexample\n" << alcqi::dump(*search.model);
      }
    } else {
      std::cout << "oracle: no model up to domain " << search.searched_up_to
                << (engine_sat ? " (inconclusive)" : " (consistent)") << "\n";
    }
  } catch (const alcqi::OracleRefusal& e) {
    std::cout << "oracle: refused, " << e.what() << "\n";
  }
  return 0;
}

int run_decide(const Options& opt) {
  std::vector<alcqi::Axiom> axioms;
  alcqi::Concept query = alcqi::Concept::top();
  if (!opt.query_text.empty()) {
    query = alcqi::parse_concept(opt.query_text);
    if (!opt.file.empty()) axioms = alcqi::parse_tbox_file(read_file(opt.file));
  } else if (!opt.file.empty()) {
    auto pf = alcqi::parse_problem_file(read_file(opt.file));
    axioms = std::move(pf.tbox);
    query = pf.query;
  } else {
    std::cerr << "alcqi: need a problem file or --concept\n";
    return kExitUsage;
  }
  if (!opt.tbox.empty()) {
    auto extra = alcqi::parse_tbox_file(read_file(opt.tbox));
    axioms.insert(axioms.end(), extra.begin(), extra.end());
  }

  const auto problem = alcqi::make_problem(query, axioms);
  std::vector<std::string> trace;
  std::string lii_dump;
  alcqi::Observers obs;
  if (opt.trace) obs.trace = [&](const std::string& line) { trace.push_back(line); };
  if (opt.dump_lii) {
    obs.lii = [&](std::size_t node, const alcqi::LiiSystem& sys) {
      lii_dump += "node " + std::to_string(node) + " " + sys.dump();
    };
  }

  const auto verdict = alcqi::decide(problem, opt.limits, obs);
  std::cout << (verdict.satisfiable() ? "SAT" : "UNSAT") << "\n";
  if (opt.stats) print_stats(verdict.stats);
  for (const auto& line : trace) std::cout << line << "\n";
  std::cout << lii_dump;
  if (opt.oracle_check > 0) run_oracle(problem, verdict.satisfiable(), opt.oracle_check);
  return verdict.satisfiable() ? kExitSat : kExitUnsat;
}

int run_generate(const GenerateOptions& opt) {
  const auto corpus = alcqi::generate_corpus(opt.seed, opt.count, opt.profile);
  if (opt.out_dir.empty()) {
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      std::cout << "# instance " << k << "\n" << alcqi::print_problem_file(corpus[k]);
    }
    return 0;
  }
  std::filesystem::create_directories(opt.out_dir);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto path = std::filesystem::path(opt.out_dir) / ("instance_" + std::to_string(k) + ".txt");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << alcqi::print_problem_file(corpus[k]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALCQI concept satisfiability w.r.t. general TBoxes"};
  app.set_version_flag("--version", "alcqi 0.1.0");
  Options opt;
  app.add_option("file", opt.file, "Problem file (a TBox file when --concept is given)");
  app.add_option("--tbox", opt.tbox, "Additional file of gci/axiom lines");
  app.add_option("--concept", opt.query_text, "Query concept, instead of a sat line");
  app.add_flag("--trace", opt.trace, "Print one line per rule application");
  app.add_flag("--stats", opt.stats, "Print run statistics");
  app.add_option("--oracle-check", opt.oracle_check,
                 "Cross-check with the bounded model finder up to this domain size")
      ->check(CLI::Range(0, 3));
  app.add_option("--lambda-max", opt.limits.lambda_max, "Largest atomic decomposition")
      ->check(CLI::Range(1, 20));
  app.add_option("--node-budget", opt.limits.node_budget, "Node expansions allowed per pass")
      ->check(CLI::PositiveNumber);
  app.add_flag("--strict-blocking", opt.limits.strict_blocking,
               "Key witnesses by cut-set and incoming role as well");
  app.add_flag("--dump-lii", opt.dump_lii, "Print every LII system before it is solved");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Print a random problem corpus");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--count", gen.count, "Number of instances");
  generate->add_option("--depth", gen.profile.max_depth, "Nesting depth of number restrictions")
      ->check(CLI::Range(0, 3));
  generate->add_option("--max-bound", gen.profile.max_bound, "Largest number in a restriction")
      ->check(CLI::Range(0, 3));
  generate->add_option("--roles", gen.profile.roles, "Number of role names")->check(CLI::Range(1, 2));
  generate->add_option("--atoms", gen.profile.atoms, "Number of concept names")
      ->check(CLI::Range(1, 3));
  generate->add_option("--max-axioms", gen.profile.max_axioms, "Most axioms per instance")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--out-dir", gen.out_dir, "Write one file per instance here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    return run_decide(opt);
  } catch (const alcqi::ParseError& e) {
    std::cerr << "alcqi: parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const alcqi::ResourceLimitError& e) {
    std::cerr << "alcqi: resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "alcqi: " << e.what() << "\n";
    return kExitUsage;
  }
}
