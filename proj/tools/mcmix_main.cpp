// Command-line front end. Everything goes through the C API in mcmix.h;
// this file only parses arguments and moves text around.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcmix/mcmix.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitViolations = 3;

int exit_code_of(mcx_status status) {
  switch (status) {
    case MCX_OK: return kExitOk;
    case MCX_ERR_USAGE: return kExitUsage;
    default: return kExitValidation;
  }
}

[[noreturn]] void fail(mcx_status status) {
  std::cerr << "error: " << mcx_last_error() << "\n";
  std::exit(exit_code_of(status));
}

void check(mcx_status status) {
  if (status != MCX_OK) fail(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    std::exit(kExitValidation);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    std::exit(kExitValidation);
  }
  out << text;
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mcx_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct ChainHandle {
  mcx_chain* chain = nullptr;
  mcx_group* group = nullptr;  // set when the chain came from a group spec
  ~ChainHandle() {
    mcx_chain_free(chain);
    mcx_group_free(group);
  }
};

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

// Generator specs: "cycle <n> <alpha>", "complete <n>", "eulerian <file> [d]",
// "cayley <group> <gens> [probs]".
void build_from_spec(const std::vector<std::string>& words, ChainHandle& handle) {
  if (words.empty()) {
    std::cerr << "error: empty generator spec\n";
    std::exit(kExitUsage);
  }
  const std::string& kind = words[0];
  auto need = [&](size_t lo, size_t hi) {
    if (words.size() < lo || words.size() > hi) {
      std::cerr << "error: bad argument count for generator '" << kind << "'\n";
      std::exit(kExitUsage);
    }
  };
  if (kind == "cycle") {
    need(3, 3);
    check(mcx_chain_cycle(std::stoi(words[1]), std::stod(words[2]), &handle.chain));
  } else if (kind == "complete") {
    need(2, 2);
    check(mcx_chain_complete(std::stoi(words[1]), &handle.chain));
  } else if (kind == "eulerian") {
    need(2, 3);
    int d = words.size() == 3 ? std::stoi(words[2]) : 0;
    check(mcx_chain_eulerian(read_file(words[1]).c_str(), d, &handle.chain));
  } else if (kind == "cayley") {
    need(3, 4);
    const char* probs = words.size() == 4 ? words[3].c_str() : "";
    check(mcx_group_make(words[1].c_str(), words[2].c_str(), probs, &handle.group));
    check(mcx_chain_from_group(handle.group, &handle.chain));
  } else {
    std::cerr << "error: unknown generator '" << kind << "'\n";
    std::exit(kExitUsage);
  }
}

struct ChainSource {
  std::string chain_file;
  std::string gen_spec;

  void attach(CLI::App* cmd) {
    cmd->add_option("--chain", chain_file, "chain file to load");
    cmd->add_option("--gen", gen_spec,
                    "generator spec, e.g. 'cycle 5 0.5' or 'cayley z5 id,+1'");
  }

  ChainHandle open(std::string& id) const {
    ChainHandle handle;
    if (!chain_file.empty() && !gen_spec.empty()) {
      std::cerr << "error: give either --chain or --gen, not both\n";
      std::exit(kExitUsage);
    }
    if (!chain_file.empty()) {
      id = chain_file;
      check(mcx_chain_parse(read_file(chain_file).c_str(), &handle.chain));
    } else if (!gen_spec.empty()) {
      id = gen_spec;
      build_from_spec(split_words(gen_spec), handle);
    } else {
      std::cerr << "error: a chain source (--chain or --gen) is required\n";
      std::exit(kExitUsage);
    }
    return handle;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcmix: exact mixing-time analysis for small Markov chains"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write output to this file")->capture_default_str();

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "emit a chain file for a generator");
  std::vector<std::string> gen_words;
  std::vector<std::string> gen_gens, gen_probs;
  gen->add_option("spec", gen_words, "cycle <n> <alpha> | complete <n> | eulerian <file> [d] | cayley <group>")
      ->required();
  std::string gens_flag, probs_flag;
  gen->add_option("--gens", gens_flag, "cayley generators, e.g. id,+1");
  gen->add_option("--probs", probs_flag, "cayley generator probabilities");

  // analyze / bounds / paths --------------------------------------------
  ChainSource analyze_src, bounds_src, paths_src;
  double epsilon = 0.5;
  int start = 0;
  std::vector<double> r_values;
  bool tsv = false;

  auto* analyze = app.add_subcommand("analyze", "pi, alpha, empirical tau, profiles");
  analyze_src.attach(analyze);
  analyze->add_option("--epsilon", epsilon, "target chi-square deviation");
  analyze->add_option("--start", start, "start state");
  analyze->add_option("--r", r_values, "profile r value (repeatable)");
  analyze->add_flag("--tsv", tsv, "tab-separated output");

  auto* bounds = app.add_subcommand("bounds", "evaluate every applicable bound");
  bounds_src.attach(bounds);
  bounds->add_option("--epsilon", epsilon, "target chi-square deviation");
  bounds->add_option("--start", start, "start state");
  bounds->add_option("--r", r_values, "override the r sweeps (repeatable)");
  std::string bounds_paths_mode = "alt-auto";
  bounds->add_option("--paths", bounds_paths_mode,
                     "alternating family source: alt-auto | alt-derive");
  bounds->add_flag("--tsv", tsv, "tab-separated output");

  auto* paths = app.add_subcommand("paths", "path families and congestion");
  paths_src.attach(paths);
  std::string paths_mode = "bfs";
  paths->add_option("--paths", paths_mode,
                    "bfs | file:PATH | cayley | alt-auto | alt-derive");
  paths->add_flag("--tsv", tsv, "tab-separated output");

  // verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run the verification fleet");
  std::uint64_t seed = 7;
  int count = 500, max_n = 6;
  bool inject_fault = false;
  std::string verify_chain;
  verify->add_option("--seed", seed, "fleet seed");
  verify->add_option("--count", count, "number of random chains");
  verify->add_option("--max-n", max_n, "largest random chain size");
  verify->add_option("--chain", verify_chain, "audit a single chain file instead");
  verify->add_flag("--inject-fault", inject_fault, "auditor self-test");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    if (!gens_flag.empty()) {
      gen_words.push_back(gens_flag);
      if (!probs_flag.empty()) gen_words.push_back(probs_flag);
    }
    ChainHandle handle;
    build_from_spec(gen_words, handle);
    OwnedString text;
    check(mcx_chain_format(handle.chain, &text.ptr));
    emit(text.str(), out_path);
    return kExitOk;
  }

  if (analyze->parsed()) {
    std::string id;
    ChainHandle handle = analyze_src.open(id);
    OwnedString text;
    check(mcx_analyze_report(handle.chain, id.c_str(), start, epsilon,
                             r_values.empty() ? nullptr : r_values.data(),
                             static_cast<int>(r_values.size()), tsv ? 1 : 0,
                             &text.ptr));
    emit(text.str(), out_path);
    return kExitOk;
  }

  if (bounds->parsed()) {
    std::string id;
    ChainHandle handle = bounds_src.open(id);
    int alt_mode = MCX_PATHS_ALT_AUTO;
    if (bounds_paths_mode == "alt-derive") alt_mode = MCX_PATHS_ALT_DERIVE;
    else if (bounds_paths_mode != "alt-auto") {
      std::cerr << "error: --paths must be alt-auto or alt-derive\n";
      return kExitUsage;
    }
    OwnedString text;
    check(mcx_bounds_report(handle.chain, id.c_str(), start, epsilon,
                            r_values.empty() ? nullptr : r_values.data(),
                            static_cast<int>(r_values.size()), alt_mode,
                            tsv ? 1 : 0, &text.ptr));
    emit(text.str(), out_path);
    return kExitOk;
  }

  if (paths->parsed()) {
    std::string id;
    ChainHandle handle = paths_src.open(id);
    OwnedString text;
    if (paths_mode == "cayley") {
      if (handle.group == nullptr) {
        std::cerr << "error: --paths cayley requires --gen \"cayley ...\"\n";
        return kExitUsage;
      }
      check(mcx_cayley_paths_report(handle.group, tsv ? 1 : 0, &text.ptr));
    } else if (paths_mode.rfind("file:", 0) == 0) {
      std::string path_text = read_file(paths_mode.substr(5));
      check(mcx_paths_report(handle.chain, MCX_PATHS_FILE, path_text.c_str(),
                             tsv ? 1 : 0, &text.ptr));
    } else {
      int mode;
      if (paths_mode == "bfs") mode = MCX_PATHS_BFS;
      else if (paths_mode == "alt-auto") mode = MCX_PATHS_ALT_AUTO;
      else if (paths_mode == "alt-derive") mode = MCX_PATHS_ALT_DERIVE;
      else {
        std::cerr << "error: unknown --paths mode '" << paths_mode << "'\n";
        return kExitUsage;
      }
      check(mcx_paths_report(handle.chain, mode, nullptr, tsv ? 1 : 0, &text.ptr));
    }
    emit(text.str(), out_path);
    return kExitOk;
  }

  if (verify->parsed()) {
    ChainHandle handle;
    if (!verify_chain.empty())
      check(mcx_chain_parse(read_file(verify_chain).c_str(), &handle.chain));
    OwnedString text;
    int violations = 0;
    check(mcx_verify(handle.chain, seed, count, max_n, inject_fault ? 1 : 0,
                     &text.ptr, &violations));
    emit(text.str(), out_path);
    return violations == 0 ? kExitOk : kExitViolations;
  }

  return kExitUsage;
}
