// Command-line front end: translates Penman-notation graphs into typed
// lambda-calculus formulas under the extensional, intensional, or
// scope-resolving regimes, lists logical triples, and checks bounded
// entailment between the translations of two graphs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amrstlc/entail.hpp"
#include "amrstlc/enumerate.hpp"
#include "amrstlc/model.hpp"
#include "amrstlc/penman.hpp"
#include "amrstlc/scope.hpp"
#include "amrstlc/stlc.hpp"
#include "amrstlc/translate.hpp"
#include "json.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitTranslation = 1;
constexpr int kExitParse = 2;

struct Options {
  std::string mode;
  std::string format = "ascii";
  bool unicode = false;
  bool batch = false;
  std::vector<std::string> entails_files;
  int worlds = 2;
  int individuals = 3;
  std::string actual = "w1";
  std::string input = "-";
};

void emit_error(const Options& options, const std::string& kind, const std::string& message,
                std::optional<amrstlc::SourceSpan> span = std::nullopt) {
  if (options.format == "json") {
    nlohmann::ordered_json error;
    error["kind"] = kind;
    error["message"] = message;
    if (span) {
      error["span"] = {{"begin", span->begin}, {"end", span->end}};
    }
    nlohmann::ordered_json out;
    out["error"] = error;
    std::cerr << out.dump() << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << message;
    if (span) std::cerr << " [bytes " << span->begin << ".." << span->end << "]";
    std::cerr << "\n";
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot read input file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

amrstlc::Term translate_graph(const amrstlc::AmrNode& graph, const Options& options,
                              const amrstlc::DeterminerTable& determiners) {
  if (options.mode == "ext") return amrstlc::derive_ext(graph);
  if (options.mode == "int") return amrstlc::derive_int(graph);
  amrstlc::ScopeOptions scope_options;
  scope_options.regime = options.mode == "scope-int" ? amrstlc::Regime::Intensional
                                                     : amrstlc::Regime::Extensional;
  scope_options.determiners = determiners;
  return amrstlc::derive_reading(graph, scope_options);
}

nlohmann::ordered_json graph_output_json(const amrstlc::AmrNode& graph, const Options& options,
                                         const amrstlc::DeterminerTable& determiners) {
  nlohmann::ordered_json out;
  if (options.mode == "triples") {
    nlohmann::ordered_json triples = nlohmann::ordered_json::array();
    for (const auto& triple : amrstlc::to_triples(graph)) {
      triples.push_back({{"relation", triple.relation},
                         {"source", triple.source},
                         {"target", triple.target},
                         {"instance", triple.is_instance}});
    }
    out["triples"] = triples;
    return out;
  }
  amrstlc::Term term = translate_graph(graph, options, determiners);
  amrstlc::PrettyOptions pretty_options;
  pretty_options.unicode = options.unicode;
  out["formula"] = amrstlc::pretty(term, pretty_options);
  out["type"] = amrstlc::pretty(amrstlc::type_of(term));
  return out;
}

std::string graph_output_ascii(const amrstlc::AmrNode& graph, const Options& options,
                               const amrstlc::DeterminerTable& determiners) {
  if (options.mode == "triples") {
    std::string out;
    for (const auto& triple : amrstlc::to_triples(graph)) {
      out += amrstlc::triple_to_string(triple);
      out += "\n";
    }
    return out;
  }
  amrstlc::PrettyOptions pretty_options;
  pretty_options.unicode = options.unicode;
  return amrstlc::pretty(translate_graph(graph, options, determiners), pretty_options) + "\n";
}

int run_translation(const Options& options, const amrstlc::DeterminerTable& determiners) {
  std::string text = read_input(options.input);
  std::vector<amrstlc::AmrNode> graphs;
  if (options.batch) {
    graphs = amrstlc::parse_many(text);
  } else {
    graphs.push_back(amrstlc::parse(text));
  }
  if (options.format == "json") {
    nlohmann::ordered_json out;
    if (options.batch) {
      nlohmann::ordered_json items = nlohmann::ordered_json::array();
      for (const auto& graph : graphs) {
        items.push_back(graph_output_json(graph, options, determiners));
      }
      out["results"] = items;
    } else {
      out = graph_output_json(graphs.front(), options, determiners);
    }
    std::cout << out.dump(2) << "\n";
    return kExitSuccess;
  }
  std::string rendered;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (i > 0) rendered += "\n";  // blank line between batch items
    rendered += graph_output_ascii(graphs[i], options, determiners);
  }
  std::cout << rendered;
  return kExitSuccess;
}

int run_entailment(const Options& options, const amrstlc::DeterminerTable& determiners) {
  amrstlc::Term premise = translate_graph(amrstlc::parse(read_input(options.entails_files[0])),
                                          options, determiners);
  amrstlc::Term conclusion = translate_graph(amrstlc::parse(read_input(options.entails_files[1])),
                                             options, determiners);
  amrstlc::EnumerationBound bound;
  bound.max_worlds = options.worlds;
  bound.max_individuals = options.individuals;
  int actual_index = -1;
  for (int w = 1; w <= options.worlds; ++w) {
    if (options.actual == "w" + std::to_string(w)) actual_index = w - 1;
  }
  if (actual_index < 0) {
    throw amrstlc::eval_error("the actual world must be one of w1..w" +
                              std::to_string(options.worlds) + ", got '" + options.actual + "'");
  }
  amrstlc::Verdict verdict =
      amrstlc::entails(premise, conclusion, bound, actual_index, determiners);
  if (options.format == "json") {
    nlohmann::ordered_json out;
    out["entailed"] = verdict.entailed;
    out["bound"] = {{"worlds", options.worlds}, {"individuals", options.individuals}};
    out["actual"] = options.actual;
    if (verdict.counterexample) {
      out["counterexample"] = amrstlc::model_to_json(verdict.counterexample->model);
      out["counterexample_size"] = {{"worlds", verdict.counterexample->worlds},
                                    {"individuals", verdict.counterexample->individuals}};
    }
    std::cout << out.dump(2) << "\n";
    return kExitSuccess;
  }
  if (verdict.entailed) {
    std::cout << "entailed within bound (" << options.worlds << " worlds, "
              << options.individuals << " individuals)\n";
  } else {
    std::cout << "not entailed; counterexample with " << verdict.counterexample->worlds
              << " world(s) and " << verdict.counterexample->individuals << " individual(s):\n"
              << amrstlc::model_to_json(verdict.counterexample->model).dump(2) << "\n";
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  Options options;
  CLI::App app{"Translate Penman-notation semantic graphs into typed lambda-calculus "
               "formulas and check bounded entailments between them"};
  app.add_option("--mode", options.mode, "Translation regime")
      ->required()
      ->check(CLI::IsMember({"ext", "int", "scope-ext", "scope-int", "triples"}));
  app.add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"ascii", "json"}));
  app.add_flag("--unicode", options.unicode, "Render formulas with unicode connectives");
  app.add_flag("--batch", options.batch, "Input holds several graphs separated by blank lines");
  app.add_option("--entails", options.entails_files,
                 "Check whether the first graph's translation entails the second's")
      ->expected(2);
  app.add_option("--worlds", options.worlds, "Maximum worlds for entailment search")
      ->check(CLI::PositiveNumber);
  app.add_option("--individuals", options.individuals,
                 "Maximum individuals for entailment search")
      ->check(CLI::PositiveNumber);
  app.add_option("--actual", options.actual, "Designated actual world (w1..wN)");
  app.add_option("input", options.input, "Input file, or '-' for standard input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitParse;
  }

  if (!options.entails_files.empty() && options.batch) {
    emit_error(options, "usage", "--batch cannot be combined with --entails");
    return kExitParse;
  }
  if (!options.entails_files.empty() && options.mode == "triples") {
    emit_error(options, "usage", "--entails requires a formula mode (ext, int, scope-ext, "
                                 "scope-int)");
    return kExitParse;
  }

  amrstlc::DeterminerTable determiners = amrstlc::DeterminerTable::defaults();
  if (const char* override_path = std::getenv("AMR_INTENS_DETERMINERS")) {
    try {
      determiners = amrstlc::DeterminerTable::from_json_file(override_path);
    } catch (const amrstlc::determiner_config_error& e) {
      emit_error(options, "determiner-config", e.what());
      return kExitParse;
    }
  }

  try {
    if (!options.entails_files.empty()) {
      return run_entailment(options, determiners);
    }
    return run_translation(options, determiners);
  } catch (const amrstlc::parse_error& e) {
    emit_error(options, "parse", e.what(), e.span);
    return kExitParse;
  } catch (const std::ios_base::failure& e) {
    emit_error(options, "io", e.what());
    return kExitParse;
  } catch (const amrstlc::normalize_error& e) {
    emit_error(options, "normalize", e.what());
    return kExitTranslation;
  } catch (const amrstlc::translate_error& e) {
    emit_error(options, "translate", e.what());
    return kExitTranslation;
  } catch (const amrstlc::eval_error& e) {
    emit_error(options, "entailment", e.what());
    return kExitTranslation;
  }
}
