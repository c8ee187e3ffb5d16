// Copyright 2026 The lexnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "lexnet/cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fmt/format.h>
#include <ostream>
#include <sstream>

#include "lexnet/cli/pipeline.hpp"
#include "lexnet/io.hpp"
#include "lexnet/synth.hpp"

namespace lexnet::cli {
namespace {

namespace fs = std::filesystem;

std::string pct(double v) { return fmt::format("{:.2f}%", 100.0 * v); }

void add_all(Files& into, Files files) { into.insert(into.end(), files.begin(), files.end()); }

Files run_synth(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.synth_output.empty() ? cfg.paths.output_dir / "synth" : cfg.synth_output;
  const auto corpus = generate_synthetic_corpus(cfg.synth);
  write_synthetic_corpus(corpus, dir);
  // A config that runs the pipeline on the generated files.
  RunConfig next = cfg;
  next.paths.messages = "messages.jsonl";
  next.paths.names = "names.csv";
  next.paths.output_dir = "out";
  next.synth_output.clear();
  {
    auto out = io::open_output(dir / "lexnet.ini");
    std::string section;
    std::istringstream dump(canonical_dump(next));
    for (std::string line; std::getline(dump, line);) {
      const auto dot = line.find('.');
      const auto s = line.substr(0, dot);
      if (s != section) {
        out << (section.empty() ? "" : "\n") << '[' << s << "]\n";
        section = s;
      }
      out << line.substr(dot + 1) << '\n';
    }
  }
  log << fmt::format("synth: {} authors, {} messages, {} edges -> {}\n", corpus.truth.author_ids.size(),
                     corpus.messages.size(), corpus.truth.edges.size(), dir.string());
  return {dir / "messages.jsonl", dir / "names.csv", dir / "ground_truth.json", dir / "lexnet.ini"};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ingest",  "classify",  "markers", "categorize",
                                              "cluster", "network",   "homophily", "curve",
                                              "synth",   "all"};
  return names;
}

Manifest run_command(const std::string& command, const RunConfig& cfg, std::ostream& log) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw InvalidArgument("unknown command '" + command + "'");
  }
  const fs::path dir = cfg.paths.output_dir;
  Manifest manifest;
  manifest.command = command;
  manifest.config_hash = sha256_hex(canonical_dump(cfg));
  manifest.seed = cfg.seed;
  Files files;

  if (command == "synth") {
    files = run_synth(cfg, log);
  } else {
    const bool all = command == "all";
    const auto wants = [&](std::initializer_list<const char*> cmds) {
      if (all) return true;
      for (const char* c : cmds) {
        if (command == c) return true;
      }
      return false;
    };
    const Dataset data = load_dataset(cfg);
    for (const auto& p : data.inputs) manifest.add_input(p);
    log << fmt::format("ingest: {} of {} authors retained ({} female, {} male), {} mutual edges\n",
                       data.corpus.size(), data.filter.input, data.corpus.count(Gender::female),
                       data.corpus.count(Gender::male), data.corpus_graph.edge_count());
    if (wants({"ingest"})) add_all(files, write_ingest(data, dir));

    if (wants({"network"})) {
      const auto net = network_homophily(data.corpus, data.corpus_graph, cfg.homophily);
      log << fmt::format("network: edge homophily {}\n", pct(net.edge_homophily));
      add_all(files, write_network(data, net, dir));
    }

    std::optional<ClassifyResult> classified;
    if (wants({"classify", "homophily"})) {
      classified = run_classifier(data.corpus, data.vocab, cfg);
      log << fmt::format("classify: {}-fold accuracy {} (majority {})\n", cfg.folds,
                         pct(classified->cv.accuracy), pct(classified->majority_share));
      if (wants({"classify"})) add_all(files, write_classify(data, *classified, dir));
    }

    std::optional<MarkerResult> markers;
    if (wants({"markers", "categorize", "homophily"})) {
      markers = run_markers(data.corpus, data.vocab, cfg);
      log << fmt::format("markers: {} female, {} male significant\n", markers->tables[0].significant,
                         markers->tables[1].significant);
      if (wants({"markers"})) add_all(files, write_markers(*markers, dir));
    }

    if (wants({"categorize", "cluster"})) {
      const auto lexicon = load_categories(cfg);
      if (wants({"categorize"})) add_all(files, write_categories(data, lexicon, *markers, dir));
      if (wants({"cluster"})) {
        const auto clusters = run_clustering(data, lexicon, cfg);
        log << fmt::format("cluster: K={} over {} authors, objective {:.6g}, {} clusters reported\n",
                           cfg.clustering.K, clusters.corpus.size(), clusters.model.objective,
                           clusters.report.rows.size());
        add_all(files, write_clusters(clusters, data.vocab, dir));
      }
    }

    if (wants({"homophily"})) {
      const auto own = own_gender_confidence(data.corpus, classified->cv);
      const auto analysis =
          analyze_homophily(data.corpus, data.corpus_graph, own, markers->sets(), cfg.homophily);
      for (const auto& row : analysis.rows) {
        log << fmt::format("homophily: {} {} r={:.4f} [{:.4f}, {:.4f}] n={}\n", row.measure,
                           to_string(row.gender), row.result.r, row.result.ci_low, row.result.ci_high,
                           row.result.n);
      }
      add_all(files, write_homophily(analysis, dir));
    }

    if (wants({"curve"})) {
      const auto subset = networked_subset(data.corpus, data.corpus_graph);
      const auto curve = token_budget_curve(subset, data.vocab, data.corpus_graph, cfg.budgets,
                                            cfg.classifier, cfg.folds);
      for (const auto& p : curve) {
        log << fmt::format("curve: budget {} text {} network {}\n", p.budget, pct(p.accuracy_text),
                           pct(p.accuracy_network));
      }
      add_all(files, write_curve(curve, dir));
    }
  }

  for (const auto& f : files) manifest.add_artifact(dir, f);
  manifest.write(dir / "manifest.json");
  return manifest;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lexnet: lexical style, author attributes and social networks"};
  app.name("lexnet");
  std::string config_path, output_dir;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  app.add_option("-c,--config", config_path, "INI configuration file");
  app.add_option("-s,--set", overrides, "Override a key: section.key=value (repeatable)");
  app.add_option("-o,--output", output_dir, "Output directory (overrides LEXNET_OUTPUT_DIR)");
  app.add_option("--seed", seed, "Master seed");
  app.require_subcommand(1);
  const std::map<std::string, std::string> help{
      {"ingest", "Build and filter the corpus, vocabulary and graph"},
      {"classify", "Cross-validated gender classifier"},
      {"markers", "Beta-Binomial marker terms per gender"},
      {"categorize", "Category lexicon reports for vocabulary and markers"},
      {"cluster", "Hard-EM author clustering and composition report"},
      {"network", "Mutual-mention graph and per-author homophily"},
      {"homophily", "Correlations between style and network composition"},
      {"curve", "Accuracy against token budget, with and without network features"},
      {"synth", "Generate a synthetic corpus with planted signal"},
      {"all", "Run every analysis stage"}};
  for (const auto& name : command_names()) app.add_subcommand(name, help.at(name))->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError(o, "--set expects section.key=value");
      set_config_value(cfg, o.substr(0, eq), o.substr(eq + 1));
    }
    if (const char* env = std::getenv("LEXNET_OUTPUT_DIR"); env && *env) cfg.paths.output_dir = env;
    if (!output_dir.empty()) cfg.paths.output_dir = output_dir;
    if (seed) cfg.seed = *seed;
    cfg.propagate_seed();
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "lexnet: invalid config: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    const auto manifest = run_command(command, cfg, out);
    out << fmt::format("{}: wrote {} artifacts to {}\n", command, manifest.artifacts.size(),
                       cfg.paths.output_dir.string());
  } catch (const ConfigError& e) {
    err << "lexnet: invalid config: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "lexnet: " << command << " failed: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace lexnet::cli
