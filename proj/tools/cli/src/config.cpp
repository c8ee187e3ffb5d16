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

#include "lexnet/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <functional>
#include <sstream>

#include "lexnet/io.hpp"

namespace lexnet::cli {
namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key, "cannot parse '" + text + "' as a number");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_number<T>(key, item));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += io::format_double(x);
    } else {
      out += std::to_string(x);
    }
  }
  return out;
}

struct Field {
  std::function<void(RunConfig&, const std::string& key, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  bool is_path = false;
};

template <typename T>
Field number(T RunConfig::*outer) {
  return {[outer](RunConfig& c, const std::string& k, const std::string& v) {
            c.*outer = parse_number<T>(k, v);
          },
          [outer](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return io::format_double(c.*outer);
            else return std::to_string(c.*outer);
          }};
}

template <typename S, typename T>
Field number(S RunConfig::*outer, T S::*inner) {
  return {[outer, inner](RunConfig& c, const std::string& k, const std::string& v) {
            (c.*outer).*inner = parse_number<T>(k, v);
          },
          [outer, inner](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return io::format_double((c.*outer).*inner);
            else return std::to_string((c.*outer).*inner);
          }};
}

template <typename S>
Field flag(S RunConfig::*outer, bool S::*inner) {
  return {[outer, inner](RunConfig& c, const std::string& k, const std::string& v) {
            (c.*outer).*inner = parse_bool(k, v);
          },
          [outer, inner](const RunConfig& c) {
            return std::string((c.*outer).*inner ? "true" : "false");
          }};
}

Field flag(bool RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_bool(k, v);
          },
          [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

Field path(fs::path PathsConfig::*member) {
  return {[member](RunConfig& c, const std::string&, const std::string& v) {
            c.paths.*member = trim(v);
          },
          [member](const RunConfig& c) { return (c.paths.*member).generic_string(); }, true};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    t["paths.messages"] = path(&PathsConfig::messages);
    t["paths.names"] = path(&PathsConfig::names);
    t["paths.lexicon_dir"] = path(&PathsConfig::lexicon_dir);
    t["paths.dictionary"] = path(&PathsConfig::dictionary);
    t["paths.output_dir"] = path(&PathsConfig::output_dir);
    t["run.seed"] = number(&RunConfig::seed);

    t["corpus.filter"] = flag(&RunConfig::filter);
    t["corpus.english_top_n"] = number(&RunConfig::corpus, &CorpusFilterConfig::english_top_n);
    t["corpus.english_min_overlap"] =
        number(&RunConfig::corpus, &CorpusFilterConfig::english_min_overlap);
    t["corpus.name_min_total"] = number(&RunConfig::corpus, &CorpusFilterConfig::name_min_total);
    t["corpus.min_friends"] = number(&RunConfig::corpus, &CorpusFilterConfig::min_friends);
    t["corpus.max_friends"] = number(&RunConfig::corpus, &CorpusFilterConfig::max_friends);
    t["corpus.min_separation_days"] = number(&RunConfig::min_separation_days);

    t["features.vocab_size"] = number(&RunConfig::vocab_size);

    t["classifier.folds"] = number(&RunConfig::folds);
    t["classifier.max_iterations"] = number(&RunConfig::classifier, &TrainConfig::max_iterations);
    t["classifier.convergence_tolerance"] =
        number(&RunConfig::classifier, &TrainConfig::convergence_tolerance);
    t["classifier.lambda_grid"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.classifier.lambda_grid = parse_list<double>(k, v);
        },
        [](const RunConfig& c) { return join(c.classifier.lambda_grid); }};

    t["markers.alpha"] = number(&RunConfig::markers, &MarkerConfig::alpha);
    t["markers.top_k"] = number(&RunConfig::markers, &MarkerConfig::top_k);
    t["markers.bonferroni"] = flag(&RunConfig::markers, &MarkerConfig::bonferroni);

    t["clustering.K"] = number(&RunConfig::clustering, &EMConfig::K);
    t["clustering.restarts"] = number(&RunConfig::clustering, &EMConfig::restarts);
    t["clustering.lambda_beta"] = number(&RunConfig::clustering, &EMConfig::lambda_beta);
    t["clustering.max_iterations"] = number(&RunConfig::clustering, &EMConfig::max_iterations);
    t["clustering.inner_iterations"] = number(&RunConfig::clustering, &EMConfig::inner_iterations);
    t["clustering.tolerance"] = number(&RunConfig::clustering, &EMConfig::tolerance);
    t["clustering.theta_smoothing"] = number(&RunConfig::clustering, &EMConfig::theta_smoothing);
    t["clustering.balance"] = flag(&RunConfig::cluster_balance);
    t["clustering.min_size"] = number(&RunConfig::composition, &CompositionConfig::min_size);
    t["clustering.top_words"] = number(&RunConfig::composition, &CompositionConfig::top_words);

    t["homophily.bins"] = number(&RunConfig::homophily, &HomophilyConfig::bins);
    t["homophily.significance"] = number(&RunConfig::homophily, &HomophilyConfig::significance);
    t["homophily.level"] = number(&RunConfig::homophily, &HomophilyConfig::level);
    t["homophily.bin_mode"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          const auto m = trim(v);
          if (m == "equal_count") {
            c.homophily.bin_mode = stats::BinMode::equal_count;
          } else if (m == "equal_width") {
            c.homophily.bin_mode = stats::BinMode::equal_width;
          } else {
            throw ConfigError(k, "expected equal_count or equal_width, got '" + v + "'");
          }
        },
        [](const RunConfig& c) {
          return std::string(c.homophily.bin_mode == stats::BinMode::equal_count ? "equal_count"
                                                                                 : "equal_width");
        }};

    t["curve.budgets"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.budgets = parse_list<std::size_t>(k, v);
        },
        [](const RunConfig& c) { return join(c.budgets); }};

    t["synth.n_authors"] = number(&RunConfig::synth, &SynthConfig::n_authors);
    t["synth.tokens_per_author"] = number(&RunConfig::synth, &SynthConfig::tokens_per_author);
    t["synth.messages_per_author"] = number(&RunConfig::synth, &SynthConfig::messages_per_author);
    t["synth.vocab_size"] = number(&RunConfig::synth, &SynthConfig::vocab_size);
    t["synth.zipf_exponent"] = number(&RunConfig::synth, &SynthConfig::zipf_exponent);
    t["synth.female_fraction"] = number(&RunConfig::synth, &SynthConfig::female_fraction);
    t["synth.markers_per_gender"] = number(&RunConfig::synth, &SynthConfig::markers_per_gender);
    t["synth.marker_strength"] = number(&RunConfig::synth, &SynthConfig::marker_strength);
    t["synth.marker_rate"] = number(&RunConfig::synth, &SynthConfig::marker_rate);
    t["synth.n_clusters"] = number(&RunConfig::synth, &SynthConfig::n_clusters);
    t["synth.cluster_lexicon_size"] = number(&RunConfig::synth, &SynthConfig::cluster_lexicon_size);
    t["synth.cluster_strength"] = number(&RunConfig::synth, &SynthConfig::cluster_strength);
    t["synth.cluster_lexicon_offset"] =
        number(&RunConfig::synth, &SynthConfig::cluster_lexicon_offset);
    t["synth.cluster_gender_skew"] = number(&RunConfig::synth, &SynthConfig::cluster_gender_skew);
    t["synth.rho"] = number(&RunConfig::synth, &SynthConfig::rho);
    t["synth.coupling_link"] = flag(&RunConfig::synth, &SynthConfig::coupling_link);
    t["synth.mean_degree"] = number(&RunConfig::synth, &SynthConfig::mean_degree);
    t["synth.min_degree"] = number(&RunConfig::synth, &SynthConfig::min_degree);
    t["synth.max_degree"] = number(&RunConfig::synth, &SynthConfig::max_degree);
    t["synth.output_dir"] = {
        [](RunConfig& c, const std::string&, const std::string& v) { c.synth_output = trim(v); },
        [](const RunConfig& c) { return c.synth_output.generic_string(); }, true};
    return t;
  }();
  return table;
}

// Re-raises library validation errors under the config key they belong to.
template <typename F>
void check(const std::string& section, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    std::string what = e.what();
    // Library messages lead with the field name when they know it.
    const auto dot = what.find('.');
    const auto space = what.find(' ');
    if (dot != std::string::npos && dot < space && what.compare(0, dot, section) == 0) {
      throw ConfigError(what.substr(0, space), what.substr(space + 1));
    }
    throw ConfigError(section, what);
  }
}

}  // namespace

void RunConfig::propagate_seed() {
  classifier.seed = seed;
  clustering.seed = seed;
}

void RunConfig::validate() const {
  if (paths.output_dir.empty()) throw ConfigError("paths.output_dir", "must not be empty");
  if (min_separation_days < 0) throw ConfigError("corpus.min_separation_days", "must be nonnegative");
  check("corpus", [&] { corpus.validate(); });
  if (vocab_size == 0) throw ConfigError("features.vocab_size", "must be positive");
  if (folds < 3) throw ConfigError("classifier.folds", "needs at least 3 folds");
  if (classifier.lambda_grid.empty()) throw ConfigError("classifier.lambda_grid", "must not be empty");
  check("classifier", [&] { classifier.validate(); });
  check("markers", [&] { markers.validate(); });
  check("clustering", [&] { clustering.validate(); });
  if (homophily.bins == 0) throw ConfigError("homophily.bins", "must be positive");
  if (!(homophily.significance > 0.0 && homophily.significance < 1.0)) {
    throw ConfigError("homophily.significance", "must lie in (0, 1)");
  }
  if (!(homophily.level > 0.0 && homophily.level < 1.0)) {
    throw ConfigError("homophily.level", "must lie in (0, 1)");
  }
  if (budgets.empty()) throw ConfigError("curve.budgets", "must not be empty");
  if (!std::is_sorted(budgets.begin(), budgets.end())) {
    throw ConfigError("curve.budgets", "must be ascending");
  }
  check("synth", [&] { synth.validate(); });
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, f] : fields()) keys.push_back(k);
  return keys;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = fields().find(key);
  if (it == fields().end()) throw ConfigError(key, "unknown configuration key");
  it->second.set(cfg, key, value);
}

RunConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config", "file not found: " + path.string());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", e.what());
  }
  RunConfig cfg;
  const fs::path base = path.parent_path();
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(section, "keys must live inside a [section]");
    for (const auto& [name, leaf] : body) {
      const std::string key = section + "." + name;
      const auto it = fields().find(key);
      if (it == fields().end()) throw ConfigError(key, "unknown configuration key");
      std::string value = leaf.get_value<std::string>();
      if (it->second.is_path) {
        value = trim(value);
        if (!value.empty() && fs::path(value).is_relative()) value = (base / value).lexically_normal().string();
      }
      it->second.set(cfg, key, value);
    }
  }
  return cfg;
}

std::string canonical_dump(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, f] : fields()) out += k + " = " + f.get(cfg) + "\n";
  return out;
}

}  // namespace lexnet::cli
