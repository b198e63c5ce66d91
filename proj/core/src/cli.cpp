#include "cipscan/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cipscan/catalog.hpp"
#include "cipscan/clones.hpp"
#include "cipscan/constraints.hpp"
#include "cipscan/dataflow.hpp"
#include "cipscan/detectors.hpp"
#include "cipscan/json_io.hpp"
#include "cipscan/matcher.hpp"
#include "cipscan/report.hpp"
#include "cipscan/symbols.hpp"
#include "cipscan/trace.hpp"

namespace cipscan::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFatal = 2;
constexpr int kExitPartial = 3;

// `key = value` lines; '#' starts a comment. Flags given on the command line
// win over file values, which win over defaults.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

void apply_config_file(RunConfig& config, const CLI::App& app) {
  std::string path = config.config_path;
  if (path.empty()) {
    std::ifstream probe("cipscan.toml");
    if (probe) path = "cipscan.toml";
  }
  if (path.empty()) return;
  const auto values = read_config_file(path);
  auto unset = [&app](const std::string& flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  if (auto it = values.find("depth"); it != values.end() && unset("--depth"))
    config.depth = std::stoi(it->second);
  if (auto it = values.find("cap"); it != values.end() && unset("--cap"))
    config.cap = std::stoi(it->second);
  if (auto it = values.find("seed"); it != values.end() && unset("--seed"))
    config.sample_seed = std::stoull(it->second);
  if (auto it = values.find("format"); it != values.end() && unset("--format"))
    config.format = it->second;
  if (auto it = values.find("system"); it != values.end() && unset("--system"))
    config.system = it->second;
}

int write_output(const RunConfig& config, const std::string& payload, std::ostream& out,
                 std::ostream& err) {
  if (config.out_path.empty()) {
    out << payload;
    return kExitOk;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) {
    err << "cipscan: cannot write " << config.out_path << "\n";
    return kExitFatal;
  }
  file << payload;
  return kExitOk;
}

void print_parse_failures(const SourceCorpus& corpus, std::ostream& err) {
  for (const CorpusFailure& f : corpus.parse_failures) {
    err << f.path << ":" << f.diagnostic.line << ":" << f.diagnostic.column << ": "
        << f.diagnostic.message << "\n";
  }
}

int finish(const SourceCorpus& corpus, int code) {
  if (code != kExitOk) return code;
  return corpus.parse_failures.empty() ? kExitOk : kExitPartial;
}

std::optional<SourceCorpus> load_corpus(const RunConfig& config, std::ostream& err) {
  CorpusError cerr;
  auto corpus = parse_corpus(config.roots, config.system, &cerr);
  if (!corpus) {
    err << "cipscan: " << cerr.message << "\n";
    return std::nullopt;
  }
  print_parse_failures(*corpus, err);
  return corpus;
}

bool color_enabled() {
  const char* no_color = std::getenv("CIPSCAN_NO_COLOR");
  return no_color == nullptr || no_color[0] == '\0';
}

// ---- subcommands ---------------------------------------------------------

int cmd_catalog(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return write_output(config, catalog_to_json(builtin_catalog()), out, err);
}

int cmd_match(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto corpus = load_corpus(config, err);
  if (!corpus) return kExitFatal;
  const SymbolTable symbols = build_symbols(*corpus);
  std::vector<const CipPattern*> patterns;
  if (config.patterns.empty()) {
    for (const CipPattern& p : builtin_catalog()) patterns.push_back(&p);
  } else {
    for (const std::string& name : config.patterns) {
      const CipPattern* p = find_pattern(name);
      if (!p) {
        err << "cipscan: unknown pattern: " << name << "\n";
        return kExitUsage;
      }
      patterns.push_back(p);
    }
  }
  const auto instances = match_all(*corpus, patterns, symbols);

  // Properties files under the roots participate when requested.
  std::vector<PropertiesInstance> properties;
  const bool want_properties =
      config.patterns.empty() ||
      std::find(config.patterns.begin(), config.patterns.end(), "properties file") !=
          config.patterns.end();
  if (want_properties) {
    namespace fs = std::filesystem;
    std::vector<std::string> prop_files;
    for (const std::string& root : config.roots) {
      std::error_code ec;
      if (fs::is_regular_file(root, ec) && fs::path(root).extension() == ".properties") {
        prop_files.push_back(root);
      } else if (fs::is_directory(root, ec) && !ec) {
        for (auto it = fs::recursive_directory_iterator(root, ec);
             it != fs::recursive_directory_iterator() && !ec; it.increment(ec)) {
          if (it->is_regular_file() && it->path().extension() == ".properties")
            prop_files.push_back(it->path().string());
        }
      }
    }
    std::sort(prop_files.begin(), prop_files.end());
    prop_files.erase(std::unique(prop_files.begin(), prop_files.end()), prop_files.end());
    for (const std::string& path : prop_files) {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      const std::string content = ss.str();
      if (content.find('\0') != std::string::npos) {
        err << path << ":0:0: undecodable properties file\n";
        continue;
      }
      auto found = match_properties_file(path, content);
      properties.insert(properties.end(), found.begin(), found.end());
    }
  }

  const std::string payload = config.format == "csv"
                                  ? instances_to_csv(instances, *corpus, properties)
                                  : instances_to_json(instances, *corpus, properties);
  return finish(*corpus, write_output(config, payload, out, err));
}

int cmd_slice(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto corpus = load_corpus(config, err);
  if (!corpus) return kExitFatal;
  const std::size_t colon = config.seed_site.rfind(':');
  if (colon == std::string::npos) {
    err << "cipscan: --seed expects file:line\n";
    return kExitUsage;
  }
  const std::string file = config.seed_site.substr(0, colon);
  std::uint32_t line = 0;
  try {
    line = static_cast<std::uint32_t>(std::stoul(config.seed_site.substr(colon + 1)));
  } catch (...) {
    err << "cipscan: --seed expects file:line\n";
    return kExitUsage;
  }
  const SymbolTable symbols = build_symbols(*corpus);
  const DefUseGraph graph = build_def_use(*corpus, symbols);
  const auto defs = graph.defs_at(*corpus, file, line);
  if (defs.empty()) {
    err << "cipscan: unknown seed: " << config.seed_site << "\n";
    return kExitFatal;
  }
  SliceError serr;
  const auto slice = forward_slice(graph, defs.front(), config.depth, &serr);
  if (!slice) {
    err << "cipscan: " << serr.message << "\n";
    return kExitFatal;
  }
  return finish(*corpus,
                write_output(config, slice_to_json(*slice, graph, *corpus, config.depth), out, err));
}

int load_constraint_file(const RunConfig& config, LoadResult& result, std::ostream& err) {
  if (config.constraints_path.empty()) {
    err << "cipscan: --constraints is required\n";
    return kExitUsage;
  }
  result = load_constraints(config.constraints_path, "");
  for (const std::string& d : result.diagnostics) err << "cipscan: " << d << "\n";
  if (result.fatal) {
    err << "cipscan: " << result.fatal_message << "\n";
    return kExitFatal;
  }
  return kExitOk;
}

int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto corpus = load_corpus(config, err);
  if (!corpus) return kExitFatal;
  LoadResult constraints;
  if (int code = load_constraint_file(config, constraints, err); code != kExitOk) return code;
  const SymbolTable symbols = build_symbols(*corpus);
  const DefUseGraph graph = build_def_use(*corpus, symbols);
  std::vector<DetectionReport> reports;
  for (const ConstraintRecord& rec : constraints.records) {
    if (rec.manual_pattern.empty()) {
      err << "cipscan: constraint " << rec.id << " has no manual pattern, skipped\n";
      continue;
    }
    const CipPattern* manual = find_pattern(rec.manual_pattern);
    if (!manual) {
      err << "cipscan: constraint " << rec.id << ": unknown pattern '" << rec.manual_pattern
          << "', skipped\n";
      continue;
    }
    DetectError derr;
    auto report = orchestrate(rec, *manual, *corpus, symbols, graph, config.depth, config.cap,
                              config.sample_seed, &derr);
    if (!report) {
      err << "cipscan: constraint " << rec.id << ": " << derr.message << "\n";
      continue;
    }
    reports.push_back(std::move(*report));
  }
  return finish(*corpus, write_output(config, reports_to_json(reports, *corpus), out, err));
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  LoadResult constraints;
  if (int code = load_constraint_file(config, constraints, err); code != kExitOk) return code;
  return write_output(config, classification_to_csv(constraints.records), out, err);
}

int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto corpus = load_corpus(config, err);
  if (!corpus) return kExitFatal;
  LoadResult constraints;
  if (int code = load_constraint_file(config, constraints, err); code != kExitOk) return code;
  const SymbolTable symbols = build_symbols(*corpus);
  const DefUseGraph graph = build_def_use(*corpus, symbols);
  std::vector<LinkRecord> links;
  for (const ConstraintRecord& rec : constraints.records) {
    if (rec.manual_pattern.empty()) {
      err << "cipscan: constraint " << rec.id << " has no manual pattern, skipped\n";
      continue;
    }
    const CipPattern* manual = find_pattern(rec.manual_pattern);
    if (!manual) {
      err << "cipscan: constraint " << rec.id << ": unknown pattern '" << rec.manual_pattern
          << "', skipped\n";
      continue;
    }
    DetectError derr;
    auto report = orchestrate(rec, *manual, *corpus, symbols, graph, config.depth, config.cap,
                              config.sample_seed, &derr);
    if (!report) {
      err << "cipscan: constraint " << rec.id << ": " << derr.message << "\n";
      continue;
    }
    for (const CandidateEnforcement& cand : report->candidates) {
      if (!cand.confirmed) continue;
      auto definitions = resolve_data_definitions(cand.instance, symbols, *corpus);
      TraceError terr;
      auto link = assemble_trace(rec.id, cand.instance, std::move(definitions),
                                 Provenance::Detector, &terr);
      if (!link) {
        err << "cipscan: constraint " << rec.id << ": " << terr.message << "\n";
        continue;
      }
      link->system = rec.system;
      links.push_back(to_record(*link, *corpus));
    }
  }
  return finish(*corpus, write_output(config, links_to_json(links), out, err));
}

int load_links_file(const RunConfig& config, std::vector<LinkRecord>& links, std::ostream& err) {
  if (config.links_path.empty()) {
    err << "cipscan: --links is required\n";
    return kExitUsage;
  }
  std::ifstream in(config.links_path, std::ios::binary);
  if (!in) {
    err << "cipscan: cannot read " << config.links_path << "\n";
    return kExitFatal;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string lerr;
  auto parsed = links_from_json(ss.str(), &lerr);
  if (!parsed) {
    err << "cipscan: " << lerr << "\n";
    return kExitFatal;
  }
  links = std::move(*parsed);
  return kExitOk;
}

int cmd_clones(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<LinkRecord> links;
  if (int code = load_links_file(config, links, err); code != kExitOk) return code;
  const auto groups = group(links);
  const auto summary = clone_summary(groups);
  const std::string payload =
      config.format == "csv" ? groups_to_csv(groups) : groups_to_json(groups, summary);
  return write_output(config, payload, out, err);
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  DistributionTable table;
  if (config.by == "pattern") {
    std::vector<LinkRecord> links;
    if (int code = load_links_file(config, links, err); code != kExitOk) return code;
    table = distribution_by_pattern(links);
  } else if (config.by == "constraint-type") {
    LoadResult constraints;
    if (int code = load_constraint_file(config, constraints, err); code != kExitOk) return code;
    if (!config.links_path.empty()) {
      std::vector<LinkRecord> links;
      if (int code = load_links_file(config, links, err); code != kExitOk) return code;
      table = distribution_by_constraint_type(links, constraints.records);
    } else {
      table = distribution_by_constraint_type(constraints.records);
    }
  } else {
    err << "cipscan: --by expects pattern or constraint-type\n";
    return kExitUsage;
  }
  std::string payload;
  if (config.format == "csv") {
    payload = table_to_csv(table);
  } else if (config.format == "table") {
    payload = table_to_text(table, config.out_path.empty() && color_enabled());
  } else {
    payload = table_to_json(table, config.by);
  }
  return write_output(config, payload, out, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cipscan - constraint implementation pattern scanner"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&config](CLI::App* cmd, bool sampling_seed = true) {
    cmd->add_option("--depth", config.depth, "Interprocedural hop budget for slicing");
    cmd->add_option("--cap", config.cap, "Candidate cap per constraint");
    if (sampling_seed)
      cmd->add_option("--seed", config.sample_seed, "Sampling seed for capped results");
    cmd->add_option("--format", config.format, "Output format: json, csv, or table");
    cmd->add_option("--system", config.system, "System name for grouping");
    cmd->add_option("--out", config.out_path, "Write output to a file instead of stdout");
    cmd->add_option("--config", config.config_path, "Config file (key=value lines)");
  };

  CLI::App* catalog = app.add_subcommand("catalog", "Print the built-in pattern catalog");
  add_common(catalog);

  CLI::App* match = app.add_subcommand("match", "Syntactic pattern instances in a corpus");
  match->add_option("roots", config.roots, "Source roots or files")->required();
  match->add_option("--pattern", config.patterns, "Restrict to the named patterns");
  add_common(match);

  CLI::App* slice = app.add_subcommand("slice", "Forward slice from a definition site");
  slice->add_option("roots", config.roots, "Source roots or files")->required();
  slice->add_option("--seed", config.seed_site, "Seed as file:line")->required();
  add_common(slice, /*sampling_seed=*/false);

  CLI::App* detect = app.add_subcommand("detect", "Detector candidates for constraints");
  detect->add_option("roots", config.roots, "Source roots or files")->required();
  detect->add_option("--constraints", config.constraints_path, "Constraint file")->required();
  add_common(detect);

  CLI::App* classify = app.add_subcommand("classify", "Classify constraints by type");
  classify->add_option("--constraints", config.constraints_path, "Constraint file")->required();
  add_common(classify);

  CLI::App* trace = app.add_subcommand("trace", "Recover trace links for constraints");
  trace->add_option("roots", config.roots, "Source roots or files")->required();
  trace->add_option("--constraints", config.constraints_path, "Constraint file")->required();
  add_common(trace);

  CLI::App* clones = app.add_subcommand("clones", "Clone analysis over trace links");
  clones->add_option("--links", config.links_path, "Trace link file")->required();
  add_common(clones);

  CLI::App* report = app.add_subcommand("report", "Distribution tables");
  report->add_option("--links", config.links_path, "Trace link file");
  report->add_option("--constraints", config.constraints_path, "Constraint file");
  report->add_option("--by", config.by, "Axis: pattern or constraint-type");
  add_common(report);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cipscan: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  apply_config_file(config, *active);

  if (config.format != "json" && config.format != "csv" && config.format != "table") {
    err << "cipscan: unknown format: " << config.format << "\n";
    return kExitUsage;
  }
  if (config.depth < 0 || config.cap < 1) {
    err << "cipscan: depth must be >= 0 and cap >= 1\n";
    return kExitUsage;
  }

  try {
    if (active == catalog) return cmd_catalog(config, out, err);
    if (active == match) return cmd_match(config, out, err);
    if (active == slice) return cmd_slice(config, out, err);
    if (active == detect) return cmd_detect(config, out, err);
    if (active == classify) return cmd_classify(config, out, err);
    if (active == trace) return cmd_trace(config, out, err);
    if (active == clones) return cmd_clones(config, out, err);
    if (active == report) return cmd_report(config, out, err);
  } catch (const std::exception& e) {
    err << "cipscan: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitUsage;
}

}  // namespace cipscan::cli
