#include "cipscan/json_io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace cipscan {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string file_path_of(const SourceCorpus& corpus, std::uint32_t file_id) {
  const CorpusFile* f = corpus.file(file_id);
  return f ? f->path : "";
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json instance_json(const PatternInstance& inst, const SourceCorpus& corpus) {
  ordered_json j;
  j["pattern"] = inst.pattern;
  j["file"] = file_path_of(corpus, inst.loc.file_id);
  j["line"] = inst.loc.line;
  j["column"] = inst.loc.column;
  j["parts"] = inst.binding.tokens();
  j["text"] = inst.statement_text;
  return j;
}

}  // namespace

std::string catalog_to_json(const std::vector<CipPattern>& patterns) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  ordered_json list = ordered_json::array();
  for (const CipPattern& p : patterns) {
    ordered_json j;
    j["name"] = p.name;
    j["description"] = p.description;
    ordered_json types = ordered_json::array();
    for (StatementType t : p.statement_types) types.push_back(to_string(t));
    j["statement_type"] = types.size() == 1 ? types[0] : ordered_json(types);
    ordered_json parts = ordered_json::array();
    for (const PartSpec& ps : p.parts) {
      if (ps.role == PartRole::Operator) {
        ordered_json op;
        op["role"] = "operator";
        op["operators"] = ps.operator_set;
        parts.push_back(op);
      } else {
        parts.push_back(to_string(ps.role));
      }
    }
    j["parts"] = parts;
    j["detector_arity"] = p.detector_arity;
    j["frequency"] = to_string(p.frequency);
    list.push_back(std::move(j));
  }
  root["patterns"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string instances_to_json(const std::vector<PatternInstance>& instances,
                              const SourceCorpus& corpus,
                              const std::vector<PropertiesInstance>& properties) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  ordered_json list = ordered_json::array();
  for (const PatternInstance& inst : instances) list.push_back(instance_json(inst, corpus));
  for (const PropertiesInstance& p : properties) {
    ordered_json j;
    j["pattern"] = "properties file";
    j["file"] = p.path;
    j["line"] = p.line;
    j["column"] = 1;
    j["parts"] = std::vector<std::string>{p.key};
    j["text"] = p.key + "=" + p.value;
    list.push_back(std::move(j));
  }
  root["instances"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string instances_to_csv(const std::vector<PatternInstance>& instances,
                             const SourceCorpus& corpus,
                             const std::vector<PropertiesInstance>& properties) {
  std::ostringstream out;
  out << "pattern,file,line,column,parts,text\n";
  auto emit = [&out](const std::string& pattern, const std::string& file, std::uint32_t line,
                     std::uint32_t column, const std::vector<std::string>& parts,
                     const std::string& text) {
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) joined += ";";
      joined += parts[i];
    }
    out << csv_escape(pattern) << ',' << csv_escape(file) << ',' << line << ',' << column
        << ',' << csv_escape(joined) << ',' << csv_escape(text) << '\n';
  };
  for (const PatternInstance& inst : instances)
    emit(inst.pattern, file_path_of(corpus, inst.loc.file_id), inst.loc.line, inst.loc.column,
         inst.binding.tokens(), inst.statement_text);
  for (const PropertiesInstance& p : properties)
    emit("properties file", p.path, p.line, 1, {p.key}, p.key + "=" + p.value);
  return out.str();
}

std::string slice_to_json(const Slice& slice, const DefUseGraph& graph,
                          const SourceCorpus& corpus, int depth) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  const DefSite& seed = graph.defs[slice.seed];
  ordered_json seed_json;
  seed_json["file"] = file_path_of(corpus, seed.node.ast->file_id);
  seed_json["line"] = seed.node->loc.line;
  seed_json["kind"] = to_string(seed.kind);
  seed_json["name"] = seed.name;
  root["seed"] = std::move(seed_json);
  root["depth"] = depth;
  root["depth_used"] = slice.depth_used;
  ordered_json reached = ordered_json::array();
  for (std::size_t i = 0; i < slice.reached.size(); ++i) {
    const NodeRef stmt = slice.reached[i];
    ordered_json j;
    j["file"] = file_path_of(corpus, stmt.ast->file_id);
    j["line"] = stmt->loc.line;
    j["column"] = stmt->loc.column;
    const auto it = slice.hops.find(static_cast<std::uint32_t>(i));
    j["hops"] = it == slice.hops.end() ? 0 : it->second;
    reached.push_back(std::move(j));
  }
  root["reached"] = std::move(reached);
  return root.dump(2) + "\n";
}

std::string reports_to_json(const std::vector<DetectionReport>& reports,
                            const SourceCorpus& corpus) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  ordered_json list = ordered_json::array();
  for (const DetectionReport& report : reports) {
    ordered_json j;
    j["constraint_id"] = report.constraint_id;
    j["patterns_run"] = report.patterns_run;
    ordered_json candidates = ordered_json::array();
    for (const CandidateEnforcement& c : report.candidates) {
      ordered_json cj;
      cj["pattern"] = c.pattern;
      cj["file"] = file_path_of(corpus, c.instance.loc.file_id);
      cj["line"] = c.instance.loc.line;
      cj["column"] = c.instance.loc.column;
      cj["parts"] = c.instance.binding.tokens();
      cj["text"] = c.instance.statement_text;
      cj["confirmed"] = c.confirmed;
      ordered_json evidence = ordered_json::array();
      for (const SeedEvidence& ev : c.evidence) {
        ordered_json ej;
        ej["seed"] = ev.seed;
        ej["path"] = ev.path;
        evidence.push_back(std::move(ej));
      }
      cj["evidence"] = std::move(evidence);
      candidates.push_back(std::move(cj));
    }
    j["candidates"] = std::move(candidates);
    j["truncated"] = report.truncated;
    j["sample_seed"] = report.sample_seed;
    list.push_back(std::move(j));
  }
  root["reports"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string links_to_json(const std::vector<LinkRecord>& links) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  ordered_json list = ordered_json::array();
  for (const LinkRecord& link : links) {
    ordered_json j;
    j["constraint_id"] = link.constraint_id;
    j["system"] = link.system;
    ordered_json enforcing;
    enforcing["file"] = link.file;
    enforcing["line"] = link.line;
    enforcing["column"] = link.column;
    enforcing["pattern"] = link.pattern;
    enforcing["parts"] = link.parts;
    enforcing["text"] = link.text;
    j["enforcing"] = std::move(enforcing);
    ordered_json defs = ordered_json::array();
    for (const LinkDefinition& d : link.definitions) {
      ordered_json dj;
      dj["kind"] = d.kind;
      dj["file"] = d.file;
      dj["line"] = d.line;
      dj["symbol"] = d.symbol;
      if (d.unresolved) dj["unresolved"] = true;
      defs.push_back(std::move(dj));
    }
    j["definitions"] = std::move(defs);
    j["provenance"] = link.provenance;
    list.push_back(std::move(j));
  }
  root["links"] = std::move(list);
  return root.dump(2) + "\n";
}

std::optional<std::vector<LinkRecord>> links_from_json(const std::string& text,
                                                       std::string* error) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    if (error) *error = std::string("invalid JSON: ") + e.what();
    return std::nullopt;
  }
  nlohmann::json items = doc.is_array() ? doc : doc.value("links", nlohmann::json::array());
  std::vector<LinkRecord> out;
  for (const auto& item : items) {
    if (!item.is_object() || !item.contains("enforcing")) {
      if (error) *error = "link entry missing 'enforcing'";
      return std::nullopt;
    }
    LinkRecord rec;
    rec.constraint_id = item.value("constraint_id", "");
    rec.system = item.value("system", "");
    const auto& enforcing = item["enforcing"];
    rec.file = enforcing.value("file", "");
    rec.line = enforcing.value("line", 0u);
    rec.column = enforcing.value("column", 0u);
    rec.pattern = enforcing.value("pattern", "");
    rec.text = enforcing.value("text", "");
    if (enforcing.contains("parts"))
      for (const auto& p : enforcing["parts"]) rec.parts.push_back(p.get<std::string>());
    if (item.contains("definitions")) {
      for (const auto& d : item["definitions"]) {
        LinkDefinition def;
        def.kind = d.value("kind", "");
        def.file = d.value("file", "");
        def.line = d.value("line", 0u);
        def.symbol = d.value("symbol", "");
        def.unresolved = d.value("unresolved", false);
        rec.definitions.push_back(std::move(def));
      }
    }
    rec.provenance = item.value("provenance", "");
    out.push_back(std::move(rec));
  }
  return out;
}

std::string classification_to_csv(const std::vector<ConstraintRecord>& records) {
  std::ostringstream out;
  out << "id,type\n";
  for (const ConstraintRecord& rec : records) {
    if (!rec.expr) continue;
    out << csv_escape(rec.id) << ',' << to_string(classify(*rec.expr)) << '\n';
  }
  return out.str();
}

std::string groups_to_json(const std::vector<EnforcementGroup>& groups,
                           const CloneSummary& summary) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  ordered_json list = ordered_json::array();
  for (const EnforcementGroup& g : groups) {
    ordered_json j;
    j["constraint_id"] = g.constraint_id;
    j["consistency"] = to_string(g.consistency);
    j["link_count"] = g.links.size();
    ordered_json pairs = ordered_json::array();
    for (const CloneClassification& cc : classify_group(g)) {
      ordered_json pj;
      pj["a"] = cc.a->file + ":" + std::to_string(cc.a->line);
      pj["b"] = cc.b->file + ":" + std::to_string(cc.b->line);
      pj["type"] = to_string(cc.type);
      pairs.push_back(std::move(pj));
    }
    j["pairs"] = std::move(pairs);
    list.push_back(std::move(j));
  }
  root["groups"] = std::move(list);
  ordered_json sj;
  auto tally = [](const std::map<CloneType, std::size_t>& counts) {
    ordered_json t;
    t["type-1"] = counts.count(CloneType::Type1) ? counts.at(CloneType::Type1) : 0;
    t["type-2"] = counts.count(CloneType::Type2) ? counts.at(CloneType::Type2) : 0;
    t["type-4"] = counts.count(CloneType::Type4) ? counts.at(CloneType::Type4) : 0;
    t["not-clone"] = counts.count(CloneType::NotClone) ? counts.at(CloneType::NotClone) : 0;
    return t;
  };
  sj["anchor_pairs"] = tally(summary.anchor_pairs);
  sj["all_pairs"] = tally(summary.all_pairs);
  sj["consistent_groups"] = summary.consistent_groups;
  sj["inconsistent_groups"] = summary.inconsistent_groups;
  sj["singleton_groups"] = summary.singleton_groups;
  root["summary"] = std::move(sj);
  return root.dump(2) + "\n";
}

std::string groups_to_csv(const std::vector<EnforcementGroup>& groups) {
  std::ostringstream out;
  out << "constraint_id,consistency,link_count,pair_a,pair_b,clone_type\n";
  for (const EnforcementGroup& g : groups) {
    const auto pairs = classify_group(g);
    if (pairs.empty()) {
      out << csv_escape(g.constraint_id) << ',' << to_string(g.consistency) << ','
          << g.links.size() << ",,,\n";
      continue;
    }
    for (const CloneClassification& cc : pairs) {
      out << csv_escape(g.constraint_id) << ',' << to_string(g.consistency) << ','
          << g.links.size() << ',' << csv_escape(cc.a->file + ":" + std::to_string(cc.a->line))
          << ',' << csv_escape(cc.b->file + ":" + std::to_string(cc.b->line)) << ','
          << to_string(cc.type) << '\n';
    }
  }
  return out.str();
}

std::string table_to_json(const DistributionTable& table, const std::string& axis) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  root["axis"] = axis;
  root["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ordered_json j;
    j["name"] = table.rows[r];
    j["counts"] = table.cells[r];
    j["total"] = table.row_totals[r];
    rows.push_back(std::move(j));
  }
  root["rows"] = std::move(rows);
  root["column_totals"] = table.column_totals;
  root["total"] = table.grand_total;
  return root.dump(2) + "\n";
}

std::string table_to_csv(const DistributionTable& table) {
  std::ostringstream out;
  out << "name";
  for (const std::string& c : table.columns) out << ',' << csv_escape(c);
  out << ",total\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << csv_escape(table.rows[r]);
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << ',' << table.cells[r][c];
    out << ',' << table.row_totals[r] << '\n';
  }
  out << "total";
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << ',' << table.column_totals[c];
  out << ',' << table.grand_total << '\n';
  return out.str();
}

std::string table_to_text(const DistributionTable& table, bool color) {
  const char* bold = color ? "\033[1m" : "";
  const char* reset = color ? "\033[0m" : "";
  std::size_t name_width = 4;
  for (const std::string& r : table.rows) name_width = std::max(name_width, r.size());
  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    std::size_t w = table.columns[c].size();
    for (std::size_t r = 0; r < table.rows.size(); ++r)
      w = std::max(w, std::to_string(table.cells[r][c]).size());
    widths.push_back(std::max<std::size_t>(w, 5));
  }
  std::ostringstream out;
  out << bold << std::string(name_width, ' ');
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << "  ";
    out << std::string(widths[c] - table.columns[c].size(), ' ') << table.columns[c];
  }
  out << "  total" << reset << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << table.rows[r] << std::string(name_width - table.rows[r].size(), ' ');
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const std::string v = std::to_string(table.cells[r][c]);
      out << "  " << std::string(widths[c] - v.size(), ' ') << v;
    }
    const std::string t = std::to_string(table.row_totals[r]);
    out << "  " << std::string(t.size() < 5 ? 5 - t.size() : 0, ' ') << t << '\n';
  }
  out << bold << "total" << std::string(name_width > 5 ? name_width - 5 : 0, ' ');
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const std::string v = std::to_string(table.column_totals[c]);
    out << "  " << std::string(widths[c] - v.size(), ' ') << v;
  }
  const std::string g = std::to_string(table.grand_total);
  out << "  " << std::string(g.size() < 5 ? 5 - g.size() : 0, ' ') << g << reset << '\n';
  return out.str();
}

}  // namespace cipscan
