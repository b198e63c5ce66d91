#include "cipscan/clones.hpp"

#include <algorithm>

#include "cipscan/lexer.hpp"

namespace cipscan {

const char* to_string(Consistency consistency) {
  switch (consistency) {
    case Consistency::Consistent: return "consistent";
    case Consistency::Inconsistent: return "inconsistent";
    case Consistency::Singleton: return "singleton";
  }
  return "unknown";
}

const char* to_string(CloneType type) {
  switch (type) {
    case CloneType::Type1: return "type-1";
    case CloneType::Type2: return "type-2";
    case CloneType::Type4: return "type-4";
    case CloneType::NotClone: return "not-clone";
  }
  return "unknown";
}

std::vector<std::string> clone_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& t : lex(text)) {
    if (t.kind == TokenKind::End) break;
    out.emplace_back(t.text);
  }
  return out;
}

std::vector<std::string> normalized_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::map<std::string, std::string> ids;
  std::map<std::string, std::string> lits;
  for (const Token& t : lex(text)) {
    if (t.kind == TokenKind::End) break;
    if (t.kind == TokenKind::Identifier) {
      const std::string key(t.text);
      auto it = ids.find(key);
      if (it == ids.end()) it = ids.emplace(key, "I" + std::to_string(ids.size())).first;
      out.push_back(it->second);
    } else if (t.is_literal()) {
      const std::string key(t.text);
      auto it = lits.find(key);
      if (it == lits.end()) it = lits.emplace(key, "L" + std::to_string(lits.size())).first;
      out.push_back(it->second);
    } else {
      out.emplace_back(t.text);
    }
  }
  return out;
}

CloneType classify_clone(const std::string& text_a, const std::string& pattern_a,
                         const std::string& text_b, const std::string& pattern_b) {
  if (clone_tokens(text_a) == clone_tokens(text_b)) return CloneType::Type1;
  if (normalized_tokens(text_a) == normalized_tokens(text_b)) return CloneType::Type2;
  if (pattern_a != pattern_b) return CloneType::Type4;
  return CloneType::NotClone;
}

CloneType classify_clone(const LinkRecord& a, const LinkRecord& b) {
  return classify_clone(a.text, a.pattern, b.text, b.pattern);
}

std::vector<EnforcementGroup> group(const std::vector<LinkRecord>& links) {
  std::map<std::string, EnforcementGroup> by_id;
  for (const LinkRecord& link : links) {
    EnforcementGroup& g = by_id[link.constraint_id];
    g.constraint_id = link.constraint_id;
    g.links.push_back(link);
  }
  std::vector<EnforcementGroup> out;
  for (auto& [id, g] : by_id) {
    (void)id;
    std::sort(g.links.begin(), g.links.end(), [](const LinkRecord& a, const LinkRecord& b) {
      if (a.file != b.file) return a.file < b.file;
      if (a.line != b.line) return a.line < b.line;
      return a.column < b.column;
    });
    if (g.links.size() == 1) {
      g.consistency = Consistency::Singleton;
    } else {
      bool uniform = true;
      for (const LinkRecord& link : g.links)
        if (link.pattern != g.links[0].pattern) uniform = false;
      g.consistency = uniform ? Consistency::Consistent : Consistency::Inconsistent;
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<CloneClassification> classify_group(const EnforcementGroup& group) {
  std::vector<CloneClassification> out;
  if (group.links.size() < 2) return out;
  const LinkRecord& anchor = group.links[0];
  for (std::size_t i = 1; i < group.links.size(); ++i) {
    CloneClassification cc;
    cc.a = &anchor;
    cc.b = &group.links[i];
    cc.type = classify_clone(anchor, group.links[i]);
    out.push_back(cc);
  }
  return out;
}

CloneSummary clone_summary(const std::vector<EnforcementGroup>& groups) {
  CloneSummary summary;
  for (const EnforcementGroup& g : groups) {
    switch (g.consistency) {
      case Consistency::Consistent: ++summary.consistent_groups; break;
      case Consistency::Inconsistent: ++summary.inconsistent_groups; break;
      case Consistency::Singleton: ++summary.singleton_groups; break;
    }
    if (g.links.size() < 2) continue;
    for (const CloneClassification& cc : classify_group(g)) ++summary.anchor_pairs[cc.type];
    for (std::size_t i = 0; i < g.links.size(); ++i)
      for (std::size_t j = i + 1; j < g.links.size(); ++j)
        ++summary.all_pairs[classify_clone(g.links[i], g.links[j])];
  }
  return summary;
}

}  // namespace cipscan
