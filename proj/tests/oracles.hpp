#pragma once

// Independent oracles used by the unit and acceptance suites. They stay
// deliberately naive: plain scans and breadth-first walks, no reuse of the
// production lookup paths beyond the per-node entry points they check.

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cipscan/dataflow.hpp"
#include "cipscan/matcher.hpp"

namespace test_support {

// Applies match_raw at every node for every pattern and re-implements the
// published consumption + precedence filtering.
inline std::vector<cipscan::PatternInstance> brute_force_match(
    const cipscan::SourceCorpus& corpus, const cipscan::SymbolTable& symbols) {
  using namespace cipscan;
  std::vector<RawMatch> raws;
  for (const Ast& ast : corpus.asts) {
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      for (const CipPattern& p : builtin_catalog()) {
        if (p.statement_types.size() == 1 && p.statement_types[0] == StatementType::FileLine)
          continue;
        if (auto raw = match_raw(NodeRef{&ast, id}, p, symbols)) raws.push_back(std::move(*raw));
      }
    }
  }
  std::set<std::pair<const Ast*, NodeId>> consumed;
  for (const RawMatch& r : raws)
    for (NodeId c : r.consumed) consumed.insert({r.node.ast, c});
  std::map<std::pair<const Ast*, NodeId>, const RawMatch*> winner;
  for (const RawMatch& r : raws) {
    const auto key = std::make_pair(r.node.ast, r.node.id);
    if (consumed.count(key)) continue;
    auto it = winner.find(key);
    if (it == winner.end() ||
        pattern_precedence(r.pattern->name) < pattern_precedence(it->second->pattern->name))
      winner[key] = &r;
  }
  std::vector<PatternInstance> out;
  for (const auto& [key, r] : winner) {
    (void)key;
    PatternInstance inst;
    inst.pattern = r->pattern->name;
    inst.node = r->node;
    inst.loc = r->node.loc();
    inst.binding = r->binding;
    inst.statement_text = std::string(r->node.text());
    out.push_back(std::move(inst));
  }
  std::sort(out.begin(), out.end(), [](const PatternInstance& a, const PatternInstance& b) {
    if (a.loc.file_id != b.loc.file_id) return a.loc.file_id < b.loc.file_id;
    if (a.loc.line != b.loc.line) return a.loc.line < b.loc.line;
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    return a.loc.column < b.loc.column;
  });
  return out;
}

// Transitive def-use reachability by breadth-first walk over the edge lists,
// with no hop accounting.
inline std::set<std::pair<const cipscan::Ast*, cipscan::NodeId>> naive_reachability(
    const cipscan::DefUseGraph& graph, std::uint32_t seed) {
  using namespace cipscan;
  std::set<std::pair<const Ast*, NodeId>> reached;
  std::set<std::uint32_t> visited;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t d : graph.value_group(seed)) {
    visited.insert(d);
    queue.push_back(d);
  }
  while (!queue.empty()) {
    const std::uint32_t def = queue.front();
    queue.pop_front();
    for (const UseEdge& e : graph.uses)
      if (e.def == def) reached.insert({e.stmt.ast, e.stmt.id});
    for (const FlowEdge& e : graph.flows)
      if (e.from == def && visited.insert(e.to).second) queue.push_back(e.to);
  }
  return reached;
}

}  // namespace test_support
