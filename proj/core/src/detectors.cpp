#include "cipscan/detectors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cipscan {

namespace {

std::optional<DefKind> def_kind_from_string(const std::string& kind) {
  if (kind == "field-decl") return DefKind::FieldDecl;
  if (kind == "method-decl") return DefKind::MethodDecl;
  if (kind == "parameter") return DefKind::Parameter;
  if (kind == "assignment" || kind == "local-assignment") return DefKind::Assignment;
  if (kind == "literal-occurrence" || kind == "literal") return DefKind::LiteralOccurrence;
  return std::nullopt;
}

std::string render_seed(const DefUseGraph& graph, const DetectorSeed& seed,
                        const SourceCorpus& corpus) {
  if (seed.is_operator) return "operator " + seed.op;
  const DefSite& d = graph.defs[seed.def];
  const CorpusFile* file = corpus.file(d.node.ast->file_id);
  const std::string path = file ? file->path : "?";
  return path + ":" + std::to_string(d.node->loc.line) + " " + to_string(d.kind) + " " +
         d.name;
}

// The statement a matched node belongs to.
NodeRef stmt_of(NodeRef node) {
  if (node->stmt == kNoNode) return node;
  return NodeRef{node.ast, node->stmt};
}

}  // namespace

std::optional<std::vector<DetectorSeed>> resolve_seeds(const ConstraintRecord& constraint,
                                                       const SourceCorpus& corpus,
                                                       const DefUseGraph& graph,
                                                       DetectError* error) {
  if (constraint.seeds.empty()) {
    if (error) error->message = "constraint has no seeds";
    return std::nullopt;
  }
  std::vector<DetectorSeed> out;
  for (const SeedRef& ref : constraint.seeds) {
    if (ref.kind == "operator") {
      DetectorSeed s;
      s.is_operator = true;
      s.op = ref.op;
      out.push_back(std::move(s));
      continue;
    }
    const auto kind = def_kind_from_string(ref.kind);
    auto ids = graph.defs_at(corpus, ref.file, ref.line, kind);
    if (ids.empty() && kind) {
      // The kind may name a local declaration recorded as an assignment.
      ids = graph.defs_at(corpus, ref.file, ref.line, std::nullopt);
    }
    if (ids.empty()) {
      if (error)
        error->message = "unknown seed: " + ref.file + ":" + std::to_string(ref.line) + ":" +
                         ref.kind;
      return std::nullopt;
    }
    DetectorSeed s;
    s.def = ids.front();
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::vector<CandidateEnforcement>> detect(
    const CipPattern& pattern, const std::vector<DetectorSeed>& seeds,
    const SourceCorpus& corpus, const SymbolTable& symbols, const DefUseGraph& graph,
    int depth, DetectError* error) {
  if (!pattern.has_detector()) {
    if (error) error->message = "no detector: " + pattern.name;
    return std::nullopt;
  }
  if (static_cast<int>(seeds.size()) != pattern.detector_arity) {
    if (error)
      error->message = "arity mismatch: " + pattern.name + " takes " +
                       std::to_string(pattern.detector_arity) + " inputs, got " +
                       std::to_string(seeds.size());
    return std::nullopt;
  }

  std::vector<Slice> slices;
  std::vector<const DetectorSeed*> site_seeds;
  std::string op_filter;
  for (const DetectorSeed& s : seeds) {
    if (s.is_operator) {
      op_filter = s.op;
      continue;
    }
    SliceError serr;
    auto slice = forward_slice(graph, s.def, depth, &serr);
    if (!slice) {
      if (error) error->message = serr.message;
      return std::nullopt;
    }
    slices.push_back(std::move(*slice));
    site_seeds.push_back(&s);
  }
  if (slices.empty()) {
    if (error) error->message = "constraint has no seeds";
    return std::nullopt;
  }
  const std::vector<NodeRef> shared = intersect(slices);

  const std::vector<const CipPattern*> one{&pattern};
  std::vector<PatternInstance> instances = match_all(corpus, one, symbols);

  std::vector<CandidateEnforcement> out;
  for (PatternInstance& inst : instances) {
    const NodeRef stmt = stmt_of(inst.node);
    if (!std::binary_search(shared.begin(), shared.end(), stmt)) continue;
    if (!op_filter.empty()) {
      bool op_matches = false;
      for (const BoundPart& p : inst.binding.parts)
        if (p.role == PartRole::Operator && p.token == op_filter) op_matches = true;
      if (!op_matches) continue;
    }
    CandidateEnforcement cand;
    cand.pattern = pattern.name;
    // Match confirmation at the recorded location.
    auto again = match_statement(inst.node, pattern, symbols);
    cand.confirmed = again && *again == inst.binding;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      SeedEvidence ev;
      ev.seed = render_seed(graph, *site_seeds[i], corpus);
      const auto it = std::lower_bound(slices[i].reached.begin(), slices[i].reached.end(), stmt);
      const auto idx = static_cast<std::uint32_t>(it - slices[i].reached.begin());
      const auto hop_it = slices[i].hops.find(idx);
      ev.path = hop_it != slices[i].hops.end()
                    ? std::to_string(hop_it->second) + " hop(s)"
                    : "reached";
      cand.evidence.push_back(std::move(ev));
    }
    cand.instance = std::move(inst);
    out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const CandidateEnforcement& a,
                                       const CandidateEnforcement& b) {
    const SourceLoc& la = a.instance.loc;
    const SourceLoc& lb = b.instance.loc;
    if (la.file_id != lb.file_id) return la.file_id < lb.file_id;
    if (la.line != lb.line) return la.line < lb.line;
    if (la.column != lb.column) return la.column < lb.column;
    return a.pattern < b.pattern;
  });
  return out;
}

std::optional<DetectionReport> orchestrate(const ConstraintRecord& constraint,
                                           const CipPattern& manual_pattern,
                                           const SourceCorpus& corpus,
                                           const SymbolTable& symbols,
                                           const DefUseGraph& graph, int depth, int cap,
                                           std::uint64_t sample_seed, DetectError* error) {
  auto seeds = resolve_seeds(constraint, corpus, graph, error);
  if (!seeds) return std::nullopt;
  if (!manual_pattern.has_detector()) {
    if (error) error->message = "no detector: " + manual_pattern.name;
    return std::nullopt;
  }
  if (static_cast<int>(seeds->size()) != manual_pattern.detector_arity) {
    if (error)
      error->message = "arity mismatch: constraint " + constraint.id + " has " +
                       std::to_string(seeds->size()) + " seeds, pattern " +
                       manual_pattern.name + " takes " +
                       std::to_string(manual_pattern.detector_arity);
    return std::nullopt;
  }

  DetectionReport report;
  report.constraint_id = constraint.id;
  report.sample_seed = sample_seed;

  const bool has_op_seed =
      std::any_of(seeds->begin(), seeds->end(), [](const DetectorSeed& s) { return s.is_operator; });

  std::set<std::tuple<std::string, std::uint32_t, std::uint32_t>> seen;
  for (const CipPattern* p : patterns_with_arity(manual_pattern.detector_arity)) {
    // Operator inputs only make sense for patterns with an operator part.
    const bool wants_op = std::any_of(p->parts.begin(), p->parts.end(), [](const PartSpec& ps) {
      return ps.role == PartRole::Operator;
    });
    if (has_op_seed && !wants_op) continue;
    report.patterns_run.push_back(p->name);
    auto candidates = detect(*p, *seeds, corpus, symbols, graph, depth, error);
    if (!candidates) return std::nullopt;
    for (CandidateEnforcement& c : *candidates) {
      c.constraint_id = constraint.id;
      const auto key = std::make_tuple(c.pattern, c.instance.loc.file_id, c.instance.loc.line);
      if (!seen.insert(key).second) continue;
      report.candidates.push_back(std::move(c));
    }
  }

  std::sort(report.candidates.begin(), report.candidates.end(),
            [](const CandidateEnforcement& a, const CandidateEnforcement& b) {
              const SourceLoc& la = a.instance.loc;
              const SourceLoc& lb = b.instance.loc;
              if (la.file_id != lb.file_id) return la.file_id < lb.file_id;
              if (la.line != lb.line) return la.line < lb.line;
              if (la.column != lb.column) return la.column < lb.column;
              return a.pattern < b.pattern;
            });

  if (cap > 0 && static_cast<int>(report.candidates.size()) > cap) {
    // Partial Fisher-Yates with a fixed stream, then back to location order.
    std::mt19937_64 rng(sample_seed);
    std::vector<std::size_t> index(report.candidates.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    for (std::size_t i = 0; i < static_cast<std::size_t>(cap); ++i) {
      std::uniform_int_distribution<std::size_t> dist(i, index.size() - 1);
      std::swap(index[i], index[dist(rng)]);
    }
    index.resize(static_cast<std::size_t>(cap));
    std::sort(index.begin(), index.end());
    std::vector<CandidateEnforcement> sampled;
    sampled.reserve(index.size());
    for (std::size_t i : index) sampled.push_back(std::move(report.candidates[i]));
    report.candidates = std::move(sampled);
    report.truncated = true;
  }
  return report;
}

}  // namespace cipscan
