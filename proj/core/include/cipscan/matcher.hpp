#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cipscan/catalog.hpp"
#include "cipscan/corpus.hpp"
#include "cipscan/symbols.hpp"

namespace cipscan {

struct BoundPart {
  PartRole role;
  std::string token;      // canonical bound token (operand text, name, lexeme)
  NodeRef node;           // invalid for operator parts
};

struct PartsBinding {
  std::vector<BoundPart> parts;

  std::vector<std::string> tokens() const {
    std::vector<std::string> out;
    out.reserve(parts.size());
    for (const BoundPart& p : parts) out.push_back(p.token);
    return out;
  }
  friend bool operator==(const PartsBinding& a, const PartsBinding& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      if (a.parts[i].role != b.parts[i].role || a.parts[i].token != b.parts[i].token ||
          !(a.parts[i].node == b.parts[i].node))
        return false;
    }
    return true;
  }
};

/// One matched pattern occurrence. `node` is the matched construct (the
/// comparison expression, the call, the if-chain root, ...), and
/// `statement_text` its verbatim source slice.
struct PatternInstance {
  std::string pattern;
  NodeRef node;
  SourceLoc loc;
  PartsBinding binding;
  std::string statement_text;
};

/// Matches one pattern against one node. Deterministic; a non-match is a
/// normal result. Multi-statement patterns anchor at their first statement
/// and inspect following siblings through the node's parent.
std::optional<PartsBinding> match_statement(NodeRef node, const CipPattern& pattern,
                                            const SymbolTable& symbols);

/// All pattern instances in the corpus after precedence and subsumption
/// filtering, sorted by (file, line, pattern name, column).
std::vector<PatternInstance> match_all(const SourceCorpus& corpus,
                                       const std::vector<const CipPattern*>& patterns,
                                       const SymbolTable& symbols);

std::vector<PatternInstance> match_all(const SourceCorpus& corpus, const SymbolTable& symbols);

/// `properties file` instances: one per `key=value` line. Comment lines
/// (leading '#' or '!') and lines without '=' yield nothing; the value is the
/// remainder after the first '='.
struct PropertiesInstance {
  std::string path;
  std::uint32_t line = 0;
  std::string key;
  std::string value;
};
std::vector<PropertiesInstance> match_properties_file(const std::string& path,
                                                      std::string_view content);

// Exposed for the brute-force matcher oracle in tests: raw candidate matches
// of one pattern at one node plus the sub-nodes the match consumes, before
// any cross-pattern filtering.
struct RawMatch {
  const CipPattern* pattern = nullptr;
  NodeRef node;
  PartsBinding binding;
  std::vector<NodeId> consumed;
};
std::optional<RawMatch> match_raw(NodeRef node, const CipPattern& pattern,
                                  const SymbolTable& symbols);

/// Precedence rank used when several patterns survive on one node; lower
/// wins. Exposed so the oracle in tests can re-apply filtering independently.
int pattern_precedence(const std::string& name);

}  // namespace cipscan
