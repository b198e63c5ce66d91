#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cipscan/constraints.hpp"
#include "cipscan/dataflow.hpp"
#include "cipscan/matcher.hpp"

namespace cipscan {

/// A resolved detector input: a definition site in the graph, or a bare
/// operator for comparison-shaped patterns.
struct DetectorSeed {
  bool is_operator = false;
  std::string op;
  std::uint32_t def = 0;  // valid when !is_operator
};

struct SeedEvidence {
  std::string seed;   // rendered seed (file:line kind name, or operator)
  std::string path;   // hop summary to the candidate statement
};

struct CandidateEnforcement {
  std::string constraint_id;
  std::string pattern;
  PatternInstance instance;
  std::vector<SeedEvidence> evidence;
  bool confirmed = false;
};

struct DetectionReport {
  std::string constraint_id;
  std::vector<CandidateEnforcement> candidates;
  bool truncated = false;
  std::uint64_t sample_seed = 0;
  std::vector<std::string> patterns_run;
};

struct DetectError {
  std::string message;
};

/// One detector run: syntax instances of `pattern` restricted to the
/// intersection of the seeds' forward slices, each confirmed by re-matching
/// at its location. Site-seed count must equal the pattern's arity (operator
/// seeds count toward arity for comparison patterns).
std::optional<std::vector<CandidateEnforcement>> detect(
    const CipPattern& pattern, const std::vector<DetectorSeed>& seeds,
    const SourceCorpus& corpus, const SymbolTable& symbols, const DefUseGraph& graph,
    int depth, DetectError* error = nullptr);

/// Arity fan-out: runs every detector-backed pattern with the same input
/// count as the manually traced pattern, deduplicates by (pattern, file,
/// line), and uniformly samples `cap` candidates with the given seed when
/// the result is larger.
std::optional<DetectionReport> orchestrate(const ConstraintRecord& constraint,
                                           const CipPattern& manual_pattern,
                                           const SourceCorpus& corpus,
                                           const SymbolTable& symbols,
                                           const DefUseGraph& graph, int depth, int cap,
                                           std::uint64_t sample_seed,
                                           DetectError* error = nullptr);

/// Resolves a constraint's SeedRefs against the graph. Fails when a site
/// cannot be found.
std::optional<std::vector<DetectorSeed>> resolve_seeds(const ConstraintRecord& constraint,
                                                       const SourceCorpus& corpus,
                                                       const DefUseGraph& graph,
                                                       DetectError* error = nullptr);

}  // namespace cipscan
