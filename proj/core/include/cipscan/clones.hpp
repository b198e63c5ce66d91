#pragma once

#include <map>
#include <string>
#include <vector>

#include "cipscan/trace.hpp"

namespace cipscan {

enum class Consistency : std::uint8_t { Consistent, Inconsistent, Singleton };

const char* to_string(Consistency consistency);

struct EnforcementGroup {
  std::string constraint_id;
  std::vector<LinkRecord> links;  // location order
  Consistency consistency = Consistency::Singleton;
};

enum class CloneType : std::uint8_t { Type1, Type2, Type4, NotClone };

const char* to_string(CloneType type);

struct CloneClassification {
  const LinkRecord* a = nullptr;
  const LinkRecord* b = nullptr;
  CloneType type = CloneType::NotClone;
};

struct CloneSummary {
  // Headline tally: each later link against the group's earliest link.
  std::map<CloneType, std::size_t> anchor_pairs;
  // All unordered pairs within each group.
  std::map<CloneType, std::size_t> all_pairs;
  std::size_t consistent_groups = 0;
  std::size_t inconsistent_groups = 0;
  std::size_t singleton_groups = 0;
};

/// One group per constraint id, links in location order, consistency from the
/// set of pattern names.
std::vector<EnforcementGroup> group(const std::vector<LinkRecord>& links);

/// Token-level classification: type-1 when the comment/whitespace-insensitive
/// token streams are identical; type-2 when they are identical after mapping
/// identifiers and literals to positional placeholders (consistent renaming);
/// type-4 when the patterns differ; not-clone otherwise. Symmetric.
CloneType classify_clone(const std::string& text_a, const std::string& pattern_a,
                         const std::string& text_b, const std::string& pattern_b);

CloneType classify_clone(const LinkRecord& a, const LinkRecord& b);

/// Anchor-pair classifications per group (each link against the earliest).
std::vector<CloneClassification> classify_group(const EnforcementGroup& group);

CloneSummary clone_summary(const std::vector<EnforcementGroup>& groups);

/// Comment/whitespace-insensitive token stream of a statement.
std::vector<std::string> clone_tokens(const std::string& text);
/// Identifiers and literals replaced by positional placeholders (equal names
/// map to equal placeholders within one statement).
std::vector<std::string> normalized_tokens(const std::string& text);

}  // namespace cipscan
