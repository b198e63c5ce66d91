#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cipscan/catalog.hpp"
#include "cipscan/clones.hpp"
#include "cipscan/dataflow.hpp"
#include "cipscan/detectors.hpp"
#include "cipscan/matcher.hpp"
#include "cipscan/report.hpp"
#include "cipscan/trace.hpp"

namespace cipscan {

// All JSON documents carry {"schema_version": "1", ...} at the top level and
// serialize with a stable field order, so identical inputs produce identical
// bytes.

inline constexpr const char* kSchemaVersion = "1";

std::string catalog_to_json(const std::vector<CipPattern>& patterns);

std::string instances_to_json(const std::vector<PatternInstance>& instances,
                              const SourceCorpus& corpus,
                              const std::vector<PropertiesInstance>& properties = {});
std::string instances_to_csv(const std::vector<PatternInstance>& instances,
                             const SourceCorpus& corpus,
                             const std::vector<PropertiesInstance>& properties = {});

std::string slice_to_json(const Slice& slice, const DefUseGraph& graph,
                          const SourceCorpus& corpus, int depth);

std::string reports_to_json(const std::vector<DetectionReport>& reports,
                            const SourceCorpus& corpus);

std::string links_to_json(const std::vector<LinkRecord>& links);
std::optional<std::vector<LinkRecord>> links_from_json(const std::string& text,
                                                       std::string* error = nullptr);

std::string classification_to_csv(const std::vector<ConstraintRecord>& records);

std::string groups_to_json(const std::vector<EnforcementGroup>& groups,
                           const CloneSummary& summary);
std::string groups_to_csv(const std::vector<EnforcementGroup>& groups);

std::string table_to_json(const DistributionTable& table, const std::string& axis);
std::string table_to_csv(const DistributionTable& table);
std::string table_to_text(const DistributionTable& table, bool color);

}  // namespace cipscan
