#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cipscan/dataflow.hpp"
#include "cipscan/matcher.hpp"

namespace cipscan {

enum class DataDefKind : std::uint8_t {
  FieldDeclaration,
  MethodDeclaration,
  LibraryCallSite,
  LocalAssignment,
  LiteralOccurrence,
  ParameterDefinition,
};

const char* to_string(DataDefKind kind);

struct DataDefinition {
  DataDefKind kind = DataDefKind::LiteralOccurrence;
  NodeRef node;
  std::string symbol;  // qualified name or literal text
  bool unresolved = false;
};

enum class Provenance : std::uint8_t { Manual, Detector };

const char* to_string(Provenance provenance);

struct TraceLink {
  std::string constraint_id;
  PatternInstance enforcing;
  std::vector<DataDefinition> definitions;
  Provenance provenance = Provenance::Detector;
  std::string system;
};

// Serializable form of a trace link, independent of a live corpus. This is
// what the link files on disk carry.
struct LinkDefinition {
  std::string kind;
  std::string file;
  std::uint32_t line = 0;
  std::string symbol;
  bool unresolved = false;
};

struct LinkRecord {
  std::string constraint_id;
  std::string system;
  std::string file;
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::string pattern;
  std::vector<std::string> parts;
  std::string text;  // verbatim enforcing statement
  std::vector<LinkDefinition> definitions;
  std::string provenance;
};

LinkRecord to_record(const TraceLink& link, const SourceCorpus& corpus);

/// Walks from a candidate statement to the lowest-granularity statement that
/// matches the pattern: a statement with no method invocation is final;
/// otherwise each invoked corpus-local method is searched depth-first in
/// source order for a matching statement, and the walk recurses on the first
/// hit. A visited-method set guarantees termination on recursive code.
NodeRef descend_enforcing(NodeRef candidate, const CipPattern& pattern,
                          const SourceCorpus& corpus, const SymbolTable& symbols);

/// Applies the data-definition rules to every non-operator bound part:
/// field (or unchanged getter) -> field declaration; computed method ->
/// method declaration; library-sourced value -> the call site; literal-
/// initialized local -> the assignment; bare literal -> the occurrence;
/// parameter -> the parameter definition.
std::vector<DataDefinition> resolve_data_definitions(const PatternInstance& enforcing,
                                                     const SymbolTable& symbols,
                                                     const SourceCorpus& corpus);

struct TraceError {
  std::string message;
};

/// Validates the part/definition correspondence and assembles the link.
std::optional<TraceLink> assemble_trace(const std::string& constraint_id,
                                        const PatternInstance& enforcing,
                                        std::vector<DataDefinition> definitions,
                                        Provenance provenance,
                                        TraceError* error = nullptr);

}  // namespace cipscan
