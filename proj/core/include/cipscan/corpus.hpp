#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cipscan/ast.hpp"
#include "cipscan/parser.hpp"

namespace cipscan {

struct CorpusFile {
  std::uint32_t file_id = 0;
  std::string path;
  std::string system;  // grouping label, defaults to the root's name
};

struct CorpusFailure {
  std::uint32_t file_id = 0;
  std::string path;
  ParseDiagnostic diagnostic;
};

/// The parsed corpus. File ids are assigned in lexicographic path order and
/// every discovered file appears either in `asts` or in `parse_failures`.
/// Immutable after construction.
struct SourceCorpus {
  std::vector<CorpusFile> files;
  std::vector<Ast> asts;
  std::vector<CorpusFailure> parse_failures;

  const Ast* ast_for(std::uint32_t file_id) const;
  const Ast* ast_for_path(std::string_view path) const;
  const CorpusFile* file(std::uint32_t file_id) const;
  std::size_t parsed_count() const { return asts.size(); }
};

struct CorpusError {
  std::string message;
};

/// Parses every `.java` file under the given roots (a root may also be a
/// single file). An unreadable root is a fatal error; a file that fails to
/// parse is recorded in `parse_failures` and parsing continues.
/// `system_label`, when non-empty, overrides the per-root system name.
std::optional<SourceCorpus> parse_corpus(const std::vector<std::string>& roots,
                                         std::string system_label = "",
                                         CorpusError* error = nullptr);

/// In-memory variant used by tests: (virtual path, content) pairs.
SourceCorpus parse_corpus_from_memory(
    const std::vector<std::pair<std::string, std::string>>& files,
    std::string system_label = "mem");

/// Nodes in deterministic order (file id, then span begin). Without a filter,
/// returns statement-level nodes only; with a filter, returns every node of
/// the requested kinds, including sub-expressions.
std::vector<NodeRef> statements_of(const SourceCorpus& corpus,
                                   const std::vector<NodeKind>* kind_filter = nullptr);

/// All nodes of one file in preorder.
std::vector<NodeRef> all_nodes(const Ast& ast);

}  // namespace cipscan
