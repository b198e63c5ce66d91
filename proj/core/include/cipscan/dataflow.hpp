#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cipscan/corpus.hpp"
#include "cipscan/symbols.hpp"

namespace cipscan {

enum class CallResolution : std::uint8_t { Static, HierarchyApproximate };

struct CallEdge {
  std::string caller;  // qualified method name
  std::string callee;
  NodeRef call_site;
  CallResolution resolution = CallResolution::Static;
};

struct CallGraph {
  std::vector<std::string> nodes;  // qualified method names, sorted
  std::vector<CallEdge> edges;
  std::size_t unresolved_calls = 0;

  std::vector<const CallEdge*> edges_from(const std::string& caller) const;
};

/// One edge per syntactic call site; calls whose static target is abstract
/// fan out to every override (class-hierarchy approximation). Calls that
/// resolve to nothing in the corpus are omitted and counted.
CallGraph build_call_graph(const SourceCorpus& corpus, const SymbolTable& symbols);

enum class DefKind : std::uint8_t {
  FieldDecl,
  MethodDecl,  // stands for the method's computed result
  Parameter,
  Assignment,  // assignments and initialized local declarations
  LiteralOccurrence,
};

const char* to_string(DefKind kind);

struct DefSite {
  std::uint32_t id = 0;
  DefKind kind = DefKind::FieldDecl;
  NodeRef node;
  std::string name;  // field/method qname, parameter or local name, literal token
};

enum class EdgeLabel : std::uint8_t {
  DirectRead,
  GetterRead,
  LocalPropagation,
  ParameterPassing,
  ReturnPropagation,
};

const char* to_string(EdgeLabel label);

struct UseEdge {
  std::uint32_t def = 0;
  NodeRef stmt;
  EdgeLabel label = EdgeLabel::DirectRead;
  int cost = 0;  // interprocedural hop cost, 0 or 1
};

struct FlowEdge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  EdgeLabel label = EdgeLabel::LocalPropagation;
  int cost = 0;
};

/// Statement-level def-use relation over the corpus. Use edges point from a
/// definition site to a statement reading it; flow edges chain definitions
/// (assignment targets, parameter passing, returned values). Immutable after
/// construction; slices may be computed concurrently.
struct DefUseGraph {
  std::vector<DefSite> defs;
  std::vector<UseEdge> uses;
  std::vector<FlowEdge> flows;
  std::map<std::uint32_t, std::vector<std::size_t>> uses_by_def;
  std::map<std::uint32_t, std::vector<std::size_t>> flows_by_def;

  /// Definition sites on a given file/line, optionally restricted by kind.
  std::vector<std::uint32_t> defs_at(const SourceCorpus& corpus, std::string_view path,
                                     std::uint32_t line,
                                     std::optional<DefKind> kind = std::nullopt) const;
  /// All literal occurrences carrying the same token as the given literal def
  /// (a constant seed means the value, not one occurrence).
  std::vector<std::uint32_t> value_group(std::uint32_t literal_def) const;
};

DefUseGraph build_def_use(const SourceCorpus& corpus, const SymbolTable& symbols);

struct Slice {
  std::uint32_t seed = 0;
  std::vector<NodeRef> reached;           // statement nodes, sorted
  std::map<std::uint32_t, int> hops;      // reached stmt (by sort index) -> min hops
  int depth_used = 0;

  bool contains(NodeRef stmt) const;
};

struct SliceError {
  std::string message;
};

/// Forward slice: statements data-dependent on the seed within `depth`
/// interprocedural hops. Literal seeds expand to their whole value group.
std::optional<Slice> forward_slice(const DefUseGraph& graph, std::uint32_t seed_def,
                                   int depth, SliceError* error = nullptr);

/// Set intersection of the reached statement sets.
std::vector<NodeRef> intersect(const std::vector<Slice>& slices);

}  // namespace cipscan
