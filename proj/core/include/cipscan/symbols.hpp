#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cipscan/corpus.hpp"

namespace cipscan {

struct FieldInfo {
  NodeRef decl;
  std::string cls;        // qualified enclosing class name
  std::string name;       // simple name
  std::string type_name;  // raw declared type
};

struct ParamInfo {
  std::string name;
  std::string type_name;
};

struct MethodInfo {
  NodeRef decl;
  std::string cls;
  std::string name;  // simple name; "<init>" for constructors
  std::vector<ParamInfo> params;
  std::string return_type;
  bool is_abstract = false;
};

/// Per-corpus declaration index. Qualified names are dot-joined
/// ("Outer.Inner.member"). Duplicate qualified names keep the first
/// declaration in file-id order and add a warning diagnostic. Immutable
/// after construction.
struct SymbolTable {
  std::map<std::string, FieldInfo> fields;
  std::map<std::string, MethodInfo> methods;
  std::set<std::string> getters;                       // qualified method names
  std::map<std::string, std::string> getter_field;     // getter -> field qname
  std::map<std::string, std::vector<std::string>> enums;  // enum qname -> members
  std::map<std::string, NodeRef> classes;              // class qname -> decl
  std::map<std::string, std::vector<std::string>> class_bases;  // raw base names
  std::vector<std::string> diagnostics;

  bool is_enum_name(std::string_view name) const;
  /// Classes equal to or transitively derived from `base` (qualified name).
  std::vector<std::string> derived_classes(const std::string& base) const;
  /// Methods named `name` (same parameter count when >= 0) declared in
  /// classes derived from the class of `qname`, i.e. override candidates.
  std::vector<const MethodInfo*> overrides_of(const MethodInfo& base) const;
  /// Resolves a base class simple or qualified name to a known class qname.
  std::optional<std::string> resolve_class_name(std::string_view name) const;
};

SymbolTable build_symbols(const SourceCorpus& corpus);

// --- syntactic resolution helpers -----------------------------------------
// Resolution is per-class and name-based: a receiver's declared type is used
// when locally known, with a unique-name fallback across the corpus.

/// Declared raw type of an expression node, when derivable without full type
/// checking (literals, locals, parameters, fields, known method calls).
std::optional<std::string> declared_type_of(NodeRef expr, const SymbolTable& symbols);

/// Qualified field name an expression resolves to (bare name, this.f, obj.f).
std::optional<std::string> resolve_field(NodeRef expr, const SymbolTable& symbols);

/// Qualified method name a call resolves to.
std::optional<std::string> resolve_callee(NodeRef call, const SymbolTable& symbols);

/// Declared type of a simple name at a use site: enclosing method parameters
/// and locals first, then enclosing class fields, then a unique field name
/// anywhere in the corpus.
std::optional<std::string> declared_type_of_name(NodeRef site, std::string_view name,
                                                 const SymbolTable& symbols);

/// Qualified name of the enclosing class of a node.
std::string enclosing_class_qname(NodeRef node);

}  // namespace cipscan
