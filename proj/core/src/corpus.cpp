#include "cipscan/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace cipscan {

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::string root_label(const fs::path& root) {
  fs::path p = root;
  if (p.has_filename() && p.filename() == ".") p = p.parent_path();
  std::string name = p.filename().string();
  return name.empty() ? p.string() : name;
}

}  // namespace

const Ast* SourceCorpus::ast_for(std::uint32_t file_id) const {
  for (const Ast& a : asts)
    if (a.file_id == file_id) return &a;
  return nullptr;
}

const Ast* SourceCorpus::ast_for_path(std::string_view path) const {
  for (const Ast& a : asts)
    if (a.path == path) return &a;
  // Fall back to suffix matching so constraint files can use short names.
  for (const Ast& a : asts) {
    if (a.path.size() > path.size() &&
        std::string_view(a.path).ends_with(path) &&
        a.path[a.path.size() - path.size() - 1] == '/')
      return &a;
  }
  return nullptr;
}

const CorpusFile* SourceCorpus::file(std::uint32_t file_id) const {
  for (const CorpusFile& f : files)
    if (f.file_id == file_id) return &f;
  return nullptr;
}

std::optional<SourceCorpus> parse_corpus(const std::vector<std::string>& roots,
                                         std::string system_label, CorpusError* error) {
  std::vector<std::pair<std::string, std::string>> discovered;  // (path, system)
  for (const std::string& root : roots) {
    fs::path rp(root);
    std::error_code ec;
    if (!fs::exists(rp, ec) || ec) {
      if (error) error->message = "unreadable root: " + root;
      return std::nullopt;
    }
    const std::string label = system_label.empty() ? root_label(rp) : system_label;
    if (fs::is_regular_file(rp, ec)) {
      discovered.emplace_back(rp.string(), label);
      continue;
    }
    for (auto it = fs::recursive_directory_iterator(rp, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) {
        if (error) error->message = "unreadable root: " + root;
        return std::nullopt;
      }
      if (it->is_regular_file() && it->path().extension() == ".java")
        discovered.emplace_back(it->path().string(), label);
    }
  }
  std::sort(discovered.begin(), discovered.end());
  discovered.erase(std::unique(discovered.begin(), discovered.end()), discovered.end());

  SourceCorpus corpus;
  std::uint32_t next_id = 0;
  for (auto& [path, label] : discovered) {
    const std::uint32_t id = next_id++;
    corpus.files.push_back(CorpusFile{id, path, label});
    auto content = read_file(path);
    if (!content) {
      corpus.parse_failures.push_back(
          CorpusFailure{id, path, ParseDiagnostic{0, 0, "cannot read file"}});
      continue;
    }
    ParseDiagnostic diag;
    auto ast = parse_java(id, path, std::move(*content), &diag);
    if (ast) {
      corpus.asts.push_back(std::move(*ast));
    } else {
      corpus.parse_failures.push_back(CorpusFailure{id, path, diag});
    }
  }
  return corpus;
}

SourceCorpus parse_corpus_from_memory(
    const std::vector<std::pair<std::string, std::string>>& files, std::string system_label) {
  std::vector<std::pair<std::string, std::string>> sorted = files;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SourceCorpus corpus;
  std::uint32_t next_id = 0;
  for (const auto& [path, content] : sorted) {
    const std::uint32_t id = next_id++;
    corpus.files.push_back(CorpusFile{id, path, system_label});
    ParseDiagnostic diag;
    auto ast = parse_java(id, path, content, &diag);
    if (ast) {
      corpus.asts.push_back(std::move(*ast));
    } else {
      corpus.parse_failures.push_back(CorpusFailure{id, path, diag});
    }
  }
  return corpus;
}

std::vector<NodeRef> all_nodes(const Ast& ast) {
  std::vector<NodeRef> out;
  out.reserve(ast.nodes.size());
  for (NodeId id = 0; id < ast.nodes.size(); ++id) out.push_back(NodeRef{&ast, id});
  return out;
}

std::vector<NodeRef> statements_of(const SourceCorpus& corpus,
                                   const std::vector<NodeKind>* kind_filter) {
  std::vector<NodeRef> out;
  for (const Ast& ast : corpus.asts) {
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      const AstNode& n = ast.nodes[id];
      if (kind_filter) {
        if (std::find(kind_filter->begin(), kind_filter->end(), n.kind) != kind_filter->end())
          out.push_back(NodeRef{&ast, id});
      } else if (n.is_statement) {
        out.push_back(NodeRef{&ast, id});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const NodeRef& a, const NodeRef& b) {
    if (a.ast->file_id != b.ast->file_id) return a.ast->file_id < b.ast->file_id;
    if (a->loc.begin != b->loc.begin) return a->loc.begin < b->loc.begin;
    return a.id < b.id;
  });
  return out;
}

}  // namespace cipscan
