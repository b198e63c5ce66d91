#include "cipscan/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cipscan {

namespace {

std::string collapse_spaces(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += c;
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_two_valued_token(const std::string& token) {
  const std::string t = lower(token);
  return t == "true" || t == "false" || t == "null" || t == "not-null" || t == "on" ||
         t == "off";
}

}  // namespace

const char* to_string(ConstraintType type) {
  switch (type) {
    case ConstraintType::ValueComparison: return "value-comparison";
    case ConstraintType::DualValueComparison: return "dual-value-comparison";
    case ConstraintType::CategoricalValue: return "categorical-value";
    case ConstraintType::ConcreteValue: return "concrete-value";
  }
  return "unknown";
}

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
  }
  return "?";
}

std::optional<CompareOp> parse_compare_op(std::string_view text) {
  if (text == ">") return CompareOp::Gt;
  if (text == ">=" || text == "≥") return CompareOp::Ge;
  if (text == "<") return CompareOp::Lt;
  if (text == "<=" || text == "≤") return CompareOp::Le;
  if (text == "=" || text == "==") return CompareOp::Eq;
  if (text == "!=" || text == "<>" || text == "≠") return CompareOp::Ne;
  return std::nullopt;
}

std::optional<ConstraintExpr> parse_constraint_expr(std::string_view raw, ExprError* error) {
  const std::string text = collapse_spaces(raw);
  if (text.empty()) {
    if (error) error->message = "unrecognized constraint form: empty";
    return std::nullopt;
  }

  // Membership: attr in {a, b, c}
  {
    const std::size_t in_pos = lower(text).find(" in {");
    if (in_pos != std::string::npos && text.back() == '}') {
      Membership m;
      m.attribute = text.substr(0, in_pos);
      std::string body = text.substr(in_pos + 5, text.size() - in_pos - 6);
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const std::string v = collapse_spaces(item);
        if (!v.empty()) m.values.push_back(v);
      }
      if (m.attribute.empty() || m.values.size() < 2) {
        if (error) error->message = "unrecognized constraint form: membership needs 2+ values";
        return std::nullopt;
      }
      return ConstraintExpr{std::move(m)};
    }
  }

  // Comparison operators, longest lexeme first so >= wins over >.
  static const std::string_view kOps[] = {">=", "<=", "==", "!=", "<>", "≥", "≤", "≠",
                                          ">",  "<",  "="};
  for (std::string_view op_text : kOps) {
    const std::size_t pos = text.find(op_text);
    if (pos == std::string::npos || pos == 0) continue;
    const std::string attr = collapse_spaces(text.substr(0, pos));
    const std::string rhs = collapse_spaces(text.substr(pos + op_text.size()));
    if (attr.empty() || rhs.empty()) continue;
    const auto op = parse_compare_op(op_text);
    if (!op) continue;
    Comparison c;
    c.attribute = attr;
    c.op = *op;
    c.operand.text = rhs;
    const bool numeric = !rhs.empty() && (std::isdigit(static_cast<unsigned char>(rhs[0])) ||
                                          ((rhs[0] == '-' || rhs[0] == '+') && rhs.size() > 1));
    const bool quoted = rhs.size() >= 2 && (rhs.front() == '"' || rhs.front() == '\'');
    c.operand.is_constant = numeric || quoted || is_two_valued_token(rhs);
    return ConstraintExpr{std::move(c)};
  }

  // Declarative assignment: attr is value
  {
    const std::string low = lower(text);
    const std::size_t pos = low.find(" is ");
    if (pos != std::string::npos) {
      AssignmentForm a;
      a.attribute = text.substr(0, pos);
      a.value = collapse_spaces(text.substr(pos + 4));
      if (!a.attribute.empty() && !a.value.empty()) return ConstraintExpr{std::move(a)};
    }
  }

  // Bare boolean attribute, possibly negated.
  {
    const std::string low = lower(text);
    if (low.rfind("not ", 0) == 0) {
      BooleanForm b;
      b.attribute = collapse_spaces(text.substr(4));
      b.polarity = false;
      if (!b.attribute.empty()) return ConstraintExpr{std::move(b)};
    }
    // A single free-form token sequence with no operator.
    if (text.find('{') == std::string::npos && text.find('}') == std::string::npos) {
      BooleanForm b;
      b.attribute = text;
      b.polarity = true;
      return ConstraintExpr{std::move(b)};
    }
  }

  if (error) error->message = "unrecognized constraint form: " + text;
  return std::nullopt;
}

ConstraintType classify(const ConstraintExpr& expr) {
  if (std::holds_alternative<Membership>(expr)) return ConstraintType::CategoricalValue;
  if (std::holds_alternative<AssignmentForm>(expr)) return ConstraintType::ConcreteValue;
  if (std::holds_alternative<BooleanForm>(expr)) return ConstraintType::DualValueComparison;
  const Comparison& c = std::get<Comparison>(expr);
  const bool equality = c.op == CompareOp::Eq || c.op == CompareOp::Ne;
  if (equality && is_two_valued_token(c.operand.text))
    return ConstraintType::DualValueComparison;
  return ConstraintType::ValueComparison;
}

namespace {

std::optional<SeedRef> parse_seed_token(const std::string& token) {
  // `op:>` or `file:line:kind`
  if (token.rfind("op:", 0) == 0) {
    SeedRef s;
    s.kind = "operator";
    s.op = token.substr(3);
    return s;
  }
  const std::size_t last = token.rfind(':');
  if (last == std::string::npos) return std::nullopt;
  const std::size_t mid = token.rfind(':', last - 1);
  if (mid == std::string::npos) return std::nullopt;
  SeedRef s;
  s.file = token.substr(0, mid);
  try {
    s.line = static_cast<std::uint32_t>(std::stoul(token.substr(mid + 1, last - mid - 1)));
  } catch (...) {
    return std::nullopt;
  }
  s.kind = token.substr(last + 1);
  return s;
}

// Minimal RFC-4180-style row splitter (quotes, embedded commas/newlines).
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      if (!(row.size() == 1 && row[0].empty())) rows.push_back(row);
      row.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(row);
  }
  return rows;
}

void finish_record(ConstraintRecord& rec, LoadResult& out, std::set<std::string>& seen_ids,
                   std::size_t row_no) {
  if (rec.id.empty()) {
    out.diagnostics.push_back("row " + std::to_string(row_no) + ": missing id, skipped");
    return;
  }
  if (!seen_ids.insert(rec.id).second) {
    out.fatal = true;
    out.fatal_message = "duplicate constraint id: " + rec.id;
    return;
  }
  if (rec.simplified.empty()) {
    out.diagnostics.push_back("row " + std::to_string(row_no) + " (" + rec.id +
                              "): missing simplified expression, skipped");
    return;
  }
  ExprError err;
  rec.expr = parse_constraint_expr(rec.simplified, &err);
  if (!rec.expr) {
    out.diagnostics.push_back("row " + std::to_string(row_no) + " (" + rec.id +
                              "): " + err.message + ", skipped");
    return;
  }
  out.records.push_back(std::move(rec));
}

}  // namespace

LoadResult load_constraints_from_text(const std::string& text, const std::string& format) {
  LoadResult out;
  std::set<std::string> seen_ids;

  if (format == "json") {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      out.fatal = true;
      out.fatal_message = std::string("invalid JSON: ") + e.what();
      return out;
    }
    nlohmann::json items = doc.is_array() ? doc : doc.value("constraints", nlohmann::json::array());
    std::size_t row_no = 0;
    for (const auto& item : items) {
      ++row_no;
      if (!item.is_object()) {
        out.diagnostics.push_back("row " + std::to_string(row_no) + ": not an object, skipped");
        continue;
      }
      ConstraintRecord rec;
      rec.id = item.value("id", "");
      rec.system = item.value("system", "");
      rec.description = item.value("description", "");
      rec.simplified = item.value("simplified", "");
      rec.scenario = item.value("scenario", "");
      rec.manual_pattern = item.value("manual_pattern", "");
      if (item.contains("seeds") && item["seeds"].is_array()) {
        for (const auto& seed : item["seeds"]) {
          SeedRef s;
          s.kind = seed.value("kind", "");
          if (s.kind == "operator") {
            s.op = seed.value("op", "");
          } else {
            s.file = seed.value("file", "");
            s.line = seed.value("line", 0u);
          }
          rec.seeds.push_back(std::move(s));
        }
      }
      finish_record(rec, out, seen_ids, row_no);
      if (out.fatal) return out;
    }
    return out;
  }

  if (format == "csv") {
    const auto rows = parse_csv(text);
    std::size_t row_no = 0;
    for (const auto& row : rows) {
      ++row_no;
      if (row_no == 1 && !row.empty() && lower(row[0]) == "id") continue;  // header
      if (row.size() < 4) {
        out.diagnostics.push_back("row " + std::to_string(row_no) + ": too few columns, skipped");
        continue;
      }
      ConstraintRecord rec;
      rec.id = row[0];
      rec.system = row[1];
      rec.description = row[2];
      rec.simplified = row[3];
      if (row.size() > 4) rec.scenario = row[4];
      if (row.size() > 5 && !row[5].empty()) {
        std::stringstream ss(row[5]);
        std::string token;
        bool bad = false;
        while (std::getline(ss, token, ';')) {
          auto seed = parse_seed_token(token);
          if (!seed) {
            bad = true;
            break;
          }
          rec.seeds.push_back(std::move(*seed));
        }
        if (bad) {
          out.diagnostics.push_back("row " + std::to_string(row_no) + ": malformed seed, skipped");
          continue;
        }
      }
      if (row.size() > 6) rec.manual_pattern = row[6];
      finish_record(rec, out, seen_ids, row_no);
      if (out.fatal) return out;
    }
    return out;
  }

  out.fatal = true;
  out.fatal_message = "unknown constraint file format: " + format;
  return out;
}

LoadResult load_constraints(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LoadResult out;
    out.fatal = true;
    out.fatal_message = "cannot read constraint file: " + path;
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string fmt = format;
  if (fmt.empty()) {
    fmt = path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? "csv" : "json";
  }
  return load_constraints_from_text(ss.str(), fmt);
}

}  // namespace cipscan
