#include "cipscan/report.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cipscan {

namespace {

DistributionTable tabulate(const std::map<std::pair<std::string, std::string>, std::uint64_t>& counts) {
  DistributionTable table;
  std::set<std::string> rows, cols;
  for (const auto& [key, n] : counts) {
    (void)n;
    rows.insert(key.first);
    cols.insert(key.second);
  }
  table.rows.assign(rows.begin(), rows.end());
  table.columns.assign(cols.begin(), cols.end());
  table.cells.assign(table.rows.size(), std::vector<std::uint64_t>(table.columns.size(), 0));
  for (const auto& [key, n] : counts) {
    const auto r = std::find(table.rows.begin(), table.rows.end(), key.first) - table.rows.begin();
    const auto c =
        std::find(table.columns.begin(), table.columns.end(), key.second) - table.columns.begin();
    table.cells[r][c] = n;
  }
  table.row_totals.assign(table.rows.size(), 0);
  table.column_totals.assign(table.columns.size(), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      table.row_totals[r] += table.cells[r][c];
      table.column_totals[c] += table.cells[r][c];
      table.grand_total += table.cells[r][c];
    }
  }
  return table;
}

std::string system_or_default(const std::string& system) {
  return system.empty() ? "unknown" : system;
}

}  // namespace

std::uint64_t DistributionTable::cell(const std::string& row, const std::string& column) const {
  const auto r = std::find(rows.begin(), rows.end(), row);
  const auto c = std::find(columns.begin(), columns.end(), column);
  if (r == rows.end() || c == columns.end()) return 0;
  return cells[r - rows.begin()][c - columns.begin()];
}

DistributionTable distribution_by_pattern(const std::vector<LinkRecord>& links) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (const LinkRecord& link : links)
    ++counts[{link.pattern, system_or_default(link.system)}];
  return tabulate(counts);
}

DistributionTable distribution_by_constraint_type(
    const std::vector<ConstraintRecord>& records) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (const ConstraintRecord& rec : records) {
    if (!rec.expr) continue;
    ++counts[{to_string(classify(*rec.expr)), system_or_default(rec.system)}];
  }
  return tabulate(counts);
}

DistributionTable distribution_by_constraint_type(
    const std::vector<LinkRecord>& links, const std::vector<ConstraintRecord>& records) {
  std::map<std::string, std::string> type_by_id;
  for (const ConstraintRecord& rec : records)
    if (rec.expr) type_by_id[rec.id] = to_string(classify(*rec.expr));
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (const LinkRecord& link : links) {
    const auto it = type_by_id.find(link.constraint_id);
    const std::string type = it == type_by_id.end() ? "unclassified" : it->second;
    ++counts[{type, system_or_default(link.system)}];
  }
  return tabulate(counts);
}

}  // namespace cipscan
