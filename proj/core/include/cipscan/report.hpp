#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cipscan/constraints.hpp"
#include "cipscan/trace.hpp"

namespace cipscan {

/// Counts per (row label, system) with totals. Rows and columns are sorted
/// by name; totals always equal the cell sums.
struct DistributionTable {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<std::uint64_t>> cells;  // [row][column]
  std::vector<std::uint64_t> row_totals;
  std::vector<std::uint64_t> column_totals;
  std::uint64_t grand_total = 0;

  std::uint64_t cell(const std::string& row, const std::string& column) const;
};

DistributionTable distribution_by_pattern(const std::vector<LinkRecord>& links);

DistributionTable distribution_by_constraint_type(const std::vector<ConstraintRecord>& records);

/// Joins links with their constraints' classified types.
DistributionTable distribution_by_constraint_type(
    const std::vector<LinkRecord>& links, const std::vector<ConstraintRecord>& records);

}  // namespace cipscan
