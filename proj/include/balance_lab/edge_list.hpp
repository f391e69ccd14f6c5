#pragma once

#include "balance_lab/graph.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace balance_lab {

// Edge-list text format, one graph per file:
//
//   # optional comment lines
//   n 5
//   1 2 1
//   2 1 -1
//
// Node ids are 1-based; signs are -1 or 1. Output is sorted by (i, j), so
// write(read(text)) is byte-stable for canonical input.

AppraisalMatrix read_edge_list(std::istream& in);
AppraisalMatrix parse_edge_list(std::string_view text);
AppraisalMatrix load_edge_list(const std::string& path);

void write_edge_list(std::ostream& out, const AppraisalMatrix& x);
std::string format_edge_list(const AppraisalMatrix& x);
void save_edge_list(const std::string& path, const AppraisalMatrix& x);

}  // namespace balance_lab
