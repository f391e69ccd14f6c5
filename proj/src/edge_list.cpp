#include "balance_lab/edge_list.hpp"

#include "balance_lab/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace balance_lab {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

long parse_int(std::string_view tok, int line_no) {
  long value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line_no);
  }
  return value;
}

}  // namespace

AppraisalMatrix read_edge_list(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int n = -1;
  AppraisalMatrix x;
  std::set<std::pair<long, long>> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    auto tokens = split_ws(raw);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n") {
        throw ParseError("expected header 'n <N>'", line_no);
      }
      long value = parse_int(tokens[1], line_no);
      if (value < 1 || value > 1'000'000) throw ParseError("node count out of range", line_no);
      n = static_cast<int>(value);
      x = AppraisalMatrix(n);
      continue;
    }

    if (tokens.size() != 3) throw ParseError("expected '<i> <j> <sign>'", line_no);
    long i = parse_int(tokens[0], line_no);
    long j = parse_int(tokens[1], line_no);
    long s = parse_int(tokens[2], line_no);
    if (i < 1 || i > n || j < 1 || j > n) {
      throw ParseError("node id outside 1.." + std::to_string(n), line_no);
    }
    if (i == j) throw ParseError("self-loop at node " + std::to_string(i), line_no);
    if (s != 1 && s != -1) throw ParseError("sign must be -1 or 1", line_no);
    if (!seen.emplace(i, j).second) {
      throw ParseError("duplicate link (" + std::to_string(i) + ", " + std::to_string(j) + ")",
                       line_no);
    }
    x.set(static_cast<Node>(i - 1), static_cast<Node>(j - 1), static_cast<int>(s));
  }
  if (n < 0) throw ParseError("missing header 'n <N>'", line_no);
  return x;
}

AppraisalMatrix parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_edge_list(in);
}

AppraisalMatrix load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const AppraisalMatrix& x) {
  out << "n " << x.size() << '\n';
  for (const SignedLink& l : to_edge_list(x)) {
    out << l.from << ' ' << l.to << ' ' << l.sign << '\n';
  }
}

std::string format_edge_list(const AppraisalMatrix& x) {
  std::ostringstream out;
  write_edge_list(out, x);
  return out.str();
}

void save_edge_list(const std::string& path, const AppraisalMatrix& x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_edge_list(out, x);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace balance_lab
