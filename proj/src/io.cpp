#include "cvxcluster/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cvxcluster::io {

namespace {

std::string at_line(int line, const std::string& what) {
  return line > 0 ? "line " + std::to_string(line) + ": " + what : what;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

// Parses exactly `count` integers from the line; nothing else may follow.
bool parse_ints(const std::string& text, long long* values, int count) {
  std::istringstream ss(text);
  for (int k = 0; k < count; ++k) {
    if (!(ss >> values[k])) return false;
  }
  std::string rest;
  return !(ss >> rest);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(at_line(line, what)), line_(line) {}

Adjacency read_graph(std::istream& in) {
  std::string text;
  int line = 0;
  long long header[2];
  do {
    if (!std::getline(in, text)) throw ParseError(line, "missing header \"n m\"");
    ++line;
  } while (blank(text));
  if (!parse_ints(text, header, 2) || header[0] < 0 || header[1] < 0) {
    throw ParseError(line, "malformed header, expected \"n m\"");
  }
  const long long n = header[0];
  const long long m = header[1];
  if (m > n * (n - 1) / 2) throw ParseError(line, "edge count exceeds n(n-1)/2");

  Matrix a = Matrix::Identity(n, n);
  long long seen = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    if (seen == m) throw ParseError(line, "more edge lines than the " + std::to_string(m) + " declared");
    long long uv[2];
    if (!parse_ints(text, uv, 2)) throw ParseError(line, "malformed edge, expected \"u v\"");
    const long long u = uv[0];
    const long long v = uv[1];
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError(line, "node index out of range [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw ParseError(line, "self-loop " + std::to_string(u) + "; the diagonal is implicit");
    if (a(u, v) != 0.0) {
      throw ParseError(line, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    a(u, v) = 1.0;
    a(v, u) = 1.0;
    ++seen;
  }
  if (seen < m) {
    throw ParseError(line, "expected " + std::to_string(m) + " edges but found " + std::to_string(seen) +
                               " (" + std::to_string(m - seen) + " missing)");
  }
  return Adjacency(std::move(a));
}

Adjacency read_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(const Adjacency& a, std::ostream& out) {
  out << a.n() << ' ' << a.edge_count() << '\n';
  for (int v = 0; v < a.n(); ++v) {
    for (int u = 0; u < v; ++u) {
      if (a.has_edge(u, v)) out << u << ' ' << v << '\n';
    }
  }
}

void write_graph(const Adjacency& a, const std::string& path) {
  auto out = open_out(path);
  write_graph(a, out);
}

ClusterAssignment read_assignment(std::istream& in) {
  std::vector<int> labels;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    long long label;
    if (!parse_ints(text, &label, 1) || label < 0) {
      throw ParseError(line, "expected a non-negative integer label");
    }
    labels.push_back(static_cast<int>(label));
  }
  try {
    return ClusterAssignment::from_labels(std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

ClusterAssignment read_assignment(const std::string& path) {
  auto in = open_in(path);
  return read_assignment(in);
}

void write_assignment(const ClusterAssignment& assignment, std::ostream& out) {
  for (int label : assignment.labels) out << label << '\n';
}

void write_assignment(const ClusterAssignment& assignment, const std::string& path) {
  auto out = open_out(path);
  write_assignment(assignment, out);
}

}  // namespace cvxcluster::io
