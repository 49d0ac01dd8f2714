#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cvxcluster/graph_model.hpp"

namespace cvxcluster::io {

/// Malformed input; `line()` is 1-based (0 when the problem is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Edge list: a header line "n m", then m lines "u v" with 0-based node
// indices and u != v. The diagonal is implicit. Writers emit u < v in
// column-major pair order.
Adjacency read_graph(std::istream& in);
Adjacency read_graph(const std::string& path);
void write_graph(const Adjacency& a, std::ostream& out);
void write_graph(const Adjacency& a, const std::string& path);

// One integer label per line; 0 marks an outlier.
ClusterAssignment read_assignment(std::istream& in);
ClusterAssignment read_assignment(const std::string& path);
void write_assignment(const ClusterAssignment& assignment, std::ostream& out);
void write_assignment(const ClusterAssignment& assignment, const std::string& path);

}  // namespace cvxcluster::io
