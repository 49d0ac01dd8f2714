#include <filesystem>
#include <sstream>

#include "doctest.h"

#include "cvxcluster/io.hpp"

using namespace cvxcluster;

namespace {

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    io::read_graph(in);
  } catch (const io::ParseError& e) {
    return e.line();
  }
  return -1;
}

std::string parse_error_message(const std::string& text) {
  std::istringstream in(text);
  try {
    io::read_graph(in);
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("edge list round trip") {
  const auto inst = generate_gsbm({{6, 5}, 3, 0.6, 0.2}, 2);
  std::stringstream buf;
  io::write_graph(inst.adjacency, buf);
  CHECK(io::read_graph(buf) == inst.adjacency);

  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "cvxcluster_io_test.edges").string();
  io::write_graph(inst.adjacency, path);
  CHECK(io::read_graph(path) == inst.adjacency);
  std::filesystem::remove(path);
}

TEST_CASE("edge list format") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 2) = m(2, 0) = 1.0;
  std::stringstream buf;
  io::write_graph(Adjacency(m), buf);
  CHECK(buf.str() == "3 1\n0 2\n");

  std::istringstream reversed("3 1\n2 0\n");
  CHECK(io::read_graph(reversed).matrix() == m);

  std::istringstream spaced("3 1\n\n0 2  \n\n");
  CHECK(io::read_graph(spaced).matrix() == m);

  std::istringstream empty("0 0\n");
  CHECK(io::read_graph(empty).n() == 0);
}

TEST_CASE("edge list errors carry line numbers") {
  CHECK(parse_error_line("") == 0);
  CHECK(parse_error_line("3\n") == 1);
  CHECK(parse_error_line("x y\n") == 1);
  CHECK(parse_error_line("3 4\n") == 1);  // more than n(n-1)/2 edges
  CHECK(parse_error_line("3 2\n0 1\n1 3\n") == 3);
  CHECK(parse_error_line("3 2\n0 1\n-1 2\n") == 3);
  CHECK(parse_error_line("3 2\n0 1\n1 0\n") == 3);
  CHECK(parse_error_line("3 1\n1 1\n") == 2);
  CHECK(parse_error_line("3 1\n0 1 2\n") == 2);
  CHECK(parse_error_line("3 1\n0 1\n1 2\n") == 3);

  const std::string shortfall = parse_error_message("4 3\n0 1\n1 2\n");
  CHECK(shortfall.find("expected 3 edges but found 2") != std::string::npos);
  CHECK(parse_error_message("3 1\n2 2\n").find("self-loop") != std::string::npos);
  CHECK(parse_error_message("3 2\n0 1\n0 1\n").find("duplicate") != std::string::npos);
}

TEST_CASE("assignment round trip and errors") {
  const auto a = ClusterAssignment::from_labels({1, 2, 0, 2, 1, 3});
  std::stringstream buf;
  io::write_assignment(a, buf);
  CHECK(buf.str() == "1\n2\n0\n2\n1\n3\n");
  const auto back = io::read_assignment(buf);
  CHECK(back.labels == a.labels);
  CHECK(back.r == 3);

  std::istringstream bad("1\nx\n");
  CHECK_THROWS_AS(io::read_assignment(bad), io::ParseError);
  std::istringstream gap("1\n3\n");
  CHECK_THROWS_AS(io::read_assignment(gap), io::ParseError);
  std::istringstream negative("1\n-2\n");
  CHECK_THROWS_AS(io::read_assignment(negative), io::ParseError);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(io::read_graph(std::string("/nonexistent/graph.edges")), std::runtime_error);
}
