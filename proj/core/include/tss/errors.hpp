#pragma once

#include <stdexcept>
#include <string>

namespace tss {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BadNodeId : public Error {
public:
  BadNodeId(int id, int node_count)
      : Error("node id " + std::to_string(id) + " outside 1.." +
              std::to_string(node_count)),
        id(id) {}
  int id;
};

class DisconnectedGraph : public Error {
public:
  using Error::Error;
};

class CycleDetected : public Error {
public:
  using Error::Error;
};

class BadLeafCount : public Error {
public:
  explicit BadLeafCount(int num_leaves)
      : Error("binary partition tree needs at least 2 leaves, got " +
              std::to_string(num_leaves)) {}
};

class NotATreeEdge : public Error {
public:
  NotATreeEdge(int from, int to)
      : Error("(" + std::to_string(from) + "," + std::to_string(to) +
              ") is not a directed tree edge") {}
};

class EmptyOrFullSubset : public Error {
public:
  using Error::Error;
};

class NonFiniteInput : public Error {
public:
  using Error::Error;
};

class ShapeMismatch : public Error {
public:
  ShapeMismatch(const std::string& what_part, const std::string& expected,
                const std::string& got)
      : Error(what_part + ": expected " + expected + ", got " + got) {}
};

class MissingGenerator : public Error {
public:
  using Error::Error;
};

class LayoutMismatch : public Error {
public:
  using Error::Error;
};

class LengthMismatch : public Error {
public:
  LengthMismatch(const std::string& what_part, long expected, long got)
      : Error(what_part + ": expected length " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class NotSquare : public Error {
public:
  NotSquare(long rows, long cols)
      : Error("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
              ", need square") {}
};

class SingularMatrix : public Error {
public:
  using Error::Error;
};

// Block-confined elimination failed at one node's pivot group.
class SingularPivotBlock : public Error {
public:
  explicit SingularPivotBlock(int node, const std::string& detail = "")
      : Error("pivot group of node " + std::to_string(node) +
              " cannot be eliminated" + (detail.empty() ? "" : ": " + detail)),
        node(node) {}
  int node;
};

class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace tss
