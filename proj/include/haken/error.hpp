#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace haken {

// Base class for every typed error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  std::size_t position;
  std::string expected;
  SyntaxError(std::size_t pos, std::string exp)
      : Error("syntax error at position " + std::to_string(pos) + ": expected " +
              exp),
        position(pos),
        expected(std::move(exp)) {}
};

struct UnknownGenerator : Error {
  std::string name;
  explicit UnknownGenerator(std::string n)
      : Error("unknown generator: " + n), name(std::move(n)) {}
};

struct CosetOverflow : Error {
  std::int64_t max_cosets;
  explicit CosetOverflow(std::int64_t max)
      : Error("coset enumeration exceeded " + std::to_string(max) +
              " cosets (infinite index or cap too small)"),
        max_cosets(max) {}
};

struct NotAHomomorphism : Error {
  int relator_index;
  explicit NotAHomomorphism(int idx)
      : Error("relator " + std::to_string(idx) +
              " does not evaluate to the identity"),
        relator_index(idx) {}
};

struct SearchBudgetExceeded : Error {
  std::uint64_t budget;
  explicit SearchBudgetExceeded(std::uint64_t b)
      : Error("search budget of " + std::to_string(b) +
              " word evaluations exhausted"),
        budget(b) {}
};

struct NotNormal : Error {
  NotNormal() : Error("subgroup record is not normal") {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(std::string const& what) : Error(what) {}
};

struct HypothesisFailed : Error {
  explicit HypothesisFailed(std::string const& what) : Error(what) {}
};

struct ZeroPolynomial : Error {
  ZeroPolynomial() : Error("polynomial is identically zero") {}
};

struct NotPrimitive : Error {
  explicit NotPrimitive(std::string const& what) : Error(what) {}
};

struct UnsupportedGeneratorCount : Error {
  int count;
  int max_supported;
  UnsupportedGeneratorCount(int n, int max)
      : Error("operation supports at most " + std::to_string(max) +
              " generators, got " + std::to_string(n)),
        count(n),
        max_supported(max) {}
};

struct BasisBudgetExceeded : Error {
  std::uint64_t budget;
  explicit BasisBudgetExceeded(std::uint64_t b)
      : Error("S-polynomial budget of " + std::to_string(b) + " exhausted"),
        budget(b) {}
};

}  // namespace haken
