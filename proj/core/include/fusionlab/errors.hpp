#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fusionlab {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A nonemptiness precondition was violated.
class EmptyInput : public Error {
public:
  using Error::Error;
};

/// The canonical truth-table form would exceed the supported number of bits.
class SupportTooLarge : public Error {
public:
  explicit SupportTooLarge(std::size_t bits);
  std::size_t bits() const noexcept { return bits_; }

private:
  std::size_t bits_;
};

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

/// Index expression that is not affine with nonnegative coefficients.
class IndexError : public Error {
public:
  IndexError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class OracleInconsistent : public Error {
public:
  using Error::Error;
};

class DepthExhausted : public Error {
public:
  using Error::Error;
};

class NotPerfect : public Error {
public:
  using Error::Error;
};

class EmptyPreimage : public Error {
public:
  explicit EmptyPreimage(std::string node);
  const std::string& node() const noexcept { return node_; }

private:
  std::string node_;
};

enum class InvariantKind { Nonempty, Nesting, Disjointness, Resolution, Schedule, MissingLabel };

const char* to_string(InvariantKind kind) noexcept;

class InvariantViolation : public Error {
public:
  InvariantViolation(std::string node, InvariantKind kind, const std::string& detail);
  const std::string& node() const noexcept { return node_; }
  InvariantKind kind() const noexcept { return kind_; }

private:
  std::string node_;
  InvariantKind kind_;
};

class GeneratorViolation : public Error {
public:
  GeneratorViolation(std::size_t piece, const std::string& detail);
  std::size_t piece() const noexcept { return piece_; }

private:
  std::size_t piece_;
};

class BudgetViolation : public Error {
public:
  BudgetViolation(std::uint64_t index, const std::string& detail);
  std::uint64_t index() const noexcept { return index_; }

private:
  std::uint64_t index_;
};

class MeasureExhausted : public Error {
public:
  using Error::Error;
};

class IsolatedImage : public Error {
public:
  explicit IsolatedImage(std::string prefix);
  const std::string& prefix() const noexcept { return prefix_; }

private:
  std::string prefix_;
};

} // namespace fusionlab
