#include "fusionlab/errors.hpp"

namespace fusionlab {

SupportTooLarge::SupportTooLarge(std::size_t bits)
    : Error("clopen set support of " + std::to_string(bits) + " bits exceeds the truth-table limit"),
      bits_(bits) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": syntax error: expected " + expected),
      line_(line), column_(column), expected_(expected) {}

IndexError::IndexError(std::size_t line, std::size_t column, const std::string& what)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": index error: " + what),
      line_(line), column_(column) {}

EmptyPreimage::EmptyPreimage(std::string node)
    : Error("empty preimage at target node '" + node + "'"), node_(std::move(node)) {}

const char* to_string(InvariantKind kind) noexcept {
  switch (kind) {
  case InvariantKind::Nonempty: return "nonempty";
  case InvariantKind::Nesting: return "nesting";
  case InvariantKind::Disjointness: return "disjointness";
  case InvariantKind::Resolution: return "resolution";
  case InvariantKind::Schedule: return "schedule";
  case InvariantKind::MissingLabel: return "missing-label";
  }
  return "unknown";
}

InvariantViolation::InvariantViolation(std::string node, InvariantKind kind, const std::string& detail)
    : Error(std::string("fusion invariant '") + to_string(kind) + "' violated at node '" + node + "': " + detail),
      node_(std::move(node)), kind_(kind) {}

GeneratorViolation::GeneratorViolation(std::size_t piece, const std::string& detail)
    : Error("meager-stream generator violated its contract on piece " + std::to_string(piece) + ": " + detail),
      piece_(piece) {}

BudgetViolation::BudgetViolation(std::uint64_t index, const std::string& detail)
    : Error("exception budget violated at index " + std::to_string(index) + ": " + detail), index_(index) {}

IsolatedImage::IsolatedImage(std::string prefix)
    : Error("image has an isolated branch below prefix '" + prefix + "'"), prefix_(std::move(prefix)) {}

} // namespace fusionlab
