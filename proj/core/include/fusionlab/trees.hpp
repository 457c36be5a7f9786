#pragma once

// Trees over finite binary words, fusion schemas of clopen sets, and the
// finite-depth check that a schema is a fusion sequence.

#include "fusionlab/errors.hpp"
#include "fusionlab/family.hpp"
#include "fusionlab/space.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fusionlab {

/// A finite binary word.
class Word {
public:
  Word() = default;
  /// Throws std::invalid_argument unless `bits` consists of '0'/'1'.
  explicit Word(std::string bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }

  Word child(bool b) const { return Word(bits_ + (b ? '1' : '0'), Trusted{}); }
  Word prefix(std::size_t n) const { return Word(bits_.substr(0, n), Trusted{}); }
  Word parent() const { return prefix(bits_.empty() ? 0 : bits_.size() - 1); }
  bool is_prefix_of(const Word& other) const {
    return other.bits_.compare(0, bits_.size(), bits_) == 0 && bits_.size() <= other.bits_.size();
  }

  const std::string& str() const noexcept { return bits_; }

  friend auto operator<=>(const Word&, const Word&) = default;

private:
  struct Trusted {};
  Word(std::string bits, Trusted) : bits_(std::move(bits)) {}

  std::string bits_;
};

/// Prefix-closed set of words materialized up to a depth.
class PerfectTree {
public:
  PerfectTree() = default;

  /// Throws std::invalid_argument unless `words` is prefix-closed, contains the
  /// empty word, and has no word longer than `depth`.
  PerfectTree(std::set<Word> words, std::size_t depth);

  /// All words of length <= depth.
  static PerfectTree full(std::size_t depth);

  std::size_t depth() const noexcept { return depth_; }
  const std::set<Word>& nodes() const noexcept { return words_; }
  bool contains(const Word& w) const { return words_.count(w) != 0; }
  std::vector<Word> level(std::size_t n) const;
  std::vector<Word> children(const Word& w) const;
  bool is_splitting(const Word& w) const { return contains(w.child(false)) && contains(w.child(true)); }

  /// Every node has a member extension (itself included) with two member
  /// children, for nodes of length < depth - 1.
  bool perfect_to_depth() const;
  /// Every node shorter than the depth has at least one child.
  bool pruned() const;

  friend bool operator==(const PerfectTree&, const PerfectTree&) = default;

private:
  std::set<Word> words_;
  std::size_t depth_ = 0;
};

enum class Extent { Extendable, Dead };
using WordOracle = std::function<Extent(const Word&)>;

/// T_A materialized to `depth` from a prefix-monotone oracle for the closed set
/// A.  Throws OracleInconsistent when a dead word has an extendable extension
/// or an extendable word shorter than the depth has no extendable child.
PerfectTree tree_of_closed_set(const WordOracle& oracle, std::size_t depth);

/// The w-th splitting node of the tree: start from the first splitting node,
/// and for each bit of w step into that child and descend to the next
/// splitting node.  Throws DepthExhausted when the materialized depth is too
/// shallow to exhibit the node.
Word splitting_homeomorphism(const PerfectTree& tree, const Word& w);

/// Perfect subtree of T_A made of the splitting-node skeleton.  Throws
/// NotPerfect when some node shorter than depth - 1 never splits.
PerfectTree extract_cantor_subset(const WordOracle& oracle, std::size_t depth);

/// Nondecreasing required resolution per word length; entry m applies to words
/// of length m.
using ResolutionSchedule = std::vector<std::uint64_t>;

/// m -> floor(m / levels_per_bit) for m <= depth; levels_per_bit == 0 yields
/// the zero schedule.
ResolutionSchedule make_schedule(std::uint64_t levels_per_bit, std::size_t depth);

struct FusionSchema {
  PerfectTree index_tree;
  std::map<Word, ClopenSet> labels;
  ResolutionSchedule schedule;

  std::uint64_t required_resolution(std::size_t length) const;
};

struct NodeCheck {
  Word node;
  std::uint64_t resolution = 0;
  std::uint64_t required = 0;
};

struct FusionCertificate {
  std::size_t depth = 0;
  std::vector<NodeCheck> checks;   ///< one record per node, all passed
  std::vector<ClopenSet> levels;   ///< union of the labels at each length
};

/// Check nesting, sibling disjointness, nonemptiness and the resolution
/// schedule for all nodes up to `depth`, breadth first; throws
/// InvariantViolation at the first failure.
FusionCertificate fusion_limit(const FusionSchema& schema, std::size_t depth);

/// Fusion schema over the target tree: the label of node s is the set of
/// points whose first |s| output bits equal s.  Throws EmptyPreimage at the
/// first node whose preimage is empty.
FusionSchema pullback_cantor(const BitFunctionVector& f, const PerfectTree& target, std::size_t depth);

} // namespace fusionlab
