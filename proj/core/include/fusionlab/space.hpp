#pragma once

// Clopen subsets of the countable power of Cantor space.
//
// A point of C^w is a family x = (x_0, x_1, ...) of infinite bit strings; the
// bit x_k(j) is addressed by Coord{k, j}.  Every clopen set depends on finitely
// many such bits and is stored as a truth table over the minimal set of bits it
// depends on.  Two sets are equal iff their (support, table) pairs are equal.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fusionlab {

struct Coord {
  std::uint32_t k = 0; ///< which copy of C
  std::uint32_t j = 0; ///< which bit of that copy

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

std::string to_string(const Coord& c);

/// Cantor pairing of (k, j); fixes the order in which bits count towards
/// resolution.  pairing_index(k, j) = (k + j)(k + j + 1)/2 + j.
std::uint64_t pairing_index(const Coord& c) noexcept;
Coord pairing_coord(std::uint64_t index) noexcept;

/// Largest support the truth-table form accepts.
inline constexpr std::size_t kMaxSupportBits = 24;

enum class SetOp { And, Or, Xor, Diff };

class ClopenSet {
public:
  /// The empty set.
  ClopenSet();

  static ClopenSet empty();
  static ClopenSet full();
  static ClopenSet constant(bool value);
  /// {x : x_k(j) = value}
  static ClopenSet literal(Coord c, bool value);
  /// Intersection of literals; an empty map yields the full space.
  static ClopenSet cylinder(const std::map<Coord, bool>& constraints);
  /// Union of the given assignments over `support` (each minterm is a string of
  /// '0'/'1' in support order).  The support need not be sorted or minimal.
  static ClopenSet from_minterms(std::vector<Coord> support,
                                 const std::vector<std::string>& minterms);

  const std::vector<Coord>& support() const noexcept { return support_; }
  std::size_t support_size() const noexcept { return support_.size(); }

  bool is_empty() const noexcept;
  bool is_full() const noexcept;

  /// Number of satisfying assignments over the support.
  std::uint64_t minterm_count() const noexcept;
  /// Satisfying assignments, lexicographically ascending, as bit strings in
  /// support order.
  std::vector<std::string> minterms() const;
  /// Lexicographically least satisfying assignment, if any.
  std::optional<std::map<Coord, bool>> least_minterm() const;

  /// Value of the indicator on a full assignment of the support.
  bool contains_assignment(const std::map<Coord, bool>& assignment) const;

  ClopenSet complement() const;
  ClopenSet combine(const ClopenSet& other, SetOp op) const;

  /// Fix one bit and drop it from the support.
  ClopenSet cofactor(Coord c, bool value) const;
  /// Members exist with both values of bit c.
  bool varies(Coord c) const;
  /// Existential projection onto the bits satisfying `keep`.
  template <class Pred>
  ClopenSet project(Pred keep) const {
    ClopenSet out = *this;
    for (const Coord& c : support_) {
      if (!keep(c)) out = out.cofactor(c, false).combine(out.cofactor(c, true), SetOp::Or);
    }
    return out;
  }

  bool subset_of(const ClopenSet& other) const;
  bool intersects(const ClopenSet& other) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

  friend ClopenSet operator&(const ClopenSet& a, const ClopenSet& b) { return a.combine(b, SetOp::And); }
  friend ClopenSet operator|(const ClopenSet& a, const ClopenSet& b) { return a.combine(b, SetOp::Or); }
  friend ClopenSet operator^(const ClopenSet& a, const ClopenSet& b) { return a.combine(b, SetOp::Xor); }
  friend ClopenSet operator-(const ClopenSet& a, const ClopenSet& b) { return a.combine(b, SetOp::Diff); }
  ClopenSet operator!() const { return complement(); }

private:
  ClopenSet(std::vector<Coord> support, std::vector<std::uint64_t> table);

  bool entry(std::uint64_t index) const noexcept {
    return (table_[index >> 6] >> (index & 63)) & 1u;
  }
  std::uint64_t entries() const noexcept { return std::uint64_t{1} << support_.size(); }
  std::vector<std::uint64_t> lifted_to(const std::vector<Coord>& joint) const;
  void canonicalize();

  // Entry index i assigns support_[t] the bit (n - 1 - t) of i, so numeric
  // order of indices is lexicographic order of minterm strings.
  std::vector<Coord> support_;
  std::vector<std::uint64_t> table_;
};

ClopenSet clopen_combine(const ClopenSet& a, const ClopenSet& b, SetOp op);
ClopenSet clopen_complement(const ClopenSet& a);

/// A total point of C^w given by finitely many explicit bits and a tail rule.
class PointSpec {
public:
  enum class Tail { Zero, One, Periodic };

  PointSpec() = default;
  static PointSpec all_zero() { return PointSpec{}; }
  static PointSpec all_one();
  /// Coordinate k repeats patterns[k]; coordinates without a pattern are zero.
  static PointSpec periodic(std::map<std::uint32_t, std::string> patterns);

  PointSpec& set(Coord c, bool value);

  bool bit(Coord c) const;
  Tail tail() const noexcept { return tail_; }
  const std::map<Coord, bool>& assigned() const noexcept { return assigned_; }
  const std::map<std::uint32_t, std::string>& patterns() const noexcept { return patterns_; }

  friend bool operator==(const PointSpec&, const PointSpec&) = default;

private:
  std::map<Coord, bool> assigned_;
  Tail tail_ = Tail::Zero;
  std::map<std::uint32_t, std::string> patterns_;
};

std::string to_string(const PointSpec& p);

bool member(const PointSpec& p, const ClopenSet& a);

/// Product of per-coordinate clopen factors; unlisted coordinates are all of C.
class BoxProduct {
public:
  BoxProduct() = default;

  /// Throws EmptyInput on an empty factor and std::invalid_argument when the
  /// factor constrains a coordinate other than k.  Full factors are dropped.
  void set_factor(std::uint32_t k, ClopenSet factor);
  /// Intersect the factor on coordinate k with `factor`.
  void restrict_factor(std::uint32_t k, const ClopenSet& factor);

  const std::map<std::uint32_t, ClopenSet>& factors() const noexcept { return factors_; }
  const ClopenSet& factor(std::uint32_t k) const;
  bool is_full() const noexcept { return factors_.empty(); }

  ClopenSet to_clopen() const;
  bool contains(const PointSpec& p) const;

  /// Product decomposition of a set that is a product of per-coordinate sets;
  /// nullopt when `a` is empty or not a product.
  static std::optional<BoxProduct> from_clopen(const ClopenSet& a);

  friend bool operator==(const BoxProduct&, const BoxProduct&) = default;

private:
  std::map<std::uint32_t, ClopenSet> factors_;
};

/// A box inside a nonempty set: the cylinder of its least minterm, widened by
/// dropping literals from the last support bit backwards while it stays
/// inside the set, then split by coordinate.  Throws EmptyInput on the empty
/// set.
BoxProduct pick_product_subset(const ClopenSet& a);

/// Largest m such that every point of `a` agrees on the bits with pairing
/// index < m.  Throws EmptyInput on the empty set.
std::uint64_t resolution(const ClopenSet& a);

/// Sub-box of a nonempty box whose resolution is at least `target`, obtained by
/// fixing the pairing-order bits below `target` to the values of the box's
/// least member (free bits take 0).
BoxProduct shrink_to_resolution(const BoxProduct& box, std::uint64_t target);

} // namespace fusionlab
