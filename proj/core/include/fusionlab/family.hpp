#pragma once

// Finitely presented functions on C^w and the families the solvers consume.

#include "fusionlab/dsl.hpp"
#include "fusionlab/measure.hpp"
#include "fusionlab/space.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fusionlab {

/// A continuous function C^w -> {0,1}, stored as its preimage of 1.
class BitFunction {
public:
  BitFunction() = default;
  explicit BitFunction(ClopenSet truth_set) : truth_(std::move(truth_set)) {}
  static BitFunction constant(bool value) { return BitFunction(ClopenSet::constant(value)); }

  const ClopenSet& truth_set() const noexcept { return truth_; }
  /// f^{-1}(value)
  ClopenSet preimage(bool value) const { return value ? truth_ : truth_.complement(); }

  friend bool operator==(const BitFunction&, const BitFunction&) = default;

private:
  ClopenSet truth_;
};

bool evaluate(const BitFunction& f, const PointSpec& p);

struct Restriction {
  BitFunction function;          ///< truth set conjoined with the box
  std::optional<bool> constant;  ///< set when f is constant on the box
};

Restriction restrict(const BitFunction& f, const BoxProduct& box);

/// A continuous function C^w -> C given bitwise: output bit l is bit(l).
class BitFunctionVector {
public:
  using BitFn = std::function<BitFunction(std::uint64_t)>;

  BitFunctionVector() = default;
  explicit BitFunctionVector(BitFn bits) : bits_(std::move(bits)) {}

  BitFunction bit(std::uint64_t l) const { return bits_(l); }

  /// The constant function with value `point` (bits past its end repeat its
  /// last bit, or 0 for an empty word).
  static BitFunctionVector constant(std::string point);

private:
  BitFn bits_;
};

/// n -> f_n, the input of the binary solvers.
struct BinaryFamily {
  std::string description;
  std::function<BitFunction(std::uint64_t)> at;

  static BinaryFamily from_spec(const dsl::FamilySpec& spec);
};

/// (n, l) -> output bit l of f_n, the input of the Cantor-valued solvers.
struct CantorFamily {
  std::string description;
  std::function<BitFunction(std::uint64_t, std::uint64_t)> at;

  BitFunctionVector vector_at(std::uint64_t n) const;
  static CantorFamily from_spec(const dsl::FamilySpec& spec);
};

BitFunction instantiate(const dsl::FamilySpec& spec, std::uint64_t n);
BitFunctionVector instantiate_cantor(const dsl::FamilySpec& spec, std::uint64_t n);

/// One nowhere-dense piece of a meager exception set.
using MeagerPiece = std::variant<PointSpec, ClopenSet>;

/// Countable union of nowhere-dense pieces together with a witness of density
/// of each complement: generate(j, box) returns a sub-box of `box` that misses
/// piece j.
class MeagerStream {
public:
  using Generator = std::function<BoxProduct(std::size_t, const BoxProduct&)>;

  MeagerStream() = default;
  /// Explicit pieces with the built-in avoiding generator.
  explicit MeagerStream(std::vector<MeagerPiece> pieces);
  MeagerStream(std::vector<MeagerPiece> pieces, Generator generator);

  const std::vector<MeagerPiece>& pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  BoxProduct generate(std::size_t j, const BoxProduct& box) const { return generator_(j, box); }

private:
  std::vector<MeagerPiece> pieces_;
  Generator generator_;
};

/// Built-in density witness: a point is avoided by fixing the least free bit
/// (in pairing order) of the box to the opposite of the point's bit; a clopen
/// piece is avoided by intersecting with its complement.
BoxProduct avoid_piece(const MeagerPiece& piece, const BoxProduct& box);

struct BaireFamily {
  BinaryFamily base;
  MeagerStream exceptions;
};

/// Luzin data: outside the clopen region E_n the function f_n is the base
/// family; measure(E_n) must not exceed budget(n).
struct LuzinData {
  std::function<ClopenSet(std::uint64_t)> exception_region;
  std::function<Dyadic(std::uint64_t)> budget;

  static LuzinData from_decl(const dsl::LuzinDecl& decl);
};

struct LuzinFamily {
  BinaryFamily base;
  LuzinData luzin;
};

} // namespace fusionlab
