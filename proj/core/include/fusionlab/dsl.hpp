#pragma once

// Text format for function families.
//
//   family f(n) = bit(n, 0) ^ bit(0, n)
//   cfamily g(n, l) = bit(n, l)
//   luzin m : f except bit(n, 1) & bit(n, 2) budget 2^-(2)
//   baire b : f avoid point{(0,0)=1; tail=zero}, point{; tail=one}
//
// Index expressions are affine in n (and l for cfamily) with nonnegative
// coefficients.  Operator precedence is ! > & > ^ > |.  `#` starts a comment.

#include "fusionlab/space.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fusionlab::dsl {

/// n_coef * n + l_coef * l + constant
struct Affine {
  std::uint64_t n_coef = 0;
  std::uint64_t l_coef = 0;
  std::uint64_t constant = 0;

  std::uint64_t eval(std::uint64_t n, std::uint64_t l = 0) const noexcept {
    return n_coef * n + l_coef * l + constant;
  }
  std::string to_string() const;

  friend bool operator==(const Affine&, const Affine&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Bit, Not, And, Or, Xor };

  Kind kind = Kind::Const;
  bool value = false; // Const
  Affine k;           // Bit
  Affine j;           // Bit
  ExprPtr lhs;        // Not, And, Or, Xor
  ExprPtr rhs;        // And, Or, Xor

  static ExprPtr constant(bool v);
  static ExprPtr bit(Affine k, Affine j);
  static ExprPtr negate(ExprPtr e);
  static ExprPtr binary(Kind kind, ExprPtr a, ExprPtr b);
};

bool same_tree(const Expr& a, const Expr& b);

struct FamilySpec {
  std::string name;
  bool cantor = false; ///< cfamily: indexed by (n, l)
  ExprPtr expr;
};

struct LuzinDecl {
  std::string name;
  std::string family;
  ExprPtr exception;             ///< E_n, affine in n
  Affine budget_exponent;        ///< eps_n = 2^-(budget_exponent(n))
};

struct BaireDecl {
  std::string name;
  std::string family;
  std::vector<PointSpec> avoid;
};

struct Document {
  std::string source;
  std::vector<FamilySpec> families;
  std::vector<LuzinDecl> luzin;
  std::vector<BaireDecl> baire;

  const FamilySpec* find_family(std::string_view name) const;
  const LuzinDecl* find_luzin(std::string_view name) const;
  const BaireDecl* find_baire(std::string_view name) const;
};

/// Parse a whole family file.  Throws SyntaxError or IndexError with the
/// offending line and column.
Document parse_document(std::string_view text);

/// Parse text holding exactly one family/cfamily declaration.
FamilySpec parse_family(std::string_view text);

/// Parse a variable-free set expression (used by `fusionlab measure`).
ExprPtr parse_set_expression(std::string_view text);

std::string print(const Expr& e);
std::string print(const FamilySpec& spec);
std::string print(const Document& doc);

/// Bits referenced by the instantiated atoms.
std::set<Coord> atoms(const Expr& e, std::uint64_t n, std::uint64_t l = 0);

/// Direct evaluation of the expression tree on an assignment.  Used by the
/// verifier; shares no code with the clopen-algebra instantiation.
bool eval(const Expr& e, std::uint64_t n, std::uint64_t l,
          const std::function<bool(const Coord&)>& bit);

/// Truth set of the instantiated expression, built with clopen algebra.
ClopenSet to_clopen(const Expr& e, std::uint64_t n, std::uint64_t l = 0);

} // namespace fusionlab::dsl
