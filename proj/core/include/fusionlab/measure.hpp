#pragma once

// Exact Haar measure on C^w.  Clopen sets have dyadic measure, so every value
// here is a canonical dyadic rational numerator / 2^exponent.

#include "fusionlab/space.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace fusionlab {

class Dyadic {
public:
  using Integer = boost::multiprecision::cpp_int;

  Dyadic() = default;
  Dyadic(Integer numerator, std::uint64_t exponent);

  static Dyadic zero() { return {}; }
  static Dyadic one() { return {1, 0}; }
  /// 2^-e
  static Dyadic pow2_neg(std::uint64_t e) { return {1, e}; }

  const Integer& numerator() const noexcept { return numerator_; }
  std::uint64_t exponent() const noexcept { return exponent_; }

  /// Exact string `numerator/2^exponent`.
  std::string to_string() const;
  /// Inverse of to_string; throws std::invalid_argument.
  static Dyadic parse(std::string_view text);

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic&, const Dyadic&) = default;

private:
  void normalize();

  Integer numerator_ = 0;
  std::uint64_t exponent_ = 0;
};

/// Haar measure: minterm count / 2^|support|.
Dyadic measure(const ClopenSet& a);

/// 1 - sum(deficits), clamped at 0.  Throws std::invalid_argument when a
/// deficit lies outside [0, 1].
Dyadic intersection_lower_bound(std::span<const Dyadic> deficits);

} // namespace fusionlab
