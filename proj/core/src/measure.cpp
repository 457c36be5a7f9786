#include "fusionlab/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace fusionlab {

Dyadic::Dyadic(Integer numerator, std::uint64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  const std::uint64_t twos = std::min<std::uint64_t>(boost::multiprecision::lsb(abs(numerator_)), exponent_);
  numerator_ >>= twos;
  exponent_ -= twos;
}

std::string Dyadic::to_string() const {
  return numerator_.str() + "/2^" + std::to_string(exponent_);
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto slash = text.find("/2^");
  if (slash == std::string_view::npos || slash == 0 || slash + 3 >= text.size())
    throw std::invalid_argument("malformed dyadic '" + std::string(text) + "'");
  const std::string num(text.substr(0, slash));
  const std::string exp(text.substr(slash + 3));
  const std::size_t digits_from = num[0] == '-' ? 1 : 0;
  if (num.size() == digits_from || num.find_first_not_of("0123456789", digits_from) != std::string::npos ||
      exp.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("malformed dyadic '" + std::string(text) + "'");
  Dyadic out(Integer(num), std::stoull(exp));
  if (out.to_string() != text) throw std::invalid_argument("non-canonical dyadic '" + std::string(text) + "'");
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exponent_, b.exponent_);
  return Dyadic((a.numerator_ << (e - a.exponent_)) + (b.numerator_ << (e - b.exponent_)), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exponent_, b.exponent_);
  return Dyadic((a.numerator_ << (e - a.exponent_)) - (b.numerator_ << (e - b.exponent_)), e);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exponent_, b.exponent_);
  const Dyadic::Integer lhs = a.numerator_ << (e - a.exponent_);
  const Dyadic::Integer rhs = b.numerator_ << (e - b.exponent_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic measure(const ClopenSet& a) {
  return Dyadic(Dyadic::Integer(a.minterm_count()), a.support_size());
}

Dyadic intersection_lower_bound(std::span<const Dyadic> deficits) {
  Dyadic total;
  for (const Dyadic& eps : deficits) {
    if (eps < Dyadic::zero() || eps > Dyadic::one())
      throw std::invalid_argument("deficit " + eps.to_string() + " outside [0, 1]");
    total = total + eps;
  }
  if (total >= Dyadic::one()) return Dyadic::zero();
  return Dyadic::one() - total;
}

} // namespace fusionlab
