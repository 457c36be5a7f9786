#include "doctest.h"
#include "oracle.hpp"

#include "fusionlab/measure.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>

using namespace fusionlab;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

cpp_rational as_rational(const Dyadic& d) {
  return cpp_rational(d.numerator()) / cpp_rational(cpp_int(1) << static_cast<unsigned>(d.exponent()));
}

} // namespace

TEST_CASE("dyadic strings") {
  CHECK(Dyadic::one().to_string() == "1/2^0");
  CHECK(Dyadic::zero().to_string() == "0/2^0");
  CHECK(Dyadic(6, 3).to_string() == "3/2^2");
  CHECK(Dyadic::parse("3/2^2") == Dyadic(3, 2));
  CHECK_THROWS_AS(Dyadic::parse("2/2^2"), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
  CHECK(Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2));
  CHECK(Dyadic(1, 1) < Dyadic(3, 2));
}

TEST_CASE("measure of basic sets") {
  CHECK(measure(ClopenSet::full()) == Dyadic::one());
  CHECK(measure(ClopenSet::empty()) == Dyadic::zero());
  std::map<Coord, bool> c;
  for (std::uint32_t b = 0; b < 10; ++b) {
    CHECK(measure(ClopenSet::cylinder(c)) == Dyadic::pow2_neg(b));
    c[{b % 3, b}] = b & 1u;
  }
}

TEST_CASE("measure against counting") {
  oracle::Rng rng(29);
  const auto pool = oracle::grid(3, 4);
  for (int i = 0; i < 1000; ++i) {
    const oracle::TableSet t = oracle::random_table(rng, pool, static_cast<unsigned>(rng() % 101));
    const ClopenSet a = t.build();
    CHECK(as_rational(measure(a)) == cpp_rational(t.count(), 4096));
    CHECK(measure(a) + measure(a.complement()) == Dyadic::one());
  }
}

TEST_CASE("monotone and modular") {
  oracle::Rng rng(31);
  const auto pool = oracle::grid(3, 4);
  for (int i = 0; i < 300; ++i) {
    const ClopenSet a = oracle::random_union(rng, pool, 4, 4).build();
    const ClopenSet b = oracle::random_union(rng, pool, 4, 4).build();
    CHECK(measure(a | b) + measure(a & b) == measure(a) + measure(b));
    CHECK(measure(a & b) <= measure(a));
    CHECK(measure(a) <= measure(a | b));
  }
}

TEST_CASE("measure is permutation invariant") {
  oracle::Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    oracle::TableSet t = oracle::random_table(rng, oracle::grid(2, 5));
    const Dyadic before = measure(t.build());
    std::vector<Coord> moved = t.vars;
    std::shuffle(moved.begin(), moved.end(), rng);
    for (Coord& c : moved) c = {c.k + 3, c.j * 2};
    t.vars = moved;
    CHECK(measure(t.build()) == before);
  }
}

TEST_CASE("intersection lower bound") {
  std::vector<Dyadic> eps;
  for (std::uint64_t n = 0; n < 16; ++n) eps.push_back(Dyadic::pow2_neg(n + 2));
  CHECK(intersection_lower_bound(eps) == Dyadic(1, 1) + Dyadic::pow2_neg(17));
  for (std::size_t m = 1; m <= 60; ++m) {
    std::vector<Dyadic> e;
    for (std::uint64_t n = 0; n < m; ++n) e.push_back(Dyadic::pow2_neg(n + 2));
    const Dyadic bound = intersection_lower_bound(e);
    CHECK(bound == Dyadic(1, 1) + Dyadic::pow2_neg(m + 1));
    CHECK(bound > Dyadic(1, 1));
  }
  CHECK(intersection_lower_bound(std::vector<Dyadic>(5, Dyadic::zero())) == Dyadic::one());
  CHECK(intersection_lower_bound({}) == Dyadic::one());
  CHECK(intersection_lower_bound(std::vector<Dyadic>(3, Dyadic(1, 1))) == Dyadic::zero());
  CHECK_THROWS_AS(intersection_lower_bound(std::vector<Dyadic>{Dyadic(3, 1)}), std::invalid_argument);

  oracle::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    std::vector<Dyadic> e;
    cpp_rational sum = 0;
    const std::size_t count = 1 + rng() % 12;
    for (std::size_t t = 0; t < count; ++t) {
      const std::uint64_t exp = 3 + rng() % 20;
      const Dyadic d(cpp_int(rng() % ((std::uint64_t{1} << exp) / 16 + 1)), exp);
      e.push_back(d);
      sum += as_rational(d);
    }
    REQUIRE(sum < 1);
    CHECK(as_rational(intersection_lower_bound(e)) == 1 - sum);
  }
}
