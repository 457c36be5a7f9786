#include "doctest.h"
#include "oracle.hpp"

#include "fusionlab/errors.hpp"
#include "fusionlab/space.hpp"

using namespace fusionlab;

namespace {

PointSpec random_point(oracle::Rng& rng, const std::vector<Coord>& pool) {
  PointSpec p;
  switch (rng() % 3) {
  case 0: break;
  case 1: p = PointSpec::all_one(); break;
  default: p = PointSpec::periodic({{0, "01"}, {1, "110"}, {3, "1"}}); break;
  }
  for (const Coord& c : pool)
    if (rng() % 3 == 0) p.set(c, rng() & 1u);
  return p;
}

} // namespace

TEST_CASE("pairing order") {
  CHECK(pairing_index({0, 0}) == 0);
  CHECK(pairing_index({1, 0}) == 1);
  CHECK(pairing_index({0, 1}) == 2);
  CHECK(pairing_index({2, 0}) == 3);
  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(pairing_index(pairing_coord(i)) == i);
}

TEST_CASE("and of two literals") {
  const ClopenSet a = ClopenSet::cylinder({{{0, 0}, false}}) & ClopenSet::cylinder({{{1, 0}, true}});
  CHECK(a.support() == std::vector<Coord>{{0, 0}, {1, 0}});
  CHECK(a.minterms() == std::vector<std::string>{"01"});
  const ClopenSet x = ClopenSet::literal({2, 3}, true);
  CHECK((x & !x).is_empty());
  CHECK((ClopenSet::full() | x).is_full());
}

TEST_CASE("complement") {
  CHECK(ClopenSet::empty().complement() == ClopenSet::full());
  CHECK(ClopenSet::cylinder({{{0, 0}, false}}).complement() == ClopenSet::cylinder({{{0, 0}, true}}));
  oracle::Rng rng(11);
  const auto pool = oracle::grid(2, 5);
  for (int i = 0; i < 100; ++i) {
    const oracle::TableSet t = oracle::random_table(rng, pool);
    const ClopenSet a = t.build();
    CHECK(a.complement().complement() == a);
    const ClopenSet c = a.complement();
    oracle::for_each_assignment(pool, [&](const oracle::Assign& as) {
      REQUIRE(oracle::in_set(c, as) == !t.contains(as));
      REQUIRE(oracle::in_set(a, as) == t.contains(as));
    });
  }
}

TEST_CASE("minimal support") {
  const ClopenSet a = (ClopenSet::literal({0, 0}, true) | ClopenSet::literal({0, 0}, false)) & ClopenSet::literal({1, 0}, true);
  CHECK(a.support() == std::vector<Coord>{{1, 0}});
  CHECK(ClopenSet::from_minterms({{0, 1}, {0, 0}}, {"00", "01"}) == ClopenSet::literal({0, 1}, false));
}

TEST_CASE("member against cylinder unions") {
  CHECK(member(PointSpec::all_zero(), ClopenSet::full()));
  CHECK_FALSE(member(PointSpec::all_zero(), ClopenSet::literal({3, 2}, true)));
  oracle::Rng rng(7);
  const auto pool = oracle::grid(4, 5);
  for (int i = 0; i < 1000; ++i) {
    const oracle::CylinderUnion u = oracle::random_union(rng, pool, 5, 4);
    const PointSpec p = random_point(rng, pool);
    const bool expected = u.contains_point([&](const Coord& c) { return p.bit(c); });
    REQUIRE(member(p, u.build()) == expected);
  }
}

TEST_CASE("canonical form is unique") {
  oracle::Rng rng(3);
  const auto pool = oracle::grid(2, 5);
  for (int i = 0; i < 200; ++i) {
    const auto u = oracle::random_union(rng, pool, 4, 3);
    const auto v = oracle::random_union(rng, pool, 4, 3);
    const ClopenSet a = u.build(), b = v.build();
    bool same = true;
    oracle::for_each_assignment(pool, [&](const oracle::Assign& as) { same = same && u.contains(as) == v.contains(as); });
    CHECK((a == b) == same);
  }
}

TEST_CASE("boolean algebra laws") {
  oracle::Rng rng(5);
  const auto pool = oracle::grid(2, 5);
  for (int i = 0; i < 100; ++i) {
    const ClopenSet a = oracle::random_table(rng, pool).build();
    const ClopenSet b = oracle::random_union(rng, pool, 3, 3).build();
    const ClopenSet c = oracle::random_union(rng, pool, 3, 3).build();
    CHECK(((a & b) & c) == (a & (b & c)));
    CHECK(((a | b) | c) == (a | (b | c)));
    CHECK((a & (b | c)) == ((a & b) | (a & c)));
    CHECK((a | (b & c)) == ((a | b) & (a | c)));
    CHECK(!(a | b) == (!a & !b));
    CHECK(!(a & b) == (!a | !b));
    CHECK((a ^ b) == ((a - b) | (b - a)));
    CHECK(a.subset_of(a | b));
    CHECK(a.intersects(b) == !(a & b).is_empty());
  }
}

TEST_CASE("support limit") {
  ClopenSet a = ClopenSet::full();
  for (std::uint32_t j = 0; j < kMaxSupportBits; ++j) a = a ^ ClopenSet::literal({0, j}, true);
  CHECK(a.support_size() == kMaxSupportBits);
  CHECK_THROWS_AS(a ^ ClopenSet::literal({1, 0}, true), SupportTooLarge);
}

TEST_CASE("pick_product_subset") {
  CHECK(pick_product_subset(ClopenSet::full()).is_full());
  CHECK_THROWS_AS(pick_product_subset(ClopenSet::empty()), EmptyInput);
  const BoxProduct box = pick_product_subset(ClopenSet::cylinder({{{0, 0}, false}, {{2, 1}, true}}));
  REQUIRE(box.factors().size() == 2);
  CHECK(box.factor(0) == ClopenSet::literal({0, 0}, false));
  CHECK(box.factor(2) == ClopenSet::literal({2, 1}, true));

  oracle::Rng rng(17);
  const auto pool = oracle::grid(3, 4);
  int checked = 0;
  while (checked < 200) {
    const oracle::TableSet t = oracle::random_table(rng, pool, 20);
    const ClopenSet a = t.build();
    if (a.is_empty()) continue;
    ++checked;
    const BoxProduct b = pick_product_subset(a);
    CHECK(b == pick_product_subset(a));
    std::size_t inside = 0;
    oracle::for_each_assignment(pool, [&](const oracle::Assign& as) {
      if (oracle::in_box(b, as)) {
        ++inside;
        REQUIRE(t.contains(as));
      }
    });
    CHECK(inside > 0);
  }
}

TEST_CASE("resolution") {
  CHECK(resolution(ClopenSet::full()) == 0);
  std::map<Coord, bool> fix;
  for (std::uint64_t m = 0; m < 5; ++m) fix[pairing_coord(m)] = m % 2;
  CHECK(resolution(ClopenSet::cylinder(fix)) == 5);
  CHECK_THROWS_AS(resolution(ClopenSet::empty()), EmptyInput);

  oracle::Rng rng(23);
  const auto pool = oracle::grid(3, 3);
  int checked = 0;
  while (checked < 100) {
    std::map<Coord, bool> prefix;
    const std::uint64_t m = rng() % 6;
    for (std::uint64_t i = 0; i < m; ++i) prefix[pairing_coord(i)] = rng() & 1u;
    const ClopenSet a = ClopenSet::cylinder(prefix) & oracle::random_union(rng, pool, 3, 3).build();
    const ClopenSet b = oracle::random_union(rng, pool, 3, 2).build();
    if (a.is_empty()) continue;
    ++checked;
    CHECK(resolution(a) == oracle::brute_resolution(a));
    if ((a & b).is_empty() || b.is_empty()) continue;
    CHECK(resolution(a & b) >= std::max(resolution(a), resolution(b)));
  }
}

TEST_CASE("box products") {
  BoxProduct box;
  CHECK_THROWS_AS(box.set_factor(0, ClopenSet::empty()), EmptyInput);
  CHECK_THROWS_AS(box.set_factor(0, ClopenSet::literal({1, 0}, true)), std::invalid_argument);
  box.set_factor(1, ClopenSet::literal({1, 2}, true));
  box.set_factor(0, ClopenSet::full());
  CHECK(box.factors().size() == 1);
  CHECK(box.contains(PointSpec().set({1, 2}, true)));
  CHECK_FALSE(box.contains(PointSpec::all_zero()));

  CHECK(BoxProduct::from_clopen(box.to_clopen()) == box);
  CHECK_FALSE(BoxProduct::from_clopen(ClopenSet::literal({0, 0}, true) ^ ClopenSet::literal({1, 0}, true)));

  const BoxProduct shrunk = shrink_to_resolution(box, 6);
  CHECK(resolution(shrunk.to_clopen()) >= 6);
  CHECK(shrunk.to_clopen().subset_of(box.to_clopen()));
}
