#include "doctest.h"
#include "oracle.hpp"
#include "schemas.hpp"

#include "fusionlab/errors.hpp"
#include "fusionlab/measure.hpp"
#include "fusionlab/trees.hpp"

using namespace fusionlab;

namespace {

bool no_double_one(const Word& w) { return w.str().find("11") == std::string::npos; }

Extent no11(const Word& w) { return no_double_one(w) ? Extent::Extendable : Extent::Dead; }

std::vector<std::string> all_words(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      next.push_back(w + '0');
      next.push_back(w + '1');
    }
    out = std::move(next);
  }
  return out;
}

PerfectTree random_perfect_tree(oracle::Rng& rng, std::size_t depth) {
  std::set<Word> words{Word{}};
  std::vector<std::pair<Word, bool>> frontier{{Word{}, false}};
  for (std::size_t n = 0; n < depth; ++n) {
    std::vector<std::pair<Word, bool>> next;
    for (const auto& [w, parent_split] : frontier) {
      if (!parent_split || rng() % 2 == 0) {
        for (bool b : {false, true}) next.push_back({w.child(b), true});
      } else {
        next.push_back({w.child(rng() & 1u), false});
      }
    }
    for (const auto& [w, s] : next) words.insert(w);
    frontier = std::move(next);
  }
  return PerfectTree(std::move(words), depth);
}

} // namespace

TEST_CASE("words and trees") {
  CHECK_THROWS_AS(Word("012"), std::invalid_argument);
  CHECK(Word("01").is_prefix_of(Word("011")));
  CHECK_FALSE(Word("011").is_prefix_of(Word("01")));
  CHECK_THROWS_AS(PerfectTree({Word{}, Word("01")}, 2), std::invalid_argument);
  CHECK_THROWS_AS(PerfectTree({Word("0")}, 2), std::invalid_argument);
  CHECK(PerfectTree::full(3).nodes().size() == 15);
  CHECK(PerfectTree::full(3).perfect_to_depth());
}

TEST_CASE("tree of a closed set") {
  const PerfectTree full = tree_of_closed_set([](const Word&) { return Extent::Extendable; }, 6);
  CHECK(full == PerfectTree::full(6));

  const PerfectTree zero = tree_of_closed_set(
      [](const Word& w) { return w.str().find('1') == std::string::npos ? Extent::Extendable : Extent::Dead; }, 6);
  CHECK(zero.nodes().size() == 7);
  CHECK(zero.pruned());
  CHECK_FALSE(zero.perfect_to_depth());

  const PerfectTree fib = tree_of_closed_set(no11, 5);
  const std::size_t expected[] = {2, 3, 5, 8, 13};
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t count = 0;
    for (const auto& w : all_words(n)) count += no_double_one(Word(w));
    CHECK(count == expected[n - 1]);
    CHECK(fib.level(n).size() == count);
  }
  CHECK(fib.perfect_to_depth());

  CHECK_THROWS_AS(tree_of_closed_set([](const Word&) { return Extent::Dead; }, 3), EmptyInput);
  CHECK_THROWS_AS(tree_of_closed_set([](const Word& w) { return w.str() == "1" ? Extent::Dead : Extent::Extendable; }, 3),
                  OracleInconsistent);
  CHECK_THROWS_AS(tree_of_closed_set([](const Word& w) { return w.size() >= 2 ? Extent::Dead : Extent::Extendable; }, 3),
                  OracleInconsistent);
}

TEST_CASE("tree of the branch set is the tree") {
  oracle::Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    const PerfectTree t = random_perfect_tree(rng, 10);
    const PerfectTree back = tree_of_closed_set([&](const Word& w) { return t.contains(w) ? Extent::Extendable : Extent::Dead; }, 10);
    CHECK(back == t);
  }
}

TEST_CASE("splitting homeomorphism") {
  const PerfectTree full = PerfectTree::full(6);
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& w : all_words(n)) CHECK(splitting_homeomorphism(full, Word(w)) == Word(w));

  const PerfectTree fib = tree_of_closed_set(no11, 6);
  std::vector<std::string> splitting;
  for (std::size_t n = 0; n <= 5; ++n)
    for (const auto& w : all_words(n))
      if (no_double_one(Word(w)) && no_double_one(Word(w + "0")) && no_double_one(Word(w + "1"))) splitting.push_back(w);
  std::string first_after_one;
  for (const auto& w : splitting)
    if (!w.empty() && w[0] == '1' && (first_after_one.empty() || w.size() < first_after_one.size())) first_after_one = w;
  CHECK(first_after_one == "10");
  CHECK(splitting_homeomorphism(fib, Word("1")) == Word(first_after_one));
  CHECK(splitting_homeomorphism(fib, Word("")) == Word(""));
  CHECK_THROWS_AS(splitting_homeomorphism(fib, Word("111111")), DepthExhausted);

  oracle::Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    const PerfectTree t = random_perfect_tree(rng, 14);
    std::map<std::string, std::string> image;
    for (std::size_t n = 0; n <= 6; ++n)
      for (const auto& w : all_words(n)) image[w] = splitting_homeomorphism(t, Word(w)).str();
    std::set<std::string> distinct;
    for (const auto& w : all_words(6)) distinct.insert(image[w]);
    CHECK(distinct.size() == 64);
    for (const auto& [w, v] : image) {
      CHECK(t.is_splitting(Word(v)));
      if (!w.empty()) CHECK(Word(image[w.substr(0, w.size() - 1)]).is_prefix_of(Word(v)));
    }
    const auto six = all_words(6);
    for (std::size_t a = 0; a + 1 < six.size(); ++a) CHECK(image[six[a]] < image[six[a + 1]]);
  }
}

TEST_CASE("extract cantor subset") {
  CHECK(extract_cantor_subset([](const Word&) { return Extent::Extendable; }, 5) == PerfectTree::full(5));
  const PerfectTree t = extract_cantor_subset(no11, 6);
  CHECK(t.perfect_to_depth());
  CHECK_FALSE(t.level(6).empty());
  for (const Word& w : t.nodes()) CHECK(no_double_one(w));
  const auto isolated = [](const Word& w) {
    if (!w.empty() && w[0]) return Extent::Extendable;
    return w.str().find('1') == std::string::npos ? Extent::Extendable : Extent::Dead;
  };
  CHECK_THROWS_AS(extract_cantor_subset(isolated, 6), NotPerfect);
}

TEST_CASE("schedules") {
  CHECK(make_schedule(0, 3) == ResolutionSchedule{0, 0, 0, 0});
  CHECK(make_schedule(2, 5) == ResolutionSchedule{0, 0, 1, 1, 2, 2});
}

TEST_CASE("fusion limit") {
  FusionSchema flat;
  flat.index_tree = PerfectTree::full(2);
  flat.schedule = make_schedule(0, 2);
  for (const Word& w : flat.index_tree.nodes()) flat.labels[w] = ClopenSet::full();
  try {
    fusion_limit(flat, 2);
    FAIL("accepted overlapping siblings");
  } catch (const InvariantViolation& e) {
    CHECK(e.kind() == InvariantKind::Disjointness);
    CHECK(e.node() == "0");
  }

  FusionSchema canon;
  canon.index_tree = PerfectTree::full(6);
  canon.schedule = make_schedule(0, 6);
  for (const Word& w : canon.index_tree.nodes()) {
    std::map<Coord, bool> c;
    for (std::uint32_t i = 0; i < w.size(); ++i) c[{0, i}] = w[i];
    canon.labels[w] = ClopenSet::cylinder(c);
  }
  const FusionCertificate cert = fusion_limit(canon, 6);
  CHECK(cert.checks.size() == 127);
  for (std::size_t n = 0; n <= 6; ++n) {
    CHECK(cert.levels[n].is_full());
    Dyadic sum;
    for (const Word& s : canon.index_tree.level(n)) sum = sum + measure(canon.labels.at(s));
    CHECK(sum == measure(cert.levels[n]));
  }
}

TEST_CASE("random schemas and their mutations") {
  oracle::Rng rng(53);
  for (int i = 0; i < 20; ++i) {
    const FusionSchema valid = schemas::random_schema(rng, 6);
    const FusionCertificate cert = fusion_limit(valid, 6);
    for (std::size_t n = 0; n < 6; ++n) CHECK(cert.levels[n + 1].subset_of(cert.levels[n]));
    for (std::size_t n = 0; n <= 6; ++n) {
      Dyadic sum;
      for (const Word& s : valid.index_tree.level(n)) sum = sum + measure(valid.labels.at(s));
      CHECK(sum == measure(cert.levels[n]));
    }
    for (InvariantKind kind : schemas::kAllKinds) {
      const schemas::Mutation m = schemas::mutate(valid, kind, rng);
      try {
        fusion_limit(m.schema, 6);
        FAIL("mutation accepted: " << to_string(kind));
      } catch (const InvariantViolation& e) {
        CHECK(e.kind() == kind);
        if (m.node) CHECK(e.node() == m.node->str());
      }
    }
  }
}

TEST_CASE("pullback along a bit vector") {
  const BitFunctionVector id([](std::uint64_t l) { return BitFunction(ClopenSet::literal({0, static_cast<std::uint32_t>(l)}, true)); });
  const FusionSchema s = pullback_cantor(id, PerfectTree::full(4), 4);
  for (const Word& w : PerfectTree::full(4).nodes()) {
    std::map<Coord, bool> c;
    for (std::uint32_t i = 0; i < w.size(); ++i) c[{0, i}] = w[i];
    CHECK(s.labels.at(w) == ClopenSet::cylinder(c));
  }
  fusion_limit(s, 4);

  const BitFunctionVector point = BitFunctionVector::constant("0110");
  const PerfectTree branch({Word{}, Word("0"), Word("01"), Word("011"), Word("0110")}, 4);
  for (const auto& [w, u] : pullback_cantor(point, branch, 4).labels) CHECK(u.is_full());
  try {
    pullback_cantor(point, PerfectTree::full(4), 4);
    FAIL("constant map has full image");
  } catch (const EmptyPreimage& e) {
    CHECK(e.node() == "1");
  }

  const BitFunctionVector diag([](std::uint64_t l) { return BitFunction(ClopenSet::literal({static_cast<std::uint32_t>(l), 0}, true)); });
  const PerfectTree target = tree_of_closed_set(no11, 6);
  const FusionSchema pb = pullback_cantor(diag, target, 6);
  fusion_limit(pb, 6);
  std::vector<Coord> vars;
  for (std::uint32_t l = 0; l < 6; ++l) vars.push_back({l, 0});
  for (const Word& s : target.level(6)) {
    std::size_t members = 0;
    oracle::for_each_assignment(vars, [&](const oracle::Assign& a) {
      if (!oracle::in_set(pb.labels.at(s), a)) return;
      ++members;
      std::string out;
      for (const Coord& c : vars) out += a.at(c) ? '1' : '0';
      CHECK(out == s.str());
    });
    CHECK(members == 1);
  }
}
