#include "doctest.h"
#include "oracle.hpp"

#include "fusionlab/engine.hpp"
#include "fusionlab/errors.hpp"

using namespace fusionlab;

namespace {

BinaryFamily family_of(const std::string& text) { return BinaryFamily::from_spec(dsl::parse_family(text)); }

SolveOptions opts(std::uint64_t stages, std::uint64_t resolution = 32, std::uint64_t window = 0) {
  SolveOptions o;
  o.stages = stages;
  o.resolution = resolution;
  o.window = window;
  return o;
}

/// Every claim, re-derived on its box by exhaustive evaluation.
void check_claims(const BinaryCertificate& cert, const dsl::Expr& e) {
  for (const Claim& c : cert.claims) REQUIRE(oracle::brute_value_on(e, c.index, 0, cert.nodes.at(c.node)) == int(c.value));
}

PointSpec point_in(const BoxProduct& box, oracle::Rng& rng) {
  PointSpec p = rng() % 2 ? PointSpec::all_zero() : PointSpec::all_one();
  for (const auto& [k, f] : box.factors()) {
    const auto ms = f.minterms();
    const std::string& m = ms[rng() % ms.size()];
    for (std::size_t t = 0; t < m.size(); ++t) p.set(f.support()[t], m[t] == '1');
  }
  return p;
}

} // namespace

TEST_CASE("diagonal family") {
  const auto spec = dsl::parse_family("family f(n) = bit(n, 0)");
  const BinaryCertificate cert = solve_binary(BinaryFamily::from_spec(spec), opts(8));
  CHECK(cert.outcome == Outcome::Complete);
  CHECK(cert.depth == 8);
  for (const StageRecord& s : cert.stages) CHECK(s.kind == StageKind::Split);
  CHECK(cert.accepted() == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(cert.rule == SubsequenceRule::Alternate);
  CHECK(cert.subsequence == std::vector<std::uint64_t>{1, 3, 5, 7});
  CHECK(cert.selector[0].size() == 16);
  CHECK(cert.selector[1].size() == 16);

  const DimensionTrees& p0 = cert.sides[0];
  CHECK(p0.product_exact);
  std::vector<std::uint32_t> ks;
  for (const auto& [k, f] : p0.factors.factors()) {
    ks.push_back(k);
    CHECK(f == ClopenSet::literal({k, 0}, false));
  }
  CHECK(ks == std::vector<std::uint32_t>{1, 3, 5, 7});
  check_claims(cert, *spec.expr);

  fusion_limit(cert.schema(), cert.depth);
  for (bool side : {false, true}) {
    const FusionSchema s = cert.side_schema(side);
    for (const Word& w : s.index_tree.nodes())
      if (w.size() < cert.depth) CHECK(s.index_tree.children(w).size() == (w.size() % 2 == 1 ? 1u : 2u));
  }
}

TEST_CASE("constant and settled families") {
  const BinaryCertificate zero = solve_binary(family_of("family z(n) = 0"), opts(8));
  for (const StageRecord& s : zero.stages) CHECK(s.kind == StageKind::Constant);
  CHECK(zero.accepted() == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(zero.subsequence == zero.accepted());
  CHECK(zero.rule == SubsequenceRule::Pigeonhole);
  CHECK(zero.sides[0].factors.is_full());
  CHECK(zero.sides[0].leaves == 1);
  CHECK(zero.sides[1].leaves == 0);

  const auto spec = dsl::parse_family("family s(n) = bit(0, 0)");
  const BinaryCertificate settled = solve_binary(BinaryFamily::from_spec(spec), opts(8));
  CHECK(settled.depth == 1);
  CHECK(settled.stages[0].kind == StageKind::Split);
  for (std::size_t i = 1; i < settled.stages.size(); ++i) CHECK(settled.stages[i].kind == StageKind::Constant);
  CHECK(settled.accepted() == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7});
  check_claims(settled, *spec.expr);
}

TEST_CASE("exhaustion is an outcome") {
  const BinaryCertificate cert = solve_binary(family_of("family e(n) = bit(0, 0) & bit(n + 1, 0)"), opts(4));
  CHECK(cert.outcome == Outcome::Exhausted);
  CHECK(cert.stages_done == 1);
  CHECK(cert.stages.size() == 8);
  for (std::size_t i = 1; i < cert.stages.size(); ++i) CHECK(cert.stages[i].kind == StageKind::Skipped);
  CHECK_THROWS_AS(solve_binary(family_of("family z(n) = 0"), opts(0)), std::invalid_argument);
}

TEST_CASE("random families against brute force") {
  oracle::Rng rng(71);
  for (int i = 0; i < 40; ++i) {
    const auto e = oracle::random_expr(rng, 3);
    const std::uint64_t stages = 1 + rng() % 5;
    const BinaryCertificate cert = solve_binary(BinaryFamily{"r", [&](std::uint64_t n) { return BitFunction(dsl::to_clopen(*e, n)); }},
                                                opts(stages, 2, stages + 2));
    for (const StageRecord& s : cert.stages) {
      std::size_t split = 0, constant = 0, leaves = 0;
      for (const auto& [w, box] : cert.nodes) {
        if (w.size() != s.depth) continue;
        ++leaves;
        const int v = oracle::brute_value_on(*e, s.index, 0, box);
        if (v < 0) ++split;
        else ++constant;
        if (s.kind == StageKind::Constant) CHECK(s.values.at(w) == bool(v));
      }
      if (s.kind == StageKind::Split) CHECK(split == leaves);
      if (s.kind == StageKind::Constant) CHECK(constant == leaves);
      if (s.kind == StageKind::Skipped) CHECK((split != 0 && constant != 0));
    }
    check_claims(cert, *e);
    fusion_limit(cert.schema(), cert.depth);

    for (const auto& [leaf, v] : cert.limit)
      for (int t = 0; t < 4; ++t) {
        const PointSpec p = point_in(cert.nodes.at(leaf), rng);
        for (std::uint64_t n : cert.subsequence)
          CHECK(dsl::eval(*e, n, 0, [&](const Coord& c) { return p.bit(c); }) == v);
      }
  }
}

TEST_CASE("relativized solve is the solve of the restricted family") {
  oracle::Rng rng(73);
  for (int i = 0; i < 40; ++i) {
    const auto e = oracle::random_expr(rng, 3);
    std::map<Coord, bool> fixed;
    for (int t = 0; t < 3; ++t) fixed[{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3)}] = rng() & 1u;
    const ClopenSet b = ClopenSet::cylinder(fixed);
    const BoxProduct root = pick_product_subset(b);
    const BinaryFamily plain{"f", [&](std::uint64_t n) { return BitFunction(dsl::to_clopen(*e, n)); }};
    const BinaryFamily restricted{"g", [&](std::uint64_t n) {
                                    ClopenSet u = dsl::to_clopen(*e, n);
                                    for (const auto& [c, v] : fixed) u = u.cofactor(c, v);
                                    return BitFunction(u);
                                  }};
    const BinaryCertificate rel = solve_binary(plain, opts(4, 0, 6), root);
    const BinaryCertificate direct = solve_binary(restricted, opts(4, 0, 6));
    REQUIRE(rel.stages.size() == direct.stages.size());
    for (std::size_t s = 0; s < rel.stages.size(); ++s) CHECK(rel.stages[s].kind == direct.stages[s].kind);
    CHECK(rel.subsequence == direct.subsequence);
    CHECK(rel.limit == direct.limit);
    for (const auto& [w, box] : direct.nodes) CHECK(rel.nodes.at(w).to_clopen() == (box.to_clopen() & b));
  }
}

TEST_CASE("determinism") {
  const BinaryFamily f = family_of("family m(n) = bit(n, 0) ^ bit(0, n + 1)");
  const BinaryCertificate a = solve_binary(f, opts(6));
  const BinaryCertificate b = solve_binary(f, opts(6));
  CHECK(a.nodes == b.nodes);
  CHECK(a.subsequence == b.subsequence);
}

TEST_CASE("cantor diagonal") {
  const auto spec = dsl::parse_family("cfamily c(n, l) = bit(n, l)");
  const CantorCertificate cert = solve_cantor(CantorFamily::from_spec(spec), 4, opts(8));
  CHECK(cert.outcome == Outcome::Complete);
  CHECK(cert.diagonal == std::vector<std::uint64_t>{1, 3, 5, 7});
  for (std::size_t l = 0; l < 4; ++l) CHECK(cert.levels[l].indices == std::vector<std::uint64_t>{1, 3, 5, 7});
  REQUIRE(cert.side_limits[0]);
  REQUIRE(cert.side_limits[1]);
  CHECK(*cert.side_limits[0] == "0000");
  CHECK(*cert.side_limits[1] == "1111");
  for (const CantorClaim& c : cert.claims)
    REQUIRE(oracle::brute_value_on(*spec.expr, c.index, c.bit, cert.levels.back().boxes.at(c.node)) == int(c.value));
  CHECK_THROWS_AS(solve_cantor(CantorFamily::from_spec(spec), 9, opts(8)), std::invalid_argument);
}

TEST_CASE("cantor families with constant higher bits") {
  const CantorFamily low{"low", [](std::uint64_t n, std::uint64_t l) {
                           return l == 0 ? BitFunction(ClopenSet::literal({static_cast<std::uint32_t>(n), 0}, true))
                                         : BitFunction::constant(false);
                         }};
  const CantorCertificate cert = solve_cantor(low, 4, opts(8));
  REQUIRE(cert.levels.size() == 4);
  for (std::size_t l = 1; l < 4; ++l) CHECK(cert.levels[l].indices == cert.levels[0].indices);
  CHECK(*cert.side_limits[0] == "0000");
  CHECK(*cert.side_limits[1] == "1000");

  const CantorCertificate fixed = solve_cantor(CantorFamily::from_spec(dsl::parse_family("cfamily f(n, l) = bit(0, l)")), 4, opts(8));
  CHECK(fixed.diagonal == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7});
  for (const auto& [leaf, box] : fixed.levels.back().boxes) {
    REQUIRE(box.factors().size() == 1);
    const ClopenSet& f = box.factor(0);
    CHECK(f.support() == std::vector<Coord>{{0, 0}, {0, 1}, {0, 2}, {0, 3}});
    CHECK(f.minterm_count() == 1);
    CHECK(f.minterms().front() == fixed.limit_words.at(leaf));
  }
}

TEST_CASE("dense G-delta box") {
  const DenseResult none = dense_gdelta_box(MeagerStream(std::vector<MeagerPiece>{}), 6);
  CHECK(none.box.is_full());
  REQUIRE(none.split_bits.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(none.split_bits[i] == pairing_coord(i));
  for (const auto& [w, u] : none.schema.labels) {
    std::map<Coord, bool> c;
    for (std::size_t i = 0; i < w.size(); ++i) c[none.split_bits[i]] = w[i];
    CHECK(u == ClopenSet::cylinder(c));
  }

  std::vector<MeagerPiece> pieces;
  std::vector<PointSpec> points;
  oracle::Rng rng(79);
  for (int i = 0; i < 8; ++i) {
    PointSpec p = i % 2 ? PointSpec::all_one() : PointSpec::all_zero();
    for (std::uint32_t k = 0; k < 4; ++k)
      for (std::uint32_t j = 0; j < 3; ++j) p.set({k, j}, rng() & 1u);
    points.push_back(p);
    pieces.emplace_back(p);
  }
  const DenseResult dense = dense_gdelta_box(MeagerStream(pieces), 8);
  for (const PointSpec& p : points) CHECK_FALSE(member(p, dense.box.to_clopen()));
  for (const AvoidanceCheck& c : dense.checks) CHECK(c.excluded);
  for (const Coord& c : dense.split_bits) CHECK(oracle::box_support(dense.box).count(c) == 0);
  CHECK(dense.fusion.depth == 8);
  for (std::size_t n = 0; n < 8; ++n) CHECK(dense.split_bits[n].k <= coordinate_budget(n));

  CHECK_THROWS_AS(dense_gdelta_box(MeagerStream({MeagerPiece{ClopenSet::literal({0, 0}, true)}}), 2), GeneratorViolation);
  const MeagerStream lazy({MeagerPiece{PointSpec::all_zero()}}, [](std::size_t, const BoxProduct& b) { return b; });
  CHECK_THROWS_AS(dense_gdelta_box(lazy, 2), GeneratorViolation);
  const MeagerStream escaping({MeagerPiece{PointSpec::all_one()}, MeagerPiece{PointSpec::all_zero()}},
                              [](std::size_t j, const BoxProduct& b) {
                                if (j == 0) return avoid_piece(PointSpec::all_one(), b);
                                BoxProduct out;
                                out.set_factor(0, ClopenSet::literal({0, 5}, true));
                                return out;
                              });
  try {
    dense_gdelta_box(escaping, 2);
    FAIL("escaping generator accepted");
  } catch (const GeneratorViolation& e) {
    CHECK(e.piece() == 1);
  }
}

TEST_CASE("baire solve") {
  const BinaryFamily diag = family_of("family d(n) = bit(n, 0)");
  const BaireCertificate plain = solve_baire(BaireFamily{diag, MeagerStream(std::vector<MeagerPiece>{})}, opts(8));
  const BinaryCertificate direct = solve_binary(diag, opts(8));
  CHECK(plain.binary.nodes == direct.nodes);
  CHECK(plain.binary.subsequence == direct.subsequence);

  const BaireCertificate avoid = solve_baire(BaireFamily{diag, MeagerStream({MeagerPiece{PointSpec::all_zero()}})}, opts(8));
  for (const auto& [w, box] : avoid.binary.nodes) CHECK_FALSE(box.contains(PointSpec::all_zero()));
}

TEST_CASE("measurable solve") {
  const BinaryFamily diag = family_of("family d(n) = bit(n, 0)");
  const auto fresh = [](std::uint64_t n) {
    std::map<Coord, bool> c;
    for (std::uint32_t j = 0; j < n + 2; ++j) c[{static_cast<std::uint32_t>(n + 20), j}] = true;
    return ClopenSet::cylinder(c);
  };
  const LuzinData data{fresh, [](std::uint64_t n) { return Dyadic::pow2_neg(n + 2); }};
  const MeasurableCertificate cert = solve_measurable(LuzinFamily{diag, data}, opts(2));
  CHECK(cert.ledger.entries.size() == 4);
  CHECK(cert.ledger.bound == Dyadic(17, 5));
  CHECK(cert.ledger.bound > Dyadic(1, 1));
  CHECK(cert.ledger.good_measure >= cert.ledger.bound);
  CHECK(cert.ledger.box.to_clopen().subset_of(cert.ledger.good_set));
  for (const auto& [w, box] : cert.binary.nodes) CHECK(box.to_clopen().subset_of(cert.ledger.good_set));

  const LuzinData none{[](std::uint64_t) { return ClopenSet::empty(); }, [](std::uint64_t n) { return Dyadic::pow2_neg(n + 2); }};
  const MeasurableCertificate same = solve_measurable(LuzinFamily{diag, none}, opts(8));
  CHECK(same.binary.nodes == solve_binary(diag, opts(8)).nodes);

  const LuzinData all{[](std::uint64_t) { return ClopenSet::full(); }, [](std::uint64_t n) { return n ? Dyadic::zero() : Dyadic::one(); }};
  CHECK_THROWS_AS(measurable_root(all, 4), BudgetViolation);
  const LuzinData spent{[](std::uint64_t n) { return n ? ClopenSet::empty() : ClopenSet::full(); }, [](std::uint64_t n) { return n ? Dyadic::zero() : Dyadic::one(); }};
  CHECK_THROWS_AS(measurable_root(spent, 4), MeasureExhausted);
}

TEST_CASE("image refinement") {
  const BitFunctionVector id([](std::uint64_t l) { return BitFunction(ClopenSet::literal({0, static_cast<std::uint32_t>(l)}, true)); });
  const ImageRefinement r = refine_image_to_cantor(id, BoxProduct{}, 4);
  CHECK(r.image == PerfectTree::full(4));

  try {
    refine_image_to_cantor(BitFunctionVector::constant("01"), BoxProduct{}, 3, 16);
    FAIL("constant map refined");
  } catch (const IsolatedImage& e) {
    CHECK(e.prefix().substr(0, 2) == "01");
  }

  const BitFunctionVector diag([](std::uint64_t l) { return BitFunction(ClopenSet::literal({static_cast<std::uint32_t>(l), 0}, true)); });
  const ImageRefinement d = refine_image_to_cantor(diag, BoxProduct{}, 4);
  CHECK(d.image == PerfectTree::full(4));
  fusion_limit(d.domain, 4);
  std::vector<Coord> vars;
  for (std::uint32_t l = 0; l < 4; ++l) vars.push_back({l, 0});
  for (const Word& s : PerfectTree::full(4).level(4)) {
    const ClopenSet& v = d.domain.labels.at(s);
    CHECK(v.support().size() == 4);
    oracle::for_each_assignment(vars, [&](const oracle::Assign& a) {
      if (!oracle::in_set(v, a)) return;
      std::string out;
      for (const Coord& c : vars) out += a.at(c) ? '1' : '0';
      CHECK(out == d.prefixes.at(s).str());
    });
  }
}
