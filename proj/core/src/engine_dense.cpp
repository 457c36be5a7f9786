#include "fusionlab/engine.hpp"

#include "fusionlab/errors.hpp"

#include <algorithm>
#include <set>
#include <variant>

namespace fusionlab {

namespace {

BoxProduct with_split_bits(BoxProduct box, const std::vector<Coord>& split, const Word& s) {
  for (std::size_t i = 0; i < s.size(); ++i) box.restrict_factor(split[i].k, ClopenSet::literal(split[i], s[i]));
  return box;
}

Word word_of(const PointSpec& p, const std::vector<Coord>& split) {
  std::string bits;
  for (const Coord& c : split) bits += p.bit(c) ? '1' : '0';
  return Word(bits);
}

bool depends_on(const BoxProduct& box, const Coord& c) {
  const auto& support = box.factor(c.k).support();
  return std::binary_search(support.begin(), support.end(), c);
}

void avoid(const MeagerStream& stream, std::size_t j, BoxProduct& global, const std::vector<Coord>& split) {
  const MeagerPiece& piece = stream.pieces()[j];
  if (const auto* set = std::get_if<ClopenSet>(&piece)) {
    if (!set->is_empty()) throw GeneratorViolation(j, "a nonempty clopen piece is not nowhere dense");
    return;
  }
  const auto& p = std::get<PointSpec>(piece);
  if (!global.contains(p)) return;
  const BoxProduct label = with_split_bits(global, split, word_of(p, split));
  const BoxProduct v = stream.generate(j, label);
  const ClopenSet vs = v.to_clopen();
  if (!vs.subset_of(label.to_clopen())) throw GeneratorViolation(j, "returned box escapes its input box");
  if (member(p, vs)) throw GeneratorViolation(j, "returned box contains the piece");
  BoxProduct next;
  for (const auto& [k, f] : v.factors()) {
    ClopenSet g = f.project([&](const Coord& c) { return std::find(split.begin(), split.end(), c) == split.end(); });
    if (!g.is_full()) next.set_factor(k, std::move(g));
  }
  if (!next.to_clopen().subset_of(global.to_clopen()) || next.contains(p))
    throw GeneratorViolation(j, "avoidance does not extend across the sibling labels");
  global = std::move(next);
}

} // namespace

DenseResult dense_gdelta_box(const MeagerStream& stream, std::size_t depth) {
  DenseResult out;
  BoxProduct global;
  const std::size_t levels = std::max<std::size_t>(depth, 1);
  auto level_of = [&](std::size_t j) { return std::min(j, levels - 1); };

  for (std::size_t n = 0; n < levels; ++n) {
    for (std::size_t j = 0; j < stream.size(); ++j)
      if (level_of(j) == n) avoid(stream, j, global, out.split_bits);
    if (n == 0) out.schema.labels[Word{}] = global.to_clopen();
    if (n >= depth) break;
    for (std::uint64_t m = 0;; ++m) {
      const Coord c = pairing_coord(m);
      if (c.k > coordinate_budget(n) || depends_on(global, c)) continue;
      if (std::find(out.split_bits.begin(), out.split_bits.end(), c) != out.split_bits.end()) continue;
      out.split_bits.push_back(c);
      break;
    }
    const PerfectTree level_tree = PerfectTree::full(n + 1);
    for (const Word& s : level_tree.level(n + 1))
      out.schema.labels[s] = with_split_bits(global, out.split_bits, s).to_clopen();
  }

  out.box = global;
  out.schema.index_tree = PerfectTree::full(depth);
  out.schema.schedule.resize(depth + 1);
  for (std::size_t m = 0; m <= depth; ++m) out.schema.schedule[m] = m;
  out.fusion = fusion_limit(out.schema, depth);
  for (std::size_t j = 0; j < stream.size(); ++j) {
    const MeagerPiece& piece = stream.pieces()[j];
    const bool excluded = std::holds_alternative<ClopenSet>(piece) ? std::get<ClopenSet>(piece).is_empty()
                                                                   : !global.contains(std::get<PointSpec>(piece));
    out.checks.push_back(AvoidanceCheck{j, excluded});
  }
  return out;
}

BaireCertificate solve_baire(const BaireFamily& family, const SolveOptions& options) {
  BaireCertificate cert;
  cert.dense = dense_gdelta_box(family.exceptions, family.exceptions.size());
  cert.binary = solve_binary(family.base, options, cert.dense.box);
  return cert;
}

MeasureLedger measurable_root(const LuzinData& luzin, std::uint64_t count) {
  MeasureLedger ledger;
  ClopenSet bad = ClopenSet::empty();
  std::vector<Dyadic> budgets;
  for (std::uint64_t n = 0; n < count; ++n) {
    const ClopenSet e = luzin.exception_region(n);
    LedgerEntry entry{n, measure(e), luzin.budget(n)};
    if (entry.measure > entry.budget)
      throw BudgetViolation(n, "measure " + entry.measure.to_string() + " exceeds budget " + entry.budget.to_string());
    budgets.push_back(entry.budget);
    bad = bad | e;
    ledger.entries.push_back(std::move(entry));
  }
  ledger.bound = intersection_lower_bound(budgets);
  if (ledger.bound == Dyadic::zero()) throw MeasureExhausted("budgets sum to at least 1; no positive-measure set remains");
  ledger.good_set = !bad;
  ledger.good_measure = measure(ledger.good_set);
  if (ledger.good_set.is_empty()) throw MeasureExhausted("the exception regions cover the space");
  ledger.box = pick_product_subset(ledger.good_set);
  return ledger;
}

MeasurableCertificate solve_measurable(const LuzinFamily& family, const SolveOptions& options) {
  MeasurableCertificate cert;
  cert.ledger = measurable_root(family.luzin, options.scan_limit());
  cert.binary = solve_binary(family.base, options, cert.ledger.box);
  return cert;
}

} // namespace fusionlab
