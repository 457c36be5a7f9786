#include "fusionlab/engine.hpp"

#include "fusionlab/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fusionlab {

const char* to_string(StageKind kind) noexcept {
  switch (kind) {
  case StageKind::Split: return "split";
  case StageKind::Constant: return "constant";
  case StageKind::Skipped: return "skipped";
  }
  return "?";
}

const char* to_string(ClaimKind kind) noexcept {
  switch (kind) {
  case ClaimKind::Split: return "split";
  case ClaimKind::Constant: return "constant";
  case ClaimKind::Limit: return "limit";
  }
  return "?";
}

const char* to_string(Outcome outcome) noexcept {
  return outcome == Outcome::Complete ? "complete" : "exhausted";
}

const char* to_string(SubsequenceRule rule) noexcept {
  return rule == SubsequenceRule::Alternate ? "alternate" : "pigeonhole";
}

DimensionTrees project_leaves(const std::vector<BoxProduct>& leaves) {
  DimensionTrees out;
  out.leaves = leaves.size();
  if (leaves.empty()) return out;
  std::set<std::uint32_t> coords;
  for (const BoxProduct& b : leaves)
    for (const auto& [k, f] : b.factors()) coords.insert(k);
  for (std::uint32_t k : coords) {
    ClopenSet u = ClopenSet::empty();
    for (const BoxProduct& b : leaves) u = u | b.factor(k);
    out.factors.set_factor(k, u);
  }
  try {
    ClopenSet un = ClopenSet::empty();
    for (const BoxProduct& b : leaves) un = un | b.to_clopen();
    out.product_exact = un == out.factors.to_clopen();
  } catch (const SupportTooLarge&) {
    out.product_exact = false;
  }
  return out;
}

std::vector<std::uint64_t> BinaryCertificate::accepted() const {
  std::vector<std::uint64_t> out;
  for (const StageRecord& s : stages)
    if (s.kind != StageKind::Skipped) out.push_back(s.index);
  return out;
}

std::vector<Word> BinaryCertificate::leaves() const {
  std::vector<Word> out;
  for (const auto& [w, box] : nodes)
    if (w.size() == depth) out.push_back(w);
  return out;
}

FusionSchema BinaryCertificate::schema() const {
  FusionSchema s;
  std::set<Word> words;
  for (const auto& [w, box] : nodes) {
    words.insert(w);
    s.labels[w] = box.to_clopen();
  }
  s.index_tree = PerfectTree(std::move(words), depth);
  s.schedule = schedule;
  return s;
}

namespace {

bool on_selector(const Word& w, bool side) {
  for (std::size_t p = 1; p < w.size(); p += 2)
    if (w[p] != side) return false;
  return true;
}

} // namespace

FusionSchema BinaryCertificate::side_schema(bool side) const {
  FusionSchema s;
  std::set<Word> words;
  for (const auto& [w, box] : nodes) {
    if (!on_selector(w, side)) continue;
    words.insert(w);
    s.labels[w] = box.to_clopen();
  }
  s.index_tree = PerfectTree(std::move(words), depth);
  s.schedule = schedule;
  return s;
}

BinaryCertificate solve_binary(const BinaryFamily& family, const SolveOptions& options, const BoxProduct& root) {
  if (options.stages == 0) throw std::invalid_argument("stages must be at least 1");
  BinaryCertificate cert;
  cert.options = options;
  cert.root = root;
  cert.schedule = make_schedule(options.resolution, options.stages);
  cert.nodes[Word{}] = root;

  std::vector<Word> leaves{Word{}};
  std::map<Word, ClopenSet> leaf_sets{{Word{}, root.to_clopen()}};
  std::uint64_t accepted = 0;
  const std::uint64_t limit = options.scan_limit();

  for (std::uint64_t n = 0; n < limit && accepted < options.stages; ++n) {
    const BitFunction f = family.at(n);
    bool all_split = true;
    bool all_constant = true;
    std::map<Word, bool> values;
    for (const Word& w : leaves) {
      const ClopenSet& u = leaf_sets.at(w);
      const bool meets1 = u.intersects(f.truth_set());
      const bool meets0 = !u.subset_of(f.truth_set());
      if (meets0 && meets1) all_constant = false;
      else {
        all_split = false;
        values[w] = meets1;
      }
    }
    StageRecord rec{n, StageKind::Skipped, cert.depth, {}};
    if (all_split) {
      rec.kind = StageKind::Split;
      std::vector<Word> next;
      std::map<Word, ClopenSet> next_sets;
      for (const Word& w : leaves) {
        const ClopenSet& u = leaf_sets.at(w);
        for (bool b : {false, true}) {
          BoxProduct child = pick_product_subset(u & f.preimage(b));
          child = shrink_to_resolution(child, cert.schedule[cert.depth + 1]);
          const Word c = w.child(b);
          next_sets[c] = child.to_clopen();
          cert.nodes[c] = std::move(child);
          next.push_back(c);
        }
      }
      leaves = std::move(next);
      leaf_sets = std::move(next_sets);
      ++cert.depth;
    } else if (all_constant) {
      rec.kind = StageKind::Constant;
      rec.values = std::move(values);
    }
    if (rec.kind != StageKind::Skipped) ++accepted;
    cert.stages.push_back(std::move(rec));
  }
  cert.stages_done = accepted;
  cert.outcome = accepted == options.stages ? Outcome::Complete : Outcome::Exhausted;

  // Value of each accepted f_n on each final leaf.
  std::vector<std::pair<std::uint64_t, std::vector<bool>>> vectors;
  for (const StageRecord& s : cert.stages) {
    if (s.kind == StageKind::Skipped) continue;
    std::vector<bool> v;
    for (const Word& leaf : leaves)
      v.push_back(s.kind == StageKind::Split ? leaf[s.depth] : s.values.at(leaf.prefix(s.depth)));
    vectors.emplace_back(s.index, std::move(v));
  }

  for (const Word& leaf : leaves)
    for (bool side : {false, true})
      if (on_selector(leaf, side)) cert.selector[side].push_back(leaf);

  if (cert.depth >= 2) {
    cert.rule = SubsequenceRule::Alternate;
    for (const Word& leaf : leaves) {
      if (on_selector(leaf, false)) cert.limit[leaf] = false;
      else if (on_selector(leaf, true)) cert.limit[leaf] = true;
    }
    for (const auto& [n, v] : vectors) {
      bool ok = true;
      for (std::size_t i = 0; i < leaves.size() && ok; ++i) {
        auto it = cert.limit.find(leaves[i]);
        if (it != cert.limit.end() && it->second != v[i]) ok = false;
      }
      if (ok) cert.subsequence.push_back(n);
    }
  } else {
    cert.rule = SubsequenceRule::Pigeonhole;
    std::map<std::vector<bool>, std::vector<std::uint64_t>> classes;
    std::vector<std::vector<bool>> order;
    for (const auto& [n, v] : vectors) {
      auto& cls = classes[v];
      if (cls.empty()) order.push_back(v);
      cls.push_back(n);
    }
    const std::vector<bool>* best = nullptr;
    for (const auto& v : order)
      if (!best || classes[v].size() > classes[*best].size()) best = &v;
    if (best) {
      cert.subsequence = classes[*best];
      for (std::size_t i = 0; i < leaves.size(); ++i) cert.limit[leaves[i]] = (*best)[i];
    }
  }

  std::array<std::vector<BoxProduct>, 2> side_boxes;
  for (const auto& [leaf, v] : cert.limit) side_boxes[v].push_back(cert.nodes.at(leaf));
  for (bool side : {false, true}) cert.sides[side] = project_leaves(side_boxes[side]);

  for (const StageRecord& s : cert.stages) {
    if (s.kind == StageKind::Split) {
      for (const auto& [w, box] : cert.nodes)
        if (w.size() == s.depth + 1) cert.claims.push_back(Claim{ClaimKind::Split, s.index, w, w[s.depth]});
    } else if (s.kind == StageKind::Constant) {
      for (const auto& [w, v] : s.values) cert.claims.push_back(Claim{ClaimKind::Constant, s.index, w, v});
    }
  }
  for (std::uint64_t n : cert.subsequence)
    for (const auto& [leaf, v] : cert.limit) cert.claims.push_back(Claim{ClaimKind::Limit, n, leaf, v});
  return cert;
}

} // namespace fusionlab
