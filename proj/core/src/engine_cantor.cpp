#include "fusionlab/engine.hpp"

#include "fusionlab/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fusionlab {

CantorCertificate solve_cantor(const CantorFamily& family, std::uint64_t bits, const SolveOptions& options,
                               const BoxProduct& root) {
  if (bits == 0) throw std::invalid_argument("bits must be at least 1");
  if (options.stages < bits) throw std::invalid_argument("stages must be at least bits");

  CantorCertificate cert;
  cert.bits = bits;
  const BinaryFamily level0{family.description, [&family](std::uint64_t n) { return family.at(n, 0); }};
  cert.base = solve_binary(level0, options, root);

  CantorLevel first;
  first.bit = 0;
  first.indices = cert.base.subsequence;
  first.targets = cert.base.limit;
  for (const auto& [leaf, v] : cert.base.limit) first.boxes[leaf] = cert.base.nodes.at(leaf);
  cert.levels.push_back(std::move(first));

  const bool sided = cert.base.rule == SubsequenceRule::Alternate;
  for (std::uint64_t l = 1; l < bits; ++l) {
    const CantorLevel& prev = cert.levels.back();
    CantorLevel level;
    level.bit = l;
    level.boxes = prev.boxes;
    std::map<Word, ClopenSet> sets;
    for (const auto& [leaf, box] : level.boxes) sets[leaf] = box.to_clopen();
    for (std::uint64_t n : prev.indices) {
      const BitFunction g = family.at(n, l);
      if (level.indices.empty()) {
        for (const auto& [leaf, u] : sets) {
          const bool preferred = sided && cert.base.limit.at(leaf);
          level.targets[leaf] = u.intersects(g.preimage(preferred)) ? preferred : !preferred;
        }
      }
      bool ok = true;
      for (const auto& [leaf, u] : sets)
        if (!u.intersects(g.preimage(level.targets.at(leaf)))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (auto& [leaf, u] : sets) {
        BoxProduct box = pick_product_subset(u & g.preimage(level.targets.at(leaf)));
        u = box.to_clopen();
        level.boxes[leaf] = std::move(box);
      }
      level.indices.push_back(n);
    }
    if (level.indices.empty()) break;
    cert.levels.push_back(std::move(level));
  }

  // n_l = least index of N_l not used yet; the tail continues in N_{bits-1}.
  std::set<std::uint64_t> used;
  bool complete = cert.base.outcome == Outcome::Complete && cert.levels.size() == bits;
  for (const CantorLevel& level : cert.levels) {
    auto it = std::find_if(level.indices.begin(), level.indices.end(),
                           [&](std::uint64_t n) { return !used.count(n) && (cert.diagonal.empty() || n > cert.diagonal.back()); });
    if (it == level.indices.end()) {
      complete = false;
      break;
    }
    cert.diagonal.push_back(*it);
    used.insert(*it);
  }
  if (complete)
    for (std::uint64_t n : cert.levels.back().indices)
      if (n > cert.diagonal.back()) cert.diagonal.push_back(n);
  cert.stages_done = std::min<std::uint64_t>(cert.diagonal.size(), bits);
  cert.outcome = complete ? Outcome::Complete : Outcome::Exhausted;

  const CantorLevel& last = cert.levels.back();
  std::array<std::vector<BoxProduct>, 2> side_boxes;
  std::array<std::set<std::string>, 2> side_words;
  for (const auto& [leaf, box] : last.boxes) {
    std::string word;
    for (const CantorLevel& level : cert.levels) word += level.targets.at(leaf) ? '1' : '0';
    const bool side = cert.base.limit.at(leaf);
    side_boxes[side].push_back(box);
    side_words[side].insert(word);
    cert.limit_words[leaf] = std::move(word);
  }
  for (bool side : {false, true}) {
    cert.sides[side] = project_leaves(side_boxes[side]);
    if (side_words[side].size() == 1) cert.side_limits[side] = *side_words[side].begin();
  }

  for (std::uint64_t l = 0; l < cert.levels.size(); ++l)
    for (std::size_t i = l; i < cert.diagonal.size(); ++i)
      for (const auto& [leaf, box] : last.boxes)
        cert.claims.push_back(CantorClaim{l, cert.diagonal[i], leaf, cert.levels[l].targets.at(leaf)});
  return cert;
}

} // namespace fusionlab
