#include "fusionlab/trees.hpp"

#include <stdexcept>

namespace fusionlab {

Word::Word(std::string bits) : bits_(std::move(bits)) {
  if (bits_.find_first_not_of("01") != std::string::npos)
    throw std::invalid_argument("word '" + bits_ + "' is not a bit string");
}

PerfectTree::PerfectTree(std::set<Word> words, std::size_t depth) : words_(std::move(words)), depth_(depth) {
  if (!words_.count(Word{})) throw std::invalid_argument("tree lacks the empty word");
  for (const Word& w : words_) {
    if (w.size() > depth_) throw std::invalid_argument("tree word '" + w.str() + "' is deeper than the tree");
    if (!w.empty() && !words_.count(w.parent()))
      throw std::invalid_argument("tree is not prefix-closed at '" + w.str() + "'");
  }
}

PerfectTree PerfectTree::full(std::size_t depth) {
  std::set<Word> words{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t n = 0; n < depth; ++n) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (bool b : {false, true}) {
        next.push_back(w.child(b));
        words.insert(next.back());
      }
    frontier = std::move(next);
  }
  return PerfectTree(std::move(words), depth);
}

std::vector<Word> PerfectTree::level(std::size_t n) const {
  std::vector<Word> out;
  for (const Word& w : words_)
    if (w.size() == n) out.push_back(w);
  return out;
}

std::vector<Word> PerfectTree::children(const Word& w) const {
  std::vector<Word> out;
  for (bool b : {false, true})
    if (contains(w.child(b))) out.push_back(w.child(b));
  return out;
}

namespace {

// Nodes that have a splitting node of length <= limit at or below them.
std::set<Word> nodes_reaching_split(const PerfectTree& tree, std::size_t limit) {
  std::set<Word> out;
  for (auto it = tree.nodes().rbegin(); it != tree.nodes().rend(); ++it) {
    const Word& w = *it;
    if (w.size() > limit) continue;
    bool ok = tree.is_splitting(w);
    for (const Word& c : tree.children(w)) ok = ok || out.count(c);
    if (ok) out.insert(w);
  }
  return out;
}

} // namespace

bool PerfectTree::perfect_to_depth() const {
  if (depth_ < 2) return true;
  const std::set<Word> reach = nodes_reaching_split(*this, depth_ - 1);
  for (const Word& w : words_)
    if (w.size() < depth_ - 1 && !reach.count(w)) return false;
  return true;
}

bool PerfectTree::pruned() const {
  for (const Word& w : words_)
    if (w.size() < depth_ && children(w).empty()) return false;
  return true;
}

PerfectTree tree_of_closed_set(const WordOracle& oracle, std::size_t depth) {
  if (oracle(Word{}) == Extent::Dead) throw EmptyInput("tree_of_closed_set: the closed set is empty");
  std::set<Word> words{Word{}};
  std::vector<Word> frontier{Word{}};
  std::vector<Word> dead;
  for (std::size_t n = 0; n < depth; ++n) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      bool any = false;
      for (bool b : {false, true}) {
        const Word c = w.child(b);
        if (oracle(c) == Extent::Extendable) {
          next.push_back(c);
          words.insert(c);
          any = true;
        } else {
          dead.push_back(c);
        }
      }
      if (!any) throw OracleInconsistent("extendable word '" + w.str() + "' has no extendable child");
    }
    std::vector<Word> next_dead;
    for (const Word& w : dead) {
      if (w.size() >= depth) continue;
      for (bool b : {false, true}) {
        const Word c = w.child(b);
        if (oracle(c) == Extent::Extendable)
          throw OracleInconsistent("dead word '" + w.str() + "' has extendable extension '" + c.str() + "'");
        next_dead.push_back(c);
      }
    }
    dead = std::move(next_dead);
    frontier = std::move(next);
  }
  return PerfectTree(std::move(words), depth);
}

namespace {

Word descend_to_split(const PerfectTree& tree, Word node) {
  while (!tree.is_splitting(node)) {
    if (node.size() >= tree.depth())
      throw DepthExhausted("no splitting node below '" + node.str() + "' within depth " + std::to_string(tree.depth()));
    const auto kids = tree.children(node);
    if (kids.empty()) throw DepthExhausted("branch ends at '" + node.str() + "' inside the materialized depth");
    node = kids.front();
  }
  return node;
}

} // namespace

Word splitting_homeomorphism(const PerfectTree& tree, const Word& w) {
  Word node = descend_to_split(tree, Word{});
  for (std::size_t i = 0; i < w.size(); ++i) node = descend_to_split(tree, node.child(w[i]));
  return node;
}

PerfectTree extract_cantor_subset(const WordOracle& oracle, std::size_t depth) {
  PerfectTree tree = tree_of_closed_set(oracle, depth);
  if (depth < 2) return tree;
  const std::set<Word> reach = nodes_reaching_split(tree, depth - 1);
  std::set<Word> skeleton;
  for (const Word& w : tree.nodes()) {
    if (w.size() < depth - 1 && !reach.count(w)) throw NotPerfect("node '" + w.str() + "' never splits within depth " + std::to_string(depth));
    skeleton.insert(w);
  }
  return PerfectTree(std::move(skeleton), depth);
}

ResolutionSchedule make_schedule(std::uint64_t levels_per_bit, std::size_t depth) {
  ResolutionSchedule out(depth + 1, 0);
  if (levels_per_bit == 0) return out;
  for (std::size_t m = 0; m <= depth; ++m) out[m] = m / levels_per_bit;
  return out;
}

std::uint64_t FusionSchema::required_resolution(std::size_t length) const {
  if (schedule.empty()) return 0;
  return length < schedule.size() ? schedule[length] : schedule.back();
}

FusionCertificate fusion_limit(const FusionSchema& schema, std::size_t depth) {
  if (schema.schedule.size() < depth + 1)
    throw InvariantViolation("", InvariantKind::Schedule, "schedule covers fewer than depth + 1 lengths");
  for (std::size_t m = 1; m < schema.schedule.size(); ++m)
    if (schema.schedule[m] < schema.schedule[m - 1])
      throw InvariantViolation("", InvariantKind::Schedule, "schedule decreases at length " + std::to_string(m));
  if (schema.index_tree.depth() < depth)
    throw InvariantViolation("", InvariantKind::MissingLabel, "index tree is shallower than the requested depth");

  FusionCertificate cert;
  cert.depth = depth;
  auto label = [&](const Word& w) -> const ClopenSet& {
    auto it = schema.labels.find(w);
    if (it == schema.labels.end()) throw InvariantViolation(w.str(), InvariantKind::MissingLabel, "no label");
    return it->second;
  };
  for (std::size_t n = 0; n <= depth; ++n) {
    std::vector<ClopenSet> parts;
    for (const Word& s : schema.index_tree.level(n)) {
      const ClopenSet& u = label(s);
      if (u.is_empty()) throw InvariantViolation(s.str(), InvariantKind::Nonempty, "label is empty");
      if (n > 0 && !u.subset_of(label(s.parent())))
        throw InvariantViolation(s.str(), InvariantKind::Nesting, "label is not contained in its parent's label");
      if (n > 0 && !s[n - 1]) {
        const Word sibling = s.parent().child(true);
        if (schema.index_tree.contains(sibling) && u.intersects(label(sibling)))
          throw InvariantViolation(s.str(), InvariantKind::Disjointness, "label meets the label of '" + sibling.str() + "'");
      }
      const std::uint64_t res = resolution(u);
      const std::uint64_t req = schema.required_resolution(n);
      if (res < req)
        throw InvariantViolation(s.str(), InvariantKind::Resolution,
                                 "resolution " + std::to_string(res) + " below required " + std::to_string(req));
      cert.checks.push_back(NodeCheck{s, res, req});
      parts.push_back(u);
    }
    while (parts.size() > 1) {
      std::vector<ClopenSet> next;
      for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] | parts[i + 1]);
      if (parts.size() % 2) next.push_back(std::move(parts.back()));
      parts = std::move(next);
    }
    cert.levels.push_back(parts.empty() ? ClopenSet::empty() : std::move(parts.front()));
  }
  return cert;
}

FusionSchema pullback_cantor(const BitFunctionVector& f, const PerfectTree& target, std::size_t depth) {
  const std::size_t d = std::min(depth, target.depth());
  FusionSchema schema;
  std::set<Word> words;
  for (const Word& w : target.nodes())
    if (w.size() <= d) words.insert(w);
  schema.index_tree = PerfectTree(std::move(words), d);
  schema.schedule = make_schedule(0, d);
  std::vector<BitFunction> bits;
  for (std::size_t l = 0; l < d; ++l) bits.push_back(f.bit(l));
  schema.labels[Word{}] = ClopenSet::full();
  for (std::size_t n = 1; n <= d; ++n) {
    for (const Word& s : schema.index_tree.level(n)) {
      ClopenSet u = schema.labels.at(s.parent()) & bits[n - 1].preimage(s[n - 1]);
      if (u.is_empty()) throw EmptyPreimage(s.str());
      schema.labels[s] = std::move(u);
    }
  }
  return schema;
}

} // namespace fusionlab
