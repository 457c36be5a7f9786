#include "fusionlab/engine.hpp"

#include "fusionlab/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace fusionlab {

namespace {

struct Scan {
  std::string prefix;             ///< output bits constant on the set
  std::optional<std::size_t> bit; ///< first non-constant output bit
};

Scan scan_outputs(const BitFunctionVector& f, const ClopenSet& v, std::size_t horizon,
                  std::map<std::size_t, BitFunction>& cache) {
  Scan out;
  for (std::size_t l = 0; l < horizon; ++l) {
    auto it = cache.find(l);
    if (it == cache.end()) it = cache.emplace(l, f.bit(l)).first;
    const ClopenSet& t = it->second.truth_set();
    const bool meets1 = v.intersects(t);
    const bool meets0 = !v.subset_of(t);
    if (meets0 && meets1) {
      out.bit = l;
      return out;
    }
    out.prefix += meets1 ? '1' : '0';
  }
  return out;
}

} // namespace

ImageRefinement refine_image_to_cantor(const BitFunctionVector& f, const BoxProduct& box, std::size_t depth,
                                       std::size_t horizon) {
  ImageRefinement out;
  std::map<std::size_t, BitFunction> cache;
  std::map<Word, BoxProduct> boxes{{Word{}, box}};
  out.domain.labels[Word{}] = box.to_clopen();
  std::vector<Word> frontier{Word{}};
  for (std::size_t n = 0; n < depth; ++n) {
    std::vector<Word> next;
    for (const Word& s : frontier) {
      const ClopenSet& v = out.domain.labels.at(s);
      const Scan scan = scan_outputs(f, v, horizon, cache);
      if (!scan.bit) throw IsolatedImage(scan.prefix);
      out.prefixes[s] = Word(scan.prefix);
      for (bool b : {false, true}) {
        BoxProduct child = pick_product_subset(v & cache.at(*scan.bit).preimage(b));
        const Word c = s.child(b);
        out.domain.labels[c] = child.to_clopen();
        boxes[c] = std::move(child);
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }

  std::set<Word> image{Word{}};
  std::size_t image_depth = 0;
  std::vector<BoxProduct> leaves;
  for (const Word& s : frontier) {
    const Scan scan = scan_outputs(f, out.domain.labels.at(s), horizon, cache);
    const Word w(scan.prefix);
    out.prefixes[s] = w;
    for (std::size_t i = 0; i <= w.size(); ++i) image.insert(w.prefix(i));
    image_depth = std::max(image_depth, w.size());
    leaves.push_back(boxes.at(s));
  }
  out.image = PerfectTree(std::move(image), image_depth);
  out.domain.index_tree = PerfectTree::full(depth);
  out.domain.schedule = make_schedule(0, depth);
  out.hull = project_leaves(leaves);
  return out;
}

} // namespace fusionlab
