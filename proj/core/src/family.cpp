#include "fusionlab/family.hpp"

#include "fusionlab/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace fusionlab {

bool evaluate(const BitFunction& f, const PointSpec& p) { return member(p, f.truth_set()); }

Restriction restrict(const BitFunction& f, const BoxProduct& box) {
  const ClopenSet region = box.to_clopen();
  Restriction out{BitFunction(f.truth_set() & region), std::nullopt};
  if (out.function.truth_set().is_empty()) out.constant = false;
  else if (region.subset_of(f.truth_set())) out.constant = true;
  return out;
}

BitFunctionVector BitFunctionVector::constant(std::string point) {
  return BitFunctionVector([point = std::move(point)](std::uint64_t l) {
    if (point.empty()) return BitFunction::constant(false);
    const char c = l < point.size() ? point[l] : point.back();
    return BitFunction::constant(c == '1');
  });
}

BinaryFamily BinaryFamily::from_spec(const dsl::FamilySpec& spec) {
  if (spec.cantor) throw std::invalid_argument("family '" + spec.name + "' is Cantor-valued");
  return BinaryFamily{dsl::print(spec), [spec](std::uint64_t n) { return instantiate(spec, n); }};
}

BitFunctionVector CantorFamily::vector_at(std::uint64_t n) const {
  auto fn = at;
  return BitFunctionVector([fn, n](std::uint64_t l) { return fn(n, l); });
}

CantorFamily CantorFamily::from_spec(const dsl::FamilySpec& spec) {
  if (!spec.cantor) throw std::invalid_argument("family '" + spec.name + "' is not Cantor-valued");
  return CantorFamily{dsl::print(spec), [spec](std::uint64_t n, std::uint64_t l) {
                        return BitFunction(dsl::to_clopen(*spec.expr, n, l));
                      }};
}

BitFunction instantiate(const dsl::FamilySpec& spec, std::uint64_t n) {
  return BitFunction(dsl::to_clopen(*spec.expr, n, 0));
}

BitFunctionVector instantiate_cantor(const dsl::FamilySpec& spec, std::uint64_t n) {
  return CantorFamily::from_spec(spec).vector_at(n);
}

MeagerStream::MeagerStream(std::vector<MeagerPiece> pieces)
    : pieces_(std::move(pieces)) {
  generator_ = [this_pieces = pieces_](std::size_t j, const BoxProduct& box) {
    return avoid_piece(this_pieces.at(j), box);
  };
}

MeagerStream::MeagerStream(std::vector<MeagerPiece> pieces, Generator generator)
    : pieces_(std::move(pieces)), generator_(std::move(generator)) {}

BoxProduct avoid_piece(const MeagerPiece& piece, const BoxProduct& box) {
  if (const auto* set = std::get_if<ClopenSet>(&piece)) {
    const ClopenSet rest = box.to_clopen() - *set;
    if (rest.is_empty()) throw EmptyInput("avoid_piece: clopen piece covers the box");
    return pick_product_subset(rest);
  }
  const auto& p = std::get<PointSpec>(piece);
  if (!box.contains(p)) return box;
  for (std::uint64_t m = 0;; ++m) {
    const Coord c = pairing_coord(m);
    const auto& support = box.factor(c.k).support();
    if (std::binary_search(support.begin(), support.end(), c)) continue;
    BoxProduct out = box;
    out.restrict_factor(c.k, ClopenSet::literal(c, !p.bit(c)));
    return out;
  }
}

LuzinData LuzinData::from_decl(const dsl::LuzinDecl& decl) {
  return LuzinData{
      [expr = decl.exception](std::uint64_t n) { return dsl::to_clopen(*expr, n, 0); },
      [exponent = decl.budget_exponent](std::uint64_t n) { return Dyadic::pow2_neg(exponent.eval(n)); }};
}

} // namespace fusionlab
