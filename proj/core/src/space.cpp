#include "fusionlab/space.hpp"

#include "fusionlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace fusionlab {

namespace {

std::size_t word_count(std::size_t bits) {
  const std::uint64_t entries = std::uint64_t{1} << bits;
  return static_cast<std::size_t>(std::max<std::uint64_t>(1, entries / 64));
}

void mask_tail(std::vector<std::uint64_t>& table, std::size_t bits) {
  const std::uint64_t entries = std::uint64_t{1} << bits;
  if (entries < 64) table[0] &= (std::uint64_t{1} << entries) - 1;
}

void set_entry(std::vector<std::uint64_t>& table, std::uint64_t index, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (index & 63);
  if (value)
    table[index >> 6] |= mask;
  else
    table[index >> 6] &= ~mask;
}

void check_bits(std::size_t bits) {
  if (bits > kMaxSupportBits) throw SupportTooLarge(bits);
}

// kLow[q]: low halves of blocks of 2^(q+1) bits.
constexpr std::uint64_t kLow[6] = {0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
                                   0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};

// Does the table change when index bit s flips?
bool depends(const std::vector<std::uint64_t>& table, std::size_t s) {
  if (s < 6) {
    const unsigned width = 1u << s;
    for (std::uint64_t w : table)
      if (((w >> width) ^ w) & kLow[s]) return true;
    return false;
  }
  const std::size_t stride = std::size_t{1} << (s - 6);
  for (std::size_t w = 0; w < table.size(); ++w)
    if (!(w & stride) && table[w] != table[w | stride]) return true;
  return false;
}

// Add a don't-care index bit at position b to a table over `bits` bits.
std::vector<std::uint64_t> insert_bit(const std::vector<std::uint64_t>& table, std::size_t bits, std::size_t b) {
  std::vector<std::uint64_t> out(word_count(bits + 1), 0);
  if (b >= 6) {
    const std::size_t q = b - 6;
    const std::size_t low = (std::size_t{1} << q) - 1;
    for (std::size_t w = 0; w < out.size(); ++w) out[w] = table[((w >> (q + 1)) << q) | (w & low)];
    return out;
  }
  const unsigned width = 1u << b;
  for (std::size_t w = 0; w < out.size(); ++w) {
    std::uint64_t x = (table[w / 2] >> (w & 1 ? 32 : 0)) & kLow[5];
    for (unsigned t = 16, q = 4; t >= width; t /= 2, --q) x = (x | (x << t)) & kLow[q];
    out[w] = x | (x << width);
  }
  mask_tail(out, bits + 1);
  return out;
}

// Fix index bit b of a table over `bits` bits and drop it.
std::vector<std::uint64_t> remove_bit(const std::vector<std::uint64_t>& table, std::size_t bits, std::size_t b,
                                      bool value) {
  std::vector<std::uint64_t> out(word_count(bits - 1), 0);
  if (b >= 6) {
    const std::size_t q = b - 6;
    const std::size_t low = (std::size_t{1} << q) - 1;
    const std::size_t pick = value ? std::size_t{1} << q : 0;
    for (std::size_t w = 0; w < out.size(); ++w) out[w] = table[((w >> q) << (q + 1)) | pick | (w & low)];
    return out;
  }
  const unsigned width = 1u << b;
  auto compress = [&](std::uint64_t x) {
    x = (value ? x >> width : x) & kLow[b];
    for (unsigned t = width, q = static_cast<unsigned>(b) + 1; t < 32; t *= 2, ++q) x = (x | (x >> t)) & kLow[q];
    return x;
  };
  for (std::size_t w = 0; w < out.size(); ++w) {
    out[w] = compress(table[2 * w]);
    if (2 * w + 1 < table.size()) out[w] |= compress(table[2 * w + 1]) << 32;
  }
  mask_tail(out, bits - 1);
  return out;
}

} // namespace

std::string to_string(const Coord& c) {
  return "(" + std::to_string(c.k) + "," + std::to_string(c.j) + ")";
}

std::uint64_t pairing_index(const Coord& c) noexcept {
  const std::uint64_t d = std::uint64_t{c.k} + c.j;
  return d * (d + 1) / 2 + c.j;
}

Coord pairing_coord(std::uint64_t index) noexcept {
  auto d = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(index) + 1.0) - 1.0) / 2.0);
  while (d * (d + 1) / 2 > index) --d;
  while ((d + 1) * (d + 2) / 2 <= index) ++d;
  const std::uint64_t j = index - d * (d + 1) / 2;
  return Coord{static_cast<std::uint32_t>(d - j), static_cast<std::uint32_t>(j)};
}

// ---------------------------------------------------------------------------
// ClopenSet

ClopenSet::ClopenSet() : table_(1, 0) {}

ClopenSet::ClopenSet(std::vector<Coord> support, std::vector<std::uint64_t> table)
    : support_(std::move(support)), table_(std::move(table)) {
  canonicalize();
}

ClopenSet ClopenSet::empty() { return ClopenSet{}; }

ClopenSet ClopenSet::full() { return constant(true); }

ClopenSet ClopenSet::constant(bool value) {
  ClopenSet out;
  out.table_[0] = value ? 1 : 0;
  return out;
}

ClopenSet ClopenSet::literal(Coord c, bool value) {
  return ClopenSet({c}, {value ? std::uint64_t{0b10} : std::uint64_t{0b01}});
}

ClopenSet ClopenSet::cylinder(const std::map<Coord, bool>& constraints) {
  std::vector<Coord> support;
  std::uint64_t index = 0;
  for (const auto& [c, v] : constraints) {
    support.push_back(c);
    index = (index << 1) | (v ? 1u : 0u);
  }
  check_bits(support.size());
  std::vector<std::uint64_t> table(word_count(support.size()), 0);
  set_entry(table, index, true);
  return ClopenSet(std::move(support), std::move(table));
}

ClopenSet ClopenSet::from_minterms(std::vector<Coord> support,
                                   const std::vector<std::string>& minterms) {
  const std::size_t n = support.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  std::vector<Coord> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = support[order[i]];
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("from_minterms: duplicate coordinate in support");
  check_bits(n);
  std::vector<std::uint64_t> table(word_count(n), 0);
  for (const std::string& m : minterms) {
    if (m.size() != n) throw std::invalid_argument("from_minterms: minterm length does not match support");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const char ch = m[order[i]];
      if (ch != '0' && ch != '1') throw std::invalid_argument("from_minterms: minterm is not a bit string");
      index = (index << 1) | (ch == '1' ? 1u : 0u);
    }
    set_entry(table, index, true);
  }
  return ClopenSet(std::move(sorted), std::move(table));
}

bool ClopenSet::is_empty() const noexcept { return support_.empty() && table_[0] == 0; }

bool ClopenSet::is_full() const noexcept { return support_.empty() && table_[0] == 1; }

std::uint64_t ClopenSet::minterm_count() const noexcept {
  std::uint64_t count = 0;
  for (std::uint64_t w : table_) count += static_cast<std::uint64_t>(std::popcount(w));
  return count;
}

std::vector<std::string> ClopenSet::minterms() const {
  std::vector<std::string> out;
  const std::size_t n = support_.size();
  for (std::uint64_t i = 0; i < entries(); ++i) {
    if (!entry(i)) continue;
    std::string s(n, '0');
    for (std::size_t t = 0; t < n; ++t)
      if ((i >> (n - 1 - t)) & 1u) s[t] = '1';
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::map<Coord, bool>> ClopenSet::least_minterm() const {
  const std::size_t n = support_.size();
  for (std::size_t w = 0; w < table_.size(); ++w) {
    if (table_[w] == 0) continue;
    const std::uint64_t i = w * 64 + static_cast<std::uint64_t>(std::countr_zero(table_[w]));
    std::map<Coord, bool> out;
    for (std::size_t t = 0; t < n; ++t) out[support_[t]] = (i >> (n - 1 - t)) & 1u;
    return out;
  }
  return std::nullopt;
}

bool ClopenSet::contains_assignment(const std::map<Coord, bool>& assignment) const {
  const std::size_t n = support_.size();
  std::uint64_t index = 0;
  for (std::size_t t = 0; t < n; ++t) {
    auto it = assignment.find(support_[t]);
    if (it == assignment.end()) throw std::invalid_argument("contains_assignment: support bit not assigned");
    index = (index << 1) | (it->second ? 1u : 0u);
  }
  return entry(index);
}

std::vector<std::uint64_t> ClopenSet::lifted_to(const std::vector<Coord>& joint) const {
  const std::size_t m = joint.size();
  std::vector<std::uint64_t> out = table_;
  std::size_t bits = support_.size();
  for (std::size_t p = m; p-- > 0;) {
    if (std::binary_search(support_.begin(), support_.end(), joint[p])) continue;
    out = insert_bit(out, bits++, m - 1 - p);
  }
  return out;
}

void ClopenSet::canonicalize() {
  const std::size_t n = support_.size();
  mask_tail(table_, n);
  std::vector<bool> keep(n, false);
  std::size_t kept = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (depends(table_, n - 1 - t)) {
      keep[t] = true;
      ++kept;
    }
  }
  if (kept == n) return;
  std::vector<Coord> support;
  std::size_t bits = n;
  for (std::size_t t = 0; t < n; ++t) {
    if (keep[t])
      support.push_back(support_[t]);
    else
      table_ = remove_bit(table_, bits--, n - 1 - t, false);
  }
  support_ = std::move(support);
}

ClopenSet ClopenSet::complement() const {
  std::vector<std::uint64_t> table = table_;
  for (auto& w : table) w = ~w;
  mask_tail(table, support_.size());
  ClopenSet out;
  out.support_ = support_;
  out.table_ = std::move(table);
  return out;
}

ClopenSet ClopenSet::combine(const ClopenSet& other, SetOp op) const {
  std::vector<Coord> joint;
  std::set_union(support_.begin(), support_.end(), other.support_.begin(), other.support_.end(),
                 std::back_inserter(joint));
  check_bits(joint.size());
  std::vector<std::uint64_t> a = joint.size() == support_.size() ? table_ : lifted_to(joint);
  const std::vector<std::uint64_t> b =
      joint.size() == other.support_.size() ? other.table_ : other.lifted_to(joint);
  for (std::size_t w = 0; w < a.size(); ++w) {
    switch (op) {
    case SetOp::And: a[w] &= b[w]; break;
    case SetOp::Or: a[w] |= b[w]; break;
    case SetOp::Xor: a[w] ^= b[w]; break;
    case SetOp::Diff: a[w] &= ~b[w]; break;
    }
  }
  return ClopenSet(std::move(joint), std::move(a));
}

ClopenSet ClopenSet::cofactor(Coord c, bool value) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), c);
  if (it == support_.end() || *it != c) return *this;
  const std::size_t n = support_.size();
  const std::size_t pos = static_cast<std::size_t>(it - support_.begin());
  const std::size_t bitpos = n - 1 - pos;
  std::vector<Coord> support = support_;
  support.erase(support.begin() + static_cast<std::ptrdiff_t>(pos));
  std::vector<std::uint64_t> table = remove_bit(table_, n, bitpos, value);
  return ClopenSet(std::move(support), std::move(table));
}

bool ClopenSet::varies(Coord c) const {
  static constexpr std::uint64_t kHigh[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                             0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  auto it = std::lower_bound(support_.begin(), support_.end(), c);
  if (it == support_.end() || *it != c) return false;
  const std::size_t bitpos = support_.size() - 1 - static_cast<std::size_t>(it - support_.begin());
  std::uint64_t ones = 0, zeros = 0;
  if (bitpos < 6) {
    for (std::uint64_t w : table_) {
      ones |= w & kHigh[bitpos];
      zeros |= w & ~kHigh[bitpos];
    }
  } else {
    const std::size_t stride = std::size_t{1} << (bitpos - 6);
    for (std::size_t w = 0; w < table_.size(); ++w) (w & stride ? ones : zeros) |= table_[w];
  }
  return ones && zeros;
}

bool ClopenSet::subset_of(const ClopenSet& other) const { return combine(other, SetOp::Diff).is_empty(); }

bool ClopenSet::intersects(const ClopenSet& other) const { return !combine(other, SetOp::And).is_empty(); }

ClopenSet clopen_combine(const ClopenSet& a, const ClopenSet& b, SetOp op) { return a.combine(b, op); }

ClopenSet clopen_complement(const ClopenSet& a) { return a.complement(); }

// ---------------------------------------------------------------------------
// PointSpec

PointSpec PointSpec::all_one() {
  PointSpec p;
  p.tail_ = Tail::One;
  return p;
}

PointSpec PointSpec::periodic(std::map<std::uint32_t, std::string> patterns) {
  for (const auto& [k, pat] : patterns) {
    if (pat.empty() || pat.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("periodic pattern must be a nonempty bit string");
  }
  PointSpec p;
  p.tail_ = Tail::Periodic;
  p.patterns_ = std::move(patterns);
  return p;
}

PointSpec& PointSpec::set(Coord c, bool value) {
  assigned_[c] = value;
  return *this;
}

bool PointSpec::bit(Coord c) const {
  if (auto it = assigned_.find(c); it != assigned_.end()) return it->second;
  switch (tail_) {
  case Tail::Zero: return false;
  case Tail::One: return true;
  case Tail::Periodic: {
    auto it = patterns_.find(c.k);
    if (it == patterns_.end()) return false;
    return it->second[c.j % it->second.size()] == '1';
  }
  }
  return false;
}

std::string to_string(const PointSpec& p) {
  std::string out = "point{";
  bool first = true;
  for (const auto& [c, v] : p.assigned()) {
    if (!first) out += ",";
    first = false;
    out += to_string(c) + "=" + (v ? "1" : "0");
  }
  out += "; tail=";
  switch (p.tail()) {
  case PointSpec::Tail::Zero: out += "zero"; break;
  case PointSpec::Tail::One: out += "one"; break;
  case PointSpec::Tail::Periodic: {
    out += "periodic(";
    bool f = true;
    for (const auto& [k, pat] : p.patterns()) {
      if (!f) out += ",";
      f = false;
      out += std::to_string(k) + ":" + pat;
    }
    out += ")";
    break;
  }
  }
  return out + "}";
}

bool member(const PointSpec& p, const ClopenSet& a) {
  std::map<Coord, bool> assignment;
  for (const Coord& c : a.support()) assignment[c] = p.bit(c);
  return a.contains_assignment(assignment);
}

// ---------------------------------------------------------------------------
// BoxProduct

void BoxProduct::set_factor(std::uint32_t k, ClopenSet factor) {
  if (factor.is_empty()) throw EmptyInput("box factor on coordinate " + std::to_string(k) + " is empty");
  for (const Coord& c : factor.support())
    if (c.k != k) throw std::invalid_argument("box factor for coordinate " + std::to_string(k) + " constrains " + to_string(c));
  if (factor.is_full())
    factors_.erase(k);
  else
    factors_[k] = std::move(factor);
}

void BoxProduct::restrict_factor(std::uint32_t k, const ClopenSet& factor) {
  set_factor(k, this->factor(k) & factor);
}

const ClopenSet& BoxProduct::factor(std::uint32_t k) const {
  static const ClopenSet kFull = ClopenSet::full();
  auto it = factors_.find(k);
  return it == factors_.end() ? kFull : it->second;
}

ClopenSet BoxProduct::to_clopen() const {
  ClopenSet out = ClopenSet::full();
  for (const auto& [k, f] : factors_) out = out & f;
  return out;
}

bool BoxProduct::contains(const PointSpec& p) const {
  for (const auto& [k, f] : factors_)
    if (!member(p, f)) return false;
  return true;
}

std::optional<BoxProduct> BoxProduct::from_clopen(const ClopenSet& a) {
  if (a.is_empty()) return std::nullopt;
  BoxProduct box;
  for (const Coord& c : a.support()) {
    if (box.factors_.count(c.k)) continue;
    const std::uint32_t k = c.k;
    box.set_factor(k, a.project([k](const Coord& d) { return d.k == k; }));
  }
  if (box.to_clopen() != a) return std::nullopt;
  return box;
}

BoxProduct pick_product_subset(const ClopenSet& a) {
  auto least = a.least_minterm();
  if (!least) throw EmptyInput("pick_product_subset: empty set");
  std::map<Coord, bool> literals = *least;
  const auto& support = a.support();
  for (auto it = support.rbegin(); it != support.rend(); ++it) {
    const bool v = literals.at(*it);
    literals.erase(*it);
    if (!ClopenSet::cylinder(literals).subset_of(a)) literals[*it] = v;
  }
  std::map<std::uint32_t, std::map<Coord, bool>> per_coord;
  for (const auto& [c, v] : literals) per_coord[c.k][c] = v;
  BoxProduct box;
  for (const auto& [k, constraints] : per_coord) box.set_factor(k, ClopenSet::cylinder(constraints));
  return box;
}

std::uint64_t resolution(const ClopenSet& a) {
  if (a.is_empty()) throw EmptyInput("resolution: empty set");
  const auto& support = a.support();
  for (std::uint64_t m = 0;; ++m) {
    const Coord c = pairing_coord(m);
    if (!std::binary_search(support.begin(), support.end(), c)) return m;
    if (a.varies(c)) return m;
  }
}

BoxProduct shrink_to_resolution(const BoxProduct& box, std::uint64_t target) {
  const ClopenSet set = box.to_clopen();
  auto least = set.least_minterm();
  if (!least) throw EmptyInput("shrink_to_resolution: empty box");
  if (resolution(set) >= target) return box;
  BoxProduct out = box;
  for (std::uint64_t m = 0; m < target; ++m) {
    const Coord c = pairing_coord(m);
    auto it = least->find(c);
    const bool v = it != least->end() && it->second;
    out.restrict_factor(c.k, ClopenSet::literal(c, v));
  }
  return out;
}

} // namespace fusionlab
