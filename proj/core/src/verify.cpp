#include "codec.hpp"

#include "fusionlab/dsl.hpp"
#include "fusionlab/errors.hpp"
#include "fusionlab/measure.hpp"
#include "fusionlab/trees.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

namespace fusionlab {

bool VerifyReport::passed() const noexcept { return well_formed && failures() == 0; }

std::size_t VerifyReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const ReportEntry& e) { return !e.pass; }));
}

namespace {

using codec::json;

constexpr std::size_t kFullEnumerationBits = 12;
constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 26;

struct Factor {
  std::vector<Coord> support;
  std::vector<std::string> minterms;
  std::set<std::string> lookup;
};

// A box read straight from the file; membership is a minterm-string lookup.
struct Box {
  std::vector<Factor> factors;

  bool contains(const std::function<bool(const Coord&)>& bit) const {
    for (const Factor& f : factors) {
      std::string s;
      for (const Coord& c : f.support) s += bit(c) ? '1' : '0';
      if (!f.lookup.count(s)) return false;
    }
    return true;
  }
  std::set<Coord> support() const {
    std::set<Coord> out;
    for (const Factor& f : factors) out.insert(f.support.begin(), f.support.end());
    return out;
  }
};

Box decode_box(const json& j) {
  if (!j.is_object()) throw std::runtime_error("box is not an object");
  Box box;
  for (const auto& [key, value] : j.items()) {
    Factor f;
    for (const json& c : value.at("support")) {
      const Coord coord = codec::parse_coord(c.get<std::string>());
      if (std::to_string(coord.k) != key) throw std::runtime_error("factor " + key + " constrains another coordinate");
      f.support.push_back(coord);
    }
    for (const json& m : value.at("minterms")) {
      std::string s = m.get<std::string>();
      if (s.size() != f.support.size() || s.find_first_not_of("01") != std::string::npos)
        throw std::runtime_error("malformed minterm '" + s + "'");
      f.lookup.insert(s);
      f.minterms.push_back(std::move(s));
    }
    if (f.minterms.empty()) throw std::runtime_error("empty factor " + key);
    box.factors.push_back(std::move(f));
  }
  return box;
}

ClopenSet box_clopen(const json& j) {
  ClopenSet out = ClopenSet::full();
  for (const auto& [key, value] : j.items()) {
    std::vector<Coord> support;
    for (const json& c : value.at("support")) support.push_back(codec::parse_coord(c.get<std::string>()));
    out = out & ClopenSet::from_minterms(std::move(support), value.at("minterms").get<std::vector<std::string>>());
  }
  return out;
}

std::string assignment_string(const std::map<Coord, bool>& a) {
  std::string out;
  for (const auto& [c, v] : a) out += (out.empty() ? "" : ",") + to_string(c) + "=" + (v ? "1" : "0");
  return "{" + out + "}";
}

class Checker {
public:
  explicit Checker(const VerifyOptions& options) : options_(options), rng_(options.seed) {}

  /// nullopt when the expression takes `value` on every point of the box.
  std::optional<std::string> constant_on(const dsl::Expr& e, std::uint64_t n, std::uint64_t l, const Box& box,
                                         bool value) {
    const std::set<Coord> atoms = dsl::atoms(e, n, l);
    const std::set<Coord> box_support = box.support();
    std::set<Coord> joint_set = atoms;
    joint_set.insert(box_support.begin(), box_support.end());
    const std::vector<Coord> joint(joint_set.begin(), joint_set.end());
    auto slot = [&](const Coord& c) {
      return static_cast<std::size_t>(std::lower_bound(joint.begin(), joint.end(), c) - joint.begin());
    };
    std::vector<char> a(joint.size(), 0);
    auto bit = [&](const Coord& c) {
      const std::size_t i = slot(c);
      return i < joint.size() && joint[i] == c && a[i] != 0;
    };
    auto bad = [&]() -> std::optional<std::string> {
      if (dsl::eval(e, n, l, bit) == value) return std::nullopt;
      std::map<Coord, bool> shown;
      for (std::size_t i = 0; i < joint.size(); ++i) shown[joint[i]] = a[i] != 0;
      return "counterexample " + assignment_string(shown);
    };

    std::vector<std::size_t> free;
    for (const Coord& c : atoms)
      if (!box_support.count(c)) free.push_back(slot(c));
    std::vector<std::vector<std::size_t>> factor_slots;
    for (const Factor& f : box.factors) {
      factor_slots.emplace_back();
      for (const Coord& c : f.support) factor_slots.back().push_back(slot(c));
    }
    auto load_factor = [&](std::size_t fi, const std::string& m) {
      for (std::size_t t = 0; t < m.size(); ++t) a[factor_slots[fi][t]] = m[t] == '1';
    };

    if (options_.mode == VerifyMode::Sampled) {
      for (std::uint64_t s = 0; s < options_.samples; ++s) {
        for (std::size_t fi = 0; fi < box.factors.size(); ++fi)
          load_factor(fi, box.factors[fi].minterms[rng_() % box.factors[fi].minterms.size()]);
        for (std::size_t i : free) a[i] = static_cast<char>(rng_() & 1u);
        if (auto r = bad()) return r;
      }
      return std::nullopt;
    }

    if (joint.size() <= kFullEnumerationBits) {
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << joint.size()); ++i) {
        for (std::size_t t = 0; t < joint.size(); ++t) a[t] = static_cast<char>((i >> t) & 1u);
        if (!box.contains(bit)) continue;
        if (auto r = bad()) return r;
      }
      return std::nullopt;
    }

    // Every point of the box: one minterm per factor times every value of the
    // remaining atoms.
    if (free.size() > 40) return "support too large to enumerate";
    std::uint64_t total = std::uint64_t{1} << free.size();
    for (const Factor& f : box.factors) {
      total *= f.minterms.size();
      if (total > kEnumerationCap) return "support too large to enumerate";
    }
    std::vector<std::size_t> odometer(box.factors.size(), 0);
    for (std::size_t fi = 0; fi < box.factors.size(); ++fi) load_factor(fi, box.factors[fi].minterms[0]);
    for (;;) {
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << free.size()); ++i) {
        for (std::size_t t = 0; t < free.size(); ++t) a[free[t]] = static_cast<char>((i >> t) & 1u);
        if (auto r = bad()) return r;
      }
      std::size_t fi = 0;
      while (fi < odometer.size() && ++odometer[fi] == box.factors[fi].minterms.size()) {
        odometer[fi] = 0;
        load_factor(fi, box.factors[fi].minterms[0]);
        ++fi;
      }
      if (fi == odometer.size()) break;
      load_factor(fi, box.factors[fi].minterms[odometer[fi]]);
    }
    return std::nullopt;
  }

private:
  const VerifyOptions& options_;
  std::mt19937_64 rng_;
};

class Verifier {
public:
  Verifier(VerifyReport& report, const VerifyOptions& options) : report_(report), checker_(options) {}

  void entry(const std::string& claim, const std::function<std::optional<std::string>()>& check) {
    ReportEntry e{claim, false, ""};
    try {
      if (auto failure = check()) e.detail = *failure;
      else e.pass = true;
    } catch (const std::exception& ex) {
      e.detail = ex.what();
    }
    report_.entries.push_back(std::move(e));
  }

  void binary(const json& body, const dsl::Expr& expr, const std::string& prefix) {
    if (body.at("kind") != "binary") throw std::runtime_error("expected a binary body");
    std::map<std::string, Box> boxes;
    for (const auto& [w, b] : body.at("nodes").items()) boxes.emplace(w, decode_box(b));

    for (const json& c : body.at("claims")) {
      const std::string kind = c.at("kind").get<std::string>();
      const auto n = c.at("index").get<std::uint64_t>();
      const std::string node = c.at("node").get<std::string>();
      const json& v = c.at("value");
      entry(prefix + "claim " + kind + " f_" + std::to_string(n) + " = " + v.dump() + " on node '" + node + "'",
            [&]() -> std::optional<std::string> {
              if (v != 0 && v != 1) return "value is not a bit";
              auto it = boxes.find(node);
              if (it == boxes.end()) return "no box for node";
              return checker_.constant_on(expr, n, 0, it->second, v == 1);
            });
    }

    entry(prefix + "fusion invariants of the box tree", [&]() -> std::optional<std::string> {
      const auto depth = body.at("depth").get<std::size_t>();
      FusionSchema schema;
      std::set<Word> words;
      for (const auto& [w, b] : body.at("nodes").items()) {
        words.insert(Word(w));
        schema.labels[Word(w)] = box_clopen(b);
      }
      schema.index_tree = PerfectTree(std::move(words), depth);
      schema.schedule = body.at("schedule").get<ResolutionSchedule>();
      if (schema.index_tree.level(depth).size() != (std::size_t{1} << depth)) return "box tree is not complete";
      try {
        fusion_limit(schema, depth);
      } catch (const InvariantViolation& ex) {
        return std::string(to_string(ex.kind())) + " at '" + ex.node() + "': " + ex.what();
      }
      return std::nullopt;
    });

    entry(prefix + "subsequence", [&]() -> std::optional<std::string> {
      std::set<std::uint64_t> accepted;
      for (const json& s : body.at("stages"))
        if (s.at("kind") != "skipped") accepted.insert(s.at("index").get<std::uint64_t>());
      const auto sub = body.at("subsequence").get<std::vector<std::uint64_t>>();
      for (std::size_t i = 0; i < sub.size(); ++i) {
        if (!accepted.count(sub[i])) return "index " + std::to_string(sub[i]) + " was not accepted";
        if (i > 0 && sub[i] <= sub[i - 1]) return "subsequence is not increasing";
      }
      std::set<std::pair<std::uint64_t, std::string>> limit_claims;
      for (const json& c : body.at("claims"))
        if (c.at("kind") == "limit") limit_claims.emplace(c.at("index").get<std::uint64_t>(), c.at("node").get<std::string>());
      for (std::uint64_t n : sub)
        for (const auto& [leaf, v] : body.at("limit").items())
          if (!limit_claims.count({n, leaf})) return "missing limit claim for f_" + std::to_string(n) + " on '" + leaf + "'";
      return std::nullopt;
    });
  }

  void cantor(const json& body, const dsl::Expr& expr, const std::string& prefix) {
    if (body.at("kind") != "cantor") throw std::runtime_error("expected a cantor body");
    binary(body.at("base"), expr, prefix + "bit 0 ");
    const json& levels = body.at("levels");
    if (levels.empty()) throw std::runtime_error("no levels");
    std::map<std::string, Box> finals;
    for (const auto& [w, b] : levels.back().at("boxes").items()) finals.emplace(w, decode_box(b));

    for (const json& c : body.at("claims")) {
      const auto l = c.at("bit").get<std::uint64_t>();
      const auto n = c.at("index").get<std::uint64_t>();
      const std::string node = c.at("node").get<std::string>();
      const json& v = c.at("value");
      entry(prefix + "claim bit " + std::to_string(l) + " of f_" + std::to_string(n) + " = " + v.dump() + " on leaf '" + node + "'",
            [&]() -> std::optional<std::string> {
              if (v != 0 && v != 1) return "value is not a bit";
              auto it = finals.find(node);
              if (it == finals.end()) return "no final box for leaf";
              return checker_.constant_on(expr, n, l, it->second, v == 1);
            });
    }

    entry(prefix + "diagonal", [&]() -> std::optional<std::string> {
      const auto diag = body.at("diagonal").get<std::vector<std::uint64_t>>();
      for (std::size_t i = 1; i < diag.size(); ++i)
        if (diag[i] <= diag[i - 1]) return "diagonal is not strictly increasing";
      for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto idx = levels[l].at("indices").get<std::vector<std::uint64_t>>();
        for (std::size_t i = l; i < diag.size(); ++i)
          if (std::find(idx.begin(), idx.end(), diag[i]) == idx.end())
            return "n_" + std::to_string(i) + " = " + std::to_string(diag[i]) + " is not in N_" + std::to_string(l);
      }
      return std::nullopt;
    });

    entry(prefix + "level boxes are nested", [&]() -> std::optional<std::string> {
      const json& nodes = body.at("base").at("nodes");
      for (std::size_t l = 0; l < levels.size(); ++l)
        for (const auto& [leaf, b] : levels[l].at("boxes").items()) {
          const json& parent = l == 0 ? nodes.at(leaf) : levels[l - 1].at("boxes").at(leaf);
          const ClopenSet u = box_clopen(b);
          if (u.is_empty()) return "empty box for '" + leaf + "' at bit " + std::to_string(l);
          if (!u.subset_of(box_clopen(parent))) return "box for '" + leaf + "' escapes at bit " + std::to_string(l);
        }
      return std::nullopt;
    });
  }

  void solve_body(const json& body, const dsl::FamilySpec& spec, const std::string& prefix) {
    if (spec.cantor) cantor(body, *spec.expr, prefix);
    else binary(body, *spec.expr, prefix);
  }

  Checker& checker() { return checker_; }

private:
  VerifyReport& report_;
  Checker checker_;
};

struct Header {
  std::string source;
  Mode mode = Mode::Binary;
  std::string family;
  SolveOptions options;
  std::uint64_t bits = 4;
};

Header decode_header(const json& h) {
  Header out;
  out.source = h.at("source").get<std::string>();
  auto mode = parse_mode(h.at("mode").get<std::string>());
  if (!mode) throw std::runtime_error("unknown mode");
  out.mode = *mode;
  out.family = h.at("family").get<std::string>();
  const json& flags = h.at("flags");
  out.options.stages = flags.at("stages").get<std::uint64_t>();
  out.options.resolution = flags.at("resolution").get<std::uint64_t>();
  out.options.window = flags.at("window").get<std::uint64_t>();
  if (flags.contains("bits")) out.bits = flags.at("bits").get<std::uint64_t>();
  if (h.at("tool") != "fusionlab") throw std::runtime_error("not a fusionlab certificate");
  if (h.at("format") != codec::kFormat) throw std::runtime_error("unsupported certificate format");
  if (h.at("seed") != 0) throw std::runtime_error("nonzero determinism seed");
  return out;
}

Dyadic count_measure(const dsl::Expr& e, std::uint64_t n) {
  const std::set<Coord> atoms = dsl::atoms(e, n);
  if (atoms.size() > 30) throw std::runtime_error("exception region too large to count");
  const std::vector<Coord> bits(atoms.begin(), atoms.end());
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits.size()); ++i) {
    auto bit = [&](const Coord& c) {
      const auto t = static_cast<std::size_t>(std::lower_bound(bits.begin(), bits.end(), c) - bits.begin());
      return ((i >> t) & 1u) != 0;
    };
    if (dsl::eval(e, n, 0, bit)) ++count;
  }
  return Dyadic(count, bits.size());
}

} // namespace

VerifyReport verify_certificate(std::string_view text, const VerifyOptions& options) {
  VerifyReport report;
  json cert = json::parse(text.begin(), text.end(), nullptr, false);
  if (cert.is_discarded()) {
    report.error = "certificate is not valid JSON";
    return report;
  }
  if (!cert.is_object() || !cert.contains("header") || !cert.contains("body") || !cert.at("header").is_object() ||
      !cert.at("body").is_object()) {
    report.error = "certificate lacks a header or body object";
    return report;
  }
  report.well_formed = true;
  Verifier v(report, options);

  Header header;
  bool decoded = false;
  v.entry("decode header", [&]() -> std::optional<std::string> {
    header = decode_header(cert.at("header"));
    decoded = true;
    return std::nullopt;
  });
  if (!decoded) return report;

  v.entry("replay solve from header", [&]() -> std::optional<std::string> {
    const SolveRequest request{header.source, header.mode, header.family, header.options, header.bits};
    const SolveResult result = solve_request(request);
    if (json::parse(result.certificate) != cert) return "certificate differs from a fresh solve";
    return std::nullopt;
  });

  const json& body = cert.at("body");
  v.entry("embedded family document", [&]() -> std::optional<std::string> {
    const dsl::Document doc = dsl::parse_document(header.source);
    switch (header.mode) {
    case Mode::Binary:
    case Mode::Cantor: {
      const dsl::FamilySpec* spec = doc.find_family(header.family);
      if (!spec) return "family '" + header.family + "' not declared";
      if (spec->cantor != (header.mode == Mode::Cantor)) return "family kind does not match the mode";
      v.solve_body(body, *spec, "");
      break;
    }
    case Mode::Baire: {
      const dsl::BaireDecl* decl = doc.find_baire(header.family);
      if (!decl) return "baire '" + header.family + "' not declared";
      const dsl::FamilySpec* spec = doc.find_family(decl->family);
      if (!spec) return "family '" + decl->family + "' not declared";
      if (body.at("kind") != "baire") return "body kind is not baire";
      const json& dense = body.at("dense");
      const Box box = decode_box(dense.at("box"));
      const json& solve = body.at("solve");
      const json& root = spec->cantor ? solve.at("base").at("root") : solve.at("root");
      const Box solve_root = decode_box(root);
      for (std::size_t j = 0; j < decl->avoid.size(); ++j) {
        const PointSpec& p = decl->avoid[j];
        v.entry("avoid piece " + std::to_string(j) + " " + to_string(p), [&]() -> std::optional<std::string> {
          auto bit = [&](const Coord& c) { return p.bit(c); };
          if (box.contains(bit)) return "the dense box contains the point";
          if (solve_root.contains(bit)) return "the solve root contains the point";
          return std::nullopt;
        });
      }
      v.entry("dense box fusion invariants", [&]() -> std::optional<std::string> {
        const auto depth = dense.at("depth").get<std::size_t>();
        FusionSchema schema;
        schema.index_tree = PerfectTree::full(depth);
        schema.schedule = dense.at("schedule").get<ResolutionSchedule>();
        for (const auto& [w, u] : dense.at("labels").items()) {
          std::vector<Coord> support;
          for (const json& c : u.at("support")) support.push_back(codec::parse_coord(c.get<std::string>()));
          schema.labels[Word(w)] = ClopenSet::from_minterms(std::move(support), u.at("minterms").get<std::vector<std::string>>());
        }
        try {
          const FusionCertificate fc = fusion_limit(schema, depth);
          if (!fc.levels.back().subset_of(box_clopen(dense.at("box")))) return "deepest level escapes the box";
        } catch (const InvariantViolation& ex) {
          return std::string(to_string(ex.kind())) + " at '" + ex.node() + "': " + ex.what();
        }
        return std::nullopt;
      });
      v.entry("solve root inside the dense box", [&]() -> std::optional<std::string> {
        if (!box_clopen(root).subset_of(box_clopen(dense.at("box")))) return "root escapes the dense box";
        return std::nullopt;
      });
      v.solve_body(solve, *spec, "");
      break;
    }
    case Mode::Measurable: {
      const dsl::LuzinDecl* decl = doc.find_luzin(header.family);
      if (!decl) return "luzin '" + header.family + "' not declared";
      const dsl::FamilySpec* spec = doc.find_family(decl->family);
      if (!spec) return "family '" + decl->family + "' not declared";
      if (body.at("kind") != "measurable") return "body kind is not measurable";
      const json& ledger = body.at("ledger");
      const Box box = decode_box(ledger.at("box"));
      const json& solve = body.at("solve");
      const json& root = spec->cantor ? solve.at("base").at("root") : solve.at("root");
      Dyadic spent = Dyadic::zero();
      const std::uint64_t count = header.options.scan_limit();
      if (ledger.at("entries").size() != count) return "ledger does not cover the window";
      for (const json& e : ledger.at("entries")) {
        const auto n = e.at("index").get<std::uint64_t>();
        const Dyadic budget = Dyadic::pow2_neg(decl->budget_exponent.eval(n));
        spent = spent + budget;
        v.entry("ledger E_" + std::to_string(n), [&, n, budget]() -> std::optional<std::string> {
          const Dyadic mu = count_measure(*decl->exception, n);
          if (Dyadic::parse(e.at("measure").get<std::string>()) != mu) return "recorded measure differs from " + mu.to_string();
          if (Dyadic::parse(e.at("budget").get<std::string>()) != budget) return "recorded budget differs";
          if (mu > budget) return "measure exceeds budget";
          if (auto r = v.checker().constant_on(*decl->exception, n, 0, box, false)) return "box meets E_n: " + *r;
          return std::nullopt;
        });
      }
      v.entry("ledger bound", [&]() -> std::optional<std::string> {
        const Dyadic bound = spent >= Dyadic::one() ? Dyadic::zero() : Dyadic::one() - spent;
        if (Dyadic::parse(ledger.at("bound").get<std::string>()) != bound) return "bound differs from " + bound.to_string();
        if (!(bound > Dyadic::zero())) return "bound is not positive";
        if (Dyadic::parse(ledger.at("good_measure").get<std::string>()) < bound) return "measure of F below the bound";
        return std::nullopt;
      });
      v.entry("solve root inside the ledger box", [&]() -> std::optional<std::string> {
        if (!box_clopen(root).subset_of(box_clopen(ledger.at("box")))) return "root escapes the ledger box";
        return std::nullopt;
      });
      v.solve_body(solve, *spec, "");
      break;
    }
    }
    return std::nullopt;
  });
  return report;
}

} // namespace fusionlab
