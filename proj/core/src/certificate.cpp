#include "codec.hpp"

#include "fusionlab/dsl.hpp"
#include "fusionlab/errors.hpp"

#include <charconv>
#include <stdexcept>

#ifndef FUSIONLAB_VERSION
#define FUSIONLAB_VERSION "0.0.0"
#endif

namespace fusionlab {

const char* to_string(Mode mode) noexcept {
  switch (mode) {
  case Mode::Binary: return "binary";
  case Mode::Cantor: return "cantor";
  case Mode::Baire: return "baire";
  case Mode::Measurable: return "measurable";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : {Mode::Binary, Mode::Cantor, Mode::Baire, Mode::Measurable})
    if (text == to_string(m)) return m;
  return std::nullopt;
}

namespace codec {

namespace {

const char* kSplitNote = "children of a split stage are cut by the preimages of that stage's own function";

json words(const std::vector<Word>& ws) {
  json out = json::array();
  for (const Word& w : ws) out.push_back(w.str());
  return out;
}

json bit_map(const std::map<Word, bool>& m) {
  json out = json::object();
  for (const auto& [w, v] : m) out[w.str()] = v ? 1 : 0;
  return out;
}

json box_map(const std::map<Word, BoxProduct>& m) {
  json out = json::object();
  for (const auto& [w, b] : m) out[w.str()] = to_json(b);
  return out;
}

json dims(const DimensionTrees& d) {
  return json{{"leaves", d.leaves}, {"factors", to_json(d.factors)}, {"product_exact", d.product_exact}};
}

json outcome(Outcome o, std::uint64_t done) {
  return json{{"status", to_string(o)}, {"stages_done", done}};
}

} // namespace

json to_json(const ClopenSet& set) {
  json support = json::array();
  for (const Coord& c : set.support()) support.push_back(to_string(c));
  return json{{"support", support}, {"minterms", set.minterms()}};
}

json to_json(const BoxProduct& box) {
  json out = json::object();
  for (const auto& [k, f] : box.factors()) out[std::to_string(k)] = to_json(f);
  return out;
}

json to_json(const BinaryCertificate& cert) {
  json stages = json::array();
  for (const StageRecord& s : cert.stages) {
    json r{{"index", s.index}, {"kind", to_string(s.kind)}, {"depth", s.depth}};
    if (s.kind == StageKind::Constant) r["values"] = bit_map(s.values);
    stages.push_back(std::move(r));
  }
  json claims = json::array();
  for (const Claim& c : cert.claims)
    claims.push_back(json{{"kind", to_string(c.kind)}, {"index", c.index}, {"node", c.node.str()}, {"value", c.value ? 1 : 0}});
  return json{
      {"kind", "binary"},
      {"options", json{{"stages", cert.options.stages}, {"resolution", cert.options.resolution}, {"window", cert.options.scan_limit()}}},
      {"root", to_json(cert.root)},
      {"stages", stages},
      {"nodes", box_map(cert.nodes)},
      {"depth", cert.depth},
      {"schedule", cert.schedule},
      {"selector", json{{"0", words(cert.selector[0])}, {"1", words(cert.selector[1])}}},
      {"rule", to_string(cert.rule)},
      {"subsequence", cert.subsequence},
      {"limit", bit_map(cert.limit)},
      {"sides", json{{"0", dims(cert.sides[0])}, {"1", dims(cert.sides[1])}}},
      {"claims", claims},
      {"outcome", outcome(cert.outcome, cert.stages_done)},
      {"note", kSplitNote},
  };
}

json to_json(const CantorCertificate& cert) {
  json levels = json::array();
  for (const CantorLevel& l : cert.levels)
    levels.push_back(json{{"bit", l.bit}, {"indices", l.indices}, {"targets", bit_map(l.targets)}, {"boxes", box_map(l.boxes)}});
  json limit_words = json::object();
  for (const auto& [w, s] : cert.limit_words) limit_words[w.str()] = s;
  json side_limits = json::object();
  for (bool side : {false, true})
    side_limits[side ? "1" : "0"] = cert.side_limits[side] ? json(*cert.side_limits[side]) : json(nullptr);
  json claims = json::array();
  for (const CantorClaim& c : cert.claims)
    claims.push_back(json{{"bit", c.bit}, {"index", c.index}, {"node", c.node.str()}, {"value", c.value ? 1 : 0}});
  return json{
      {"kind", "cantor"},
      {"bits", cert.bits},
      {"base", to_json(cert.base)},
      {"levels", levels},
      {"diagonal", cert.diagonal},
      {"limit_words", limit_words},
      {"sides", json{{"0", dims(cert.sides[0])}, {"1", dims(cert.sides[1])}}},
      {"side_limits", side_limits},
      {"claims", claims},
      {"outcome", outcome(cert.outcome, cert.stages_done)},
  };
}

json to_json(const DenseResult& dense, const std::vector<PointSpec>& points) {
  json split = json::array();
  for (const Coord& c : dense.split_bits) split.push_back(to_string(c));
  json labels = json::object();
  for (const auto& [w, u] : dense.schema.labels) labels[w.str()] = to_json(u);
  json avoid = json::array();
  for (const AvoidanceCheck& c : dense.checks)
    avoid.push_back(json{{"piece", c.piece}, {"point", c.piece < points.size() ? to_string(points[c.piece]) : ""}, {"excluded", c.excluded}});
  return json{
      {"box", to_json(dense.box)},
      {"split_bits", split},
      {"depth", dense.schema.index_tree.depth()},
      {"schedule", dense.schema.schedule},
      {"labels", labels},
      {"avoid", avoid},
  };
}

json to_json(const MeasureLedger& ledger) {
  json entries = json::array();
  for (const LedgerEntry& e : ledger.entries)
    entries.push_back(json{{"index", e.index}, {"measure", e.measure.to_string()}, {"budget", e.budget.to_string()}});
  return json{
      {"entries", entries},
      {"bound", ledger.bound.to_string()},
      {"good_measure", ledger.good_measure.to_string()},
      {"box", to_json(ledger.box)},
  };
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Coord parse_coord(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("bad coordinate '" + std::string(text) + "'"); };
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') throw fail();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw fail();
  Coord c;
  const char* b = text.data() + 1;
  const char* m = text.data() + comma;
  const char* e = text.data() + text.size() - 1;
  auto r1 = std::from_chars(b, m, c.k);
  auto r2 = std::from_chars(m + 1, e, c.j);
  if (r1.ec != std::errc{} || r1.ptr != m || r2.ec != std::errc{} || r2.ptr != e || b == m || m + 1 == e) throw fail();
  return c;
}

} // namespace codec

namespace {

const dsl::FamilySpec& pick_family(const dsl::Document& doc, const std::string& name, bool cantor) {
  if (!name.empty()) {
    const dsl::FamilySpec* f = doc.find_family(name);
    if (!f) throw std::invalid_argument("no family named '" + name + "'");
    if (f->cantor != cantor)
      throw std::invalid_argument("family '" + name + "' is " + (f->cantor ? "Cantor-valued" : "binary"));
    return *f;
  }
  for (const dsl::FamilySpec& f : doc.families)
    if (f.cantor == cantor) return f;
  throw std::invalid_argument(cantor ? "document declares no cfamily" : "document declares no family");
}

} // namespace

SolveResult solve_request(const SolveRequest& request) {
  using codec::json;
  if (request.options.stages == 0) throw std::invalid_argument("--stages must be at least 1");
  const dsl::Document doc = dsl::parse_document(request.source);
  const SolveOptions& options = request.options;

  json flags{{"stages", options.stages}, {"resolution", options.resolution}, {"window", options.scan_limit()}};
  json body;
  std::string declared;
  SolveResult result;
  auto record = [&](Outcome o, std::uint64_t done) {
    result.outcome = o;
    result.stages_done = done;
  };
  auto cantor_body = [&](const dsl::FamilySpec& spec, const BoxProduct& root) {
    if (request.bits == 0) throw std::invalid_argument("--bits must be at least 1");
    if (request.bits > options.stages) throw std::invalid_argument("--bits must not exceed --stages");
    flags["bits"] = request.bits;
    const CantorCertificate cert = solve_cantor(CantorFamily::from_spec(spec), request.bits, options, root);
    record(cert.outcome, cert.stages_done);
    return codec::to_json(cert);
  };
  auto binary_body = [&](const dsl::FamilySpec& spec, const BoxProduct& root) {
    const BinaryCertificate cert = solve_binary(BinaryFamily::from_spec(spec), options, root);
    record(cert.outcome, cert.stages_done);
    return codec::to_json(cert);
  };

  switch (request.mode) {
  case Mode::Binary:
  case Mode::Cantor: {
    const bool cantor = request.mode == Mode::Cantor;
    const dsl::FamilySpec& spec = pick_family(doc, request.name, cantor);
    declared = spec.name;
    body = cantor ? cantor_body(spec, BoxProduct{}) : binary_body(spec, BoxProduct{});
    break;
  }
  case Mode::Baire: {
    const dsl::BaireDecl* decl = request.name.empty() ? (doc.baire.empty() ? nullptr : &doc.baire.front())
                                                      : doc.find_baire(request.name);
    if (!decl) throw std::invalid_argument("no baire declaration" + (request.name.empty() ? "" : " named '" + request.name + "'"));
    declared = decl->name;
    const dsl::FamilySpec* spec = doc.find_family(decl->family);
    if (!spec) throw std::invalid_argument("baire '" + decl->name + "' names unknown family '" + decl->family + "'");
    MeagerStream stream(std::vector<MeagerPiece>(decl->avoid.begin(), decl->avoid.end()));
    const DenseResult dense = dense_gdelta_box(stream, stream.size());
    body = json{{"kind", "baire"},
                {"dense", codec::to_json(dense, decl->avoid)},
                {"solve", spec->cantor ? cantor_body(*spec, dense.box) : binary_body(*spec, dense.box)}};
    break;
  }
  case Mode::Measurable: {
    const dsl::LuzinDecl* decl = request.name.empty() ? (doc.luzin.empty() ? nullptr : &doc.luzin.front())
                                                      : doc.find_luzin(request.name);
    if (!decl) throw std::invalid_argument("no luzin declaration" + (request.name.empty() ? "" : " named '" + request.name + "'"));
    declared = decl->name;
    const dsl::FamilySpec* spec = doc.find_family(decl->family);
    if (!spec) throw std::invalid_argument("luzin '" + decl->name + "' names unknown family '" + decl->family + "'");
    const MeasureLedger ledger = measurable_root(LuzinData::from_decl(*decl), options.scan_limit());
    body = json{{"kind", "measurable"},
                {"ledger", codec::to_json(ledger)},
                {"solve", spec->cantor ? cantor_body(*spec, ledger.box) : binary_body(*spec, ledger.box)}};
    break;
  }
  }

  const json header{{"tool", "fusionlab"},  {"version", FUSIONLAB_VERSION}, {"format", codec::kFormat},
                    {"source", request.source}, {"family", declared},      {"mode", to_string(request.mode)},
                    {"flags", flags},          {"seed", 0}};
  result.certificate = codec::dump(json{{"header", header}, {"body", body}});
  return result;
}

} // namespace fusionlab
