#pragma once

// Stagewise fusion solvers.  Every solver returns a certificate: the tree of
// boxes it built, the accepted indices, and the constancy claims the verifier
// re-checks.

#include "fusionlab/family.hpp"
#include "fusionlab/measure.hpp"
#include "fusionlab/space.hpp"
#include "fusionlab/trees.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fusionlab {

struct SolveOptions {
  std::uint64_t stages = 8;
  /// Word lengths per required resolution bit; 0 disables shrinking.
  std::uint64_t resolution = 32;
  /// Candidate indices scanned; 0 means 2 * stages.
  std::uint64_t window = 0;

  std::uint64_t scan_limit() const noexcept { return window ? window : 2 * stages; }
};

enum class StageKind { Split, Constant, Skipped };
const char* to_string(StageKind kind) noexcept;

struct StageRecord {
  std::uint64_t index = 0;
  StageKind kind = StageKind::Skipped;
  std::size_t depth = 0;        ///< splits performed before this index
  std::map<Word, bool> values;  ///< Constant: value on each current leaf
};

enum class ClaimKind { Split, Constant, Limit };
const char* to_string(ClaimKind kind) noexcept;

/// f_index is constantly `value` on the box of `node`.
struct Claim {
  ClaimKind kind = ClaimKind::Limit;
  std::uint64_t index = 0;
  Word node;
  bool value = false;
};

/// Per-coordinate projections of a union of leaf boxes.
struct DimensionTrees {
  std::size_t leaves = 0;
  BoxProduct factors;
  /// The union of the leaves equals the product of its projections.
  bool product_exact = false;
};

DimensionTrees project_leaves(const std::vector<BoxProduct>& leaves);

enum class Outcome { Complete, Exhausted };
const char* to_string(Outcome outcome) noexcept;

/// Rule used to pick the convergent subsequence among accepted indices.
enum class SubsequenceRule { Alternate, Pigeonhole };
const char* to_string(SubsequenceRule rule) noexcept;

struct BinaryCertificate {
  SolveOptions options;
  BoxProduct root;
  std::vector<StageRecord> stages;  ///< every scanned index, in order
  std::map<Word, BoxProduct> nodes;
  std::size_t depth = 0;            ///< number of split stages
  ResolutionSchedule schedule;
  std::array<std::vector<Word>, 2> selector;  ///< leaves of T^0 and T^1
  SubsequenceRule rule = SubsequenceRule::Pigeonhole;
  std::vector<std::uint64_t> subsequence;
  std::map<Word, bool> limit;       ///< limit value on each covered leaf
  std::array<DimensionTrees, 2> sides;
  std::vector<Claim> claims;
  Outcome outcome = Outcome::Complete;
  std::uint64_t stages_done = 0;

  std::vector<std::uint64_t> accepted() const;
  std::vector<Word> leaves() const;
  /// Labels of the whole box tree as a fusion schema.
  FusionSchema schema() const;
  /// The schema restricted to the selector tree T^side.
  FusionSchema side_schema(bool side) const;
};

/// Split/constant/skip scan over f_0, f_1, ... inside `root`.
BinaryCertificate solve_binary(const BinaryFamily& family, const SolveOptions& options,
                               const BoxProduct& root = {});

struct CantorLevel {
  std::uint64_t bit = 0;
  std::vector<std::uint64_t> indices;  ///< N_bit
  std::map<Word, bool> targets;
  std::map<Word, BoxProduct> boxes;    ///< leaf boxes after this level
};

struct CantorClaim {
  std::uint64_t bit = 0;
  std::uint64_t index = 0;
  Word node;
  bool value = false;
};

struct CantorCertificate {
  std::uint64_t bits = 0;
  BinaryCertificate base;              ///< output bit 0
  std::vector<CantorLevel> levels;
  std::vector<std::uint64_t> diagonal;
  std::map<Word, std::string> limit_words;
  std::array<DimensionTrees, 2> sides;
  std::array<std::optional<std::string>, 2> side_limits;
  std::vector<CantorClaim> claims;
  Outcome outcome = Outcome::Complete;
  std::uint64_t stages_done = 0;       ///< diagonal entries formed
};

/// Bit 0 is solved as a binary family; bits 1..bits-1 restrict the surviving
/// leaves along nested index sets; the diagonal takes one fresh index per bit.
CantorCertificate solve_cantor(const CantorFamily& family, std::uint64_t bits,
                               const SolveOptions& options, const BoxProduct& root = {});

/// Coordinates a dense-G_delta level may constrain: k <= K(level).
inline std::uint32_t coordinate_budget(std::size_t level) noexcept {
  return static_cast<std::uint32_t>(level + 1);
}

struct AvoidanceCheck {
  std::size_t piece = 0;
  bool excluded = false;
};

struct DenseResult {
  BoxProduct box;                 ///< global constraints; split bits stay free
  std::vector<Coord> split_bits;  ///< bit fixed by s(n) in label U_s
  FusionSchema schema;
  FusionCertificate fusion;
  std::vector<AvoidanceCheck> checks;
};

/// Nested splitting that avoids every piece of the stream.  Throws
/// GeneratorViolation when a generator result escapes its box or meets its
/// piece, or when a piece is a nonempty clopen set.
DenseResult dense_gdelta_box(const MeagerStream& stream, std::size_t depth);

struct BaireCertificate {
  DenseResult dense;
  BinaryCertificate binary;
};

BaireCertificate solve_baire(const BaireFamily& family, const SolveOptions& options);

struct LedgerEntry {
  std::uint64_t index = 0;
  Dyadic measure;
  Dyadic budget;
};

struct MeasureLedger {
  std::vector<LedgerEntry> entries;
  Dyadic bound;         ///< 1 - sum of budgets
  Dyadic good_measure;  ///< measure of F
  ClopenSet good_set;   ///< F, the complement of the exception regions
  BoxProduct box;       ///< product box inside F
};

/// Checks measure(E_n) <= budget(n) for n < count and extracts a box inside
/// F.  Throws BudgetViolation or MeasureExhausted.
MeasureLedger measurable_root(const LuzinData& luzin, std::uint64_t count);

struct MeasurableCertificate {
  MeasureLedger ledger;
  BinaryCertificate binary;
};

MeasurableCertificate solve_measurable(const LuzinFamily& family, const SolveOptions& options);

struct ImageRefinement {
  FusionSchema domain;            ///< V_s inside the box
  std::map<Word, Word> prefixes;  ///< output prefix constant on V_s
  PerfectTree image;              ///< prefix tree of f(V)
  DimensionTrees hull;            ///< projections of the depth-level V_s
};

/// Dual fusion for a map into C: each V_s is split by the first output bit
/// that is not constant on it (searching bits below `horizon`).  Throws
/// IsolatedImage when no such bit exists.
ImageRefinement refine_image_to_cantor(const BitFunctionVector& f, const BoxProduct& box,
                                       std::size_t depth, std::size_t horizon = 64);

} // namespace fusionlab
