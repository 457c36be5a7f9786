#pragma once

// Certificate files: solving a family document into canonical JSON, and the
// independent verifier that re-checks such a file.

#include "fusionlab/engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fusionlab {

enum class Mode { Binary, Cantor, Baire, Measurable };

const char* to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text);

struct SolveRequest {
  std::string source;       ///< family document text
  Mode mode = Mode::Binary;
  std::string name;         ///< declaration to solve; empty picks the first of its kind
  SolveOptions options;
  std::uint64_t bits = 4;   ///< output bits for Cantor-valued families
};

struct SolveResult {
  std::string certificate;  ///< canonical JSON text
  Outcome outcome = Outcome::Complete;
  std::uint64_t stages_done = 0;
};

/// Parse, solve and serialize.  Throws SyntaxError/IndexError for bad
/// documents, std::invalid_argument for bad flags or unknown declarations, and
/// the engine errors.
SolveResult solve_request(const SolveRequest& request);

enum class VerifyMode { Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t samples = 256;  ///< per claim, sampled mode
  std::uint64_t seed = 0;
};

struct ReportEntry {
  std::string claim;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  bool well_formed = false;  ///< false: not a certificate at all
  std::string error;
  std::vector<ReportEntry> entries;

  bool passed() const noexcept;
  std::size_t failures() const noexcept;
};

VerifyReport verify_certificate(std::string_view text, const VerifyOptions& options = {});

} // namespace fusionlab
