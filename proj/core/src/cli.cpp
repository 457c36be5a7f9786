#include "fusionlab/cli.hpp"

#include "fusionlab/certificate.hpp"
#include "fusionlab/dsl.hpp"
#include "fusionlab/errors.hpp"
#include "fusionlab/measure.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fusionlab {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const CLI::Validator at_least_one(
      [](std::string& v) { return v.find_first_not_of("0") == std::string::npos ? std::string("must be at least 1") : std::string(); },
      "POSITIVE");

  CLI::App app{"Fusion constructions on Cantor space with checkable certificates", "fusionlab"};
  app.require_subcommand(1);

  std::string family_path, out_path, mode_text = "binary", name;
  SolveOptions options;
  std::uint64_t bits = 4;
  auto* solve = app.add_subcommand("solve", "Solve a family and write a certificate");
  solve->add_option("--family", family_path, "Family document")->required();
  solve->add_option("--mode", mode_text, "binary, cantor, baire or measurable")
      ->check(CLI::IsMember({"binary", "cantor", "baire", "measurable"}));
  solve->add_option("--stages", options.stages, "Accepted indices to construct")->check(at_least_one);
  solve->add_option("--resolution", options.resolution, "Word lengths per required resolution bit (0: none)");
  solve->add_option("--bits", bits, "Output bits for Cantor-valued families")->check(at_least_one);
  solve->add_option("--window", options.window, "Candidate indices to scan (0: twice the stages)");
  solve->add_option("--name", name, "Declaration to solve");
  solve->add_option("--out", out_path, "Certificate file (default: standard output)");

  std::string cert_path;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Check every claim of a certificate");
  verify->add_option("certificate", cert_path, "Certificate file")->required();
  auto* ex = verify->add_flag("--exhaustive", exhaustive, "Enumerate every assignment (default)");
  verify->add_option("--sample", samples, "Random assignments per claim")->excludes(ex);
  verify->add_option("--seed", seed, "Sampling seed");

  std::string expr_text;
  auto* meas = app.add_subcommand("measure", "Print the Haar measure of a set expression");
  meas->add_option("--expr", expr_text, "Set expression")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (*solve) {
    auto text = read_file(family_path);
    if (!text) {
      err << "error: cannot read " << family_path << "\n";
      return kExitInput;
    }
    SolveRequest request{*text, *parse_mode(mode_text), name, options, bits};
    SolveResult result;
    try {
      result = solve_request(request);
    } catch (const SyntaxError& e) {
      err << family_path << ":" << e.what() << "\n";
      return kExitInput;
    } catch (const IndexError& e) {
      err << family_path << ":" << e.what() << "\n";
      return kExitInput;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitInput;
    }
    if (out_path.empty()) {
      out << result.certificate;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << result.certificate;
      if (!f) {
        err << "error: cannot write " << out_path << "\n";
        return kExitInput;
      }
    }
    if (result.outcome == Outcome::Exhausted) {
      err << "exhausted after " << result.stages_done << " stages; partial certificate written\n";
      return kExitExhausted;
    }
    return kExitOk;
  }

  if (*verify) {
    auto text = read_file(cert_path);
    if (!text) {
      err << "error: cannot read " << cert_path << "\n";
      return kExitInput;
    }
    VerifyOptions vo;
    if (samples) {
      vo.mode = VerifyMode::Sampled;
      vo.samples = *samples;
      vo.seed = seed;
    }
    const VerifyReport report = verify_certificate(*text, vo);
    if (!report.well_formed) {
      err << "error: " << report.error << "\n";
      return kExitInput;
    }
    for (const ReportEntry& e : report.entries)
      out << (e.pass ? "PASS " : "FAIL ") << e.claim << (e.detail.empty() ? "" : ": " + e.detail) << "\n";
    out << report.entries.size() - report.failures() << "/" << report.entries.size() << " claims pass\n";
    return report.passed() ? kExitOk : kExitVerify;
  }

  try {
    const dsl::ExprPtr e = dsl::parse_set_expression(expr_text);
    out << measure(dsl::to_clopen(*e, 0)).to_string() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

} // namespace fusionlab
