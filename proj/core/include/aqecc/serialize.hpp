#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqecc/experiment.hpp"
#include "aqecc/scheme.hpp"

namespace aqecc {

// One self-describing line-oriented text format for every document the tools
// read or write: first line "aqecc-doc v1 <kind>", then "key value..." lines
// in a fixed canonical order, all field elements as decimal integers (the
// moduli appear once, in the header block). Canonical order makes
// write(parse(text)) byte-identical to write's own output.
struct ParseError : std::runtime_error {
  size_t line;
  ParseError(size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Codeword documents carry the parameters, every register's quantum frame
// and classical payload, and (unless exported as the adversary's view) a
// clearly separated ground-truth section holding the drawn keys and the
// pre-attack shares. A parsed document without that section has empty
// truth.keys.
std::string write_codeword(const AqeccCodeword& cw, bool include_truth);
AqeccCodeword parse_codeword(const std::string& text);
inline bool has_truth(const AqeccCodeword& cw) { return !cw.truth.keys.empty(); }

// Experiment/driver configuration; one file drives one experiment.
struct CliConfig {
  size_t n = 3;
  size_t t = 1;
  uint64_t p = 5;
  size_t traps = 1;
  uint64_t p_share = 0;  // 0 = derive the default
  uint64_t p_mac = 0;    // 0 = derive the default
  std::string strategy = "none";  // library name, or "all" for the whole library
  std::vector<size_t> registers;  // corruption set
  bool registers_all_subsets = false;  // every subset of size <= t instead
  std::string pipeline = "default";    // default | aqecc | warmup3 | bare
  std::string mode = "trials";         // trials | exhaustive
  uint64_t trials = 1000;
  uint64_t seed = 1;
  std::string out = "-";  // output path; "-" = stdout

  AqeccParams params() const;  // assembles and validates
};

std::string write_config(const CliConfig& config);
CliConfig parse_config(const std::string& text);

// Decode outcome with the step-by-step trace; key_match is "yes"/"no" when
// the input file carried ground truth, "unknown" otherwise.
std::string write_outcome(const DecodeOutcome& out, const AqeccParams& params,
                          const std::string& key_match);

std::string write_report(const ExperimentReport& report);

}  // namespace aqecc
