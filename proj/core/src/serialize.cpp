#include "aqecc/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace aqecc {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_values(std::string& out, const std::vector<uint64_t>& values) {
  for (uint64_t v : values) {
    out += ' ';
    out += std::to_string(v);
  }
}

std::string join_indices(const std::vector<size_t>& v, char sep) {
  if (v.empty()) return "none";
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

void write_share_block(std::string& out, const EtssShare& share) {
  out += "share_index " + std::to_string(share.shamir.index) + "\n";
  out += "share_values";
  append_values(out, share.shamir.values);
  out += "\n";
  for (const auto& [slot, key] : share.verify_keys)
    out += "verify_key " + std::to_string(slot) + " " + std::to_string(key.a) + " " +
           std::to_string(key.b) + "\n";
  for (const auto& [slot, tag] : share.own_tags)
    out += "own_tag " + std::to_string(slot) + " " + std::to_string(tag.value) + "\n";
}

// --- parsing ---------------------------------------------------------------

struct LineReader {
  std::vector<std::pair<size_t, std::vector<std::string>>> lines;  // (line no, tokens)
  size_t pos = 0;

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      std::istringstream ls(raw);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) lines.emplace_back(no, std::move(tokens));
    }
  }

  bool done() const { return pos == lines.size(); }
  size_t line_no() const { return done() ? (lines.empty() ? 1 : lines.back().first + 1) : lines[pos].first; }
  const std::vector<std::string>& peek() const {
    if (done()) throw ParseError(line_no(), "unexpected end of document");
    return lines[pos].second;
  }
  std::vector<std::string> next() {
    auto tokens = peek();
    ++pos;
    return tokens;
  }
  void expect_end() const {
    if (!done()) throw ParseError(line_no(), "unexpected trailing content");
  }
};

uint64_t to_u64(const std::string& tok, size_t line) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an unsigned integer, got '" + tok + "'");
  return v;
}

// A keyed line with an exact token count (key + n values).
std::vector<std::string> expect_line(LineReader& r, const std::string& key, size_t values) {
  size_t line = r.line_no();
  auto tokens = r.next();
  if (tokens[0] != key)
    throw ParseError(line, "expected '" + key + "', got '" + tokens[0] + "'");
  if (tokens.size() != values + 1)
    throw ParseError(line, "'" + key + "' needs " + std::to_string(values) + " value(s)");
  return tokens;
}

uint64_t expect_u64(LineReader& r, const std::string& key) {
  size_t line = r.line_no();
  return to_u64(expect_line(r, key, 1)[1], line);
}

std::vector<uint64_t> expect_values(LineReader& r, const std::string& key, size_t count,
                                    uint64_t modulus) {
  size_t line = r.line_no();
  auto tokens = r.next();
  if (tokens[0] != key)
    throw ParseError(line, "expected '" + key + "', got '" + tokens[0] + "'");
  if (tokens.size() != count + 1)
    throw ParseError(line, "'" + key + "' needs exactly " + std::to_string(count) + " values");
  std::vector<uint64_t> values;
  values.reserve(count);
  for (size_t i = 1; i < tokens.size(); ++i) {
    uint64_t v = to_u64(tokens[i], line);
    if (v >= modulus)
      throw ParseError(line, "'" + key + "' value " + tokens[i] + " outside the field");
    values.push_back(v);
  }
  return values;
}

void expect_header(LineReader& r, const std::string& kind) {
  size_t line = r.line_no();
  auto tokens = r.next();
  if (tokens.size() != 3 || tokens[0] != "aqecc-doc")
    throw ParseError(line, "expected header 'aqecc-doc v1 <kind>'");
  if (tokens[1] != "v1") throw ParseError(line, "unsupported version '" + tokens[1] + "'");
  if (tokens[2] != kind)
    throw ParseError(line, "expected a '" + kind + "' document, got '" + tokens[2] + "'");
}

EtssShare parse_share_block(LineReader& r, const AqeccParams& params) {
  EtssShare share;
  size_t line = r.line_no();
  share.shamir.index = expect_u64(r, "share_index");
  if (share.shamir.index < 1 || share.shamir.index > params.n)
    throw ParseError(line, "share_index outside 1..n");
  share.shamir.values =
      expect_values(r, "share_values", params.etss.secret_len, params.etss.p_share);
  for (size_t i = 0; i + 1 < params.n; ++i) {
    line = r.line_no();
    auto tokens = expect_line(r, "verify_key", 3);
    size_t slot = to_u64(tokens[1], line);
    if (slot < 1 || slot > params.n || slot == share.shamir.index)
      throw ParseError(line, "verify_key slot invalid");
    uint64_t a = to_u64(tokens[2], line), b = to_u64(tokens[3], line);
    if (a >= params.etss.p_mac || b >= params.etss.p_mac)
      throw ParseError(line, "verify_key outside the MAC field");
    if (!share.verify_keys.emplace(slot, MacKey{a, b}).second)
      throw ParseError(line, "duplicate verify_key slot");
  }
  for (size_t i = 0; i + 1 < params.n; ++i) {
    line = r.line_no();
    auto tokens = expect_line(r, "own_tag", 2);
    size_t slot = to_u64(tokens[1], line);
    if (slot < 1 || slot > params.n || slot == share.shamir.index)
      throw ParseError(line, "own_tag slot invalid");
    uint64_t v = to_u64(tokens[2], line);
    if (v >= params.etss.p_mac) throw ParseError(line, "own_tag outside the MAC field");
    if (!share.own_tags.emplace(slot, MacTag{v}).second)
      throw ParseError(line, "duplicate own_tag slot");
  }
  return share;
}

void write_params_block(std::string& out, const AqeccParams& params) {
  out += "n " + std::to_string(params.n) + "\n";
  out += "t " + std::to_string(params.t) + "\n";
  out += "p " + std::to_string(params.p) + "\n";
  out += "traps " + std::to_string(params.qauth.s) + "\n";
  out += "p_share " + std::to_string(params.etss.p_share) + "\n";
  out += "p_mac " + std::to_string(params.etss.p_mac) + "\n";
}

AqeccParams parse_params_block(LineReader& r) {
  size_t line = r.line_no();
  size_t n = expect_u64(r, "n");
  size_t t = expect_u64(r, "t");
  uint64_t p = expect_u64(r, "p");
  size_t traps = expect_u64(r, "traps");
  uint64_t p_share = expect_u64(r, "p_share");
  uint64_t p_mac = expect_u64(r, "p_mac");
  try {
    return make_aqecc_params(n, t, p, traps, p_share, p_mac);
  } catch (const std::exception& e) {
    throw ParseError(line, std::string("invalid parameters: ") + e.what());
  }
}

}  // namespace

std::string write_codeword(const AqeccCodeword& cw, bool include_truth) {
  const AqeccParams& params = cw.params;
  std::string out = "aqecc-doc v1 codeword\n";
  write_params_block(out, params);
  for (size_t i = 0; i < cw.registers.size(); ++i) {
    const AqeccRegister& reg = cw.registers[i];
    out += "register " + std::to_string(i) + "\n";
    out += "frame_x";
    append_values(out, reg.frame.error.x);
    out += "\nframe_z";
    append_values(out, reg.frame.error.z);
    out += "\n";
    write_share_block(out, reg.classical);
  }
  if (include_truth && has_truth(cw)) {
    out += "truth\n";
    for (size_t i = 0; i < cw.truth.keys.size(); ++i) {
      out += "key " + std::to_string(i);
      append_values(out, serialize_key(cw.truth.keys[i]));
      out += "\n";
    }
    for (size_t i = 0; i < cw.truth.honest_classical.size(); ++i) {
      out += "honest_register " + std::to_string(i) + "\n";
      write_share_block(out, cw.truth.honest_classical[i]);
    }
  }
  return out;
}

AqeccCodeword parse_codeword(const std::string& text) {
  LineReader r(text);
  expect_header(r, "codeword");
  AqeccCodeword cw;
  cw.params = parse_params_block(r);
  size_t w = cw.params.qauth.wires();
  for (size_t i = 0; i < cw.params.n; ++i) {
    size_t line = r.line_no();
    auto tokens = expect_line(r, "register", 1);
    if (to_u64(tokens[1], line) != i) throw ParseError(line, "registers must appear in order");
    AqeccRegister reg;
    reg.frame.error = PauliVector::identity(w, cw.params.p);
    reg.frame.error.x = expect_values(r, "frame_x", w, cw.params.p);
    reg.frame.error.z = expect_values(r, "frame_z", w, cw.params.p);
    reg.classical = parse_share_block(r, cw.params);
    cw.registers.push_back(std::move(reg));
  }
  if (!r.done() && r.peek()[0] == "truth") {
    r.next();
    for (size_t i = 0; i < cw.params.n; ++i) {
      size_t line = r.line_no();
      auto tokens = r.next();
      if (tokens[0] != "key" || tokens.size() < 2 || to_u64(tokens[1], line) != i)
        throw ParseError(line, "expected 'key " + std::to_string(i) + " ...'");
      std::vector<uint64_t> symbols;
      for (size_t j = 2; j < tokens.size(); ++j) symbols.push_back(to_u64(tokens[j], line));
      try {
        cw.truth.keys.push_back(deserialize_key(cw.params.qauth, symbols));
      } catch (const std::exception& e) {
        throw ParseError(line, std::string("invalid key: ") + e.what());
      }
    }
    for (size_t i = 0; i < cw.params.n; ++i) {
      size_t line = r.line_no();
      auto tokens = expect_line(r, "honest_register", 1);
      if (to_u64(tokens[1], line) != i)
        throw ParseError(line, "honest registers must appear in order");
      cw.truth.honest_classical.push_back(parse_share_block(r, cw.params));
    }
  }
  r.expect_end();
  return cw;
}

AqeccParams CliConfig::params() const { return make_aqecc_params(n, t, p, traps, p_share, p_mac); }

std::string write_config(const CliConfig& config) {
  std::string out = "aqecc-doc v1 config\n";
  out += "n " + std::to_string(config.n) + "\n";
  out += "t " + std::to_string(config.t) + "\n";
  out += "p " + std::to_string(config.p) + "\n";
  out += "traps " + std::to_string(config.traps) + "\n";
  out += "p_share " + std::to_string(config.p_share) + "\n";
  out += "p_mac " + std::to_string(config.p_mac) + "\n";
  out += "strategy " + config.strategy + "\n";
  out += "registers ";
  out += config.registers_all_subsets ? "subsets" : join_indices(config.registers, ' ');
  out += "\n";
  out += "pipeline " + config.pipeline + "\n";
  out += "mode " + config.mode + "\n";
  out += "trials " + std::to_string(config.trials) + "\n";
  out += "seed " + std::to_string(config.seed) + "\n";
  out += "out " + config.out + "\n";
  return out;
}

CliConfig parse_config(const std::string& text) {
  LineReader r(text);
  expect_header(r, "config");
  CliConfig c;
  c.n = expect_u64(r, "n");
  c.t = expect_u64(r, "t");
  c.p = expect_u64(r, "p");
  c.traps = expect_u64(r, "traps");
  c.p_share = expect_u64(r, "p_share");
  c.p_mac = expect_u64(r, "p_mac");
  c.strategy = expect_line(r, "strategy", 1)[1];
  {
    size_t line = r.line_no();
    auto tokens = r.next();
    if (tokens[0] != "registers") throw ParseError(line, "expected 'registers'");
    c.registers.clear();
    c.registers_all_subsets = false;
    if (tokens.size() == 2 && tokens[1] == "none") {
    } else if (tokens.size() == 2 && tokens[1] == "subsets") {
      c.registers_all_subsets = true;
    } else {
      for (size_t i = 1; i < tokens.size(); ++i)
        c.registers.push_back(to_u64(tokens[i], line));
    }
  }
  c.pipeline = expect_line(r, "pipeline", 1)[1];
  c.mode = expect_line(r, "mode", 1)[1];
  c.trials = expect_u64(r, "trials");
  c.seed = expect_u64(r, "seed");
  c.out = expect_line(r, "out", 1)[1];
  r.expect_end();
  if (c.mode != "trials" && c.mode != "exhaustive")
    throw ParseError(1, "mode must be 'trials' or 'exhaustive'");
  if (c.pipeline != "default") pipeline_from_name(c.pipeline);  // validates
  return c;
}

std::string write_outcome(const DecodeOutcome& out, const AqeccParams& params,
                          const std::string& key_match) {
  std::string doc = "aqecc-doc v1 outcome\n";
  write_params_block(doc, params);
  doc += "tag ";
  doc += out.tag == OutcomeTag::recovered ? "recovered" : "aborted";
  doc += "\nresidual_x";
  append_values(doc, out.residual.x);
  doc += "\nresidual_z";
  append_values(doc, out.residual.z);
  doc += "\n";
  const DecodeTrace& tr = out.trace;
  doc += "invalid_shares " + join_indices(tr.invalid_shares, ' ') + "\n";
  doc += "share_underflow " + std::to_string(tr.share_underflow ? 1 : 0) + "\n";
  doc += "share_inconsistent " + std::to_string(tr.share_inconsistent ? 1 : 0) + "\n";
  doc += "key_decode_failed " + std::to_string(tr.key_decode_failed ? 1 : 0) + "\n";
  doc += "keys_decoded " + std::to_string(tr.keys_decoded ? 1 : 0) + "\n";
  doc += "key_match " + key_match + "\n";
  doc += "rejected_registers " + join_indices(tr.rejected_registers, ' ') + "\n";
  doc += "too_many_rejected " + std::to_string(tr.too_many_rejected ? 1 : 0) + "\n";
  doc += "restricted_inconsistent " + std::to_string(tr.restricted_inconsistent ? 1 : 0) + "\n";
  doc += "erasure_inconsistent " + std::to_string(tr.erasure_inconsistent ? 1 : 0) + "\n";
  return doc;
}

std::string write_report(const ExperimentReport& report) {
  std::string doc = "aqecc-doc v1 report\n";
  write_params_block(doc, report.params);
  doc += "seed " + std::to_string(report.seed) + "\n";
  doc += "eps_mode ";
  doc += report.eps.exact ? "exact" : "sampled";
  doc += "\neps " + fmt_double(report.eps.epsilon) + "\n";
  if (report.eps.exact)
    doc += "eps_fraction " + std::to_string(report.eps.numerator) + " " +
           std::to_string(report.eps.denominator) + "\n";
  doc += "eps_keys " + std::to_string(report.eps.keys_count) + "\n";
  doc += "bound " + fmt_double(report.bound) + "\n";
  doc += "trials " + std::to_string(report.trials) + "\n";
  doc += "failures " + std::to_string(report.failures) + "\n";
  doc += "failure_rate " + fmt_double(report.failure_rate) + "\n";
  doc += "upper_confidence " + fmt_double(report.upper_confidence) + "\n";
  doc += "verdict ";
  doc += report.pass ? "pass" : "fail";
  doc += "\n";
  const SizeReport& s = report.sizes;
  doc += "size_qudits " + std::to_string(s.qudits_per_register) + "\n";
  doc += "size_share_symbols " + std::to_string(s.share_symbols) + "\n";
  doc += "size_key_symbols " + std::to_string(s.key_symbols) + "\n";
  doc += "size_tag_symbols " + std::to_string(s.tag_symbols) + "\n";
  doc += "size_classical_bits " + fmt_double(s.classical_bits_per_register) + "\n";
  doc += "size_formula " + s.formula + "\n";
  for (const StrategyRun& run : report.runs) {
    doc += "run " + run.strategy + " pipeline=" + pipeline_name(run.pipeline) +
           " b=" + join_indices(run.b, ',');
    if (run.exhaustive) {
      doc += " kind=exact num=" + std::to_string(run.exact.num) +
             " den=" + std::to_string(run.exact.den);
    } else {
      doc += " kind=trials trials=" + std::to_string(run.trials) +
             " failures=" + std::to_string(run.failures);
    }
    doc += " rate=" + fmt_double(run.failure_rate) + " upper=" + fmt_double(run.upper_bound) +
           " verdict=";
    doc += run.pass ? "pass" : "fail";
    doc += "\n";
  }
  return doc;
}

}  // namespace aqecc
