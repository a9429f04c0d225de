#include "aqecc/serialize.hpp"

#include <string>

#include "doctest.h"

using namespace aqecc;

namespace {

AqeccCodeword sample_codeword() {
  AqeccParams params = make_aqecc_params(3, 1, 5, 1, 5, 5);
  Rng rng(123);
  return encode(params, rng);
}

}  // namespace

TEST_CASE("codeword documents round trip byte for byte") {
  AqeccCodeword cw = sample_codeword();

  SUBCASE("with the ground-truth section") {
    std::string text = write_codeword(cw, true);
    AqeccCodeword back = parse_codeword(text);
    CHECK(has_truth(back));
    CHECK(write_codeword(back, true) == text);
    REQUIRE(back.registers.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
      CHECK(back.registers[i].frame.error == cw.registers[i].frame.error);
      CHECK(back.registers[i].classical == cw.registers[i].classical);
      CHECK(serialize_key(back.truth.keys[i]) == serialize_key(cw.truth.keys[i]));
      CHECK(back.truth.honest_classical[i] == cw.truth.honest_classical[i]);
    }
  }
  SUBCASE("the adversary-view export omits the truth") {
    std::string text = write_codeword(cw, false);
    CHECK(text.find("truth") == std::string::npos);
    CHECK(text.find("\nkey ") == std::string::npos);
    CHECK(text.find("honest_register") == std::string::npos);
    AqeccCodeword back = parse_codeword(text);
    CHECK(!has_truth(back));
    CHECK(write_codeword(back, false) == text);
    CHECK(back.registers[1].classical == cw.registers[1].classical);
  }
}

TEST_CASE("parse failures carry the offending line number") {
  AqeccCodeword cw = sample_codeword();
  std::string text = write_codeword(cw, true);

  SUBCASE("wrong header") {
    std::string bad = "aqecc-doc v2 codeword\n" + text.substr(text.find('\n') + 1);
    try {
      parse_codeword(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 1);
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
  }
  SUBCASE("a config document is not a codeword") {
    CHECK_THROWS_AS(parse_codeword(write_config(CliConfig{})), ParseError);
  }
  SUBCASE("non-numeric token") {
    size_t pos = text.find("frame_x ");
    std::string bad = text.substr(0, pos + 8) + "zap" + text.substr(pos + 9);
    CHECK_THROWS_AS(parse_codeword(bad), ParseError);
  }
  SUBCASE("field element out of range") {
    size_t pos = text.find("frame_x ");
    std::string bad = text.substr(0, pos + 8) + "9" + text.substr(pos + 9);
    CHECK_THROWS_AS(parse_codeword(bad), ParseError);
  }
  SUBCASE("truncated document") {
    std::string bad = text.substr(0, text.size() / 2);
    bad = bad.substr(0, bad.rfind('\n') + 1);
    CHECK_THROWS_AS(parse_codeword(bad), ParseError);
  }
  SUBCASE("trailing garbage") {
    CHECK_THROWS_AS(parse_codeword(text + "leftover 1\n"), ParseError);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse_codeword(""), ParseError);
  }
}

TEST_CASE("config documents round trip and reject junk") {
  CliConfig config;
  config.n = 5;
  config.t = 2;
  config.p = 7;
  config.traps = 2;
  config.strategy = "erasure";
  config.registers = {0, 3};
  config.mode = "exhaustive";
  config.trials = 12345;
  config.seed = 99;
  config.out = "report.txt";

  std::string text = write_config(config);
  CliConfig back = parse_config(text);
  CHECK(back.n == 5);
  CHECK(back.t == 2);
  CHECK(back.p == 7);
  CHECK(back.traps == 2);
  CHECK(back.strategy == "erasure");
  CHECK(back.registers == std::vector<size_t>{0, 3});
  CHECK(!back.registers_all_subsets);
  CHECK(back.pipeline == "default");
  CHECK(back.mode == "exhaustive");
  CHECK(back.trials == 12345);
  CHECK(back.seed == 99);
  CHECK(back.out == "report.txt");
  CHECK(write_config(back) == text);

  CliConfig subsets;
  subsets.registers_all_subsets = true;
  CliConfig subsets_back = parse_config(write_config(subsets));
  CHECK(subsets_back.registers_all_subsets);
  CHECK(subsets_back.registers.empty());

  CHECK_THROWS_AS(parse_config("aqecc-doc v1 config\nbogus 3\n"), ParseError);
  CHECK_THROWS_AS(parse_config(write_config(config) + "n 3\n"), ParseError);
  std::string bad_mode = write_config(CliConfig{});
  size_t pos = bad_mode.find("mode trials");
  bad_mode.replace(pos, 11, "mode always");
  CHECK_THROWS_AS(parse_config(bad_mode), ParseError);
}

TEST_CASE("config parameter assembly applies the field defaults") {
  CliConfig config;  // n=3 t=1 p=5 traps=1, MAC field derived
  AqeccParams params = config.params();
  CHECK(params.n == 3);
  CHECK(params.etss.p_share >= 5);
  CHECK(params.etss.p_mac >= 50 * 60);  // forgery bound L/p_mac <= 1/50
  config.p_share = 5;
  config.p_mac = 5;
  AqeccParams pinned = config.params();
  CHECK(pinned.etss.p_mac == 5);
}

TEST_CASE("outcome documents show the verdict, the trace, and the key match") {
  AqeccCodeword cw = sample_codeword();
  DecodeOutcome out = decode(cw);
  std::string text = write_outcome(out, cw.params, "yes");
  CHECK(text.find("aqecc-doc v1 outcome") == 0);
  CHECK(text.find("tag recovered") != std::string::npos);
  CHECK(text.find("residual_x 0") != std::string::npos);
  CHECK(text.find("key_match yes") != std::string::npos);
  CHECK(text.find("invalid_shares none") != std::string::npos);

  DecodeOutcome aborted;
  aborted.tag = OutcomeTag::aborted;
  aborted.residual = PauliVector::identity(cw.params.k(), cw.params.p);
  aborted.trace.invalid_shares = {0, 2};
  aborted.trace.share_underflow = true;
  std::string abort_text = write_outcome(aborted, cw.params, "unknown");
  CHECK(abort_text.find("tag aborted") != std::string::npos);
  CHECK(abort_text.find("invalid_shares 0 2") != std::string::npos);
  CHECK(abort_text.find("share_underflow 1") != std::string::npos);
  CHECK(abort_text.find("key_match unknown") != std::string::npos);
}

TEST_CASE("report documents carry every run with its evidence") {
  AqeccParams params = make_aqecc_params(3, 1, 3, 1, 5, 5);
  std::vector<SuiteEntry> entries;
  entries.push_back({"none", {}, std::nullopt, false});
  entries.push_back({"classical-forgery", {0}, std::nullopt, true});
  ExperimentReport report = run_suite(params, entries, 100, 7);
  std::string text = write_report(report);
  CHECK(text.find("aqecc-doc v1 report") == 0);
  CHECK(text.find("eps_mode exact") != std::string::npos);
  CHECK(text.find("eps_fraction 15552 51840") != std::string::npos);
  CHECK(text.find("verdict pass") != std::string::npos);
  CHECK(text.find("run none") != std::string::npos);
  CHECK(text.find("kind=exact") != std::string::npos);
  CHECK(text.find("num=16 den=25") != std::string::npos);
  CHECK(text.find("size_formula") != std::string::npos);
}
