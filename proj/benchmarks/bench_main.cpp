#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "aqecc/css_code.hpp"
#include "aqecc/experiment.hpp"
#include "aqecc/mac.hpp"
#include "aqecc/pauli.hpp"
#include "aqecc/qauth.hpp"
#include "aqecc/scheme.hpp"
#include "aqecc/secret_sharing.hpp"
#include "aqecc/strategies.hpp"

using namespace aqecc;

static void BM_EncodeSmall(benchmark::State& state) {
  AqeccParams params = make_aqecc_params(3, 1, 5, 1);
  Rng rng(1);
  for (auto _ : state) {
    AqeccCodeword cw = encode(params, rng);
    benchmark::DoNotOptimize(cw);
  }
}
BENCHMARK(BM_EncodeSmall);

static void BM_EncodeLarge(benchmark::State& state) {
  AqeccParams params = make_aqecc_params(5, 2, 7, 2);
  Rng rng(1);
  for (auto _ : state) {
    AqeccCodeword cw = encode(params, rng);
    benchmark::DoNotOptimize(cw);
  }
}
BENCHMARK(BM_EncodeLarge);

static void BM_DecodeSmall(benchmark::State& state) {
  AqeccParams params = make_aqecc_params(3, 1, 5, 1);
  Rng rng(2);
  AqeccCodeword cw = encode(params, rng);
  for (auto _ : state) {
    DecodeOutcome out = decode(cw);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_DecodeSmall);

static void BM_DecodeLarge(benchmark::State& state) {
  AqeccParams params = make_aqecc_params(5, 2, 7, 2);
  Rng rng(2);
  AqeccCodeword cw = encode(params, rng);
  for (auto _ : state) {
    DecodeOutcome out = decode(cw);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_DecodeLarge);

// One full adversarial trial: encode, scripted attack, decode.
static void BM_AttackedRoundTrip(benchmark::State& state) {
  AqeccParams params = make_aqecc_params(5, 2, 7, 2);
  const Strategy& strategy = find_strategy("quantum-substitution");
  StrategyRun run;
  uint64_t seed = 0;
  for (auto _ : state) {
    run = sample_failures(params, strategy, {0, 1}, 1, seed++);
    benchmark::DoNotOptimize(run);
  }
}
BENCHMARK(BM_AttackedRoundTrip);

static void BM_QauthTransmit(benchmark::State& state) {
  QAuthParams params{1, static_cast<size_t>(state.range(0)), 7};
  Rng rng(3);
  QAuthKey key = qauth_keygen(params, rng);
  AuthFrame attack{PauliVector::identity(params.wires(), params.p)};
  for (auto _ : state) {
    TransmitResult res = qauth_transmit(key, attack);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_QauthTransmit)->Arg(1)->Arg(2);

static void BM_RandomSymplectic(benchmark::State& state) {
  Rng rng(4);
  size_t wires = static_cast<size_t>(state.range(0));
  for (auto _ : state) {
    SymplecticMatrix m = random_symplectic(wires, 7, rng);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_RandomSymplectic)->Arg(2)->Arg(3);

static void BM_EtssShare(benchmark::State& state) {
  EtssParams params = make_aqecc_params(5, 2, 7, 1).etss;
  std::vector<uint64_t> secret(params.secret_len);
  for (size_t i = 0; i < secret.size(); ++i) secret[i] = i % params.p_share;
  Rng rng(5);
  for (auto _ : state) {
    std::vector<EtssShare> shares = etss_share(secret, params, rng);
    benchmark::DoNotOptimize(shares);
  }
}
BENCHMARK(BM_EtssShare);

static void BM_EtssReconstruct(benchmark::State& state) {
  EtssParams params = make_aqecc_params(5, 2, 7, 1).etss;
  std::vector<uint64_t> secret(params.secret_len);
  for (size_t i = 0; i < secret.size(); ++i) secret[i] = i % params.p_share;
  Rng rng(6);
  std::vector<EtssShare> shares = etss_share(secret, params, rng);
  for (auto _ : state) {
    EtssResult res = etss_reconstruct(shares, params);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_EtssReconstruct);

static void BM_ErasureDecode(benchmark::State& state) {
  CssCode code = build_polynomial_code(5, 2, 7);
  PauliVector e = PauliVector::identity(5, 7);
  e.x[1] = 3;
  e.z[3] = 5;
  FrameState frame{e};
  std::vector<size_t> erased = {1, 3};
  for (auto _ : state) {
    auto res = erasure_decode(code, frame, erased);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_ErasureDecode);

static void BM_MacTag(benchmark::State& state) {
  EtssParams params = make_aqecc_params(5, 2, 7, 1).etss;
  MacKey key{3, 4};
  std::vector<uint64_t> message(params.mac_message_len() - 1);
  for (size_t i = 0; i < message.size(); ++i) message[i] = (7 * i + 1) % params.p_mac;
  for (auto _ : state) {
    MacTag tag = mac_tag(key, message, params.p_mac);
    benchmark::DoNotOptimize(tag);
  }
}
BENCHMARK(BM_MacTag);

BENCHMARK_MAIN();
