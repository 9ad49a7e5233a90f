#pragma once

#include <cstdint>
#include <vector>

namespace lowdeg {

// Counter-based generator. Output number c of stream (seed, stream) is
//   mix64(key + (c + 1) * 0x9E3779B97F4A7C15),
//   key = mix64(seed ^ mix64(stream + 0xD1B54A32D192ED03)),
// where mix64 is the SplitMix64 finalizer. Streams are therefore pure
// functions of (seed, stream, counter) and never share state. This format is
// part of the reproducibility contract: changing it changes every CSV.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();            // [0, 1), 53 random bits
  double uniform_open();       // (0, 1)
  double normal();             // Box-Muller, one uniform pair per draw
  bool bernoulli(double p);
  int categorical(const std::vector<double>& probs);  // index in [0, probs.size())

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace lowdeg
