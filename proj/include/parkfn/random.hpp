#pragma once

// Seeded randomness and the exact uniform sampler for PF(m, n).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "parkfn/errors.hpp"
#include "parkfn/parking_function.hpp"

namespace parkfn {

/// 64-bit Mersenne Twister (std::mt19937_64). Its state transition and output are fixed by the C++
/// standard, so a seed names the same stream on every platform. Bounded integers are drawn by
/// rejection, never by a library distribution, whose algorithms are implementation-defined.
class RandomSource {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound), bound >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InputError("below() needs a positive bound");
    const std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
    while (true) {
      const std::uint64_t r = next();
      if (r >= reject) return r % bound;
    }
  }

  /// Uniform on [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1)));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11U) * 0x1.0p-53; }

  /// Sub-seed for an independent stream: splitmix64 finalizer of seed + (stream + 1) * golden gamma.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Monte Carlo work is always cut into this many streams, whatever the thread count, so results do
/// not depend on how many workers run them.
inline constexpr unsigned kStreams = 16;

inline std::string seed_derivation_note() {
  return std::string("trials split into ") + std::to_string(kStreams) + " streams; stream i uses " +
         RandomSource::kAlgorithm + " seeded with splitmix64(seed + (i+1)*0x9E3779B97F4A7C15); partial results merged in stream order";
}

/// Runs body(rng, trialCount) -> Acc on every stream and folds the results in stream order with merge.
template <class Acc>
Acc run_streams(std::uint64_t seed, std::uint64_t trials, const std::function<Acc(RandomSource&, std::uint64_t)>& body,
                const std::function<void(Acc&, const Acc&)>& merge, unsigned threads = 0) {
  std::vector<Acc> partial(kStreams);
  auto work = [&](unsigned stream) {
    const std::uint64_t count = trials / kStreams + (stream < trials % kStreams ? 1 : 0);
    RandomSource rng(RandomSource::derive_seed(seed, stream));
    partial[stream] = body(rng, count);
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, kStreams);
  if (threads == 1) {
    for (unsigned s = 0; s < kStreams; ++s) work(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (unsigned s = t; s < kStreams; s += threads) work(s);
      });
    for (auto& th : pool) th.join();
  }
  Acc total = partial[0];
  for (unsigned s = 1; s < kStreams; ++s) merge(total, partial[s]);
  return total;
}

/// Exactly uniform element of PF(m, n): park a uniform word of [n+1]^m on the cycle Z/(n+1), pick
/// one of the n - m + 1 empty spots uniformly and rotate it to position n + 1.
inline ParkingFunction sample_pf(int m, int n, RandomSource& rng) {
  if (m < 0 || n < 0 || m > n) throw InputError("sample_pf needs 0 <= m <= n");
  const int size = n + 1;
  std::vector<int> word(static_cast<std::size_t>(m));
  for (auto& w : word) w = rng.uniform_int(1, size);

  // Circular parking with its own successor links (spot size wraps to 1).
  std::vector<int> link(static_cast<std::size_t>(size) + 1);
  for (int k = 1; k <= size; ++k) link[k] = k;
  auto free_from = [&](int k) {
    int root = k;
    while (link[root] != root) root = link[root];
    while (link[k] != root) {
      const int up = link[k];
      link[k] = root;
      k = up;
    }
    return root;
  };
  std::vector<char> taken(static_cast<std::size_t>(size) + 1, 0);
  for (int w : word) {
    const int spot = free_from(w);
    taken[spot] = 1;
    link[spot] = spot == size ? 1 : spot + 1;
  }
  std::vector<int> empty;
  for (int k = 1; k <= size; ++k)
    if (!taken[k]) empty.push_back(k);
  const int h = empty[rng.below(empty.size())];
  const int shift = size - h;
  for (auto& w : word) w = (w + shift - 1) % size + 1;
  return ParkingFunction(std::move(word), n);
}

}  // namespace parkfn
