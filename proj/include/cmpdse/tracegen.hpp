/*
 *    Copyright 2026 The cmpdse Contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CMPDSE_TRACEGEN_H
#define CMPDSE_TRACEGEN_H

#include <cstdint>
#include <vector>

#include "cmpdse/cachesim.hpp"

namespace cmpdse::sim
{
/*
 * Synthetic multicore traces with a controllable degree of data
 * sharing.
 *
 * Every core issues private_refs_per_core references, interleaved
 * round-robin. Each reference is a shared read with probability
 * sharing_fraction, otherwise a private read drawn Zipf-distributed
 * from the core's own working set. Time is cut into epochs of
 * epoch_length references per core; at each epoch boundary a rotating
 * producer core writes every block of the shared set once, and the
 * other cores then read those blocks (the producer's own shared slots
 * fall back to its private stream). Shared addresses are remapped each
 * epoch, so a consumer's private cache meets them cold while the shared
 * cache already holds them from the producer's writes.
 *
 * Address layout (64-byte blocks): core c's private blocks start at
 * c * 2^40; shared blocks live above 2^60, offset by epoch *
 * shared_block_count blocks. Ranges cannot collide.
 *
 * All randomness comes from SplitMix64 streams derived from the seed,
 * so a spec generates exactly one trace, bit for bit. The private
 * Zipf streams of all cores use one common derived seed: with
 * sharing_fraction = 0 every core issues the same block sequence
 * inside its own range, which makes the n-core run directly comparable
 * to a single-core reference run.
 */

// SplitMix64: z = (s += 0x9e3779b97f4a7c15); z = (z ^ z>>30) * 0xbf58476d1ce4e5b9;
// z = (z ^ z>>27) * 0x94d049bb133111eb; return z ^ z>>31.
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next()
  {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Zipf(exponent) over ranks 1..num_items via inversion of the
// precomputed cumulative distribution. exponent 0 is uniform.
class ZipfSampler
{
public:
  ZipfSampler(std::uint64_t num_items, double exponent);

  std::uint64_t sample(SplitMix64& rng) const;

private:
  std::vector<double> cumulative_;
};

struct SharingSpec {
  std::uint32_t n = 8;
  std::uint64_t private_refs_per_core = 1000000;
  double sharing_fraction = 0.7;
  std::uint64_t private_working_set = 32768; // blocks per core
  std::uint64_t shared_block_count = 2048;
  std::uint64_t epoch_length = 2048; // references per core per epoch
  double zipf_s = 1.5;
  std::uint64_t seed = 1;

  void validate() const;
};

Trace generate_trace(const SharingSpec& spec);

struct MissCurvePoint {
  std::uint64_t l1_bytes;
  double mr_multicore;  // aggregate L1 miss rate of the n-core trace
  double mr_singlecore; // same private stream on a single core, no sharing
};

/*
 * Aggregate L1 miss rate against L1 capacity, next to the single-core
 * reference curve. Both traces are generated once and replayed at every
 * size, so points differ only in geometry.
 */
std::vector<MissCurvePoint> miss_curve(const SharingSpec& spec,
                                       const std::vector<std::uint64_t>& l1_sizes,
                                       const CacheGeometry& l2_geom,
                                       std::uint32_t l1_line_bytes = 64,
                                       std::uint32_t l1_associativity = 8);

} // namespace cmpdse::sim

#endif
