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

#include "cmpdse/tracegen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmpdse::sim
{
namespace
{
constexpr std::uint64_t LINE_BYTES = 64;
constexpr std::uint64_t PRIVATE_STRIDE = 1ull << 40; // per-core private range
constexpr std::uint64_t SHARED_BASE = 1ull << 60;
} // namespace

ZipfSampler::ZipfSampler(std::uint64_t num_items, double exponent)
{
  if (num_items == 0)
    throw std::invalid_argument("zipf sampler needs at least one item");
  if (exponent < 0.0)
    throw std::invalid_argument("zipf exponent must be nonnegative");
  cumulative_.resize(num_items);
  double sum = 0.0;
  for (std::uint64_t k = 0; k < num_items; ++k) {
    sum += std::pow(static_cast<double>(k + 1), -exponent);
    cumulative_[k] = sum;
  }
  for (auto& c : cumulative_)
    c /= sum;
  cumulative_.back() = 1.0;
}

std::uint64_t ZipfSampler::sample(SplitMix64& rng) const
{
  double u = rng.next_unit();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end())
    --it;
  return static_cast<std::uint64_t>(it - cumulative_.begin()) + 1;
}

void SharingSpec::validate() const
{
  if (n == 0)
    throw std::invalid_argument("sharing.n must be at least 1");
  if (private_refs_per_core == 0)
    throw std::invalid_argument("sharing.private_refs_per_core must be positive");
  if (sharing_fraction < 0.0 || sharing_fraction > 1.0)
    throw std::invalid_argument("sharing.sharing_fraction must be in [0, 1]");
  if (private_working_set == 0)
    throw std::invalid_argument("sharing.private_working_set must be positive");
  if (shared_block_count == 0)
    throw std::invalid_argument("sharing.shared_block_count must be positive");
  if (epoch_length == 0)
    throw std::invalid_argument("sharing.epoch_length must be positive");
  if (zipf_s < 0.0)
    throw std::invalid_argument("sharing.zipf_s must be nonnegative");
  if (private_working_set * LINE_BYTES > PRIVATE_STRIDE)
    throw std::invalid_argument("sharing.private_working_set exceeds the per-core address range");
}

Trace generate_trace(const SharingSpec& spec)
{
  spec.validate();

  // Seed derivation order is part of the format: the private-stream
  // seed comes first so it is independent of n.
  SplitMix64 seeder(spec.seed);
  const std::uint64_t private_seed = seeder.next();

  std::vector<SplitMix64> mix_rng; // shared-or-private decision per core
  std::vector<SplitMix64> priv_rng; // identical private streams per core
  mix_rng.reserve(spec.n);
  priv_rng.reserve(spec.n);
  for (std::uint32_t c = 0; c < spec.n; ++c) {
    mix_rng.emplace_back(seeder.next());
    priv_rng.emplace_back(private_seed);
  }

  ZipfSampler zipf(spec.private_working_set, spec.zipf_s);
  std::vector<std::uint64_t> shared_reads(spec.n, 0); // per-core rotation cursor

  const bool sharing = spec.sharing_fraction > 0.0;
  const std::uint64_t rounds = spec.private_refs_per_core;
  const std::uint64_t epochs = sharing ? (rounds + spec.epoch_length - 1) / spec.epoch_length : 0;

  Trace trace;
  trace.num_cores = spec.n;
  trace.records.reserve(spec.n * rounds + epochs * spec.shared_block_count);

  auto shared_address = [&](std::uint64_t epoch, std::uint64_t block) {
    return SHARED_BASE + (epoch * spec.shared_block_count + block) * LINE_BYTES;
  };

  for (std::uint64_t r = 0; r < rounds; ++r) {
    const std::uint64_t epoch = r / spec.epoch_length;
    const std::uint32_t producer = static_cast<std::uint32_t>(epoch % spec.n);
    if (sharing && r % spec.epoch_length == 0) {
      for (std::uint64_t b = 0; b < spec.shared_block_count; ++b)
        trace.records.push_back({shared_address(epoch, b), producer, Op::Write});
    }
    for (std::uint32_t c = 0; c < spec.n; ++c) {
      // The producer of the current epoch consumes nothing it wrote;
      // its shared slots fall back to its private stream.
      if (mix_rng[c].next_unit() < spec.sharing_fraction && c != producer) {
        const std::uint64_t block = (c + shared_reads[c]) % spec.shared_block_count;
        ++shared_reads[c];
        trace.records.push_back({shared_address(epoch, block), c, Op::Read});
      } else {
        const std::uint64_t block = zipf.sample(priv_rng[c]) - 1;
        trace.records.push_back({c * PRIVATE_STRIDE + block * LINE_BYTES, c, Op::Read});
      }
    }
  }
  return trace;
}

std::vector<MissCurvePoint> miss_curve(const SharingSpec& spec,
                                       const std::vector<std::uint64_t>& l1_sizes,
                                       const CacheGeometry& l2_geom,
                                       std::uint32_t l1_line_bytes,
                                       std::uint32_t l1_associativity)
{
  if (l1_sizes.empty())
    throw std::invalid_argument("miss curve needs at least one size");
  if (!std::is_sorted(l1_sizes.begin(), l1_sizes.end())
      || std::adjacent_find(l1_sizes.begin(), l1_sizes.end()) != l1_sizes.end())
    throw std::invalid_argument("miss curve sizes must be strictly increasing");
  l2_geom.validate();

  Trace multicore = generate_trace(spec);

  SharingSpec reference = spec;
  reference.n = 1;
  reference.sharing_fraction = 0.0;
  Trace singlecore = generate_trace(reference);

  std::vector<MissCurvePoint> curve;
  curve.reserve(l1_sizes.size());
  for (std::uint64_t size : l1_sizes) {
    CacheGeometry l1{size, l1_line_bytes, l1_associativity};
    l1.validate();
    SimStats multi = simulate(multicore, l1, l2_geom, spec.n);
    SimStats single = simulate(singlecore, l1, l2_geom, 1);
    curve.push_back({size, multi.aggregate_l1_miss_rate(), single.aggregate_l1_miss_rate()});
  }
  return curve;
}

} // namespace cmpdse::sim
