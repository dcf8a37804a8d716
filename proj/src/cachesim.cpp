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

#include "cmpdse/cachesim.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace cmpdse::sim
{
void CacheGeometry::validate() const
{
  if (capacity_bytes == 0 || line_bytes == 0 || associativity == 0)
    throw std::invalid_argument("cache geometry fields must be positive");
  if (!std::has_single_bit(capacity_bytes) || !std::has_single_bit(static_cast<std::uint64_t>(line_bytes))
      || !std::has_single_bit(static_cast<std::uint64_t>(associativity)))
    throw std::invalid_argument("cache geometry fields must be powers of two");
  if (capacity_bytes % (static_cast<std::uint64_t>(line_bytes) * associativity) != 0)
    throw std::invalid_argument("cache capacity must be divisible by line size times associativity");
}

CacheStats SimStats::l1_total() const
{
  CacheStats total;
  for (const auto& c : l1) {
    total.accesses += c.accesses;
    total.hits += c.hits;
    total.misses += c.misses;
  }
  return total;
}

SetAssocCache::SetAssocCache(const CacheGeometry& geom)
{
  geom.validate();
  ways_ = geom.associativity;
  set_mask_ = geom.num_sets() - 1;
  line_shift_ = static_cast<std::uint32_t>(std::countr_zero(static_cast<std::uint64_t>(geom.line_bytes)));
  slots_.assign(geom.num_lines(), 0);
}

bool SetAssocCache::access(std::uint64_t address)
{
  const std::uint64_t line = address >> line_shift_;
  const std::uint64_t tag = (line << 1) | 1u;
  std::uint64_t* set = slots_.data() + (line & set_mask_) * ways_;

  std::uint32_t i = 0;
  while (i < ways_ && set[i] != tag && set[i] != 0)
    ++i;
  const bool hit = i < ways_ && set[i] == tag;
  if (i == ways_)
    --i; // set full: way holding the LRU line gets evicted

  // Move to front; ways stay MRU-first.
  for (; i > 0; --i)
    set[i] = set[i - 1];
  set[0] = tag;
  return hit;
}

SimStats simulate(const Trace& trace, const CacheGeometry& l1_geom,
                  const CacheGeometry& l2_geom, std::uint32_t n)
{
  l1_geom.validate();
  l2_geom.validate();
  if (n == 0)
    throw std::invalid_argument("simulate needs at least one core");
  if (trace.num_cores != n)
    throw std::invalid_argument("trace header declares " + std::to_string(trace.num_cores)
                                + " cores, simulation expects " + std::to_string(n));

  std::vector<SetAssocCache> l1;
  l1.reserve(n);
  for (std::uint32_t c = 0; c < n; ++c)
    l1.emplace_back(l1_geom);
  SetAssocCache l2(l2_geom);

  SimStats stats;
  stats.l1.resize(n);

  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const TraceRecord& rec = trace.records[i];
    if (rec.core >= n)
      throw std::invalid_argument("record " + std::to_string(i) + ": core "
                                  + std::to_string(rec.core) + " out of range");
    CacheStats& cs = stats.l1[rec.core];
    ++cs.accesses;
    if (l1[rec.core].access(rec.address)) {
      ++cs.hits;
      continue;
    }
    ++cs.misses;
    ++stats.l2.accesses;
    if (l2.access(rec.address))
      ++stats.l2.hits;
    else
      ++stats.l2.misses;
  }
  return stats;
}

} // namespace cmpdse::sim
