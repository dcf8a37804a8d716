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

#ifndef CMPDSE_CACHESIM_H
#define CMPDSE_CACHESIM_H

#include <cstdint>
#include <vector>

namespace cmpdse::sim
{
/*
 * Trace-driven simulation of n private L1 caches in front of one shared
 * L2. Inclusive fill, write-allocate, per-set LRU replacement, no
 * coherence traffic. A run is strictly sequential: record order defines
 * the LRU state.
 */

struct CacheGeometry {
  std::uint64_t capacity_bytes = 32768;
  std::uint32_t line_bytes = 64;
  std::uint32_t associativity = 8;

  // capacity divisible by line * ways; all three powers of two.
  void validate() const;
  std::uint64_t num_lines() const { return capacity_bytes / line_bytes; }
  std::uint64_t num_sets() const { return num_lines() / associativity; }
};

enum class Op : std::uint8_t { Read, Write };

struct TraceRecord {
  std::uint64_t address;
  std::uint32_t core;
  Op op;
};

struct Trace {
  std::uint32_t num_cores = 1;
  std::vector<TraceRecord> records;
};

struct CacheStats {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;

  double miss_rate() const
  {
    return accesses == 0 ? 0.0 : static_cast<double>(misses) / static_cast<double>(accesses);
  }
};

struct SimStats {
  std::vector<CacheStats> l1; // one per core
  CacheStats l2;

  CacheStats l1_total() const;
  double aggregate_l1_miss_rate() const { return l1_total().miss_rate(); }
};

// One set-associative LRU cache. Lookups allocate on miss.
class SetAssocCache
{
public:
  explicit SetAssocCache(const CacheGeometry& geom);

  // True on hit. A miss installs the line, evicting the set's LRU way.
  bool access(std::uint64_t address);

private:
  std::uint32_t ways_;
  std::uint64_t set_mask_;
  std::uint32_t line_shift_;
  // Per-set MRU-first arrays of (line_address << 1 | 1); 0 means empty.
  std::vector<std::uint64_t> slots_;
};

/*
 * Replays the trace against per-core L1s and the shared L2. L1 misses
 * (reads and writes alike) access the L2; on an L2 miss the line fills
 * both levels. n must match the trace header; a record with core >= n
 * is an error that names the record index.
 */
SimStats simulate(const Trace& trace, const CacheGeometry& l1_geom,
                  const CacheGeometry& l2_geom, std::uint32_t n);

} // namespace cmpdse::sim

#endif
