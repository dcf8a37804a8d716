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

#ifndef CMPDSE_TRACE_IO_H
#define CMPDSE_TRACE_IO_H

#include <iosfwd>
#include <string>

#include "cmpdse/cachesim.hpp"

namespace cmpdse::sim
{
/*
 * Line-oriented text trace format:
 *
 *   CMPTRACE 1 <num-cores>
 *   <core> <R|W> <hex-address>
 *   ...
 *
 * Blank lines and lines starting with '#' are ignored. Parse errors
 * name the offending line.
 */

Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

void write_trace(const Trace& trace, std::ostream& out);
void write_trace_file(const Trace& trace, const std::string& path);

// CSV rows l1_0..l1_{n-1}, l1_total, l2 with columns
// cache_id,accesses,hits,misses,miss_rate.
void write_stats_csv(const SimStats& stats, std::ostream& out);

} // namespace cmpdse::sim

#endif
