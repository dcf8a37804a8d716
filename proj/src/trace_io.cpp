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

#include "cmpdse/trace_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmpdse::sim
{
namespace
{
[[noreturn]] void fail(std::size_t line_no, const std::string& what)
{
  throw std::invalid_argument("trace line " + std::to_string(line_no) + ": " + what);
}

bool blank_or_comment(const std::string& line)
{
  for (char ch : line) {
    if (ch == '#')
      return true;
    if (!std::isspace(static_cast<unsigned char>(ch)))
      return false;
  }
  return true;
}
} // namespace

Trace read_trace(std::istream& in)
{
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line))
      continue;

    if (!header_seen) {
      std::istringstream hs(line);
      std::string magic;
      int version = 0;
      long cores = 0;
      if (!(hs >> magic >> version >> cores) || magic != "CMPTRACE")
        fail(line_no, "expected header 'CMPTRACE 1 <cores>'");
      if (version != 1)
        fail(line_no, "unsupported trace version " + std::to_string(version));
      if (cores < 1)
        fail(line_no, "core count must be at least 1");
      trace.num_cores = static_cast<std::uint32_t>(cores);
      header_seen = true;
      continue;
    }

    const char* p = line.c_str();
    char* end = nullptr;
    unsigned long core = std::strtoul(p, &end, 10);
    if (end == p)
      fail(line_no, "expected '<core> <R|W> <hex-address>'");
    if (core >= trace.num_cores)
      fail(line_no, "core " + std::to_string(core) + " out of range");

    p = end;
    while (*p == ' ' || *p == '\t')
      ++p;
    Op op;
    if (*p == 'R')
      op = Op::Read;
    else if (*p == 'W')
      op = Op::Write;
    else
      fail(line_no, "operation must be R or W");
    ++p;

    std::uint64_t address = std::strtoull(p, &end, 16);
    if (end == p)
      fail(line_no, "expected hex address");
    while (*end == ' ' || *end == '\t' || *end == '\r')
      ++end;
    if (*end != '\0')
      fail(line_no, "trailing characters after address");

    trace.records.push_back({address, static_cast<std::uint32_t>(core), op});
  }

  if (!header_seen)
    fail(line_no + 1, "missing 'CMPTRACE 1 <cores>' header");
  return trace;
}

Trace read_trace_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open trace file: " + path);
  return read_trace(in);
}

void write_trace(const Trace& trace, std::ostream& out)
{
  out << "CMPTRACE 1 " << trace.num_cores << '\n';
  char buf[64];
  for (const TraceRecord& rec : trace.records) {
    int len = std::snprintf(buf, sizeof buf, "%u %c %llx\n", rec.core,
                            rec.op == Op::Write ? 'W' : 'R',
                            static_cast<unsigned long long>(rec.address));
    out.write(buf, len);
  }
}

void write_trace_file(const Trace& trace, const std::string& path)
{
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("cannot open output file: " + path);
  write_trace(trace, out);
  if (!out)
    throw std::runtime_error("failed writing trace file: " + path);
}

void write_stats_csv(const SimStats& stats, std::ostream& out)
{
  out << "cache_id,accesses,hits,misses,miss_rate\n";
  char buf[160];
  auto row = [&](const std::string& id, const CacheStats& c) {
    int len = std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%llu,%.17g\n", id.c_str(),
                            static_cast<unsigned long long>(c.accesses),
                            static_cast<unsigned long long>(c.hits),
                            static_cast<unsigned long long>(c.misses), c.miss_rate());
    out.write(buf, len);
  };
  for (std::size_t i = 0; i < stats.l1.size(); ++i)
    row("l1_" + std::to_string(i), stats.l1[i]);
  row("l1_total", stats.l1_total());
  row("l2", stats.l2);
}

} // namespace cmpdse::sim
