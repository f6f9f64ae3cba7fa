// Copyright 2026 The Blindspot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blindspot/profiler.hpp"

#include <algorithm>
#include <cmath>

namespace blindspot
{

Quantiles quantiles(std::vector<double> samples)
{
  Quantiles q;
  q.count = samples.size();
  if (samples.empty()) {
    return q;
  }
  std::sort(samples.begin(), samples.end());
  auto at = [&](double f) {
    const double pos = f * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
  };
  q.min = samples.front();
  q.p25 = at(0.25);
  q.median = at(0.5);
  q.p75 = at(0.75);
  q.max = samples.back();
  return q;
}

void Profiler::record(const std::string & name, double milliseconds)
{
  std::lock_guard lock(mutex_);
  samples_[name].push_back(milliseconds);
}

std::map<std::string, std::vector<double>> Profiler::samples() const
{
  std::lock_guard lock(mutex_);
  return samples_;
}

std::map<std::string, Quantiles> Profiler::summary() const
{
  std::map<std::string, Quantiles> out;
  for (auto & [name, s] : samples()) {
    out[name] = quantiles(s);
  }
  return out;
}

void Profiler::clear()
{
  std::lock_guard lock(mutex_);
  samples_.clear();
}

Profiler & Profiler::global()
{
  static Profiler instance;
  return instance;
}

ScopedTimer::ScopedTimer(const char * name)
: name_(name), active_(Profiler::global().enabled()), start_(std::chrono::steady_clock::now())
{
}

ScopedTimer::~ScopedTimer()
{
  if (active_) {
    const auto end = std::chrono::steady_clock::now();
    Profiler::global().record(
      name_, std::chrono::duration<double, std::milli>(end - start_).count());
  }
}

}  // namespace blindspot
