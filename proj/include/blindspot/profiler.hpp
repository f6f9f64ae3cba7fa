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

#ifndef BLINDSPOT__PROFILER_HPP_
#define BLINDSPOT__PROFILER_HPP_

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace blindspot
{

struct Quantiles
{
  double min{0.0};
  double p25{0.0};
  double median{0.0};
  double p75{0.0};
  double max{0.0};
  std::size_t count{0};
};

/// Linear-interpolated quantiles of `samples`; all zero for an empty input.
Quantiles quantiles(std::vector<double> samples);

/// Wall-clock spans per function name. Thread-safe; spans are attributed by
/// name, never by thread.
class Profiler
{
public:
  void record(const std::string & name, double milliseconds);
  std::map<std::string, std::vector<double>> samples() const;
  std::map<std::string, Quantiles> summary() const;
  void clear();

  void set_enabled(bool on) { enabled_ = on; }
  bool enabled() const { return enabled_; }

  /// Process-wide instance used by the library's scoped timers.
  static Profiler & global();

private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<double>> samples_;
  std::atomic<bool> enabled_{false};
};

/// Records the lifetime of the object under `name` in the global profiler.
class ScopedTimer
{
public:
  explicit ScopedTimer(const char * name);
  ~ScopedTimer();
  ScopedTimer(const ScopedTimer &) = delete;
  ScopedTimer & operator=(const ScopedTimer &) = delete;

private:
  const char * name_;
  bool active_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace blindspot

#endif  // BLINDSPOT__PROFILER_HPP_
