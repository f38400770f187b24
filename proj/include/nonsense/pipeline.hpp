#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "nonsense/dataset_io.hpp"
#include "nonsense/task_instance.hpp"

namespace nonsense {

struct GenerationSummary {
  std::uint64_t records = 0;
  double seconds = 0.0;

  double per_second() const { return seconds > 0.0 ? static_cast<double>(records) / seconds : 0.0; }
};

inline unsigned default_thread_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Generates make(i) for i in [0, count) across worker threads and writes
// the serialized lines in index order. Output bytes do not depend on the
// thread count.
template <typename Make>
GenerationSummary generate_lines(std::ostream& out, std::uint64_t count, unsigned threads, Make&& make,
                                 std::uint64_t block = 4096) {
  const auto t0 = std::chrono::steady_clock::now();
  threads = std::max(1u, threads);
  std::vector<std::string> lines;
  for (std::uint64_t base = 0; base < count; base += block) {
    const std::uint64_t n = std::min(block, count - base);
    lines.assign(n, {});
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < n;) {
        try {
          lines[i] = serialize_record(to_record(make(base + i)));
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    };
    if (threads == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      const unsigned used = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
      for (unsigned t = 0; t < used; ++t) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    for (const auto& line : lines) out << line << '\n';
  }
  out.flush();
  GenerationSummary summary;
  summary.records = count;
  summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return summary;
}

}  // namespace nonsense
