#pragma once
// Reader/worker-pool scaffold shared by the dump passes. One reader
// thread feeds line batches into a bounded queue (bounded by bytes, so
// peak memory does not scale with dump size); workers parse and fold
// into worker-local state which the caller merges afterwards.

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "wikisub/dump_stream.hpp"

namespace wikisub {

namespace detail {

struct LineBatch {
  std::vector<std::string> lines;
  std::size_t bytes = 0;
};

class BoundedBatchQueue {
 public:
  explicit BoundedBatchQueue(std::size_t max_bytes) : max_bytes_(max_bytes) {}

  // Reader blocks here when the queue is full (backpressure contract).
  void push(LineBatch&& batch) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return bytes_ <= max_bytes_; });
    bytes_ += batch.bytes;
    queue_.push_back(std::move(batch));
    not_empty_.notify_one();
  }

  bool pop(LineBatch& out) {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !queue_.empty() || closed_; });
    if (queue_.empty()) return false;
    out = std::move(queue_.front());
    queue_.pop_front();
    bytes_ -= out.bytes;
    not_full_.notify_one();
    return true;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_empty_, not_full_;
  std::deque<LineBatch> queue_;
  std::size_t bytes_ = 0;
  std::size_t max_bytes_;
  bool closed_ = false;
};

}  // namespace detail

// Each worker folds lines into its own Local (built by `factory`), which
// must expose `void on_line(const std::string&)`. Locals are returned for
// the caller to merge; the merge must be commutative and associative or
// the result becomes worker-count dependent.
template <typename Factory,
          typename Local = std::invoke_result_t<Factory&>>
std::vector<Local> parallel_scan(LineReader& reader, unsigned workers,
                                 Factory factory,
                                 std::size_t queue_budget_bytes = 64ull << 20) {
  if (workers == 0) workers = 1;
  constexpr std::size_t kBatchLines = 256;

  detail::BoundedBatchQueue queue(std::max<std::size_t>(queue_budget_bytes, 1u << 20));
  std::vector<Local> locals;
  locals.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) locals.push_back(factory());
  std::exception_ptr error;
  std::mutex error_mu;

  auto record_error = [&] {
    std::lock_guard lock(error_mu);
    if (!error) error = std::current_exception();
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        detail::LineBatch batch;
        while (queue.pop(batch))
          for (const auto& line : batch.lines) locals[w].on_line(line);
      } catch (...) {
        record_error();
      }
    });
  }

  try {
    detail::LineBatch batch;
    std::string line;
    while (reader.next(line)) {
      batch.bytes += line.size();
      batch.lines.push_back(std::move(line));
      if (batch.lines.size() >= kBatchLines) {
        queue.push(std::move(batch));
        batch = {};
      }
    }
    if (!batch.lines.empty()) queue.push(std::move(batch));
  } catch (...) {
    record_error();
  }
  queue.close();
  for (auto& t : pool) t.join();

  if (error) std::rethrow_exception(error);
  return locals;
}

// Overload honoring the source's configured read window as queue budget.
template <typename Factory>
auto parallel_scan(const DumpSource& src, unsigned workers, Factory factory) {
  LineReader reader(src);
  return parallel_scan(reader, workers, std::move(factory),
                       src.read_window_bytes);
}

}  // namespace wikisub
