#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <type_traits>
#include <vector>

#include "focklab/bounds.hpp"
#include "focklab/fock_space.hpp"
#include "focklab/regions.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

/// Generator for job `index` of a run seeded with `seed`; independent of scheduling.
std::mt19937_64 job_rng(std::uint64_t seed, std::uint64_t index);

/// Unit FockFunction with i.i.d. standard complex normal coefficients for n <= degree,
/// zero-padded to `truncation`.
FockFunction random_unit_function(std::mt19937_64& rng, std::size_t degree = 20,
                                  std::size_t truncation = 21);

/// Disc (centre |c| <= 2, radius in [0.1, 1.2]) or annular sector inside |z| <= 2.5, with equal odds.
Region random_region(std::mt19937_64& rng);

/// Up to `max_pieces` cells of a random annular lattice, sampled without replacement,
/// each with epsilon uniform in [0, 1].
WeightedPartition random_partition(std::mt19937_64& rng, std::size_t max_pieces = 5);

/// One to `max_pieces` discs and sectors with coefficients uniform in [-1, 1];
/// candidates overlapping an accepted piece are redrawn.
SimpleSymbol random_simple_symbol(std::mt19937_64& rng, std::size_t max_pieces = 5);

/// Evaluates fn(i) for i < count on up to `threads` workers (0 = hardware concurrency)
/// and returns the results in index order. The first exception thrown by any job is
/// rethrown after all workers finish.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn, std::size_t threads = 0) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<Result> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace focklab
