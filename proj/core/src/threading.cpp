#include "ncgf/threading.hpp"

#include <atomic>
#include <thread>

namespace ncgf {

namespace {
std::atomic<int> g_threads{1};
thread_local bool t_in_worker = false;  // nested parallel regions run serial
}

void set_num_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

int num_threads() { return g_threads.load(); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
  const int nt = num_threads();
  if (t_in_worker || nt <= 1 || n < 2 * nt) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  std::atomic<std::int64_t> next{0};
  const std::int64_t chunk = std::max<std::int64_t>(1, n / (8 * nt));
  for (int t = 0; t < nt; ++t) {
    workers.emplace_back([&] {
      t_in_worker = true;
      for (;;) {
        const std::int64_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const std::int64_t end = std::min(n, begin + chunk);
        for (std::int64_t i = begin; i < end; ++i) body(i);
      }
    });
  }
  for (auto& w : workers) w.join();
}

std::complex<double> parallel_sum(
    std::int64_t n, const std::function<std::complex<double>(std::int64_t)>& term) {
  const int nt = num_threads();
  if (t_in_worker || nt <= 1 || n < 4 * nt) {
    std::complex<double> acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  // Fixed chunk decomposition, partials combined in chunk order.
  const std::int64_t chunk = (n + 8 * nt - 1) / (8 * nt);
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<std::complex<double>> partial(nchunks, 0.0);
  parallel_for(nchunks, [&](std::int64_t c) {
    std::complex<double> acc = 0.0;
    const std::int64_t end = std::min(n, (c + 1) * chunk);
    for (std::int64_t i = c * chunk; i < end; ++i) acc += term(i);
    partial[c] = acc;
  });
  std::complex<double> total = 0.0;
  for (auto& p : partial) total += p;
  return total;
}

}  // namespace ncgf
