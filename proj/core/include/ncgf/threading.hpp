#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace ncgf {

// Global worker count for data-parallel loops.  Default is 1; the CLI wires
// --threads / NCGF_THREADS through here.
void set_num_threads(int n);
int num_threads();

// Runs body(i) for i in [0, n).  Each index is processed entirely by one
// worker, so element-wise outputs are bitwise independent of the thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

// Chunked sum with a fixed combination order: bitwise reproducible for a given
// thread count.
std::complex<double> parallel_sum(std::int64_t n,
                                  const std::function<std::complex<double>(std::int64_t)>& term);

}  // namespace ncgf
