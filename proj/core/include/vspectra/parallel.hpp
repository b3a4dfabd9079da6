#ifndef VSPECTRA_PARALLEL_HPP
#define VSPECTRA_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace vspectra {

// min(hardware_concurrency, VSPECTRA_THREADS); at least 1
int thread_cap();

// Splits [0, n) into contiguous chunks, one worker per chunk. Workers must
// write only to their own index range, so results do not depend on the
// number of threads.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Deterministic pairwise (tree) summation; result is independent of the
// evaluation order used elsewhere.
double pairwise_sum(std::span<const double> xs);

}  // namespace vspectra

#endif
