#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace sfs {

/// Thread budget: SFS_THREADS caps it, hardware concurrency is the default.
int thread_budget();

/// max over i in [0,n) of fn(i), chunked across threads. fn must be pure;
/// the merge is a plain max so the result does not depend on thread count.
double parallel_max(int n, const std::function<double(int)>& fn);

}  // namespace sfs
