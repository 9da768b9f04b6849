#pragma once

#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cyclotome {

// Worker count for slice/degree-level parallelism; the CLI's --jobs flag
// sets it. Tasks write only their own result slots, so schedules cannot
// change any output.
int& job_count();

// run tasks[i] for i in [0, n) on up to job_count() threads
void parallel_for(size_t n, const std::function<void(size_t)>& task);

} // namespace cyclotome
