#pragma once

#include <cstddef>
#include <functional>

namespace latlab {

// Runs task(i) for i = 0..count-1; implementations may use threads but every
// task writes only its own slot.
using Executor = std::function<void(std::size_t count, const std::function<void(std::size_t)>& task)>;
Executor sequential_executor();

}  // namespace latlab
