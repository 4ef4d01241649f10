#pragma once

// Index loop shared by the scans: OpenMP when asked, plain loop otherwise.

#include <cstddef>
#include <exception>
#include <vector>

namespace fregier {

enum class Execution { serial, parallel };

/// Calls fn(i) for i in [0, count). Every index runs; afterwards the exception
/// of the lowest failing index, if any, is rethrown.
template <class Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long>(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < n; ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fregier
