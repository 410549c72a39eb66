#pragma once

#include <exception>
#include <vector>

namespace infoflow::detail {

/// OpenMP loop over [0, count) that carries exceptions out of the parallel
/// region. The exception of the lowest failing index is rethrown, so the
/// error reported does not depend on the schedule.
template <class Body>
void parallel_for(long count, bool enable, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count > 0 ? count : 0));
#pragma omp parallel for schedule(dynamic) if (enable)
  for (long idx = 0; idx < count; ++idx) {
    try {
      body(idx);
    } catch (...) {
      errors[static_cast<std::size_t>(idx)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace infoflow::detail
