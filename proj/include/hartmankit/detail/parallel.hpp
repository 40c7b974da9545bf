#pragma once

#include <cstddef>
#include <exception>

namespace hartmankit::detail {

/// Runs body(i) for i in [0, n) with OpenMP. The body writes only to slot i.
/// If any iteration throws, the exception of the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const auto count = static_cast<std::ptrdiff_t>(n);
    std::exception_ptr error;
    std::ptrdiff_t error_index = count;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(hartmankit_parallel_for_error)
            if (i < error_index) {
                error_index = i;
                error = std::current_exception();
            }
        }
    }
    if (error)
        std::rethrow_exception(error);
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
    for (std::size_t i = 0; i < n; ++i)
        body(i);
}

} // namespace hartmankit::detail
