#include "orientrds/threads.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "orientrds/errors.hpp"

namespace orientrds {

int configure_threads_from_env() {
    const char* raw = std::getenv("ORIENT_RDS_THREADS");
    if (raw != nullptr && *raw != '\0') {
        int n = 0;
        const char* end = raw + std::strlen(raw);
        const auto [ptr, ec] = std::from_chars(raw, end, n);
        if (ec != std::errc() || ptr != end || n < 1) {
            throw ParameterError("ORIENT_RDS_THREADS must be a positive integer");
        }
        omp_set_num_threads(n);
    }
    return omp_get_max_threads();
}

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace orientrds
