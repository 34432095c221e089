#pragma once

namespace orientrds {

/// Applies the ORIENT_RDS_THREADS environment variable (a positive integer)
/// as the worker cap. Returns the resulting thread count.
int configure_threads_from_env();

/// Current worker cap.
int max_threads() noexcept;

}  // namespace orientrds
