#pragma once

namespace cwc {

/// Selects the OpenMP kernel or its serial reference.
enum class ExecPolicy { serial, parallel };

/// Thread count used by parallel kernels: the CWCODE_THREADS environment
/// variable if set, otherwise the OpenMP default.
int default_threads();

/// Sets the OpenMP thread count for subsequent parallel kernels (<= 0 keeps
/// the default).
void set_threads(int threads);

}  // namespace cwc
