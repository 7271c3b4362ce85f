#pragma once

namespace cyent {

// Thread count for the OpenMP kernels: CY_ENTROPY_THREADS when set to a
// positive integer, otherwise the OpenMP default. Always 1 without OpenMP.
int configured_threads();

} // namespace cyent
