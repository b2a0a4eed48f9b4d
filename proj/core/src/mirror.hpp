#pragma once

namespace dof::detail {

// Mirrored (reflect-with-edge) index: -1 -> 0, -2 -> 1, n -> n-1, n+1 -> n-2.
// Folds repeatedly so it stays valid for kernels wider than the image.
inline int mirror_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

}  // namespace dof::detail
