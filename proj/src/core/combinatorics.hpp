#pragma once

#include <cstdint>
#include <vector>

namespace shapval {

// C(n, k), saturated at `cap`. Exact integer arithmetic until the running
// value passes the cap, so callers comparing against sample counts never see
// overflow.
inline uint64_t binomial_capped(int32_t n, int32_t k, uint64_t cap) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  uint64_t c = 1;
  for (int32_t i = 1; i <= k; ++i) {
    if (c > cap) return cap;
    uint64_t num = static_cast<uint64_t>(n - k + i);
    if (num != 0 && c > UINT64_MAX / num) return cap;
    c = c * num / static_cast<uint64_t>(i);
  }
  return c < cap ? c : cap;
}

// Advances a sorted k-combination of [0, n) to its lexicographic successor.
// Returns false once the last combination has been consumed.
inline bool next_combination(std::vector<int32_t>& idx, int32_t n) {
  int32_t k = static_cast<int32_t>(idx.size());
  for (int32_t i = k - 1; i >= 0; --i) {
    if (idx[static_cast<size_t>(i)] < n - k + i) {
      ++idx[static_cast<size_t>(i)];
      for (int32_t j = i + 1; j < k; ++j) {
        idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

}  // namespace shapval
