#pragma once

#include <algorithm>
#include <vector>

#include "selecta/errors.hpp"
#include "selecta/parallel.hpp"

namespace selecta {

namespace detail {

inline void check_scan_bounds(int n_lo, int n_hi) {
  Validator v("search bounds");
  v.require(n_lo >= 1, "n_lo", "must be >= 1");
  v.require(n_hi >= n_lo, "n_hi", "must be >= n_lo");
  v.throw_if_failed();
}

}  // namespace detail

template <class Eval>
SampleSizeResult scan_always_holds(SizingMethod method, int n_lo, int n_hi, double threshold,
                                   Eval&& evaluate, int block) {
  detail::check_scan_bounds(n_lo, n_hi);
  block = std::max(block, 1);
  SampleSizeResult result;
  result.method = method;
  result.threshold = threshold;
  result.n_lo = n_lo;
  result.n_hi = n_hi;

  std::vector<CurvePoint> scanned;  // descending n
  int top = n_hi;
  while (top >= n_lo) {
    const int bottom = std::max(n_lo, top - block + 1);
    std::vector<CurvePoint> chunk(static_cast<std::size_t>(top - bottom + 1));
    if (chunk.size() == 1) {
      chunk[0] = evaluate(top);
    } else {
      parallel_for(0, static_cast<std::int64_t>(chunk.size()),
                   [&](std::int64_t i) { chunk[i] = evaluate(top - static_cast<int>(i)); });
    }
    for (const auto& pt : chunk) {
      scanned.push_back(pt);
      if (pt.value > threshold) continue;
      if (pt.n == n_hi) throw NotAttained(n_hi, pt.value, threshold);
      result.n_min = pt.n + 1;
      std::reverse(scanned.begin(), scanned.end());
      result.curve = std::move(scanned);
      return result;
    }
    top = bottom - 1;
  }
  result.under_lower_bound = true;
  std::reverse(scanned.begin(), scanned.end());
  result.curve = std::move(scanned);
  return result;
}

template <class Eval>
SampleSizeResult scan_always_holds(SizingMethod method, int n_lo, int n_hi, double threshold,
                                   Eval&& evaluate) {
  return scan_always_holds(method, n_lo, n_hi, threshold, std::forward<Eval>(evaluate), 1);
}

}  // namespace selecta
