#include "padx/evidence.hpp"

#include <algorithm>

namespace padx {

bool tail_window_passes(std::span<const std::optional<BigInt>> margins, long threshold) {
  const std::size_t n = margins.size();
  if (n == 0) return false;
  const std::size_t len = (n + 3) / 4;
  auto tail = margins.subspan(n - len);
  if (std::any_of(tail.begin(), tail.end(), [&](const auto& m) { return !m || *m <= threshold; })) return false;
  const std::size_t blocks = std::min<std::size_t>(4, len);
  const std::size_t base = len / blocks;
  std::size_t extra = len % blocks;
  std::size_t pos = 0;
  std::optional<BigInt> prev;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t size = base + (extra > 0 ? 1 : 0);
    if (extra > 0) --extra;
    BigInt lo = *tail[pos];
    for (std::size_t i = pos; i < pos + size; ++i) lo = std::min(lo, *tail[i]);
    if (prev && lo <= *prev) return false;
    prev = lo;
    pos += size;
  }
  return true;
}

bool tail_trend_increasing(std::span<const BigInt> margins) {
  const std::size_t n = margins.size();
  if (n < 2) return false;
  const std::size_t len = std::max<std::size_t>(2, (n + 1) / 2);
  for (std::size_t i = n - len + 1; i < n; ++i)
    if (margins[i] <= margins[i - 1]) return false;
  return true;
}

}  // namespace padx
