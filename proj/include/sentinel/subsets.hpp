#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sentinel {

// Visits every k-subset of {0..n-1} in lexicographic order. The visitor
// returns false to stop early; the function returns false iff stopped.
template <typename Visitor>
bool for_each_combination(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n) return true;
  std::vector<std::size_t> current(k);
  for (std::size_t i = 0; i < k; ++i) current[i] = i;
  for (;;) {
    if (!visit(std::span<const std::size_t>(current))) return false;
    std::size_t i = k;
    while (i > 0 && current[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++current[i - 1];
    for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
  }
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace sentinel
