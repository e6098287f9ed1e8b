#include "sentinel/subsets.hpp"

namespace sentinel {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(n, k, [&](std::span<const std::size_t> s) {
    out.emplace_back(s.begin(), s.end());
    return true;
  });
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace sentinel
