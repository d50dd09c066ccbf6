#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace achem {

/**
 * Perfect bipartite matching between `left` and `right` under a
 * compatibility predicate, by augmenting paths (Kuhn). Returns the
 * pairing in `left` order, or nullopt when the sides differ in size or
 * no perfect matching exists.
 */
template <typename L, typename R, typename Compatible>
std::optional<std::vector<std::pair<L, R>>> perfect_matching(const std::vector<L>& left, const std::vector<R>& right,
                                                             Compatible&& compatible) {
  const std::size_t n = left.size();
  if (n != right.size()) return std::nullopt;
  constexpr std::size_t unmatched = static_cast<std::size_t>(-1);

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (compatible(left[i], right[j])) adj[i].push_back(j);

  std::vector<std::size_t> owner(n, unmatched);  // right -> left
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (auto j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] == unmatched || augment(owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(i)) return std::nullopt;
  }

  std::vector<std::size_t> partner(n);
  for (std::size_t j = 0; j < n; ++j) partner[owner[j]] = j;
  std::vector<std::pair<L, R>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(left[i], right[partner[i]]);
  return out;
}

}  // namespace achem
