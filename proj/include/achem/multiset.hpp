#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace achem {

using Symbol = std::string;
using Count = std::uint64_t;

/**
 * Finite multiset over molecule symbols.
 *
 * Stored in canonical form: a symbol with multiplicity zero is never
 * present in the map, so structural equality is multiset equality and
 * iteration is in lexicographic symbol order.
 */
class Multiset {
public:
  using map_type = std::map<Symbol, Count>;
  using const_iterator = map_type::const_iterator;

  Multiset() = default;

  Multiset(std::initializer_list<std::pair<const Symbol, Count>> entries) {
    for (const auto& [sym, n] : entries) add(sym, n);
  }

  explicit Multiset(const map_type& counts) {
    for (const auto& [sym, n] : counts) add(sym, n);
  }

  Count count(const Symbol& sym) const {
    auto it = counts_.find(sym);
    return it == counts_.end() ? 0 : it->second;
  }

  Count operator[](const Symbol& sym) const { return count(sym); }

  bool in_support(const Symbol& sym) const { return counts_.count(sym) != 0; }

  std::set<Symbol> support() const {
    std::set<Symbol> out;
    for (const auto& [sym, n] : counts_) out.insert(out.end(), sym);
    return out;
  }

  // Sum of multiplicities.
  Count total() const {
    Count t = 0;
    for (const auto& [sym, n] : counts_) t += n;
    return t;
  }

  bool empty() const { return counts_.empty(); }
  std::size_t distinct() const { return counts_.size(); }

  void add(const Symbol& sym, Count n = 1) {
    if (n == 0) return;
    counts_[sym] += n;
  }

  // Saturating removal.
  void remove(const Symbol& sym, Count n = 1) {
    auto it = counts_.find(sym);
    if (it == counts_.end() || n == 0) return;
    if (it->second <= n)
      counts_.erase(it);
    else
      it->second -= n;
  }

  void set(const Symbol& sym, Count n) {
    if (n == 0)
      counts_.erase(sym);
    else
      counts_[sym] = n;
  }

  const map_type& counts() const { return counts_; }
  const_iterator begin() const { return counts_.begin(); }
  const_iterator end() const { return counts_.end(); }

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend auto operator<=>(const Multiset& a, const Multiset& b) { return a.counts_ <=> b.counts_; }

private:
  map_type counts_;
};

// (M ∪ M')(e) = M(e) + M'(e)
inline Multiset additive_union(const Multiset& m, const Multiset& m2) {
  Multiset out = m;
  for (const auto& [sym, n] : m2) out.add(sym, n);
  return out;
}

// (M ∩ M')(e) = min(M(e), M'(e))
inline Multiset intersect(const Multiset& m, const Multiset& m2) {
  Multiset out;
  for (const auto& [sym, n] : m) {
    if (Count other = m2.count(sym)) out.add(sym, std::min(n, other));
  }
  return out;
}

// Truncated difference: max(0, M(e) - M'(e)).
inline Multiset subtract(const Multiset& m, const Multiset& m2) {
  Multiset out = m;
  for (const auto& [sym, n] : m2) out.remove(sym, n);
  return out;
}

// True iff m2 is a sub-multiset of m.
inline bool contains(const Multiset& m, const Multiset& m2) {
  return std::all_of(m2.begin(), m2.end(),
                     [&](const auto& entry) { return m.count(entry.first) >= entry.second; });
}

inline Multiset operator+(const Multiset& a, const Multiset& b) { return additive_union(a, b); }
inline Multiset operator-(const Multiset& a, const Multiset& b) { return subtract(a, b); }

/**
 * Deterministic byte encoding used for state hashing.
 *
 * Every entry is written as `<len>:<symbol>=<count>;` in symbol order
 * behind a fixed header, so the encoding is injective on canonical
 * multisets regardless of which bytes the symbols contain.
 */
inline std::string canonical_encode(const Multiset& m) {
  std::string out = "ms1|";
  for (const auto& [sym, n] : m) {
    out += std::to_string(sym.size());
    out += ':';
    out += sym;
    out += '=';
    out += std::to_string(n);
    out += ';';
  }
  return out;
}

// Human-readable form, e.g. {a:2, b:1}.
inline std::string to_string(const Multiset& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [sym, n] : m) {
    if (!first) out += ", ";
    first = false;
    out += sym + ":" + std::to_string(n);
  }
  return out + "}";
}

inline std::ostream& operator<<(std::ostream& os, const Multiset& m) { return os << to_string(m); }

}  // namespace achem
