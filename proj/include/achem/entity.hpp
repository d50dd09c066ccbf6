#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "achem/error.hpp"
#include "achem/multiset.hpp"

namespace achem {

/**
 * Hierarchical entity. Level 0 is a molecule symbol; a level-n entity is
 * a set of more than one lower-level entity with at least one member of
 * level n-1. Members are kept sorted and unique.
 */
class Entity {
public:
  // The empty atom; not well formed, used only as a placeholder value.
  Entity() = default;

  static Entity atom(Symbol sym) {
    Entity e;
    e.symbol_ = std::move(sym);
    return e;
  }

  static Entity set(std::vector<Entity> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() < 2) throw MalformedEntity("a set entity needs more than one distinct member");
    Entity e;
    e.members_ = std::move(members);
    for (const auto& m : e.members_) e.level_ = std::max(e.level_, m.level_ + 1);
    return e;
  }

  template <typename Range>
  static Entity of_symbols(const Range& symbols) {
    std::vector<Entity> members;
    for (const auto& s : symbols) members.push_back(atom(s));
    return set(std::move(members));
  }

  static Entity of_symbols(std::initializer_list<Symbol> symbols) {
    return of_symbols(std::vector<Symbol>(symbols));
  }

  bool is_atom() const { return members_.empty(); }
  std::size_t level() const { return level_; }
  const Symbol& symbol() const { return symbol_; }
  const std::vector<Entity>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  // Members of a level-1 entity as plain symbols.
  std::set<Symbol> symbols() const {
    if (level_ != 1) throw MalformedEntity("expected a level-1 entity, got level " + std::to_string(level_));
    std::set<Symbol> out;
    for (const auto& m : members_) out.insert(m.symbol_);
    return out;
  }

  // Higher levels first, then atoms by symbol, sets by members.
  friend bool operator<(const Entity& a, const Entity& b) {
    if (a.level_ != b.level_) return a.level_ > b.level_;
    if (a.is_atom()) return a.symbol_ < b.symbol_;
    return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end());
  }

  friend bool operator==(const Entity& a, const Entity& b) {
    return a.level_ == b.level_ && a.symbol_ == b.symbol_ && a.members_ == b.members_;
  }

private:
  Symbol symbol_;
  std::vector<Entity> members_;
  std::size_t level_ = 0;
};

inline std::size_t level_of(const Entity& e) { return e.level(); }
inline std::size_t level_of(const Symbol&) { return 0; }

// The defining clauses of the level hierarchy, checked recursively:
// more than one member, all members of lower level, and at least one
// member exactly one level down.
inline bool well_formed(const Entity& e) {
  if (e.is_atom()) return !e.symbol().empty();
  if (e.size() < 2) return false;
  bool has_previous_level = false;
  for (const auto& m : e.members()) {
    if (m.level() >= e.level() || !well_formed(m)) return false;
    if (m.level() + 1 == e.level()) has_previous_level = true;
  }
  return has_previous_level;
}

inline std::string to_string(const Entity& e) {
  if (e.is_atom()) return e.symbol();
  std::string out = "{";
  for (std::size_t i = 0; i < e.members().size(); ++i) {
    if (i) out += ", ";
    out += to_string(e.members()[i]);
  }
  return out + "}";
}

/**
 * Parse brace notation: `a`, `{x, y}`, `{{a, b}, c}`. Symbols follow the
 * chemistry DSL's identifier rules.
 */
inline Entity parse_entity(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> Entity { throw ParseError(1, pos + 1, what); };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto symbol_char = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'' || u >= 0x80;
  };

  std::function<Entity()> entity = [&]() -> Entity {
    skip();
    if (pos >= text.size()) return fail("expected entity");
    if (text[pos] == '{') {
      ++pos;
      std::vector<Entity> members;
      do {
        members.push_back(entity());
        skip();
      } while (pos < text.size() && text[pos] == ',' && ++pos);
      if (pos >= text.size() || text[pos] != '}') return fail("expected ',' or '}'");
      ++pos;
      return Entity::set(std::move(members));
    }
    std::size_t start = pos;
    while (pos < text.size() && symbol_char(text[pos])) ++pos;
    if (pos == start) return fail("expected symbol or '{'");
    return Entity::atom(std::string(text.substr(start, pos - start)));
  };

  Entity e = entity();
  skip();
  if (pos != text.size()) fail("unexpected trailing input");
  return e;
}

/**
 * All level-1 entities over `support` with 2..size_cap members: by size,
 * then lexicographically. Throws BudgetExceeded, producing nothing, when
 * more than `budget` entities would be generated.
 */
inline std::vector<Entity> enumerate_level1(const std::set<Symbol>& support, std::size_t size_cap,
                                            std::size_t budget = 100000) {
  if (size_cap < 2) throw std::invalid_argument("size_cap must be at least 2");
  const std::vector<Symbol> pool(support.begin(), support.end());
  const std::size_t n = pool.size();

  std::size_t total = 0;
  for (std::size_t k = 2; k <= std::min(size_cap, n); ++k) {
    // C(n, k), stopping as soon as the budget is passed.
    long double c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    total += static_cast<std::size_t>(std::min<long double>(c + 0.5, static_cast<long double>(budget) + 1));
    if (total > budget)
      throw BudgetExceeded("level-1 enumeration over " + std::to_string(n) + " symbols", budget);
  }

  std::vector<Entity> out;
  out.reserve(total);
  std::vector<std::size_t> idx;
  for (std::size_t k = 2; k <= std::min(size_cap, n); ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Symbol> members;
      for (auto i : idx) members.push_back(pool[i]);
      out.push_back(Entity::of_symbols(members));
      std::size_t i = k;
      while (i-- > 0 && idx[i] == n - k + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace achem
