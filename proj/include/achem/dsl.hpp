#pragma once

// Line-oriented chemistry description language.
//
//   # comment
//   molecules: a, a1, c
//   reaction r1: a + a1 -> 2 c
//   init: 2 a, 1 a1
//   equiv same_a: a, a_mut
//
// Statements may appear in any order; symbols are checked against the
// molecule declarations once the whole text has been read.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "achem/chemistry.hpp"
#include "achem/error.hpp"

namespace achem {

namespace detail {

inline bool is_symbol_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}

inline bool is_symbol_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'' || u >= 0x80;
}

struct Located {
  std::string text;
  std::size_t line;
  std::size_t column;
};

class LineCursor {
public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  // Keyword match that does not split a longer identifier.
  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t after = pos_ + word.size();
    if (after < text_.size() && is_symbol_char(text_[after])) return false;
    pos_ = after;
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  Located symbol(const char* what = "symbol") {
    skip_space();
    std::size_t col = column();
    if (pos_ >= text_.size() || !is_symbol_start(text_[pos_])) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_symbol_char(text_[pos_])) ++pos_;
    return {std::string(text_.substr(start, pos_ - start)), line_, col};
  }

  // [<int>] <sym>
  std::pair<Count, Located> term() {
    skip_space();
    Count n = 1;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t col = column();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto digits = text_.substr(start, pos_ - start);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc{}) throw ParseError(line_, col, "coefficient out of range");
      if (n == 0) throw ParseError(line_, col, "coefficient must be positive");
    }
    return {n, symbol()};
  }

  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(line_, column(), what); }

private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/**
 * Parse and validate a chemistry description.
 *
 * Throws ParseError for syntax problems and SpecError for declaration
 * violations; both carry the 1-based line and column of the offending
 * token.
 */
inline ChemistrySpec parse_chemistry(std::string_view text) {
  using detail::LineCursor;
  using detail::Located;
  using K = SpecError::Kind;

  ChemistrySpec spec;
  std::vector<Located> used;  // every symbol reference, checked at the end
  std::map<std::string, Located> molecule_pos;
  std::set<std::string> reaction_names;
  std::set<std::string> class_names;
  std::map<Symbol, std::string> class_of;
  bool have_init = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    LineCursor cur(raw, line_no);
    if (cur.at_end()) continue;

    if (cur.accept_word("molecules")) {
      cur.expect(":");
      do {
        Located sym = cur.symbol("molecule name");
        if (molecule_pos.count(sym.text))
          throw SpecError(K::duplicate_molecule, sym.line, sym.column, "duplicate molecule: " + sym.text);
        molecule_pos.emplace(sym.text, sym);
        spec.molecules.push_back(sym.text);
      } while (cur.accept(","));
    } else if (cur.accept_word("reaction")) {
      Located name = cur.symbol("reaction name");
      cur.expect(":");
      if (!reaction_names.insert(name.text).second)
        throw SpecError(K::duplicate_reaction, name.line, name.column, "duplicate reaction name: " + name.text);
      Reaction r;
      r.name = name.text;
      if (cur.peek() == '-') {
        throw SpecError(K::empty_input, name.line, name.column, "reaction " + name.text + " has an empty input");
      }
      do {
        auto [n, sym] = cur.term();
        r.input.add(sym.text, n);
        used.push_back(sym);
      } while (cur.accept("+"));
      cur.expect("->");
      do {
        auto [n, sym] = cur.term();
        r.output.add(sym.text, n);
        used.push_back(sym);
      } while (cur.accept("+"));
      spec.reactions.push_back(std::move(r));
    } else if (cur.accept_word("init")) {
      std::size_t col = cur.column();
      cur.expect(":");
      if (have_init) throw SpecError(K::duplicate_init, line_no, col, "duplicate init statement");
      have_init = true;
      do {
        auto [n, sym] = cur.term();
        spec.initial.add(sym.text, n);
        used.push_back(sym);
      } while (cur.accept(","));
    } else if (cur.accept_word("equiv")) {
      Located name = cur.symbol("class name");
      cur.expect(":");
      if (!class_names.insert(name.text).second)
        throw SpecError(K::duplicate_class, name.line, name.column, "duplicate equivalence class: " + name.text);
      EquivClass cls{name.text, {}};
      do {
        Located sym = cur.symbol();
        auto [it, fresh] = class_of.emplace(sym.text, name.text);
        if (!fresh && it->second != name.text)
          throw SpecError(K::overlapping_classes, sym.line, sym.column,
                          "symbol " + sym.text + " already belongs to class " + it->second);
        if (fresh) cls.members.push_back(sym.text);
        used.push_back(sym);
      } while (cur.accept(","));
      spec.equivalences.push_back(std::move(cls));
    } else {
      cur.fail("expected 'molecules', 'reaction', 'init' or 'equiv'");
    }
    if (!cur.at_end()) cur.fail("unexpected trailing input");
  }

  for (const auto& sym : used)
    if (!molecule_pos.count(sym.text))
      throw SpecError(K::undeclared_symbol, sym.line, sym.column, "undeclared symbol: " + sym.text);

  spec.validate();
  return spec;
}

namespace detail {

inline std::string format_side(const Multiset& m) {
  std::string out;
  for (const auto& [sym, n] : m) {
    if (!out.empty()) out += " + ";
    if (n != 1) out += std::to_string(n) + " ";
    out += sym;
  }
  return out;
}

}  // namespace detail

// Render a chemistry back into the description language. parse_chemistry
// of the result yields an equal ChemistrySpec.
inline std::string to_dsl(const ChemistrySpec& spec) {
  std::string out;
  auto join = [](const std::vector<Symbol>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
  };
  if (!spec.molecules.empty()) out += "molecules: " + join(spec.molecules) + "\n";
  for (const auto& r : spec.reactions)
    out += "reaction " + r.name + ": " + detail::format_side(r.input) + " -> " + detail::format_side(r.output) + "\n";
  if (!spec.initial.empty()) {
    std::string init;
    for (const auto& [sym, n] : spec.initial) init += (init.empty() ? "" : ", ") + std::to_string(n) + " " + sym;
    out += "init: " + init + "\n";
  }
  for (const auto& c : spec.equivalences) out += "equiv " + c.name + ": " + join(c.members) + "\n";
  return out;
}

}  // namespace achem
