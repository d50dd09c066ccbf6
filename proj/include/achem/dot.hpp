#pragma once

#include <cctype>
#include <string>

#include "achem/causal.hpp"

namespace achem {

namespace detail {

inline std::string dot_quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string dot_id(const std::string& s) {
  bool plain = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
  for (char c : s) plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  return plain ? s : dot_quoted(s);
}

}  // namespace detail

// Graphviz rendering: one node per symbol (output-only nodes dashed), one
// labelled edge per causal edge, parallel edges kept.
inline std::string export_dot(const ReactionGraph& g) {
  std::string out = "digraph {\n";
  if (!g.nodes.empty() || !g.edges.empty()) out += "  // potential reaction graph of state " + std::to_string(g.state_index) + "\n";
  for (const auto& n : g.nodes) {
    out += "  " + detail::dot_id(n);
    if (g.output_only.count(n)) out += " [style=dashed]";
    out += ";\n";
  }
  for (const auto& e : g.edges)
    out += "  " + detail::dot_id(e.source) + " -> " + detail::dot_id(e.target) + " [label=" +
           detail::dot_quoted(e.via) + "];\n";
  return out + "}\n";
}

}  // namespace achem
