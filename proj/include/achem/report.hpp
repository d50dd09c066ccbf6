#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "achem/hierarchy.hpp"
#include "achem/selfrep.hpp"

namespace achem {

// FNV-1a 64-bit content hash of the chemistry source, as 16 hex digits.
inline std::string spec_fingerprint(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::json to_json(const ReactionSeq& seq) {
  auto out = nlohmann::json::array();
  for (const auto& s : seq) out.push_back({{"reaction", s.reaction}, {"state", s.state}});
  return out;
}

inline nlohmann::json to_json(const CausalPath& p) {
  return {{"waypoints", p.waypoints}, {"steps", to_json(p.steps)}};
}

inline nlohmann::json to_json(const IndexWindow& w) { return {{"first", w.first}, {"last", w.last}}; }

inline nlohmann::json to_json(const Level0Verdict& v) {
  nlohmann::json j;
  j["level"] = 0;
  j["subject"] = v.subject;
  j["status"] = to_string(v.status);
  j["reason"] = to_string(v.reason);
  j["partner"] = v.partner ? nlohmann::json(*v.partner) : nlohmann::json(nullptr);
  auto paths = nlohmann::json::array();
  for (const auto& p : v.witness_paths) paths.push_back(to_json(p));
  j["witness_paths"] = std::move(paths);
  j["consumed"] = v.consumed;
  j["offending_path"] = v.offending_path ? to_json(*v.offending_path) : nlohmann::json(nullptr);
  j["max_len"] = v.max_len;
  j["window"] = to_json(v.window);
  j["paths_examined"] = v.paths_examined;
  j["search_complete"] = v.search_complete;
  j["quantifier"] = to_string(v.quantifier);
  j["cycle"] = v.cycle ? nlohmann::json{{"prefix_len", v.cycle->prefix_len}, {"cycle_len", v.cycle->cycle_len}}
                       : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const Level1Verdict& v) {
  nlohmann::json j;
  j["level"] = 1;
  j["subject"] = to_string(v.subject);
  j["status"] = to_string(v.status);
  j["reason"] = to_string(v.reason);
  j["partner"] = v.partner ? nlohmann::json(to_string(*v.partner)) : nlohmann::json(nullptr);
  auto witness = nlohmann::json::array();
  for (const auto& m : v.witness) witness.push_back(to_json(m.steps));
  j["witness"] = std::move(witness);
  auto inter = nlohmann::json::array();
  for (const auto& e : v.intermediates) inter.push_back(to_string(e));
  j["intermediates"] = std::move(inter);
  auto matching = nlohmann::json::array();
  for (const auto& [a, b] : v.matching) matching.push_back({a, b});
  j["matching"] = std::move(matching);
  j["nontriviality"] = {{"counted", v.counted}, {"threshold", v.threshold}};
  j["copies"] = {{"before", v.copies_before}, {"after", v.copies_after}};
  j["decreased"] = v.decreased;
  j["window"] = to_json(v.window);
  j["candidates_considered"] = v.candidates_considered;
  j["paths_examined"] = v.paths_examined;
  j["search_complete"] = v.search_complete;
  const auto& o = v.options;
  j["caps"] = {{"max_len", o.max_len},     {"meta_len", o.meta_len},     {"chain_len", o.chain_len},
               {"span", o.span},           {"candidates", o.candidates}, {"budget", o.budget},
               {"source", to_string(o.source)}, {"quantifier", to_string(o.quantifier)}};
  return j;
}

/**
 * Serialized analysis result. Verdicts never travel without the
 * fingerprint of the chemistry that produced them.
 */
struct ReportDocument {
  std::string fingerprint;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json verdicts = nlohmann::json::array();

  void add(const Level0Verdict& v) { verdicts.push_back(to_json(v)); }
  void add(const Level1Verdict& v) { verdicts.push_back(to_json(v)); }

  std::string dump() const {
    nlohmann::json j;
    j["fingerprint"] = fingerprint;
    j["parameters"] = parameters;
    j["verdicts"] = verdicts;
    return j.dump(2) + "\n";
  }
};

}  // namespace achem
