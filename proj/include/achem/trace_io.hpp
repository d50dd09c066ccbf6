#pragma once

// Line-oriented trace records, one JSON object per state:
//
//   {"state":{"a":1,"f":1},"t":0}
//   {"executed":"r1","state":{"a":2},"t":1}
//
// Keys are emitted in sorted order. The final record may carry
// "halt":"terminated" or "halt":"budget-exhausted".

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "achem/engine.hpp"
#include "achem/error.hpp"
#include "achem/multiset.hpp"

namespace achem {

inline void write_trace(const Trace& trace, std::ostream& sink) {
  for (std::size_t t = 0; t < trace.states.size(); ++t) {
    nlohmann::json rec;
    rec["t"] = t;
    nlohmann::json state = nlohmann::json::object();
    for (const auto& [sym, n] : trace.states[t]) state[sym] = n;
    rec["state"] = std::move(state);
    if (t > 0) rec["executed"] = trace.executed[t - 1];
    if (t + 1 == trace.states.size()) rec["halt"] = to_string(trace.halt);
    sink << rec.dump() << '\n';
  }
  if (!sink) throw Error("failed to write trace");
}

inline std::string trace_to_string(const Trace& trace) {
  std::ostringstream os;
  write_trace(trace, os);
  return os.str();
}

inline Trace read_trace(std::istream& source) {
  using K = TraceFormatError::Kind;
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool halted = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (halted) throw TraceFormatError(K::invariant_violation, line_no, "record after the halting record");

    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw TraceFormatError(K::malformed_record, line_no, std::string("not a JSON record: ") + e.what());
    }
    if (!rec.is_object()) throw TraceFormatError(K::malformed_record, line_no, "record is not an object");
    for (const auto& [key, value] : rec.items())
      if (key != "t" && key != "state" && key != "executed" && key != "halt")
        throw TraceFormatError(K::malformed_record, line_no, "unknown key \"" + key + "\"");

    if (!rec.contains("t") || !rec["t"].is_number_unsigned())
      throw TraceFormatError(K::malformed_record, line_no, "\"t\" must be a non-negative integer");
    const auto t = rec["t"].get<std::size_t>();
    if (t != trace.states.size())
      throw TraceFormatError(K::invariant_violation, line_no,
                             "expected t=" + std::to_string(trace.states.size()) + ", got t=" + std::to_string(t));

    if (!rec.contains("state") || !rec["state"].is_object())
      throw TraceFormatError(K::malformed_record, line_no, "\"state\" must be an object");
    Multiset state;
    for (const auto& [sym, n] : rec["state"].items()) {
      if (!n.is_number_unsigned())
        throw TraceFormatError(K::malformed_record, line_no, "count of " + sym + " must be a non-negative integer");
      state.add(sym, n.get<Count>());
    }

    if (t == 0) {
      if (rec.contains("executed"))
        throw TraceFormatError(K::invariant_violation, line_no, "the initial record has no executed reaction");
    } else {
      if (!rec.contains("executed") || !rec["executed"].is_string())
        throw TraceFormatError(K::invariant_violation, line_no, "record lacks the reaction that produced it");
      trace.executed.push_back(rec["executed"].get<std::string>());
    }
    trace.states.push_back(std::move(state));

    if (rec.contains("halt")) {
      const auto& h = rec["halt"];
      if (h == "terminated")
        trace.halt = Halt::terminated;
      else if (h == "budget-exhausted")
        trace.halt = Halt::budget_exhausted;
      else
        throw TraceFormatError(K::malformed_record, line_no, "unknown halt value");
      halted = true;
    }
  }
  if (trace.states.empty()) throw TraceFormatError(K::malformed_record, 0, "trace contains no records");
  return trace;
}

inline Trace trace_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_trace(is);
}

}  // namespace achem
