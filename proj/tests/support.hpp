#pragma once

#include <fstream>
#include <iterator>
#include <string>

#include "achem/dsl.hpp"

#ifndef ACHEM_SAMPLES
#define ACHEM_SAMPLES "samples"
#endif

namespace support {

inline std::string sample_text(const std::string& name) {
  std::ifstream in(std::string(ACHEM_SAMPLES) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing sample " + name);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline achem::ChemistrySpec sample(const std::string& name) { return achem::parse_chemistry(sample_text(name)); }

inline std::string sample_path(const std::string& name) { return std::string(ACHEM_SAMPLES) + "/" + name; }

}  // namespace support
