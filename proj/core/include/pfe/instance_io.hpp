#pragma once

#include <string>

#include "pfe/analyzer.hpp"

namespace pfe {

// Instance files are UTF-8 JSON. Rationals are strings ("num/den" or "num"),
// polynomials and jets are coefficient arrays low-to-high, p-adic elements
// are tagged objects:
//   {"type":"rat","q":"5/2"}
//   {"type":"ram","q":"0","e":"3/2","u":"1"}
//   {"type":"zp","digits":[2,3,0,1]}
// No floats anywhere; exactness survives serialization.

ProblemInstance parse_instance(const std::string& json_text);
ProblemInstance load_instance(const std::string& path);
std::string serialize_instance(const ProblemInstance& inst);

/// Compact element syntax used by command-line flags:
///   "rat:5/2"  |  "ram:0:3/2:1"  |  "zp:2,3,0,1"
PAdicElement parse_element_spec(const Prime& p, const std::string& text);
std::string element_str(const PAdicElement& e);

std::vector<Rat> parse_rat_list(const std::string& text);  // "a/b,c/d,..."

}  // namespace pfe
