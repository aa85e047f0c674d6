#include "pfe/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pfe {

namespace {

using nlohmann::json;

Rat rat_of(const json& j, const char* field) {
  if (!j.is_string())
    fail(Errc::ParseError, std::string(field) + ": rationals are strings like \"3/4\"");
  return parse_rat(j.get<std::string>());
}

std::vector<Rat> rat_array(const json& j, const char* field) {
  if (!j.is_array()) fail(Errc::ParseError, std::string(field) + " must be an array");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rat_of(e, field));
  return out;
}

json rat_json(const Rat& q) { return rat_str(q); }

json rat_array_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& q : v) a.push_back(rat_json(q));
  return a;
}

}  // namespace

ProblemInstance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("p") || !j["p"].is_number_integer())
    fail(Errc::ParseError, "field \"p\" (integer prime) is required");
  Prime p(j["p"].get<long>());
  if (!j.contains("A") || !j.contains("B"))
    fail(Errc::ParseError, "fields \"A\" and \"B\" (coefficient arrays) are required");

  ProblemInstance inst{p, Poly(rat_array(j["A"], "A")), Poly(rat_array(j["B"], "B")),
                       std::nullopt,  std::nullopt,     std::nullopt,
                       Int(0),        {},               200};
  if (j.contains("f_jet")) inst.f_jet = Jet{rat_array(j["f_jet"], "f_jet")};
  if (j.contains("g_jet")) inst.g_jet = Jet{rat_array(j["g_jet"], "g_jet")};
  if (j.contains("h")) inst.h_override = Poly(rat_array(j["h"], "h"));
  if (j.contains("scan_N")) {
    if (j["scan_N"].is_number_integer())
      inst.scan_N = Int(j["scan_N"].get<long>());
    else if (j["scan_N"].is_string())
      inst.scan_N = Int(j["scan_N"].get<std::string>());
    else
      fail(Errc::ParseError, "scan_N must be an integer or integer string");
  }
  if (j.contains("lambda_grid")) inst.lambda_grid = rat_array(j["lambda_grid"], "lambda_grid");
  if (j.contains("prefix_len")) inst.prefix_len = j["prefix_len"].get<std::size_t>();
  validate_instance(inst);
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const ProblemInstance& inst) {
  json j;
  j["p"] = inst.p.value();
  j["A"] = rat_array_json(inst.A.coeffs());
  j["B"] = rat_array_json(inst.B.coeffs());
  if (inst.f_jet) j["f_jet"] = rat_array_json(inst.f_jet->coeffs);
  if (inst.g_jet) j["g_jet"] = rat_array_json(inst.g_jet->coeffs);
  if (inst.h_override) j["h"] = rat_array_json(inst.h_override->coeffs());
  if (inst.scan_N != 0) j["scan_N"] = int_str(inst.scan_N);
  if (!inst.lambda_grid.empty()) j["lambda_grid"] = rat_array_json(inst.lambda_grid);
  j["prefix_len"] = inst.prefix_len;
  return j.dump(2) + "\n";
}

PAdicElement parse_element_spec(const Prime& p, const std::string& text) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == sep) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  auto colon = text.find(':');
  if (colon == std::string::npos)
    fail(Errc::ParseError, "element spec must look like rat:5/2, ram:q:e:u or zp:d0,d1,...");
  std::string tag = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (tag == "rat") return rational_elt(parse_rat(rest));
  if (tag == "ram") {
    auto parts = split(rest, ':');
    if (parts.size() != 3) fail(Errc::ParseError, "ram element needs q:e:u");
    return ramified_shift(p, parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2]));
  }
  if (tag == "zp") {
    auto parts = split(rest, ',');
    std::vector<long> digits;
    digits.reserve(parts.size());
    for (const auto& d : parts) {
      try {
        digits.push_back(std::stol(d));
      } catch (const std::exception&) {
        fail(Errc::ParseError, "bad digit '" + d + "'");
      }
    }
    return truncated_zp(p, std::move(digits));
  }
  fail(Errc::ParseError, "unknown element tag '" + tag + "'");
}

std::string element_str(const PAdicElement& e) {
  if (const auto* r = std::get_if<RationalElt>(&e)) return "rat:" + rat_str(r->q);
  if (const auto* r = std::get_if<RamifiedShift>(&e))
    return "ram:" + rat_str(r->q) + ":" + rat_str(r->exponent) + ":" + rat_str(r->unit);
  const auto& z = std::get<TruncatedZp>(e);
  std::string s = "zp:";
  for (std::size_t i = 0; i < z.digits.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(z.digits[i]);
  }
  return s;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
  std::vector<Rat> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(parse_rat(cur));
  return out;
}

}  // namespace pfe
