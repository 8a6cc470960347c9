#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace nstable {

// Parsed form of a catalog spec string such as "gamma:shape=0.5,rate=2".
struct ParsedSpec {
  std::string name;
  std::map<std::string, double> params;
};

// Parses "name" or "name:key=val,key=val".  Throws std::invalid_argument on
// malformed input (empty name, missing '=', unparsable number).
inline ParsedSpec parse_spec_string(const std::string& text) {
  ParsedSpec out;
  const auto colon = text.find(':');
  out.name = text.substr(0, colon);
  if (out.name.empty()) {
    throw std::invalid_argument("empty name in spec string '" + text + "'");
  }
  if (colon == std::string::npos) return out;

  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double parsed = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      out.params[key] = parsed;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric value '" + val + "' for key '" +
                                  key + "'");
    }
    pos = comma + 1;
  }
  return out;
}

// Fetches a required parameter or throws std::invalid_argument.
inline double require_param(const ParsedSpec& ps, const std::string& key) {
  const auto it = ps.params.find(key);
  if (it == ps.params.end()) {
    throw std::invalid_argument("spec '" + ps.name + "' requires parameter '" +
                                key + "'");
  }
  return it->second;
}

// Fetches an optional parameter with a default.
inline double param_or(const ParsedSpec& ps, const std::string& key,
                       double fallback) {
  const auto it = ps.params.find(key);
  return it == ps.params.end() ? fallback : it->second;
}

}  // namespace nstable
