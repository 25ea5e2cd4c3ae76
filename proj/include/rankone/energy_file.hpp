#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "rankone/energy.hpp"
#include "rankone/error.hpp"

namespace rankone {

/// Energy definition text, one `key = value` per line:
///
///   # comment
///   name = my energy
///   mu = 2
///   h = {mu}*(1/2)*(t + 1/t)
///   f = (z - 1)^2
///
/// `h` and `f` are required. Every other key is a numeric parameter; `{key}`
/// inside h or f is replaced by its parenthesized value before parsing.
inline SplitEnergy parse_energy_text(std::string_view text) {
  std::string name = "custom";
  std::string h, f;
  bool have_h = false, have_f = false;
  Params params;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string{};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError(where + ": empty key");
    if (key == "name") {
      name = value;
    } else if (key == "h") {
      h = value;
      have_h = true;
    } else if (key == "f") {
      f = value;
      have_f = true;
    } else {
      double number = 0.0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw InputError(where + ": parameter '" + key + "' needs a numeric value");
      }
      params[key] = number;
    }
  }
  if (!have_h) throw InputError("energy file has no 'h' entry");
  if (!have_f) throw InputError("energy file has no 'f' entry");
  SplitEnergy e = make_split(substitute_params(h, params), substitute_params(f, params), name);
  e.params = params;
  return e;
}

inline SplitEnergy load_energy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read energy file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_energy_text(buf.str());
}

}  // namespace rankone
