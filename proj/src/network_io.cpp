#include "solvcert/network_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace solvcert::io {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

bool as_int(const json& v, long long& out) {
  if (v.is_number_integer()) {
    out = v.get<long long>();
    return true;
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) {
      out = static_cast<long long>(d);
      return true;
    }
  }
  return false;
}

}  // namespace

Network parse_network_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": malformed JSON";
    const std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) msg << " (" << what.substr(pos) << ")";
    throw InputError(msg.str());
  }

  std::vector<std::string> errors;
  auto error = [&](const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); };

  if (!doc.is_object()) {
    throw InputError(source + ": top level must be an object with \"n\" and \"lines\"");
  }

  long long n = 0;
  bool n_ok = false;
  if (!doc.contains("n")) {
    error("n", "missing field");
  } else if (!as_int(doc["n"], n)) {
    error("n", "must be an integer");
  } else if (n < 1) {
    error("n", "must be at least 1, got " + std::to_string(n));
  } else {
    n_ok = true;
  }

  std::vector<Line> lines;
  if (!doc.contains("lines")) {
    error("lines", "missing field");
  } else if (!doc["lines"].is_array()) {
    error("lines", "must be an array");
  } else {
    std::map<std::pair<long long, long long>, std::size_t> seen;
    const json& arr = doc["lines"];
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = "lines[" + std::to_string(k) + "]";
      const json& item = arr[k];
      if (!item.is_object()) {
        error(where, "must be an object");
        continue;
      }
      bool ok = true;
      long long ends[2] = {0, 0};
      const char* names[2] = {"from", "to"};
      for (int e = 0; e < 2; ++e) {
        const std::string field = where + "." + names[e];
        if (!item.contains(names[e])) {
          error(field, "missing field");
          ok = false;
        } else if (!as_int(item[names[e]], ends[e])) {
          error(field, "must be an integer bus id");
          ok = false;
        } else if (n_ok && (ends[e] < 0 || ends[e] > n)) {
          error(field, "bus id " + std::to_string(ends[e]) + " out of range 0.." + std::to_string(n));
          ok = false;
        }
      }
      Complex y{};
      if (!item.contains("y")) {
        error(where + ".y", "missing field");
        ok = false;
      } else {
        const json& yv = item["y"];
        if (!yv.is_array() || yv.size() != 2 || !yv[0].is_number() || !yv[1].is_number()) {
          error(where + ".y", "must be a two-element array [re, im]");
          ok = false;
        } else {
          y = {yv[0].get<double>(), yv[1].get<double>()};
          if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
            error(where + ".y", "admittance must be finite");
            ok = false;
          } else if (y == Complex{}) {
            error(where + ".y", "zero admittance");
            ok = false;
          }
        }
      }
      if (!ok) continue;
      if (ends[0] == ends[1]) {
        error(where, "self-loop at bus " + std::to_string(ends[0]));
        continue;
      }
      const auto key = std::minmax(ends[0], ends[1]);
      if (const auto [it, inserted] = seen.emplace(key, k); !inserted) {
        error(where, "duplicate line " + std::to_string(key.first) + "-" + std::to_string(key.second) +
                         " (first given as lines[" + std::to_string(it->second) + "])");
        continue;
      }
      lines.push_back({static_cast<BusId>(ends[0]), static_cast<BusId>(ends[1]), y});
    }
  }

  if (!errors.empty()) {
    std::string msg = source + ": invalid network";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw InputError(msg);
  }
  return Network(static_cast<int>(n), std::move(lines));
}

Network parse_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open network file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network_json(buf.str(), path);
}

std::string serialize_network(const Network& net) {
  nlohmann::ordered_json doc;
  doc["n"] = net.n();
  doc["lines"] = nlohmann::ordered_json::array();
  for (const Line& line : net.lines())
    doc["lines"].push_back({{"from", line.from}, {"to", line.to}, {"y", {line.admittance.real(), line.admittance.imag()}}});
  return doc.dump(2) + "\n";
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty complex number");
  auto fail = [&]() -> Complex { throw InputError("cannot parse complex number '" + text + "', expected a+bj"); };

  auto number = [&](const std::string& part, bool imaginary) -> double {
    std::string body = part;
    if (imaginary) body.pop_back();
    if (body.empty() || body == "+") return 1.0;
    if (body == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(body, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != body.size()) fail();
    return v;
  };

  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  const bool has_j = s.back() == 'j' || s.back() == 'i';
  if (split == std::string::npos) return has_j ? Complex{0.0, number(s, true)} : Complex{number(s, false), 0.0};
  if (!has_j) fail();
  return {number(s.substr(0, split), false), number(s.substr(split), true)};
}

}  // namespace solvcert::io
