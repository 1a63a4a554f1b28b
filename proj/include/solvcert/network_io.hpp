#pragma once

#include <string>

#include "solvcert/network.hpp"

namespace solvcert::io {

/// Parses {"n": <int>, "lines": [{"from": <int>, "to": <int>, "y": [re, im]}]}.
/// Throws InputError listing every schema violation, one per line, each
/// prefixed with its location (e.g. "lines[3].y"). Malformed JSON reports the
/// line and column of the syntax error.
Network parse_network_json(const std::string& text, const std::string& source = "<input>");

Network parse_network_file(const std::string& path);

/// Inverse of parse_network_json; lines in canonical order.
std::string serialize_network(const Network& net);

/// "a+bj", "a-bj", "bj", "a", "j", "-j"; whitespace ignored.
Complex parse_complex(const std::string& text);

}  // namespace solvcert::io
