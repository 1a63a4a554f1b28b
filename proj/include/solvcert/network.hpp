#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solvcert/linalg.hpp"

namespace solvcert {

/// Raised for malformed or out-of-contract inputs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's hypotheses do not hold for the given network.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bus index: 0 is the slack bus, 1..n are PQ buses.
using BusId = int;
inline constexpr BusId kSlack = 0;

struct Line {
  BusId from = 0;
  BusId to = 0;
  Complex admittance{};
};

/// Single-phase network of n PQ buses plus the slack bus 0.
///
/// Lines are stored in canonical order: endpoints oriented so from < to, and
/// lines sorted by (from, to). The constructor rejects self-loops, out-of-range
/// endpoints, zero admittance and repeated bus pairs.
class Network {
 public:
  Network(int n, std::vector<Line> lines);

  int n() const { return n_; }
  const std::vector<Line>& lines() const { return lines_; }
  std::size_t line_count() const { return lines_.size(); }

  /// Admittance between two buses, 0 when not connected.
  Complex admittance(BusId a, BusId b) const;

  /// Neighbors of a bus as (bus, admittance) pairs.
  const std::vector<std::pair<BusId, Complex>>& neighbors(BusId bus) const {
    return adjacency_.at(static_cast<std::size_t>(bus));
  }

  /// Same topology with every admittance multiplied by `factor`.
  Network scaled(Complex factor) const;

 private:
  int n_;
  std::vector<Line> lines_;
  std::vector<std::vector<std::pair<BusId, Complex>>> adjacency_;
};

struct NetworkClass {
  bool connected = false;
  bool acyclic = false;
  bool homogeneous = false;
  std::optional<double> homogeneity_angle;
  bool purely_resistive = false;
  bool all_resistive_lines = false;
};

/// (n+1)x(n+1) complex symmetric admittance matrix, bus 0 first.
CMatrix build_admittance_matrix(const Network& net);

NetworkClass classify(const Network& net, double angle_tol = 1e-9);

struct GaugeResult {
  Network network;
  double angle;
};

/// Rotates every admittance by e^{-j phi} so a homogeneous network becomes
/// purely resistive. Powers map as S -> e^{j phi} S and coefficients as
/// C -> e^{j phi} C.
GaugeResult gauge_transform(const Network& net, double angle_tol = 1e-9);

/// Piece of a network left after deleting the slack bus, re-attached to the
/// slack. buses[i - 1] is the original id of local bus i.
struct SlackComponent {
  Network network;
  std::vector<BusId> buses;
};

/// Splits a connected network at the slack bus. With more than one piece the
/// power-flow map factorizes: each piece's injections depend only on its own
/// voltages. Throws HypothesisError for disconnected networks.
std::vector<SlackComponent> slack_components(const Network& net);

}  // namespace solvcert
