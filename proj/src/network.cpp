#include "solvcert/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

namespace solvcert {

Network::Network(int n, std::vector<Line> lines) : n_(n), lines_(std::move(lines)) {
  if (n_ < 1) throw InputError("network needs at least one PQ bus, got n=" + std::to_string(n_));
  std::set<std::pair<BusId, BusId>> seen;
  for (std::size_t k = 0; k < lines_.size(); ++k) {
    Line& line = lines_[k];
    std::ostringstream where;
    where << "line " << k << " (" << line.from << "-" << line.to << "): ";
    if (line.from < 0 || line.from > n_ || line.to < 0 || line.to > n_)
      throw InputError(where.str() + "bus id out of range 0.." + std::to_string(n_));
    if (line.from == line.to) throw InputError(where.str() + "self-loop");
    if (line.admittance == Complex{}) throw InputError(where.str() + "zero admittance");
    if (!std::isfinite(line.admittance.real()) || !std::isfinite(line.admittance.imag()))
      throw InputError(where.str() + "non-finite admittance");
    if (line.from > line.to) std::swap(line.from, line.to);
    if (!seen.insert({line.from, line.to}).second) throw InputError(where.str() + "duplicate line");
  }
  std::sort(lines_.begin(), lines_.end(), [](const Line& a, const Line& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  adjacency_.resize(static_cast<std::size_t>(n_) + 1);
  for (const Line& line : lines_) {
    adjacency_[static_cast<std::size_t>(line.from)].emplace_back(line.to, line.admittance);
    adjacency_[static_cast<std::size_t>(line.to)].emplace_back(line.from, line.admittance);
  }
}

Complex Network::admittance(BusId a, BusId b) const {
  for (const auto& [bus, y] : neighbors(a))
    if (bus == b) return y;
  return {};
}

Network Network::scaled(Complex factor) const {
  std::vector<Line> out = lines_;
  for (Line& line : out) line.admittance *= factor;
  return Network(n_, std::move(out));
}

CMatrix build_admittance_matrix(const Network& net) {
  const Eigen::Index size = net.n() + 1;
  CMatrix y = CMatrix::Zero(size, size);
  for (const Line& line : net.lines()) {
    y(line.from, line.from) += line.admittance;
    y(line.to, line.to) += line.admittance;
    y(line.from, line.to) -= line.admittance;
    y(line.to, line.from) -= line.admittance;
  }
  return y;
}

namespace {

bool is_connected(const Network& net) {
  std::vector<bool> seen(static_cast<std::size_t>(net.n()) + 1, false);
  std::queue<BusId> frontier;
  frontier.push(kSlack);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const BusId bus = frontier.front();
    frontier.pop();
    for (const auto& [next, y] : net.neighbors(bus)) {
      if (seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = true;
      ++reached;
      frontier.push(next);
    }
  }
  return reached == seen.size();
}

double angle_difference(double a, double b) {
  return std::remainder(a - b, 2.0 * std::numbers::pi);
}

}  // namespace

NetworkClass classify(const Network& net, double angle_tol) {
  if (net.lines().empty()) throw InputError("cannot classify a network without lines");
  NetworkClass cls;
  cls.connected = is_connected(net);
  cls.acyclic = cls.connected && net.line_count() == static_cast<std::size_t>(net.n());

  const double reference = std::arg(net.lines().front().admittance);
  cls.homogeneous = std::all_of(net.lines().begin(), net.lines().end(), [&](const Line& line) {
    return std::abs(angle_difference(std::arg(line.admittance), reference)) <= angle_tol;
  });
  if (cls.homogeneous) cls.homogeneity_angle = reference;

  cls.all_resistive_lines = std::all_of(net.lines().begin(), net.lines().end(),
                                        [](const Line& line) { return line.admittance.real() > 0.0; });
  cls.purely_resistive =
      cls.homogeneous && std::abs(*cls.homogeneity_angle) <= angle_tol && cls.all_resistive_lines;
  return cls;
}

GaugeResult gauge_transform(const Network& net, double angle_tol) {
  const NetworkClass cls = classify(net, angle_tol);
  if (!cls.homogeneous) throw HypothesisError("gauge transform needs a homogeneous network");
  const double phi = *cls.homogeneity_angle;
  const Complex rotation = std::polar(1.0, -phi);
  std::vector<Line> lines = net.lines();
  for (Line& line : lines) {
    line.admittance *= rotation;
    // residual phase is bounded by angle_tol; snap to the real axis
    line.admittance = {line.admittance.real(), 0.0};
  }
  return {Network(net.n(), std::move(lines)), phi};
}

std::vector<SlackComponent> slack_components(const Network& net) {
  if (!is_connected(net)) throw HypothesisError("slack decomposition needs a connected network");
  const int n = net.n();
  std::vector<int> label(static_cast<std::size_t>(n) + 1, -1);
  int count = 0;
  for (BusId start = 1; start <= n; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) continue;
    std::queue<BusId> frontier;
    frontier.push(start);
    label[static_cast<std::size_t>(start)] = count;
    while (!frontier.empty()) {
      const BusId bus = frontier.front();
      frontier.pop();
      for (const auto& [next, y] : net.neighbors(bus)) {
        if (next == kSlack || label[static_cast<std::size_t>(next)] >= 0) continue;
        label[static_cast<std::size_t>(next)] = count;
        frontier.push(next);
      }
    }
    ++count;
  }

  std::vector<std::vector<BusId>> members(static_cast<std::size_t>(count));
  std::vector<BusId> local(static_cast<std::size_t>(n) + 1, kSlack);
  for (BusId bus = 1; bus <= n; ++bus) {
    auto& m = members[static_cast<std::size_t>(label[static_cast<std::size_t>(bus)])];
    m.push_back(bus);
    local[static_cast<std::size_t>(bus)] = static_cast<BusId>(m.size());
  }
  std::vector<std::vector<Line>> lines(static_cast<std::size_t>(count));
  for (const Line& line : net.lines()) {
    const int c = label[static_cast<std::size_t>(line.to)];
    lines[static_cast<std::size_t>(c)].push_back(
        {local[static_cast<std::size_t>(line.from)], local[static_cast<std::size_t>(line.to)], line.admittance});
  }
  std::vector<SlackComponent> out;
  for (int c = 0; c < count; ++c)
    out.push_back({Network(static_cast<int>(members[static_cast<std::size_t>(c)].size()),
                           std::move(lines[static_cast<std::size_t>(c)])),
                   std::move(members[static_cast<std::size_t>(c)])});
  return out;
}

}  // namespace solvcert
