#pragma once

// Random network generators and small oracles shared by the test binaries.

#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "solvcert/network.hpp"
#include "solvcert/quadratic_map.hpp"

namespace testing_support {

using solvcert::Complex;
using solvcert::CVector;
using solvcert::Line;
using solvcert::Network;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <class Admittance>
std::vector<Line> random_tree_lines(int n, std::mt19937_64& rng, Admittance&& draw) {
  std::vector<Line> lines;
  for (int k = 1; k <= n; ++k) {
    const int parent = std::uniform_int_distribution<int>(0, k - 1)(rng);
    lines.push_back({parent, k, draw()});
  }
  return lines;
}

/// Spanning tree plus `extra` additional distinct lines.
template <class Admittance>
Network random_mesh(int n, int extra, std::mt19937_64& rng, Admittance&& draw) {
  std::vector<Line> lines = random_tree_lines(n, rng, draw);
  std::set<std::pair<int, int>> used;
  for (const Line& l : lines) used.insert(std::minmax(l.from, l.to));
  const int max_lines = n * (n + 1) / 2;
  int added = 0;
  for (int tries = 0; added < extra && static_cast<int>(used.size()) < max_lines && tries < 1000; ++tries) {
    const int a = std::uniform_int_distribution<int>(0, n)(rng);
    const int b = std::uniform_int_distribution<int>(0, n)(rng);
    if (a == b || !used.insert(std::minmax(a, b)).second) continue;
    lines.push_back({a, b, draw()});
    ++added;
  }
  return Network(n, std::move(lines));
}

inline Network random_homogeneous_tree(int n, double angle, std::mt19937_64& rng) {
  return Network(n, random_tree_lines(n, rng, [&] { return std::polar(uniform(rng, 0.3, 3.0), angle); }));
}

inline Network random_resistive_mesh(int n, int extra, std::mt19937_64& rng) {
  return random_mesh(n, extra, rng, [&] { return Complex{uniform(rng, 0.3, 3.0), 0.0}; });
}

/// Re y > 0 on every line, arbitrary susceptance.
inline Network random_lossy_mesh(int n, int extra, std::mt19937_64& rng) {
  return random_mesh(n, extra, rng, [&] { return Complex{uniform(rng, 0.2, 2.0), uniform(rng, -3.0, 3.0)}; });
}

inline CVector random_voltage(int n, std::mt19937_64& rng, double scale = 1.5) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
  return v;
}

/// S = V o conj(Y V) on the full bus vector, assembled here from the line list.
inline CVector injections_from_ybus(const Network& net, const CVector& v) {
  const int n = net.n();
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (const Line& l : net.lines()) {
    y(l.from, l.from) += l.admittance;
    y(l.to, l.to) += l.admittance;
    y(l.from, l.to) -= l.admittance;
    y(l.to, l.from) -= l.admittance;
  }
  CVector full(n + 1);
  full(0) = 1.0;
  full.tail(n) = v;
  const CVector current = y * full;
  CVector s(n);
  for (int i = 0; i < n; ++i) s(i) = full(i + 1) * std::conj(current(i + 1));
  return s;
}

/// Union-find cycle detector over the n+1 buses.
inline bool has_cycle(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& [a, b] : edges) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) return true;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return false;
}

}  // namespace testing_support
