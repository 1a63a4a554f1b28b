#pragma once

// Data-parallel kernels. Every kernel has an OpenMP version and a serial
// reference; both consume randomness per fixed-size chunk, so for a given seed
// they produce identical output regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "solvcert/network.hpp"
#include "solvcert/quadratic_map.hpp"

namespace solvcert::kernels {

enum class Exec { Serial, Parallel };

/// Caps the OpenMP worker count; 0 leaves the runtime default.
void set_thread_limit(int threads);

/// Network flattened into CSR arrays for per-point evaluation.
struct CompiledNetwork {
  int n = 0;
  std::vector<int> offsets;      // n + 1 entries
  std::vector<int> neighbor;     // 0-based PQ index, -1 for the slack
  std::vector<Complex> admittance;

  explicit CompiledNetwork(const Network& net);

  /// S = p(V) for V given as (Re V_1..Re V_n, Im V_1..Im V_n); writes
  /// (P_1..P_n, Q_1..Q_n) into `out`.
  void evaluate(const double* voltage, double* out) const;
};

/// Row-major batch evaluation, 2n doubles per point in and out.
void evaluate_serial(const CompiledNetwork& net, std::span<const double> voltages,
                     std::span<double> out);
void evaluate_parallel(const CompiledNetwork& net, std::span<const double> voltages,
                       std::span<double> out);

struct Box {
  double lo = -2.0;
  double hi = 2.0;
};

inline constexpr std::size_t kChunkDraws = 4096;

/// Images of voltages drawn uniformly from the box; `count` points.
std::vector<double> random_cloud(const CompiledNetwork& net, std::size_t count, Box box,
                                 std::uint64_t seed, Exec exec);

/// Images of a regular grid with `per_axis` nodes on each of the 2n real
/// voltage coordinates (row-major, last coordinate fastest).
std::vector<double> grid_cloud(const CompiledNetwork& net, std::size_t per_axis, Box box,
                               Exec exec);

/// Images of voltages on the level set q(V) = level of the quadratic
/// q(V) = V^H H V - 2 Re(J^H V), found by intersecting random lines through
/// the box with the level set; only intersections inside the box are kept.
/// Returns at most `count` points (fewer only if `max_draws` is exhausted).
std::vector<double> level_set_cloud(const CompiledNetwork& net, const CertificateMatrices& level_form,
                                    double level, std::size_t count, Box box, std::uint64_t seed,
                                    Exec exec, std::size_t max_draws = 2'000'000'000);

/// Applies `task(i)` for i in [0, count) and collects results in index order.
template <class F>
auto sweep(std::size_t count, F&& task, Exec exec) {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(count);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = task(i);
  } else {
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < total; ++i)
      out[static_cast<std::size_t>(i)] = task(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace solvcert::kernels
