#include "solvcert/kernels.hpp"

#include <cmath>
#include <random>

#include <omp.h>

#include "solvcert/random.hpp"

namespace solvcert::kernels {

void set_thread_limit(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

CompiledNetwork::CompiledNetwork(const Network& net) : n(net.n()) {
  offsets.reserve(static_cast<std::size_t>(n) + 1);
  offsets.push_back(0);
  for (BusId i = 1; i <= n; ++i) {
    for (const auto& [k, y] : net.neighbors(i)) {
      neighbor.push_back(k - 1);
      admittance.push_back(y);
    }
    offsets.push_back(static_cast<int>(neighbor.size()));
  }
}

void CompiledNetwork::evaluate(const double* voltage, double* out) const {
  for (int i = 0; i < n; ++i) {
    const Complex vi{voltage[i], voltage[n + i]};
    Complex current{};
    for (int e = offsets[static_cast<std::size_t>(i)]; e < offsets[static_cast<std::size_t>(i) + 1]; ++e) {
      const int k = neighbor[static_cast<std::size_t>(e)];
      const Complex vk = k < 0 ? Complex{1.0, 0.0} : Complex{voltage[k], voltage[n + k]};
      current += admittance[static_cast<std::size_t>(e)] * (vi - vk);
    }
    const Complex s = vi * std::conj(current);
    out[i] = s.real();
    out[n + i] = s.imag();
  }
}

void evaluate_serial(const CompiledNetwork& net, std::span<const double> voltages,
                     std::span<double> out) {
  const std::size_t dim = 2 * static_cast<std::size_t>(net.n);
  if (voltages.size() != out.size() || voltages.size() % dim != 0)
    throw InputError("evaluate: buffer sizes must be equal multiples of 2n");
  for (std::size_t p = 0; p < voltages.size() / dim; ++p)
    net.evaluate(voltages.data() + p * dim, out.data() + p * dim);
}

void evaluate_parallel(const CompiledNetwork& net, std::span<const double> voltages,
                       std::span<double> out) {
  const std::size_t dim = 2 * static_cast<std::size_t>(net.n);
  if (voltages.size() != out.size() || voltages.size() % dim != 0)
    throw InputError("evaluate: buffer sizes must be equal multiples of 2n");
  const auto points = static_cast<std::ptrdiff_t>(voltages.size() / dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < points; ++p) {
    const auto offset = static_cast<std::size_t>(p) * dim;
    net.evaluate(voltages.data() + offset, out.data() + offset);
  }
}

namespace {

// Generates chunks 0, 1, 2, ... in order until `enough` holds or `max_chunks`
// is reached. The parallel path computes chunks in waves and may produce a few
// surplus chunks; callers truncate, so the kept prefix is identical.
template <class Gen, class Enough>
std::vector<double> chunked(Gen&& gen, Enough&& enough, std::size_t max_chunks, Exec exec) {
  std::vector<double> out;
  std::size_t next = 0;
  const std::size_t wave =
      exec == Exec::Serial ? 1 : static_cast<std::size_t>(4 * omp_get_max_threads());
  while (!enough(out) && next < max_chunks) {
    const std::size_t batch = std::min(wave, max_chunks - next);
    std::vector<std::vector<double>> parts(batch);
    if (exec == Exec::Serial) {
      for (std::size_t w = 0; w < batch; ++w) parts[w] = gen(next + w);
    } else {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::ptrdiff_t w = 0; w < static_cast<std::ptrdiff_t>(batch); ++w)
        parts[static_cast<std::size_t>(w)] = gen(next + static_cast<std::size_t>(w));
    }
    for (std::size_t w = 0; w < batch && !enough(out); ++w)
      out.insert(out.end(), parts[w].begin(), parts[w].end());
    next += batch;
  }
  return out;
}

void check_box(Box box) {
  if (!(box.hi > box.lo)) throw InputError("sampling box must satisfy lo < hi");
}

}  // namespace

std::vector<double> random_cloud(const CompiledNetwork& net, std::size_t count, Box box,
                                 std::uint64_t seed, Exec exec) {
  check_box(box);
  const std::size_t dim = 2 * static_cast<std::size_t>(net.n);
  auto gen = [&](std::size_t chunk) {
    auto rng = task_engine(seed, chunk);
    std::uniform_real_distribution<double> coord(box.lo, box.hi);
    std::vector<double> voltage(dim);
    std::vector<double> part(kChunkDraws * dim);
    for (std::size_t p = 0; p < kChunkDraws; ++p) {
      for (double& x : voltage) x = coord(rng);
      net.evaluate(voltage.data(), part.data() + p * dim);
    }
    return part;
  };
  auto enough = [&](const std::vector<double>& out) { return out.size() >= count * dim; };
  const std::size_t chunks = (count + kChunkDraws - 1) / kChunkDraws;
  std::vector<double> out = chunked(gen, enough, chunks, exec);
  out.resize(count * dim);
  return out;
}

std::vector<double> grid_cloud(const CompiledNetwork& net, std::size_t per_axis, Box box,
                               Exec exec) {
  check_box(box);
  if (per_axis < 2) throw InputError("grid needs at least 2 nodes per axis");
  if (net.n > 4) throw InputError("grid mode supports n <= 4");
  const std::size_t dim = 2 * static_cast<std::size_t>(net.n);
  double total = std::pow(static_cast<double>(per_axis), static_cast<double>(dim));
  if (total > 1e7) throw InputError("grid too large: more than 1e7 evaluations");
  const auto points = static_cast<std::size_t>(total);
  std::vector<double> voltages(points * dim);
  const double step = (box.hi - box.lo) / static_cast<double>(per_axis - 1);
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    for (std::size_t c = dim; c-- > 0;) {
      voltages[p * dim + c] = box.lo + step * static_cast<double>(rest % per_axis);
      rest /= per_axis;
    }
  }
  std::vector<double> out(voltages.size());
  if (exec == Exec::Serial)
    evaluate_serial(net, voltages, out);
  else
    evaluate_parallel(net, voltages, out);
  return out;
}

std::vector<double> level_set_cloud(const CompiledNetwork& net, const CertificateMatrices& level_form,
                                    double level, std::size_t count, Box box, std::uint64_t seed,
                                    Exec exec, std::size_t max_draws) {
  check_box(box);
  const int n = net.n;
  const std::size_t dim = 2 * static_cast<std::size_t>(n);
  if (level_form.h.rows() != n) throw InputError("level form dimension mismatch");
  // dense row-major copy; n is small and Eigen temporaries per draw dominate otherwise
  std::vector<Complex> h(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<Complex> j(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    j[static_cast<std::size_t>(r)] = level_form.j(r);
    for (int c = 0; c < n; ++c) h[static_cast<std::size_t>(r * n + c)] = level_form.h(r, c);
  }

  auto gen = [&](std::size_t chunk) {
    auto rng = task_engine(seed, chunk);
    std::uniform_real_distribution<double> coord(box.lo, box.hi);
    std::normal_distribution<double> gauss;
    std::vector<Complex> anchor(static_cast<std::size_t>(n)), dir(static_cast<std::size_t>(n));
    std::vector<Complex> hd(static_cast<std::size_t>(n)), ha(static_cast<std::size_t>(n));
    std::vector<double> point(dim);
    std::vector<double> part;
    part.reserve(kChunkDraws * dim);
    for (std::size_t draw = 0; draw < kChunkDraws; ++draw) {
      for (auto& z : anchor) z = {coord(rng), coord(rng)};
      for (auto& z : dir) z = {gauss(rng), gauss(rng)};
      // q(A + t d) = a t^2 + b t + c, t real
      double a = 0.0, b = 0.0, c = -level;
      for (int r = 0; r < n; ++r) {
        Complex sd{}, sa{};
        for (int k = 0; k < n; ++k) {
          sd += h[static_cast<std::size_t>(r * n + k)] * dir[static_cast<std::size_t>(k)];
          sa += h[static_cast<std::size_t>(r * n + k)] * anchor[static_cast<std::size_t>(k)];
        }
        const Complex dr = std::conj(dir[static_cast<std::size_t>(r)]);
        const Complex ar = std::conj(anchor[static_cast<std::size_t>(r)]);
        const Complex jr = std::conj(j[static_cast<std::size_t>(r)]);
        a += (dr * sd).real();
        b += 2.0 * (dr * sa).real() - 2.0 * (jr * dir[static_cast<std::size_t>(r)]).real();
        c += (ar * sa).real() - 2.0 * (jr * anchor[static_cast<std::size_t>(r)]).real();
      }
      double roots[2];
      int found = 0;
      if (std::abs(a) > 1e-300) {
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) continue;
        // numerically stable quadratic roots
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        roots[found++] = q / a;
        if (q != 0.0) roots[found++] = c / q;
      } else if (b != 0.0) {
        roots[found++] = -c / b;
      }
      for (int r = 0; r < found; ++r) {
        const double t = roots[r];
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) {
          const Complex v = anchor[static_cast<std::size_t>(i)] + t * dir[static_cast<std::size_t>(i)];
          point[static_cast<std::size_t>(i)] = v.real();
          point[static_cast<std::size_t>(n + i)] = v.imag();
          inside = v.real() >= box.lo && v.real() <= box.hi && v.imag() >= box.lo &&
                   v.imag() <= box.hi;
        }
        if (!inside) continue;
        part.resize(part.size() + dim);
        net.evaluate(point.data(), part.data() + part.size() - dim);
      }
    }
    return part;
  };
  auto enough = [&](const std::vector<double>& out) { return out.size() >= count * dim; };
  const std::size_t chunks = (max_draws + kChunkDraws - 1) / kChunkDraws;
  std::vector<double> out = chunked(gen, enough, chunks, exec);
  if (out.size() > count * dim) out.resize(count * dim);
  return out;
}

}  // namespace solvcert::kernels
