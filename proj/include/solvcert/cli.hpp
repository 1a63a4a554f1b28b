#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "solvcert/boundary.hpp"
#include "solvcert/certificates.hpp"

namespace solvcert::cli {

enum class Command { Classify, Certify, Boundary, Slice, Subset, ThreeBus };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  Command command = Command::Classify;
  std::string network_path;
  std::uint64_t seed = 1;
  std::size_t samples = 500;
  Tolerances tolerances;
  std::string output_dir = ".";

  std::optional<double> level;
  std::optional<double> thickness;
  std::optional<std::string> proj;  // "f1,f2"
  std::optional<std::string> cap;   // "f" or "f:depth"
  std::string view = "auto";        // auto | default | witness
  std::string sampler = "level";    // level | box
  std::optional<double> alpha_fraction;
  kernels::Box box;
  std::size_t points = 0;  // 0: command default
  std::size_t grid = 0;    // boundary: grid nodes per axis instead of random points
  std::optional<double> epsilon;
  std::optional<Complex> y;  // threebus
  int threads = 0;
  bool timestamp = true;
};

/// Throws InputError on invalid settings.
void validate(const RunConfig& cfg);

/// Executes one command, writing report.json and CSV files to output_dir and a
/// short human summary to `out`. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, char** argv);

/// Linear functional of p = (P_1..P_n, Q_1..Q_n) written as a sum of terms
/// like "P1-P2" or "0.5*Q1+Q2".
Functional parse_functional(const std::string& text, int n);

/// "lo,hi".
kernels::Box parse_box(const std::string& text);

}  // namespace solvcert::cli
