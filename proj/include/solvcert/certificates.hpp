#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvcert/kernels.hpp"
#include "solvcert/network.hpp"
#include "solvcert/quadratic_map.hpp"

namespace solvcert {

struct Tolerances {
  double angle_tol = 1e-9;
  double psd_tol = 1e-9;
  double mult_tol = 1e-8;
  double newton_tol = 1e-8;
};

enum class LemmaBranch {
  AllPositive,       // min Re C_i > 0
  UniformImaginary,  // C_i = j alpha for all i, H_c = 0
  NotApplicable,     // H_c is not PSD, the lemma says nothing
  Violated,          // H_c PSD but neither branch fits
  /// The slack is a cut vertex and the pieces fit different branches (a
  /// piece may also carry C = 0). H_c is block diagonal in that case and the
  /// lemma holds piece by piece.
  Blockwise,
};

struct LemmaVerdict {
  bool holds = true;
  LemmaBranch branch = LemmaBranch::NotApplicable;
  double alpha = 0.0;
  double min_eigenvalue = 0.0;
  double min_real_coeff = 0.0;
  /// Offending direction, set only for the Violated branch.
  std::optional<Direction> witness;
};

/// Sign structure of PSD certificate directions on a purely resistive
/// connected network (complex directions allowed). The two-branch statement
/// needs the PQ buses to stay connected once the slack is removed; otherwise
/// each slack component is checked separately.
LemmaVerdict check_lemma1(const Network& net, const Direction& c, double psd_tol = 1e-9);

/// Same for real directions on a connected network with Re y > 0 everywhere.
LemmaVerdict check_lemma2(const Network& net, const Direction& c, double psd_tol = 1e-9);

struct ConeSample {
  Direction c;  // unit norm
  bool boundary = false;
  /// min eigenvalue of H_c relative to ||H_c||_2
  double min_eig_rel = 0.0;
};

/// Directions with H_c PSD. Sample 0 is c_+; the rest intersect the segment
/// from c_+ toward a random direction with the cone boundary (or stop inside
/// it when the whole segment is PSD). Every fourth sample is pulled back to a
/// random interior point of its segment. Requires H_+ positive definite.
std::vector<ConeSample> sample_psd_cone(const Network& net, bool real_only, std::size_t count,
                                        std::uint64_t seed,
                                        kernels::Exec exec = kernels::Exec::Parallel);

/// Number of eigenvalues of a PSD Hermitian matrix within mult_tol*||A||_2 of
/// zero. Throws HypothesisError if A is not PSD within psd_tol. See linalg.hpp
/// for scale_floor.
int zero_multiplicity(const CMatrix& a, double psd_tol = 1e-9, double mult_tol = 1e-8,
                      double scale_floor = 0.0);

/// Natural size of H_c used as the tolerance floor: 1e-12 * ||c|| * max|y|.
double certificate_scale_floor(const Network& net, const Direction& c);

struct FlatEdgeWitness {
  Direction c;
  VoltageProfile v_b;
  CVector v_null;       // unit norm
  CMatrix null_basis;   // admissible null directions, orthonormal columns
  double hyperplane_level = 0.0;
  double residual = 0.0;  // max of the three defining residuals, relative
};

/// Flat edge along direction c: H_c v_null = 0, J_c^H v_null = 0,
/// H_c v_b = J_c. Returns nullopt when H_c is nonsingular or the boundary
/// system is inconsistent. Throws HypothesisError if H_c is not PSD.
std::optional<FlatEdgeWitness> find_flat_edge(const Network& net, const Direction& c,
                                              double psd_tol = 1e-9, double mult_tol = 1e-8,
                                              double consistency_tol = 1e-8);

struct ProbeOptions {
  bool real_only = false;
  std::size_t samples = 500;
  std::uint64_t seed = 1;
  double psd_tol = 1e-9;
  double mult_tol = 1e-8;
  double consistency_tol = 1e-8;
  /// Boundary samples with the smallest consistency residual that seed a
  /// local search for flat-edge directions.
  int refine_starts = 8;
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct ProbeReport {
  bool real_only = false;
  /// Pieces left after deleting the slack; each is probed on its own.
  std::size_t components = 1;
  std::size_t samples = 0;
  std::size_t boundary_samples = 0;
  /// Directions for which a PSD singular bordered matrix A was assembled.
  std::size_t psd_bordered = 0;
  /// Boundary directions whose system H_c V = J_c has no solution.
  std::size_t inconsistent = 0;
  /// histogram[k] = number of PSD bordered matrices with k zero eigenvalues
  std::vector<std::size_t> multiplicity_histogram;
  int max_multiplicity = 0;
  /// Smallest |J^H u| / |J| (u a null vector of H_c) over boundary samples
  /// and local searches.
  double min_consistency_residual = 0.0;
  std::size_t refined = 0;
  /// Null vectors of boundary samples checked for a common phase (only for
  /// real-only probes of purely resistive networks).
  std::size_t phase_checked = 0;
  std::size_t phase_failures = 0;
  /// Distinct flat-edge directions, unit norm, sign chosen so H_c is PSD.
  std::vector<FlatEdgeWitness> candidates;
};

/// Sampling probe of the bordered-matrix condition: for sampled PSD cone
/// directions, assemble A(a, c) with a = J^H H^+ J whenever that makes A PSD
/// and singular, and record its zero multiplicity; multiplicity >= 2 marks a
/// flat-edge candidate. Finding nothing is evidence, not proof.
///
/// When the slack is a cut vertex the map factorizes over slack components and
/// every direction vanishing on a whole component has a trivial product face;
/// the probe therefore runs per component (seed + k for component k) and lifts
/// candidates back by zero padding.
ProbeReport probe_sufficient_condition(const Network& net, const ProbeOptions& opts);

enum class Theorem { HomogeneousTreeFullSet, TreeRealSet, ResistiveRealSet };
enum class SolvabilitySet { Full, Real };

struct TheoremVerdict {
  Theorem theorem;
  bool applicable = false;
  SolvabilitySet claimed_set = SolvabilitySet::Full;
  std::vector<std::string> reasons;  // failed hypotheses
  std::vector<std::string> notes;
};

std::vector<TheoremVerdict> theorem_verdicts(const Network& net, double angle_tol = 1e-9);

std::string to_string(Theorem t);
std::string to_string(SolvabilitySet s);
std::string to_string(LemmaBranch b);

/// Adds eps to every lossless line (Re y == 0); other lines unchanged.
Network epsilon_regularize(const Network& net, double eps);

/// True iff e^{-j theta} v is entrywise real and nonnegative for some theta,
/// within tol * ||v||.
bool check_phase_alignment(const CVector& v, double tol = 1e-8);

}  // namespace solvcert
