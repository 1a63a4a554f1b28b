#include "solvcert/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

namespace solvcert::report {

Json number(double x) {
  if (!std::isfinite(x)) throw std::logic_error("non-finite value in report");
  return x;
}

Json complex(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json complex_vector(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex(v(i)));
  return out;
}

Json to_json(const NetworkClass& cls) {
  Json out;
  out["connected"] = cls.connected;
  out["acyclic"] = cls.acyclic;
  out["homogeneous"] = cls.homogeneous;
  out["homogeneity_angle"] = cls.homogeneity_angle ? number(*cls.homogeneity_angle) : Json(nullptr);
  out["purely_resistive"] = cls.purely_resistive;
  out["all_resistive_lines"] = cls.all_resistive_lines;
  return out;
}

Json to_json(const TheoremVerdict& v) {
  Json out;
  out["theorem"] = to_string(v.theorem);
  out["applicable"] = v.applicable;
  out["claimed_set"] = to_string(v.claimed_set);
  out["reasons"] = v.reasons;
  out["notes"] = v.notes;
  return out;
}

Json to_json(const std::vector<TheoremVerdict>& verdicts) {
  Json out = Json::array();
  for (const TheoremVerdict& v : verdicts) out.push_back(to_json(v));
  return out;
}

Json probe_summary(const ProbeReport& probe) {
  Json out;
  out["real_only"] = probe.real_only;
  out["components"] = probe.components;
  out["samples"] = probe.samples;
  out["boundary_samples"] = probe.boundary_samples;
  out["psd_bordered"] = probe.psd_bordered;
  out["inconsistent"] = probe.inconsistent;
  out["multiplicity_histogram"] = probe.multiplicity_histogram;
  out["max_multiplicity"] = probe.max_multiplicity;
  out["min_consistency_residual"] = number(probe.min_consistency_residual);
  out["refined"] = probe.refined;
  out["phase_checked"] = probe.phase_checked;
  out["phase_failures"] = probe.phase_failures;
  out["candidates"] = probe.candidates.size();
  return out;
}

Json to_json(const FlatEdgeWitness& w) {
  Json out;
  out["direction"] = complex_vector(w.c.coeffs);
  Json stacked = Json::array();
  const RVector s = w.c.stacked();
  for (Eigen::Index i = 0; i < s.size(); ++i) stacked.push_back(number(s(i)));
  out["direction_stacked"] = stacked;
  out["v_b"] = complex_vector(w.v_b.v);
  out["v_null"] = complex_vector(w.v_null);
  out["null_dimension"] = w.null_basis.cols();
  out["hyperplane_level"] = number(w.hyperplane_level);
  out["residual"] = number(w.residual);
  out["label"] = "candidate";
  return out;
}

Json to_json(const SubsetBounds& b, const Network& net) {
  Json out;
  out["p_min"] = number(b.p_min);
  out["p_max"] = b.p_max ? number(*b.p_max) : Json(nullptr);
  out["p_max_unbounded"] = !b.p_max.has_value();
  Json per = Json::array();
  for (const FlatEdgeWitness& w : b.witnesses) per.push_back(number(p_of_c(net, w)));
  out["p_of_c"] = per;
  if (b.p_max)
    out["claim"] = "P_min <= c_+ . p <= P_max is a convex subset of the solvability set";
  else
    out["claim"] = "no flat edge found; only the lower bound c_+ . p >= P_min is certified";
  return out;
}

Json to_json(const SliceReport& s) {
  Json out;
  out["level"] = number(s.level);
  out["thickness"] = number(s.thickness);
  out["view"] = s.view;
  out["in_slab"] = s.in_slab;
  out["projected_points"] = s.points2d.size();
  out["insufficient_data"] = s.insufficient_data;
  out["hull_area"] = number(s.hull_area);
  out["cloud_area"] = number(s.cloud_area);
  out["convexity_ratio"] = number(s.convexity_ratio);
  out["alpha"] = number(s.alpha);
  Json flat;
  flat["fires"] = s.flatness.fires;
  flat["exponent"] = number(s.flatness.exponent);
  flat["span_fine"] = number(s.flatness.span_fine);
  flat["span_coarse"] = number(s.flatness.span_coarse);
  flat["normal"] = Json::array({number(s.flatness.normal.x), number(s.flatness.normal.y)});
  out["flat_segment"] = flat;
  return out;
}

Json to_json(const threebus::CrossValidation& cv) {
  auto optional_number = [](const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); };
  Json out;
  out["y"] = complex(cv.model.y);
  Json analytic;
  analytic["p_min"] = number(cv.analytic.p_min);
  analytic["p_max"] = optional_number(cv.analytic.p_max);
  analytic["edge_level"] = optional_number(cv.analytic_edge_level);
  analytic["edge_imag_total_magnitude"] = optional_number(cv.analytic.edge_level_magnitude);
  Json computed;
  computed["p_min"] = number(cv.computed.p_min);
  computed["p_max"] = optional_number(cv.computed.p_max);
  computed["edge_level"] = optional_number(cv.computed_edge_level);
  computed["direction_alignment"] = number(cv.direction_alignment);
  out["analytic"] = analytic;
  out["computed"] = computed;
  // direct evaluation of S on the edge picks +|y|^2/(4 Im y) for Im(S_1+S_2)
  out["edge_sign_resolution"] = "Im(S_1+S_2) on the flat edge = +|y|^2/(4 Im y), fixed by evaluating S(V_b + z V_null)";
  out["agree"] = cv.agree;
  out["diagnostics"] = cv.diagnostics;
  return out;
}

Json provenance(std::uint64_t seed, const Tolerances& tol, std::size_t samples, const std::string& command,
                const std::optional<std::string>& timestamp) {
  Json out;
  out["tool"] = "solvcert";
  out["version"] = kToolVersion;
  out["command"] = command;
  out["seed"] = seed;
  out["samples"] = samples;
  Json t;
  t["angle_tol"] = number(tol.angle_tol);
  t["psd_tol"] = number(tol.psd_tol);
  t["mult_tol"] = number(tol.mult_tol);
  t["newton_tol"] = number(tol.newton_tol);
  out["tolerances"] = t;
  out["timestamp"] = timestamp ? Json(*timestamp) : Json(nullptr);
  return out;
}

std::string set_conclusion(SolvabilitySet set, const std::vector<TheoremVerdict>& verdicts,
                           const ProbeReport* probe) {
  for (const TheoremVerdict& v : verdicts) {
    if (!v.applicable) continue;
    // convexity of the full set carries over to its projection
    if (v.claimed_set == set || v.claimed_set == SolvabilitySet::Full) return "theorem-certified";
  }
  if (!probe) return "not-probed";
  if (!probe->candidates.empty()) return "witness-found";
  return "no-violation-found(" + std::to_string(probe->samples) + " samples)";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace solvcert::report
