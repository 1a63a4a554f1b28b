#include "solvcert/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "solvcert/network_io.hpp"
#include "solvcert/report.hpp"

namespace solvcert::cli {

using report::Json;

namespace {

std::string command_name(Command c) {
  switch (c) {
    case Command::Classify: return "classify";
    case Command::Certify: return "certify";
    case Command::Boundary: return "boundary";
    case Command::Slice: return "slice";
    case Command::Subset: return "subset";
    case Command::ThreeBus: return "threebus";
  }
  return "?";
}

/// Raised for consistency checks that fail on valid input.
class InternalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path prepare_output(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + cfg.output_dir + ": " + ec.message());
  return dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  f << std::setprecision(17);
  return f;
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream f = open_out(path);
  f << doc.dump(2) << "\n";
}

struct Pipeline {
  Network net;  // after optional regularization
  std::vector<std::string> notes;
};

Pipeline load(const RunConfig& cfg) {
  Network net = io::parse_network_file(cfg.network_path);
  std::vector<std::string> notes;
  if (cfg.epsilon) {
    net = epsilon_regularize(net, *cfg.epsilon);
    std::ostringstream msg;
    msg << "lossless lines regularized with Re(y) = " << *cfg.epsilon;
    notes.push_back(msg.str());
  }
  return {std::move(net), std::move(notes)};
}

ProbeOptions probe_options(const RunConfig& cfg, bool real_only) {
  ProbeOptions opts;
  opts.real_only = real_only;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.psd_tol = cfg.tolerances.psd_tol;
  opts.mult_tol = cfg.tolerances.mult_tol;
  return opts;
}

/// Probe on the network itself; a homogeneous network whose H_+ is not
/// definite is probed in its resistive gauge and the candidates mapped back.
std::optional<ProbeReport> run_probe(const Network& net, const RunConfig& cfg, bool real_only,
                                     std::vector<std::string>& notes) {
  const std::string label = real_only ? "real-set probe: " : "full-set probe: ";
  try {
    return probe_sufficient_condition(net, probe_options(cfg, real_only));
  } catch (const HypothesisError& e) {
    const NetworkClass cls = classify(net, cfg.tolerances.angle_tol);
    if (real_only || !cls.homogeneous || !cls.connected) {
      notes.push_back(label + "skipped, " + e.what() + " (try --epsilon for lossless lines)");
      return std::nullopt;
    }
    const GaugeResult g = gauge_transform(net, cfg.tolerances.angle_tol);
    ProbeReport probe = probe_sufficient_condition(g.network, probe_options(cfg, false));
    const Complex back = std::polar(1.0, -g.angle);
    for (FlatEdgeWitness& w : probe.candidates) w.c.coeffs *= back;
    notes.push_back(label + "run on the gauge-transformed network");
    return probe;
  }
}

std::optional<SubsetBounds> run_bounds(const Network& net, const ProbeReport& probe,
                                       std::vector<std::string>& notes) {
  try {
    return subset_bounds(net, probe);
  } catch (const HypothesisError& e) {
    notes.push_back(std::string("bounds skipped, ") + e.what());
    return std::nullopt;
  }
}

Json network_summary(const RunConfig& cfg, const Network& net) {
  Json out;
  out["source"] = cfg.network_path;
  out["n"] = net.n();
  out["lines"] = net.line_count();
  return out;
}

Json base_report(const RunConfig& cfg) {
  Json doc;
  doc["schema_version"] = report::kSchemaVersion;
  doc["command"] = command_name(cfg.command);
  return doc;
}

void finish(Json& doc, const RunConfig& cfg, const std::vector<std::string>& notes) {
  doc["notes"] = notes;
  doc["provenance"] = report::provenance(cfg.seed, cfg.tolerances, cfg.samples, command_name(cfg.command),
                                         cfg.timestamp ? std::optional(report::utc_timestamp()) : std::nullopt);
}

Json witness_list(const std::optional<ProbeReport>& full, const std::optional<ProbeReport>& real) {
  Json out = Json::array();
  for (const auto* probe : {full ? &*full : nullptr, real ? &*real : nullptr}) {
    if (!probe) continue;
    for (const FlatEdgeWitness& w : probe->candidates) {
      Json j = report::to_json(w);
      j["set"] = probe->real_only ? "real" : "full";
      out.push_back(std::move(j));
    }
  }
  return out;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = load(cfg);
  const NetworkClass cls = classify(p.net, cfg.tolerances.angle_tol);
  const auto verdicts = theorem_verdicts(p.net, cfg.tolerances.angle_tol);
  Json doc = base_report(cfg);
  doc["network"] = network_summary(cfg, p.net);
  doc["network_class"] = report::to_json(cls);
  doc["verdicts"] = report::to_json(verdicts);
  Json conclusion;
  conclusion["full_set"] = report::set_conclusion(SolvabilitySet::Full, verdicts, nullptr);
  conclusion["real_set"] = report::set_conclusion(SolvabilitySet::Real, verdicts, nullptr);
  doc["conclusion"] = conclusion;
  finish(doc, cfg, p.notes);
  write_json(prepare_output(cfg) / "report.json", doc);
  out << "connected=" << cls.connected << " acyclic=" << cls.acyclic << " homogeneous=" << cls.homogeneous
      << " purely_resistive=" << cls.purely_resistive << "\n";
  for (const TheoremVerdict& v : verdicts)
    out << to_string(v.theorem) << ": " << (v.applicable ? "applicable" : "not applicable") << "\n";
  return kExitOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = load(cfg);
  const NetworkClass cls = classify(p.net, cfg.tolerances.angle_tol);
  const auto verdicts = theorem_verdicts(p.net, cfg.tolerances.angle_tol);
  const auto full = run_probe(p.net, cfg, false, p.notes);
  const auto real = run_probe(p.net, cfg, true, p.notes);
  const auto bounds = full ? run_bounds(p.net, *full, p.notes) : std::nullopt;

  Json doc = base_report(cfg);
  doc["network"] = network_summary(cfg, p.net);
  doc["network_class"] = report::to_json(cls);
  doc["verdicts"] = report::to_json(verdicts);
  Json conclusion;
  conclusion["full_set"] = report::set_conclusion(SolvabilitySet::Full, verdicts, full ? &*full : nullptr);
  conclusion["real_set"] = report::set_conclusion(SolvabilitySet::Real, verdicts, real ? &*real : nullptr);
  doc["conclusion"] = conclusion;
  Json probe;
  probe["full"] = full ? report::probe_summary(*full) : Json(nullptr);
  probe["real"] = real ? report::probe_summary(*real) : Json(nullptr);
  doc["probe"] = probe;
  if (Json w = witness_list(full, real); !w.empty()) doc["witnesses"] = std::move(w);
  doc["bounds"] = bounds ? report::to_json(*bounds, p.net) : Json(nullptr);
  finish(doc, cfg, p.notes);
  write_json(prepare_output(cfg) / "report.json", doc);

  out << "full set: " << conclusion["full_set"].get<std::string>() << "\n";
  out << "real set: " << conclusion["real_set"].get<std::string>() << "\n";
  if (bounds) {
    out << std::setprecision(10) << "P_min = " << bounds->p_min;
    if (bounds->p_max)
      out << ", P_max = " << *bounds->p_max << "\n";
    else
      out << ", P_max unbounded\n";
  }
  return kExitOk;
}

int cmd_boundary(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = load(cfg);
  const int n = p.net.n();
  const std::vector<BoundaryPoint> points = sample_boundary(p.net, cfg.samples, cfg.seed);
  CloudSpec spec;
  spec.box = cfg.box;
  spec.seed = cfg.seed;
  if (cfg.grid > 0) {
    spec.mode = CloudSpec::Mode::Grid;
    spec.per_axis = cfg.grid;
  } else {
    spec.count = cfg.points > 0 ? cfg.points : 100000;
  }
  const ImageCloud cloud = image_cloud(p.net, spec);

  // every cloud point lies on the far side of every supporting hyperplane
  std::size_t violations = 0;
  double worst = 0.0;
  for (const BoundaryPoint& b : points) {
    const RVector c = b.direction.stacked();
    const double slack = 1e-9 * (1.0 + std::abs(b.support_value));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const double gap = apply(c, cloud.point(i)) - b.support_value;
      if (gap < -slack) ++violations;
      worst = std::min(worst, gap);
    }
  }

  const auto dir = prepare_output(cfg);
  {
    std::ofstream f = open_out(dir / "boundary.csv");
    for (int k = 0; k < 2 * n; ++k) f << "c" << k + 1 << ",";
    for (int k = 0; k < n; ++k) f << "P" << k + 1 << ",";
    for (int k = 0; k < n; ++k) f << "Q" << k + 1 << ",";
    f << "support\n";
    for (const BoundaryPoint& b : points) {
      const RVector c = b.direction.stacked();
      const RVector s = b.injection.stacked();
      for (Eigen::Index k = 0; k < c.size(); ++k) f << c(k) << ",";
      for (Eigen::Index k = 0; k < s.size(); ++k) f << s(k) << ",";
      f << b.support_value << "\n";
    }
  }
  {
    std::ofstream f = open_out(dir / "cloud.csv");
    for (int k = 0; k < n; ++k) f << "P" << k + 1 << ",";
    for (int k = 0; k < n; ++k) f << "Q" << k + 1 << (k + 1 < n ? "," : "\n");
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const double* q = cloud.point(i);
      for (int k = 0; k < 2 * n; ++k) f << q[k] << (k + 1 < 2 * n ? "," : "\n");
    }
  }

  Json doc = base_report(cfg);
  doc["network"] = network_summary(cfg, p.net);
  doc["network_class"] = report::to_json(classify(p.net, cfg.tolerances.angle_tol));
  Json b;
  b["boundary_points"] = points.size();
  b["cloud_points"] = cloud.size();
  b["cloud_mode"] = cfg.grid > 0 ? "grid" : "random";
  b["box"] = Json::array({report::number(cfg.box.lo), report::number(cfg.box.hi)});
  b["support_violations"] = violations;
  b["min_support_gap"] = report::number(worst);
  b["files"] = Json::array({"boundary.csv", "cloud.csv"});
  doc["boundary"] = b;
  finish(doc, cfg, p.notes);
  write_json(dir / "report.json", doc);
  out << points.size() << " boundary points, " << cloud.size() << " cloud points, " << violations
      << " support violations\n";
  if (violations > 0) throw InternalFailure("cloud points below a supporting hyperplane");
  return kExitOk;
}

SliceView choose_view(const RunConfig& cfg, const Network& net, std::vector<std::string>& notes,
                      std::optional<ProbeReport>& probe) {
  const int n = net.n();
  SliceView view;
  if (cfg.proj) {
    const auto comma = cfg.proj->find(',');
    if (comma == std::string::npos) throw InputError("--proj expects two functionals separated by a comma");
    view.axes = {parse_functional(cfg.proj->substr(0, comma), n), parse_functional(cfg.proj->substr(comma + 1), n)};
    view.label = *cfg.proj;
  } else if (cfg.view == "default") {
    view = default_view(n);
  } else {
    probe = run_probe(net, cfg, false, notes);
    if (probe && !probe->candidates.empty()) {
      view = witness_view(n, probe->candidates.front().c);
    } else if (cfg.view == "witness") {
      throw InputError("--view witness: the probe found no flat-edge witness");
    } else {
      view = default_view(n);
    }
  }
  if (cfg.cap) {
    const auto colon = cfg.cap->find(':');
    SliceView::Cap cap{parse_functional(cfg.cap->substr(0, colon), n), 0.01};
    if (colon != std::string::npos) {
      try {
        cap.depth = std::stod(cfg.cap->substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError("--cap depth is not a number");
      }
      if (!(cap.depth > 0.0)) throw InputError("--cap depth must be positive");
    }
    view.cap = cap;
  }
  if (cfg.alpha_fraction) view.alpha_fraction = *cfg.alpha_fraction;
  return view;
}

int cmd_slice(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.level) throw InputError("slice needs --level");
  Pipeline p = load(cfg);
  std::optional<ProbeReport> probe;
  const SliceView view = choose_view(cfg, p.net, p.notes, probe);
  ImageCloud cloud;
  if (cfg.sampler == "level") {
    cloud = level_cloud(p.net, *cfg.level, cfg.points > 0 ? cfg.points : 3000000, cfg.box, cfg.seed);
  } else {
    CloudSpec spec;
    spec.count = cfg.points > 0 ? cfg.points : 200000;
    spec.box = cfg.box;
    spec.seed = cfg.seed;
    cloud = image_cloud(p.net, spec);
  }
  const SliceReport slice = slice_convexity(cloud, *cfg.level, cfg.thickness, view);

  const auto dir = prepare_output(cfg);
  {
    std::ofstream f = open_out(dir / "slice.csv");
    f << "x,y\n";
    for (const geometry::Point2& q : slice.points2d) f << q.x << "," << q.y << "\n";
  }
  constexpr double kConvexThreshold = 0.98;
  Json doc = base_report(cfg);
  doc["network"] = network_summary(cfg, p.net);
  Json s = report::to_json(slice);
  s["sampler"] = cfg.sampler;
  s["cloud_points"] = cloud.size();
  s["convex_threshold"] = kConvexThreshold;
  s["looks_convex"] = !slice.insufficient_data && slice.convexity_ratio >= kConvexThreshold;
  s["files"] = Json::array({"slice.csv"});
  doc["slice"] = s;
  if (probe) doc["probe"] = report::probe_summary(*probe);
  finish(doc, cfg, p.notes);
  write_json(dir / "report.json", doc);
  if (slice.insufficient_data) {
    out << "insufficient data: " << slice.points2d.size() << " points in the slice\n";
  } else {
    out << std::setprecision(6) << "convexity_ratio = " << slice.convexity_ratio
        << ", flat segment: " << (slice.flatness.fires ? "yes" : "no") << " (exponent " << slice.flatness.exponent
        << ")\n";
  }
  return kExitOk;
}

int cmd_subset(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = load(cfg);
  const auto verdicts = theorem_verdicts(p.net, cfg.tolerances.angle_tol);
  const auto full = run_probe(p.net, cfg, false, p.notes);
  if (!full) throw InputError("subset bounds need the probe; see notes");
  const auto bounds = run_bounds(p.net, *full, p.notes);
  if (!bounds) throw InputError("subset bounds need H_+ positive definite");

  // a target 5% below P_min must not be reachable
  const BoundaryPoint lowest = supporting_point(p.net, cplus_direction(p.net.n()));
  PowerInjection target = lowest.injection;
  const double shift = 0.05 * std::max(std::abs(bounds->p_min), 1e-12);
  for (Eigen::Index k = 0; k < target.s.size(); ++k) target.s(k) -= shift / static_cast<double>(target.s.size());
  NewtonOptions nopt;
  nopt.tol = cfg.tolerances.newton_tol;
  const NewtonResult below = multistart_feasibility(p.net, target, cfg.seed, nopt);

  Json doc = base_report(cfg);
  doc["network"] = network_summary(cfg, p.net);
  doc["verdicts"] = report::to_json(verdicts);
  doc["probe"] = report::probe_summary(*full);
  if (Json w = witness_list(full, std::nullopt); !w.empty()) doc["witnesses"] = std::move(w);
  doc["bounds"] = report::to_json(*bounds, p.net);
  Json band;
  band["target_total"] = report::number(bounds->p_min - shift);
  band["newton"] = below.converged ? "converged" : "inconclusive";
  band["residual"] = report::number(std::isfinite(below.residual) ? below.residual : -1.0);
  doc["infeasibility_band"] = band;
  finish(doc, cfg, p.notes);
  write_json(prepare_output(cfg) / "report.json", doc);

  out << std::setprecision(10) << "P_min = " << bounds->p_min;
  if (bounds->p_max)
    out << ", P_max = " << *bounds->p_max << "\n";
  else
    out << ", P_max unbounded\n";
  if (below.converged) throw InternalFailure("Newton reached a target below P_min");
  return kExitOk;
}

int cmd_threebus(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.y) throw InputError("threebus needs --y a+bj");
  const threebus::Model model{*cfg.y};
  const threebus::CrossValidation cv = threebus::cross_validate(model, cfg.seed, cfg.samples);
  const Network net = model.network();

  Json doc = base_report(cfg);
  Json nj;
  nj["source"] = "threebus";
  nj["n"] = net.n();
  nj["lines"] = net.line_count();
  doc["network"] = nj;
  doc["network_class"] = report::to_json(cv.network_class);
  doc["verdicts"] = report::to_json(cv.verdicts);
  Json conclusion;
  conclusion["full_set"] = report::set_conclusion(SolvabilitySet::Full, cv.verdicts, &cv.probe);
  conclusion["real_set"] = report::set_conclusion(SolvabilitySet::Real, cv.verdicts, nullptr);
  doc["conclusion"] = conclusion;
  doc["probe"] = report::probe_summary(cv.probe);
  if (Json w = witness_list(cv.probe, std::nullopt); !w.empty()) doc["witnesses"] = std::move(w);
  doc["bounds"] = report::to_json(cv.computed, net);
  doc["threebus"] = report::to_json(cv);
  std::vector<std::string> notes;
  finish(doc, cfg, notes);
  write_json(prepare_output(cfg) / "report.json", doc);

  out << std::setprecision(10) << "P_min = " << cv.computed.p_min << " (analytic " << cv.analytic.p_min << ")\n";
  if (cv.computed.p_max)
    out << "P_max = " << *cv.computed.p_max;
  else
    out << "P_max unbounded";
  if (cv.analytic.p_max)
    out << " (analytic " << *cv.analytic.p_max << ")\n";
  else
    out << " (analytic unbounded)\n";
  for (const std::string& d : cv.diagnostics) out << "mismatch: " << d << "\n";
  if (!cv.agree) throw InternalFailure("3-bus cross-validation mismatch");
  return kExitOk;
}

}  // namespace

void validate(const RunConfig& cfg) {
  const Tolerances& t = cfg.tolerances;
  for (double v : {t.angle_tol, t.psd_tol, t.mult_tol, t.newton_tol})
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("tolerances must be positive and finite");
  if (cfg.samples < 1) throw InputError("--samples must be at least 1");
  if (!(cfg.box.hi > cfg.box.lo)) throw InputError("--box needs lo < hi");
  if (cfg.thickness && !(*cfg.thickness > 0.0)) throw InputError("--thickness must be positive");
  if (cfg.view != "auto" && cfg.view != "default" && cfg.view != "witness")
    throw InputError("--view must be auto, default or witness");
  if (cfg.sampler != "level" && cfg.sampler != "box") throw InputError("--sampler must be level or box");
  if (cfg.command != Command::ThreeBus && cfg.network_path.empty()) throw InputError("missing network file");
  if (cfg.threads < 0) throw InputError("--threads must be nonnegative");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    kernels::set_thread_limit(cfg.threads);
    switch (cfg.command) {
      case Command::Classify: return cmd_classify(cfg, out);
      case Command::Certify: return cmd_certify(cfg, out);
      case Command::Boundary: return cmd_boundary(cfg, out);
      case Command::Slice: return cmd_slice(cfg, out);
      case Command::Subset: return cmd_subset(cfg, out);
      case Command::ThreeBus: return cmd_threebus(cfg, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

Functional parse_functional(const std::string& text, int n) {
  Functional f = Functional::Zero(2 * n);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&](const std::string& why) { throw InputError("bad functional '" + text + "': " + why); };
  if (s.empty()) fail("empty");
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (!first) {
      fail("expected + or - between terms");
    }
    first = false;
    double coeff = 1.0;
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
      std::size_t used = 0;
      try {
        coeff = std::stod(s.substr(i), &used);
      } catch (const std::exception&) {
        fail("bad coefficient");
      }
      i += used;
      if (i < s.size() && s[i] == '*') ++i;
    }
    if (i >= s.size() || (s[i] != 'P' && s[i] != 'Q' && s[i] != 'p' && s[i] != 'q')) fail("expected P<k> or Q<k>");
    const bool reactive = s[i] == 'Q' || s[i] == 'q';
    ++i;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("missing bus index");
    const int bus = std::stoi(s.substr(start, i - start));
    if (bus < 1 || bus > n) fail("bus index " + std::to_string(bus) + " out of range 1.." + std::to_string(n));
    f((reactive ? n : 0) + bus - 1) += sign * coeff;
  }
  if (f.isZero(0.0)) fail("all coefficients cancel");
  return f;
}

kernels::Box parse_box(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("--box expects lo,hi");
  kernels::Box box;
  try {
    std::size_t used = 0;
    box.lo = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw InputError("");
    const std::string rest = text.substr(comma + 1);
    box.hi = std::stod(rest, &used);
    if (used != rest.size()) throw InputError("");
  } catch (const std::exception&) {
    throw InputError("--box expects two numbers lo,hi, got '" + text + "'");
  }
  return box;
}

int main(int argc, char** argv) {
  CLI::App app{"Convexity certificates for power-flow solvability sets"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("SOLVCERT_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: SOLVCERT_SEED is not an unsigned integer\n";
      return kExitInput;
    }
  }
  std::optional<std::string> box, y;

  app.add_option("--seed", cfg.seed, "random seed (default from SOLVCERT_SEED, else 1)");
  app.add_option("--samples", cfg.samples, "probe / boundary samples")->check(CLI::PositiveNumber);
  app.add_option("--angle-tol", cfg.tolerances.angle_tol, "homogeneity angle tolerance [rad]");
  app.add_option("--psd-tol", cfg.tolerances.psd_tol, "relative PSD tolerance");
  app.add_option("--mult-tol", cfg.tolerances.mult_tol, "relative zero-eigenvalue tolerance");
  app.add_option("--newton-tol", cfg.tolerances.newton_tol, "Newton residual tolerance");
  app.add_option("--out", cfg.output_dir, "output directory");
  app.add_option("--threads", cfg.threads, "worker threads (0 = runtime default)");
  app.add_option("--epsilon", cfg.epsilon, "conductance added to lossless lines");
  app.add_option("--box", box, "voltage sampling box lo,hi (default -2,2)");
  app.add_option("--points", cfg.points, "cloud size");
  app.add_flag("--no-timestamp", [&](std::int64_t) { cfg.timestamp = false; }, "leave provenance.timestamp null");

  struct Sub {
    Command command;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::Classify, "classify", "structure flags and theorem applicability"},
      {Command::Certify, "certify", "theorems, probes, witnesses and bounds"},
      {Command::Boundary, "boundary", "supporting-hyperplane boundary points and an image cloud"},
      {Command::Slice, "slice", "convexity of a slice c_+ . p = level"},
      {Command::Subset, "subset", "convex-subset bounds P_min, P_max"},
      {Command::ThreeBus, "threebus", "3-bus chain against its closed forms"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->callback([&cfg, c = s.command] { cfg.command = c; });
    if (s.command == Command::ThreeBus) {
      sub->add_option("--y", y, "line admittance y_01 as a+bj")->required();
      continue;
    }
    sub->add_option("network", cfg.network_path, "network JSON file")->required();
    if (s.command == Command::Boundary) sub->add_option("--grid", cfg.grid, "grid nodes per voltage axis");
    if (s.command == Command::Slice) {
      sub->add_option("--level", cfg.level, "value of c_+ . p")->required();
      sub->add_option("--thickness", cfg.thickness, "slab half-width");
      sub->add_option("--proj", cfg.proj, "two functionals, e.g. \"Q1,Q2\" or \"P1-P2,0.5*Q1+Q2\"");
      sub->add_option("--cap", cfg.cap, "keep the cap f . p >= max - depth, as \"f:depth\"");
      sub->add_option("--view", cfg.view, "auto | default | witness");
      sub->add_option("--sampler", cfg.sampler, "level | box");
      sub->add_option("--alpha", cfg.alpha_fraction, "alpha as a fraction of the hull diameter");
    }
  }

  try {
    app.parse(argc, argv);
    if (box) cfg.box = parse_box(*box);
    if (y) cfg.y = io::parse_complex(*y);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace solvcert::cli
