// Command-line surface for the two-filament leapfrogging laboratory:
// equilibria, classify, simulate, portrait, parallel, pdecheck.
//
// Exit codes: 0 success, 2 invalid input (machine-readable error object on
// stderr), 1 runtime failure (partial output is flushed first, with
// termination metadata).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leapfrog/core.hpp"
#include "leapfrog/dyn_opp.hpp"
#include "leapfrog/dyn_same.hpp"
#include "leapfrog/filament3d.hpp"
#include "leapfrog/fullode.hpp"
#include "leapfrog/integrate.hpp"
#include "leapfrog/portrait.hpp"

using json = nlohmann::ordered_json;
using namespace leapfrog;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json num_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

struct OutputTarget {
  std::string path;  // empty = stdout
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path, std::ios::binary);
      if (!file) throw Error(Errc::ValidationFailure, "cannot open output file: " + path);
    }
    return file;
  }
};

void emit_error(const std::string& code, const std::string& message) {
  json err = {{"error", {{"code", code}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

void emit_error(Errc code, const std::string& message) {
  emit_error(errc_name(code), message);
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SingularPoint:
    case Errc::Inconclusive:
    case Errc::NotClosed:
      return 1;
    default:
      return 2;
  }
}

// ---------------------------------------------------------------------------
// shared inputs

struct ProblemInputs {
  // reduced mode
  std::string regime;
  double ratio = 1.0;
  double d = 1.0;
  double theta0 = 0.0;
  double w0 = 0.0;
  // physical mode
  double gamma1 = 0.0, gamma2 = 0.0;
  double r1 = 0.0, z1 = 0.0, r2 = 0.0, z2 = 0.0;
  // shared
  double alpha = 0.1;

  CLI::Option* opt_regime = nullptr;
  CLI::Option* opt_gamma1 = nullptr;
  CLI::Option* opt_theta0 = nullptr;

  bool physical_mode() const { return opt_gamma1 && opt_gamma1->count() > 0; }
  bool reduced_mode() const { return opt_regime && opt_regime->count() > 0; }
};

void add_reduced_options(CLI::App* cmd, ProblemInputs& in, bool with_state) {
  in.opt_regime = cmd->add_option("--regime", in.regime, "reduced-mode regime: same | opp")
                      ->check(CLI::IsMember({"same", "opp"}));
  cmd->add_option("--ratio,--beta,--gamma", in.ratio,
                  "vorticity ratio (beta for same, gamma for opp), >= 1");
  cmd->add_option("--d", in.d, "invariant scale d (regime convention)");
  if (with_state) {
    in.opt_theta0 = cmd->add_option("--theta0", in.theta0, "initial reduced angle");
    cmd->add_option("--w0", in.w0, "initial axial separation W = z1 - z2");
  }
}

void add_physical_options(CLI::App* cmd, ProblemInputs& in) {
  in.opt_gamma1 = cmd->add_option("--gamma1", in.gamma1, "vorticity strength of filament 1");
  cmd->add_option("--gamma2", in.gamma2, "vorticity strength of filament 2");
  cmd->add_option("--r1", in.r1, "radius of filament 1");
  cmd->add_option("--z1", in.z1, "axial position of filament 1");
  cmd->add_option("--r2", in.r2, "radius of filament 2");
  cmd->add_option("--z2", in.z2, "axial position of filament 2");
}

struct ResolvedProblem {
  ModelParams params;
  ReducedState state0;
  std::optional<CanonicalSetup> canonical;  // present in physical mode
  double z1 = 0.0, z2 = 0.0;                // axial positions matching state0.w
};

// Validates the mode choice and produces canonical parameters (+ state when
// requested).  Physical mode runs canonicalize and echoes it in metadata.
ResolvedProblem resolve(const ProblemInputs& in, bool need_state) {
  if (in.physical_mode() == in.reduced_mode())
    throw Error(Errc::ValidationFailure,
                "supply exactly one of --regime ... (reduced) or --gamma1 ... (physical)");
  ResolvedProblem out;
  if (in.physical_mode()) {
    PhysicalState phys{in.r1, in.z1, in.r2, in.z2};
    CanonicalSetup setup = canonicalize(in.gamma1, in.gamma2, phys, in.alpha);
    out.params = setup.params;
    out.state0 = setup.reduced0;
    out.canonical = setup;
    out.z1 = setup.swapped ? in.z2 : in.z1;
    out.z2 = setup.swapped ? in.z1 : in.z2;
  } else {
    out.params.regime = in.regime == "same" ? Regime::SameSign : Regime::OppositeSign;
    out.params.alpha = in.alpha;
    out.params.ratio = in.ratio;
    out.params.d = in.d;
    check_params(out.params);
    if (need_state) {
      if (!in.opt_theta0 || in.opt_theta0->count() == 0)
        throw Error(Errc::ValidationFailure, "reduced mode requires --theta0 (and --w0)");
      out.state0 = {in.theta0, in.w0};
      out.z1 = in.w0 / 2;
      out.z2 = -in.w0 / 2;
    }
  }
  return out;
}

json params_json(const ModelParams& p) {
  return {{"regime", p.regime == Regime::SameSign ? "same" : "opp"},
          {"alpha", p.alpha},
          {"ratio", p.ratio},
          {"d", p.d}};
}

json canonical_json(const CanonicalSetup& s) {
  return {{"swapped", s.swapped},
          {"time_reversed", s.time_reversed},
          {"time_scale", s.time_scale}};
}

json equilibria_json(const ModelParams& p) {
  if (p.regime == Regime::SameSign) {
    EquilibriumReportSame r = equilibria_same(p);
    return {{"theta_beta", r.theta_beta},
            {"theta_star", r.theta_star},
            {"theta_star2", r.theta_star2},
            {"h_star", r.h_star}};
  }
  EquilibriumReportOpp r = equilibria_opp(p);
  json j = {{"theta_gamma", r.theta_gamma}, {"gamma_star", r.gamma_star}};
  j["theta_star"] = r.theta_star ? json(*r.theta_star) : json(nullptr);
  j["theta_bar"] = r.theta_bar ? json(*r.theta_bar) : json(nullptr);
  j["g_threshold"] = r.g_threshold;
  return j;
}

// flat key,value CSV rendering of a JSON document
void emit_json_or_csv(const json& doc, const std::string& format, OutputTarget& out) {
  if (format == "json") {
    out.stream() << doc.dump(2) << "\n";
    return;
  }
  std::ostream& os = out.stream();
  os << "key,value\n";
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto& [k, v] : node.items())
            walk(v, prefix.empty() ? k : prefix + "." + k);
        } else if (node.is_array()) {
          for (size_t i = 0; i < node.size(); ++i)
            walk(node[i], prefix + "[" + std::to_string(i) + "]");
        } else if (node.is_number_float()) {
          os << prefix << "," << fmt17(node.get<double>()) << "\n";
        } else {
          os << prefix << "," << node.dump() << "\n";
        }
      };
  walk(doc, "");
}

void emit_metadata(const json& meta, const std::string& meta_path) {
  if (meta_path.empty()) {
    std::cerr << meta.dump() << "\n";
  } else {
    std::ofstream f(meta_path, std::ios::binary);
    if (!f) throw Error(Errc::ValidationFailure, "cannot open metadata file: " + meta_path);
    f << meta.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// subcommands

int run_equilibria(const ProblemInputs& in, const std::string& format, OutputTarget& out) {
  ResolvedProblem rp = resolve(in, false);
  json doc = {{"command", "equilibria"}, {"params", params_json(rp.params)}};
  if (rp.canonical) doc["canonical"] = canonical_json(*rp.canonical);
  doc["report"] = equilibria_json(rp.params);
  emit_json_or_csv(doc, format, out);
  return 0;
}

int run_classify(const ProblemInputs& in, const std::string& format, OutputTarget& out) {
  json doc = {{"command", "classify"}};
  Verdict v;
  ResolvedProblem rp;
  try {
    rp = resolve(in, true);
  } catch (const Error& e) {
    if (e.code() != Errc::InfeasibleInvariant) throw;
    // infeasible invariant: report the impossibility as a verdict
    v.kind = VerdictKind::LeapfrogImpossible;
    v.hamiltonian = v.threshold = std::numeric_limits<double>::quiet_NaN();
    v.detail = e.what();
    doc["verdict"] = {{"kind", verdict_kind_name(v.kind)},
                      {"hamiltonian", nullptr},
                      {"threshold", nullptr},
                      {"detail", v.detail}};
    emit_json_or_csv(doc, format, out);
    return 0;
  }
  doc["params"] = params_json(rp.params);
  doc["state0"] = {{"theta", rp.state0.theta}, {"w", rp.state0.w}};
  if (rp.canonical) doc["canonical"] = canonical_json(*rp.canonical);

  v = rp.params.regime == Regime::SameSign ? classify_same(rp.state0, rp.params)
                                           : classify_opp(rp.state0, rp.params);
  if (v.kind == VerdictKind::OutOfTheoremScope) {
    emit_error("OutOfTheoremScope", v.detail);
    return 2;
  }

  doc["verdict"] = {{"kind", verdict_kind_name(v.kind)},
                    {"hamiltonian", num_or_null(v.hamiltonian)},
                    {"threshold", num_or_null(v.threshold)},
                    {"detail", v.detail}};
  if (v.kind != VerdictKind::LeapfrogImpossible) doc["equilibria"] = equilibria_json(rp.params);
  emit_json_or_csv(doc, format, out);
  return 0;
}

// Accumulates rows either as CSV text (streamed) or as a JSON array, so both
// formats share one emission path and partial output survives early
// termination.
struct RowSink {
  bool as_json = false;
  std::ostream* os = nullptr;
  json rows = json::array();

  void header(const std::string& columns) {
    if (!as_json) *os << columns << "\n";
  }
  void row(const std::vector<double>& values) {
    if (as_json) {
      json r = json::array();
      for (double v : values) r.push_back(num_or_null(v));
      rows.push_back(r);
      return;
    }
    for (size_t i = 0; i < values.size(); ++i)
      *os << (i ? "," : "") << fmt17(values[i]);
    *os << "\n";
  }
};

json split_columns(const std::string& columns) {
  json cols = json::array();
  std::stringstream ss(columns);
  std::string c;
  while (std::getline(ss, c, ',')) cols.push_back(c);
  return cols;
}

int run_simulate(const ProblemInputs& in, double t_end, double rtol, double atol, int samples,
                 const std::string& format, OutputTarget& out, const std::string& meta_path) {
  ResolvedProblem rp = resolve(in, true);
  const ModelParams p = rp.params;
  check_params(p);
  if (p.regime == Regime::OppositeSign && !(p.ratio > 1.0))
    throw Error(Errc::GammaOutOfRange, "simulate requires gamma > 1 in the opposite-sign regime");
  if (samples < 2) throw Error(Errc::ValidationFailure, "--samples must be >= 2");

  auto hamiltonian = [&](double theta, double w) {
    return p.regime == Regime::SameSign ? hamiltonian_same({theta, w}, p)
                                        : hamiltonian_opp({theta, w}, p);
  };

  OdeField ode = [&](double, const StateVec& y, StateVec& dy) {
    AugmentedState d = field_augmented({y[0], y[1], y[2], y[3]}, p);
    dy[0] = d.theta;
    dy[1] = d.w;
    dy[2] = d.z1;
    dy[3] = d.z2;
  };
  StateVec y0(4);
  y0 << rp.state0.theta, rp.state0.w, rp.z1, rp.z2;

  IntegrateOptions opts;
  opts.rtol = rtol;
  opts.atol = atol;
  double sing = singular_angle(p);
  opts.guard_distance = [&](const StateVec& y) { return std::hypot(y[0] - sing, y[1]); };

  const double h0 = hamiltonian(rp.state0.theta, rp.state0.w);
  double drift = 0.0;

  const std::string columns = "t,theta,W,R1,R2,z1,z2,H,drift";
  RowSink sink;
  sink.as_json = format == "json";
  if (!sink.as_json) sink.os = &out.stream();
  sink.header(columns);
  auto emit_row = [&](double t, const StateVec& y) {
    RadiiW rw = reduced_to_physical({y[0], y[1]}, p);
    double h = std::numeric_limits<double>::quiet_NaN();
    try {
      h = hamiltonian(y[0], y[1]);
      drift = std::max(drift, std::abs(h - h0) / std::max(1.0, std::abs(h0)));
    } catch (const Error&) {
    }
    sink.row({t, y[0], y[1], rw.r1, rw.r2, y[2], y[3], h, drift});
  };

  emit_row(0.0, y0);
  Dopri5 stepper(ode, y0, 0.0, t_end, opts);
  const double dt = t_end / (samples - 1);
  int next_sample = 1;
  while (stepper.step()) {
    while (next_sample < samples && next_sample * dt <= stepper.t_curr() + 1e-15) {
      double ts = next_sample * dt;
      emit_row(ts, stepper.dense(std::min(ts, stepper.t_curr())));
      ++next_sample;
    }
  }
  Termination term = stepper.status();

  json meta = {{"command", "simulate"},
               {"params", params_json(p)},
               {"state0", {{"theta", rp.state0.theta}, {"w", rp.state0.w}}},
               {"t_end", t_end},
               {"rtol", rtol},
               {"atol", atol},
               {"samples", samples},
               {"termination", termination_name(term)},
               {"reached_time", stepper.t_curr()},
               {"hamiltonian_drift", drift}};
  if (rp.canonical) meta["canonical"] = canonical_json(*rp.canonical);
  if (sink.as_json) {
    json doc = {{"metadata", meta}, {"columns", split_columns(columns)}, {"rows", sink.rows}};
    out.stream() << doc.dump() << "\n";
  } else {
    emit_metadata(meta, meta_path);
  }
  return term == Termination::Completed ? 0 : 1;
}

int run_portrait(const ProblemInputs& in, std::string grid_spec, double theta_min,
                 double theta_max, double w_min, double w_max, bool have_theta_range,
                 const std::string& format, OutputTarget& out, const std::string& meta_path) {
  ResolvedProblem rp = resolve(in, false);
  const ModelParams p = rp.params;

  int n_theta = 400, n_w = 400;
  if (std::sscanf(grid_spec.c_str(), "%dx%d", &n_theta, &n_w) != 2)
    throw Error(Errc::ValidationFailure, "--grid expects WxH, e.g. 400x400");

  if (!have_theta_range) {
    if (p.regime == Regime::SameSign) {
      theta_min = 0.02;
      theta_max = std::numbers::pi / 2 - 0.02;
    } else {
      theta_min = 0.05;
      theta_max = 3.0 * singular_angle(p);
    }
  }

  PortraitGrid grid = hamiltonian_grid(p, theta_min, theta_max, w_min, w_max, n_theta, n_w);

  json meta = {{"command", "portrait"},
               {"params", params_json(p)},
               {"theta_axis", {{"min", theta_min}, {"max", theta_max}, {"n", n_theta}}},
               {"w_axis", {{"min", w_min}, {"max", w_max}, {"n", n_w}}},
               {"mask_radius", grid.mask_radius},
               {"threshold", grid.threshold},
               {"equilibria", equilibria_json(p)}};

  if (format == "json") {
    json values = json::array(), verdicts = json::array();
    for (int i = 0; i < n_w; ++i) {
      json vrow = json::array(), krow = json::array();
      for (int j = 0; j < n_theta; ++j) {
        vrow.push_back(num_or_null(grid.values(i, j)));
        krow.push_back(cell_kind_name(static_cast<CellKind>(grid.verdicts(i, j))));
      }
      values.push_back(vrow);
      verdicts.push_back(krow);
    }
    json doc = {{"metadata", meta}, {"values", values}, {"verdicts", verdicts}};
    out.stream() << doc.dump() << "\n";
    return 0;
  }

  std::ostream& os = out.stream();
  os << "theta,w,H,verdict\n";
  for (int i = 0; i < n_w; ++i)
    for (int j = 0; j < n_theta; ++j)
      os << fmt17(grid.theta_axis[j]) << "," << fmt17(grid.w_axis[i]) << ","
         << fmt17(grid.values(i, j)) << ","
         << cell_kind_name(static_cast<CellKind>(grid.verdicts(i, j))) << "\n";
  emit_metadata(meta, meta_path);
  return 0;
}

int run_parallel(double gamma1, double gamma2, double alpha, std::vector<double> p1,
                 std::vector<double> p2, double t_end, int samples, double rtol, double atol,
                 const std::string& format, OutputTarget& out, const std::string& meta_path) {
  ParallelSetup setup = make_parallel_setup(gamma1, gamma2, alpha,
                                            {p1.at(0), p1.at(1)}, {p2.at(0), p2.at(1)});
  if (samples < 2) throw Error(Errc::ValidationFailure, "--samples must be >= 2");

  OdeField ode = [&](double, const StateVec& y, StateVec& dy) {
    PairVelocity v = field_pointvortex({y[0], y[1]}, {y[2], y[3]}, setup);
    dy << v.v1.x(), v.v1.y(), v.v2.x(), v.v2.y();
  };
  StateVec y0(4);
  y0 << setup.p1.x(), setup.p1.y(), setup.p2.x(), setup.p2.y();

  IntegrateOptions opts;
  opts.rtol = rtol;
  opts.atol = atol;

  double gsum = gamma1 + gamma2;
  Eigen::Vector2d c0 = setup.center_c;

  const std::string columns =
      "t,x1,y1,x2,y2,x1_exact,y1_exact,x2_exact,y2_exact,pos_error,c_drift,d_drift";
  RowSink sink;
  sink.as_json = format == "json";
  if (!sink.as_json) sink.os = &out.stream();
  sink.header(columns);
  auto emit_row = [&](double t, const StateVec& y) {
    PairPosition ex = parallel_exact(t, setup);
    Eigen::Vector2d q1(y[0], y[1]), q2(y[2], y[3]);
    double err = std::max((q1 - ex.p1).norm(), (q2 - ex.p2).norm());
    double cd = gsum != 0.0 ? ((gamma1 * q1 + gamma2 * q2) / gsum - c0).norm() : 0.0;
    double dd = std::abs((q1 - q2).norm() - setup.dist_d);
    sink.row({t, y[0], y[1], y[2], y[3], ex.p1.x(), ex.p1.y(), ex.p2.x(), ex.p2.y(), err, cd,
              dd});
  };

  emit_row(0.0, y0);
  Dopri5 stepper(ode, y0, 0.0, t_end, opts);
  const double dt = t_end / (samples - 1);
  int next_sample = 1;
  while (stepper.step()) {
    while (next_sample < samples && next_sample * dt <= stepper.t_curr() + 1e-15) {
      double ts = next_sample * dt;
      emit_row(ts, stepper.dense(std::min(ts, stepper.t_curr())));
      ++next_sample;
    }
  }

  json meta = {{"command", "parallel"},
               {"gamma1", gamma1},
               {"gamma2", gamma2},
               {"alpha", alpha},
               {"dist_d", setup.dist_d},
               {"omega", setup.omega},
               {"termination", termination_name(stepper.status())}};
  meta["period"] =
      setup.omega != 0.0 ? json(2 * std::numbers::pi / std::abs(setup.omega)) : json(nullptr);
  if (sink.as_json) {
    json doc = {{"metadata", meta}, {"columns", split_columns(columns)}, {"rows", sink.rows}};
    out.stream() << doc.dump() << "\n";
  } else {
    emit_metadata(meta, meta_path);
  }
  return stepper.status() == Termination::Completed ? 0 : 1;
}

int run_pdecheck(const ProblemInputs& in, int n, const std::string& scheme_name,
                 const std::string& format, OutputTarget& out) {
  ResolvedProblem rp = resolve(in, false);
  const ModelParams p = rp.params;
  PhysicalState phys;
  if (rp.canonical) {
    RadiiW rw = reduced_to_physical(rp.canonical->reduced0, p);
    phys = {rw.r1, rw.w, rw.r2, 0.0};
  } else if (in.r1 > 0.0 && in.r2 > 0.0) {
    // reduced mode with an explicit configuration (d is not involved in the
    // field evaluation, only the strengths derived from regime and ratio)
    phys = {in.r1, in.z1, in.r2, in.z2};
  } else {
    // representative configuration on the invariant set
    double theta0 =
        p.regime == Regime::SameSign ? 0.4 * singular_angle(p) : 2.0 * singular_angle(p);
    RadiiW rw = reduced_to_physical({theta0, 0.3}, p);
    phys = {rw.r1, rw.w, rw.r2, 0.0};
  }
  if (n < 16 || n % 2 != 0)
    throw Error(Errc::ValidationFailure, "--n must be even and >= 16");
  DerivativeScheme scheme = scheme_name == "spectral" ? DerivativeScheme::Spectral
                                                      : DerivativeScheme::FiniteDifference4;

  PhysicalState dot = field_physical(phys, p);
  double g1 = p.regime == Regime::SameSign ? p.ratio : -p.ratio;

  auto max_error = [&](int nn) {
    auto [fx, fy] = sample_circular_pair(phys, nn, g1, 1.0);
    Eigen::Matrix3Xd vx = pde_rhs(fx, fy, p.alpha, scheme);
    Eigen::Matrix3Xd vy = pde_rhs(fy, fx, p.alpha, scheme);
    double err = 0.0;
    for (int i = 0; i < nn; ++i) {
      double xi = 2.0 * std::numbers::pi * i / nn;
      Eigen::Vector2d radial(std::cos(xi), std::sin(xi));
      err = std::max(err, std::abs(vx.col(i).head<2>().dot(radial) - dot.r1));
      err = std::max(err, std::abs(vx(2, i) - dot.z1));
      err = std::max(err, std::abs(vy.col(i).head<2>().dot(radial) - dot.r2));
      err = std::max(err, std::abs(vy(2, i) - dot.z2));
    }
    return err;
  };

  std::vector<int> ns = {n / 4, n / 2, n};
  json n_values = json::array(), errors = json::array(), orders = json::array();
  double prev = 0.0;
  for (size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 16) throw Error(Errc::ValidationFailure, "--n too small for the doubling study");
    double e = max_error(ns[i]);
    n_values.push_back(ns[i]);
    errors.push_back(e);
    if (i > 0) orders.push_back(e > 0.0 ? json(std::log2(prev / e)) : json(nullptr));
    prev = e;
  }

  json doc = {{"command", "pdecheck"},
              {"params", params_json(p)},
              {"configuration",
               {{"r1", phys.r1}, {"z1", phys.z1}, {"r2", phys.r2}, {"z2", phys.z2}}},
              {"scheme", scheme_name},
              {"n_values", n_values},
              {"max_errors", errors},
              {"orders", orders},
              {"max_error_at_n", errors.back()}};
  emit_json_or_csv(doc, format, out);
  return 0;
}

}  // namespace

struct CommandIo {
  std::string output;
  std::string format;
  std::string meta;
};

void add_io_options(CLI::App* cmd, CommandIo& io, const char* default_format) {
  io.format = default_format;
  cmd->add_option("--output", io.output, "output path (default stdout)");
  cmd->add_option("--format", io.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--meta", io.meta, "metadata path (default stderr)");
}

int main(int argc, char** argv) {
  CLI::App app{"two-filament leapfrogging laboratory"};
  app.require_subcommand(1);

  ProblemInputs in_eq, in_cl, in_sim, in_por, in_pde;
  CommandIo io_eq, io_cl, io_sim, io_por, io_par, io_pde;
  double t_end = 100.0, rtol = 1e-10, atol = 1e-12;
  int samples = 1000;

  CLI::App* eq = app.add_subcommand("equilibria", "equilibrium structure and thresholds");
  add_reduced_options(eq, in_eq, false);
  add_physical_options(eq, in_eq);
  eq->add_option("--alpha", in_eq.alpha, "interaction coefficient");
  add_io_options(eq, io_eq, "json");

  CLI::App* cl = app.add_subcommand("classify", "necessary-and-sufficient leapfrog test");
  add_reduced_options(cl, in_cl, true);
  add_physical_options(cl, in_cl);
  cl->add_option("--alpha", in_cl.alpha, "interaction coefficient");
  add_io_options(cl, io_cl, "json");

  CLI::App* sim = app.add_subcommand("simulate", "integrate the reduced system with z tracking");
  add_reduced_options(sim, in_sim, true);
  add_physical_options(sim, in_sim);
  sim->add_option("--alpha", in_sim.alpha, "interaction coefficient");
  sim->add_option("--t-end", t_end, "integration end time (canonical units)");
  sim->add_option("--rtol", rtol, "relative tolerance");
  sim->add_option("--atol", atol, "absolute tolerance");
  sim->add_option("--samples", samples, "number of uniformly spaced output rows");
  add_io_options(sim, io_sim, "csv");

  std::string grid_spec = "400x400";
  double theta_min = 0.0, theta_max = 0.0, w_min = -3.0, w_max = 3.0;
  CLI::App* por = app.add_subcommand("portrait", "Hamiltonian grid with leapfrog verdicts");
  add_reduced_options(por, in_por, false);
  add_physical_options(por, in_por);
  por->add_option("--alpha", in_por.alpha, "interaction coefficient");
  por->add_option("--grid", grid_spec, "grid resolution WxH");
  CLI::Option* tmin = por->add_option("--theta-min", theta_min, "theta range start");
  por->add_option("--theta-max", theta_max, "theta range end")->needs(tmin);
  por->add_option("--w-min", w_min, "W range start");
  por->add_option("--w-max", w_max, "W range end");
  add_io_options(por, io_por, "csv");

  double pgamma1 = 1.0, pgamma2 = 1.0, palpha = 0.1, pt_end = 100.0;
  int psamples = 200;
  std::vector<double> pp1 = {1.0, 0.0}, pp2 = {-1.0, 0.0};
  CLI::App* par = app.add_subcommand("parallel", "parallel-line case: exact vs numeric");
  par->add_option("--gamma1", pgamma1, "strength of line 1");
  par->add_option("--gamma2", pgamma2, "strength of line 2");
  par->add_option("--alpha", palpha, "interaction coefficient");
  par->add_option("--p1", pp1, "cross-section position of line 1 (x y)")->expected(2);
  par->add_option("--p2", pp2, "cross-section position of line 2 (x y)")->expected(2);
  par->add_option("--t-end", pt_end, "end time");
  par->add_option("--samples", psamples, "output rows");
  par->add_option("--rtol", rtol, "relative tolerance");
  par->add_option("--atol", atol, "absolute tolerance");
  add_io_options(par, io_par, "csv");

  int pde_n = 256;
  std::string pde_scheme = "fd4";
  CLI::App* pde = app.add_subcommand("pdecheck", "discrete-curve field vs 4D system");
  add_reduced_options(pde, in_pde, false);
  add_physical_options(pde, in_pde);
  pde->add_option("--alpha", in_pde.alpha, "interaction coefficient");
  pde->add_option("--n", pde_n, "sample count (even, >= 64 for the doubling study)");
  pde->add_option("--scheme", pde_scheme, "xi-derivative scheme")
      ->check(CLI::IsMember({"fd4", "spectral"}));
  add_io_options(pde, io_pde, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(Errc::ValidationFailure, e.what());
    return 2;
  }

  try {
    OutputTarget out;
    if (eq->parsed()) {
      out.path = io_eq.output;
      return run_equilibria(in_eq, io_eq.format, out);
    }
    if (cl->parsed()) {
      out.path = io_cl.output;
      return run_classify(in_cl, io_cl.format, out);
    }
    if (sim->parsed()) {
      out.path = io_sim.output;
      return run_simulate(in_sim, t_end, rtol, atol, samples, io_sim.format, out, io_sim.meta);
    }
    if (por->parsed()) {
      out.path = io_por.output;
      return run_portrait(in_por, grid_spec, theta_min, theta_max, w_min, w_max,
                          tmin->count() > 0, io_por.format, out, io_por.meta);
    }
    if (par->parsed()) {
      out.path = io_par.output;
      return run_parallel(pgamma1, pgamma2, palpha, pp1, pp2, pt_end, psamples, rtol, atol,
                          io_par.format, out, io_par.meta);
    }
    if (pde->parsed()) {
      out.path = io_pde.output;
      return run_pdecheck(in_pde, pde_n, pde_scheme, io_pde.format, out);
    }
  } catch (const Error& e) {
    emit_error(e.code(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error(Errc::ValidationFailure, e.what());
    return 2;
  }
  return 0;
}
