#pragma once

// Command layer behind tools/hyperlattice.cpp. Commands build a JSON report
// and an exit code; rendering and I/O stay in the executable.
//
// Exit codes: 0 success, 1 identity-check failure, 2 domain error,
// 3 numeric error.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlattice/density.hpp"
#include "hyperlattice/errors.hpp"
#include "hyperlattice/frame_core.hpp"
#include "hyperlattice/fuchsian.hpp"
#include "hyperlattice/halfplane.hpp"
#include "hyperlattice/hardy.hpp"
#include "hyperlattice/wavelet.hpp"

namespace hyperlattice::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kDomain = 2, kNumeric = 3 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"admissibility", "verdict",  "identity-suite", "tile",
                                              "finite-demo",   "covolume", "periodization"};
  return names;
}

struct RunConfig {
  std::string command;
  double alpha = 2.0;
  int n = 0;
  std::string group = "modular";
  int q = 0;  // overrides the group's Hecke index when > 0
  int word_length = 8;
  double cusp_height = 10.0;
  int nodes_a = 40;
  int nodes_b = 40;
  int nodes_theta = 4;
  int nodes_freq = 20;
  std::string format = "json";
  std::string out;
  unsigned long long seed = 1;
  double covolume = 0.0;    // explicit covolume for `verdict` when > 0
  double tolerance = -1.0;  // overrides every identity-suite tolerance when >= 0
  bool corrupt_window = false;
  int N = 8;
  int K = 0;  // 0: full group
  std::string points;
  int samples = 0;
  std::string svg;
  bool canonical = false;
  std::string inject_fault;  // test hook: "domain" or "numeric"

  bool operator==(const RunConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Argument and config parsing
// ---------------------------------------------------------------------------

/// Registers every option on `app`, bound to `cfg`. Config files are flat
/// key=value text using the long option names; flags override file values.
inline void bind_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("command", cfg.command, "Command to run")->check(CLI::IsMember(command_names()));
  app.add_option("--alpha", cfg.alpha, "Window parameter alpha > 0");
  app.add_option("--n", cfg.n, "Laguerre degree n >= 0");
  app.add_option("--group", cfg.group, "modular, hecke:q or hecke");
  app.add_option("--q", cfg.q, "Hecke index q >= 3");
  app.add_option("--word-length", cfg.word_length, "Word-ball radius L");
  app.add_option("--cusp-height", cfg.cusp_height, "Cusp truncation height Y");
  app.add_option("--nodes-a", cfg.nodes_a, "Quadrature nodes in the scale (1/y) direction");
  app.add_option("--nodes-b", cfg.nodes_b, "Quadrature nodes in the shift (x) direction");
  app.add_option("--nodes-theta", cfg.nodes_theta, "Quadrature nodes in the rotation angle");
  app.add_option("--nodes-freq", cfg.nodes_freq, "Gauss order per frequency panel");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.out, "Write the report here instead of stdout");
  app.add_option("--seed", cfg.seed, "Seed for sampled inputs");
  app.add_option("--covolume", cfg.covolume, "Explicit covolume for verdict");
  app.add_option("--tolerance", cfg.tolerance, "Override every identity-suite tolerance");
  app.add_flag("--corrupt-window", cfg.corrupt_window, "Use a non-stationary vector in the stationarity row");
  app.add_option("--N", cfg.N, "Dimension of the finite Weyl-Heisenberg demo");
  app.add_option("--K", cfg.K, "Subgroup order for the finite demo (0: full group)");
  app.add_option("--points", cfg.points, "Points for tile, as x,y;x,y;...");
  app.add_option("--samples", cfg.samples, "Number of random points for tile");
  app.add_option("--svg", cfg.svg, "SVG path for tile");
  app.add_flag("--canonical", cfg.canonical, "Sort JSON keys");
  app.add_option("--inject-fault", cfg.inject_fault, "Raise a domain or numeric error (testing)")
      ->check(CLI::IsMember({"", "domain", "numeric"}));
  app.set_config("--config", "", "key=value config file")->envname("HYPERLATTICE_CONFIG");
}

/// Parses arguments (without the program name). Throws CLI::Error.
inline RunConfig parse_args(std::vector<std::string> args) {
  RunConfig cfg;
  CLI::App app{"hyperlattice"};
  bind_options(app, cfg);
  std::reverse(args.begin(), args.end());
  app.parse(args);
  return cfg;
}

namespace detail {
inline std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}
}  // namespace detail

/// key=value text that parse_args reads back into an equal RunConfig.
inline std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  os << "# hyperlattice run configuration\n";
  if (!c.command.empty()) os << "command=" << c.command << "\n";
  os << "alpha=" << detail::shortest(c.alpha) << "\n"
     << "n=" << c.n << "\n"
     << "group=" << c.group << "\n"
     << "q=" << c.q << "\n"
     << "word-length=" << c.word_length << "\n"
     << "cusp-height=" << detail::shortest(c.cusp_height) << "\n"
     << "nodes-a=" << c.nodes_a << "\n"
     << "nodes-b=" << c.nodes_b << "\n"
     << "nodes-theta=" << c.nodes_theta << "\n"
     << "nodes-freq=" << c.nodes_freq << "\n"
     << "format=" << c.format << "\n";
  if (!c.out.empty()) os << "out=" << c.out << "\n";
  os << "seed=" << c.seed << "\n"
     << "covolume=" << detail::shortest(c.covolume) << "\n"
     << "tolerance=" << detail::shortest(c.tolerance) << "\n"
     << "corrupt-window=" << (c.corrupt_window ? "true" : "false") << "\n"
     << "N=" << c.N << "\n"
     << "K=" << c.K << "\n";
  if (!c.points.empty()) os << "points=\"" << c.points << "\"\n";
  os << "samples=" << c.samples << "\n";
  if (!c.svg.empty()) os << "svg=" << c.svg << "\n";
  os << "canonical=" << (c.canonical ? "true" : "false") << "\n";
  if (!c.inject_fault.empty()) os << "inject-fault=" << c.inject_fault << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

inline FuchsianGroup resolve_group(const RunConfig& c) {
  if (c.q > 0) return hecke_group(c.q);
  if (c.group == "modular") return modular_group();
  if (c.group.rfind("hecke:", 0) == 0) {
    int q = 0;
    const auto body = c.group.substr(6);
    const auto r = std::from_chars(body.data(), body.data() + body.size(), q);
    if (r.ec != std::errc{} || r.ptr != body.data() + body.size()) throw DomainError("group: cannot parse '" + c.group + "'");
    return hecke_group(q);
  }
  if (c.group == "hecke") throw DomainError("group: 'hecke' needs --q");
  throw DomainError("group: unknown group '" + c.group + "'");
}

/// Four Gauss panels per direction; RegionGrid shares one order between
/// them, so the larger request wins.
inline RegionGrid domain_grid(const RunConfig& c) {
  if (c.nodes_a < 8 || c.nodes_b < 8) throw DomainError("nodes-a and nodes-b must be >= 8");
  return {4, 4, (std::max(c.nodes_a, c.nodes_b) + 3) / 4};
}

inline FreqQuadratureSpec freq_spec(const RunConfig& c) {
  if (c.nodes_freq < 2) throw DomainError("nodes-freq must be >= 2");
  FreqQuadratureSpec s;
  s.order = c.nodes_freq;
  return s;
}

inline std::vector<PointH> parse_points(const std::string& text) {
  std::vector<PointH> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw DomainError("points: expected x,y pairs separated by ';'");
    try {
      out.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
    } catch (const std::invalid_argument&) {
      throw DomainError("points: cannot parse '" + item + "'");
    }
  }
  return out;
}

using Json = nlohmann::ordered_json;

inline Json header(const std::string& command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct CommandResult {
  Json report;
  int exit_code = kOk;
};

inline CommandResult cmd_admissibility(const RunConfig& c) {
  const Wavelet w(c.n, c.alpha);
  const auto spec = freq_spec(c);
  const double cpsi = admissibility_constant(w, spec);
  const double nrm = norm_sq(w, spec);
  const double ratio = cpsi / nrm;
  const auto fd = formal_dimension(w, spec);
  Json r = header("admissibility");
  r["alpha"] = c.alpha;
  r["n"] = c.n;
  r["admissibility_constant"] = cpsi;
  r["norm_sq"] = nrm;
  r["ratio"] = ratio;
  r["two_over_alpha"] = 2.0 / c.alpha;
  r["ratio_residual"] = std::abs(ratio - 2.0 / c.alpha);
  r["formal_dimension"] = fd.quadrature;
  r["formal_dimension_closed_form"] = fd.closed_form;
  return {r, kOk};
}

inline Json verdict_json(const DensityVerdict& v) {
  Json r = header("verdict");
  r["group"] = v.group;
  r["covolume"] = v.covolume;
  r["alpha"] = v.alpha;
  r["n"] = v.n;
  r["formal_dimension"] = v.formal_dimension;
  r["product"] = v.product;
  r["frame_admissible"] = v.frame_admissible;
  r["riesz_admissible"] = v.riesz_admissible;
  r["abdm_bound"] = v.abdm_bound;
  r["sharp_bound"] = v.sharp_bound;
  r["frame_threshold_alpha"] = frame_threshold(v.covolume);
  r["haar_covolume"] = v.haar_covolume;
  r["normalized_product"] = v.normalized_product;
  r["notes"] = v.notes;
  return r;
}

inline CommandResult cmd_verdict(const RunConfig& c) {
  if (c.covolume > 0.0) return {verdict_json(density_verdict(c.covolume, c.alpha, c.n)), kOk};
  const auto g = resolve_group(c);
  return {verdict_json(density_verdict(g, c.alpha, c.n, c.cusp_height)), kOk};
}

inline CommandResult cmd_covolume(const RunConfig& c) {
  const auto g = resolve_group(c);
  const auto rep = covolume(g, c.cusp_height, domain_grid(c));
  Json r = header("covolume");
  r["group"] = g.name;
  r["cusp_height"] = c.cusp_height;
  r["value"] = rep.value;
  r["truncated"] = rep.truncated;
  r["cusp_tail"] = rep.cusp_tail;
  r["closed_form"] = rep.closed_form;
  r["abs_error"] = std::abs(rep.value - rep.closed_form);
  return {r, kOk};
}

inline PeriodizationSpec periodization_spec(const RunConfig& c) {
  PeriodizationSpec s;
  s.word_length = c.word_length;
  s.cusp_height = c.cusp_height;
  s.domain_grid = domain_grid(c);
  if (c.nodes_theta < 1) throw DomainError("nodes-theta must be >= 1");
  s.theta_nodes = c.nodes_theta;
  return s;
}

inline Json periodization_json(const PeriodizationReport& p) {
  return Json{{"lhs", p.lhs},
              {"rhs", p.rhs},
              {"relerr", p.relerr},
              {"word_length", p.word_length},
              {"cusp_height", p.cusp_height},
              {"ball_size", p.ball_size},
              {"haar_radius", p.haar_radius},
              {"outer_shell_share", p.outer_shell_share},
              {"notes", p.notes}};
}

inline CommandResult cmd_periodization(const RunConfig& c) {
  const Wavelet w(c.n, c.alpha);
  const auto g = resolve_group(c);
  const auto p = periodization_check(w, g, periodization_spec(c));
  Json r = header("periodization");
  r["group"] = g.name;
  r["alpha"] = c.alpha;
  r["n"] = c.n;
  r["target"] = periodization_target(w);
  r.update(periodization_json(p));
  return {r, kOk};
}

/// Sample grid used by the pointwise checks.
inline std::vector<PointH> check_points() {
  std::vector<PointH> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pts.emplace_back(-2.0 + i, 0.3 + 0.65 * j);
  return pts;
}

inline CommandResult cmd_identity_suite(const RunConfig& c) {
  const Wavelet w(c.n, c.alpha);
  const auto spec = freq_spec(c);
  const auto pts = check_points();
  const auto tol = [&](double dflt) { return c.tolerance >= 0.0 ? c.tolerance : dflt; };
  Json rows = Json::array();
  bool all = true;

  const auto row = [&](const std::string& name, double tolerance, auto&& body) {
    Json r{{"name", name}, {"tolerance", tolerance}};
    try {
      const double residual = body();
      const bool pass = std::isfinite(residual) && residual < tolerance;
      r["residual"] = residual;
      r["pass"] = pass;
      all = all && pass;
    } catch (const std::exception& e) {
      r["residual"] = nullptr;
      r["pass"] = false;
      r["error"] = e.what();
      all = false;
    }
    rows.push_back(r);
  };

  row("intertwining", tol(1e-8), [&] {
    const SpanElement f{{SpanTerm{1.0, 1.0, 0.0}, SpanTerm{complex(0.5, -0.25), 1.3, 0.2}}};
    return intertwine_residual(to_freq(f, w), w, 1.7, 0.4, pts, spec);
  });
  row("stationarity", tol(1e-6), [&] {
    const SpanElement f = c.corrupt_window ? SpanElement{{SpanTerm{1.0, 1.0, 0.0}, SpanTerm{1.0, 2.0, 1.0}}}
                                           : SpanElement::window();
    const auto rep = stationarity_report(transform(f, w), w, 0.7, pts);
    return std::max(rep.dispersion, rep.modulus_residual);
  });
  row("calderon", tol(1e-3), [&] {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    std::normal_distribution<double> coef;
    SpanElement f;
    for (int k = 0; k < 3; ++k) {
      const double a = scale(rng);
      const double b = shift(rng);
      const double re = coef(rng);
      const double im = coef(rng);
      f.terms.push_back({complex(re, im), a, b});
    }
    const WindowKernel kernel(w);
    const double expect = admissibility_constant(w, spec) * h2_inner(f, f, kernel).real();
    const auto F = transform(f, w);
    return std::abs(wspace_inner(F, F, w).real() - expect) / expect;
  });
  row("orthogonality", tol(1e-2), [&] {
    const auto F1 = window_transform(w);
    const auto F2 = transform(SpanElement{{SpanTerm{1.0, 1.5, 0.3}}}, w);
    const auto G1 = transform(SpanElement{{SpanTerm{1.0, 0.7, -0.4}}}, w);
    return ortho_relation_check(F1, F2, G1, F1, w, 0.5 * w.alpha, PairingSpec::for_window(w, false)).relerr;
  });
  row("range", tol(1e-2), [&] { return range_residual(rep_apply(rotation(0.5), w, window_transform(w)), w, std::nullopt, spec); });
  row("periodization", tol(5e-2), [&] { return periodization_check(w, resolve_group(c), periodization_spec(c)).relerr; });

  Json r = header("identity-suite");
  r["alpha"] = c.alpha;
  r["n"] = c.n;
  r["corrupt_window"] = c.corrupt_window;
  r["rows"] = rows;
  r["all_pass"] = all;
  return {r, all ? kOk : kCheckFailed};
}

/// Boundary of the truncated standard domain, counterclockwise from the
/// lower-left corner.
inline std::vector<PointH> domain_outline(const FundamentalDomain& d, int per_side = 48) {
  std::vector<PointH> pts;
  const double h = d.half_width;
  const double y0 = std::sqrt(1.0 - h * h);
  const double phi_left = std::acos(-h);
  const double phi_right = std::acos(h);
  for (int i = 0; i <= per_side; ++i) {
    const double phi = phi_left + (phi_right - phi_left) * i / per_side;
    pts.emplace_back(std::cos(phi), std::sin(phi));
  }
  for (int i = 1; i <= per_side; ++i) pts.emplace_back(h, y0 * std::pow(d.cusp_height / y0, static_cast<double>(i) / per_side));
  for (int i = 0; i <= per_side; ++i) pts.emplace_back(-h, d.cusp_height * std::pow(y0 / d.cusp_height, static_cast<double>(i) / per_side));
  return pts;
}

/// The images gamma Omega for gamma in the ball, in the viewport [-2,2] x (0,3].
inline std::string tiling_svg(const FuchsianGroup& g, const WordBall& ball, double cusp_height) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 600.0;
  const auto sx = [](double x) { return (x + 2.0) / 4.0 * kWidth; };
  const auto sy = [](double y) { return (3.0 - y) / 3.0 * kHeight; };
  const auto outline = domain_outline(standard_domain(g, cusp_height));
  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 "
     << kWidth << " " << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g fill=\"none\" stroke-width=\"0.8\">\n";
  for (std::size_t k = 0; k < ball.size(); ++k) {
    os << "<polygon data-word=\"" << ball.words[k] << "\" stroke=\"" << (k == 0 ? "#c0392b" : "#34495e") << "\" points=\"";
    for (const auto& p : outline) {
      const PointH q = mobius_apply(ball.elements[k], p);
      os << sx(std::clamp(q.x, -1e4, 1e4)) << "," << sy(std::min(q.y, 1e4)) << " ";
    }
    os << "\"/>\n";
  }
  os << "</g>\n<line x1=\"0\" y1=\"" << kHeight << "\" x2=\"" << kWidth << "\" y2=\"" << kHeight
     << "\" stroke=\"black\"/>\n</svg>\n";
  return os.str();
}

inline CommandResult cmd_tile(const RunConfig& c) {
  const auto g = resolve_group(c);
  const WordBall ball = enumerate_ball(g, c.word_length);
  std::vector<PointH> pts = parse_points(c.points);
  if (c.samples < 0) throw DomainError("samples must be >= 0");
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> uy(0.0, 3.0);
  for (int i = 0; i < c.samples; ++i) {
    const double x = ux(rng);
    double y = uy(rng);
    while (!(y > 0.0)) y = uy(rng);
    pts.emplace_back(x, y);
  }
  if (pts.empty()) throw DomainError("tile: give --points or --samples");
  const auto hist = tile_histogram(pts, g, ball);

  Json r = header("tile");
  r["group"] = g.name;
  r["word_length"] = c.word_length;
  r["ball_size"] = ball.size();
  r["points"] = pts.size();
  r["flagged"] = hist.flagged;
  r["outside_ball"] = hist.outside_ball;
  Json counts = Json::object();
  for (const auto& [word, count] : hist.counts) counts[word] = count;
  r["counts"] = counts;
  r["counted"] = hist.total();
  if (c.samples == 0) {
    Json list = Json::array();
    for (const auto& a : hist.assignments) {
      list.push_back(Json{{"x", a.point.x},
                          {"y", a.point.y},
                          {"word", a.word},
                          {"reduced", {a.reduction.reduced.x, a.reduction.reduced.y}},
                          {"in_ball", a.in_ball},
                          {"ambiguous", a.ambiguous}});
    }
    r["assignments"] = list;
  }
  if (!c.svg.empty()) {
    std::ofstream f(c.svg);
    if (!f) throw DomainError("tile: cannot write " + c.svg);
    f << tiling_svg(g, ball, c.cusp_height);
    r["svg"] = c.svg;
  }
  return {r, kOk};
}

inline Json bounds_json(const FrameBounds& b) { return Json{{"A", b.A}, {"B", b.B}}; }

inline CommandResult cmd_finite_demo(const RunConfig& c) {
  if (c.N < 2 || c.N > 64) throw DomainError("finite-demo: N must lie in [2, 64]");
  const int order = c.K == 0 ? c.N * c.N : c.K;
  int p = 0;
  for (int cand = c.N; cand >= 1; --cand) {
    if (c.N % cand == 0 && order % cand == 0 && c.N % (order / cand) == 0) {
      p = cand;
      break;
    }
  }
  if (p == 0) throw DomainError("finite-demo: no lattice subgroup of order " + std::to_string(order));
  const int qq = order / p;
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> nd;
  CVector F(c.N);
  for (int i = 0; i < c.N; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    F(i) = std::complex<double>(re, im);
  }
  const auto rep = finite_weyl_heisenberg(c.N);
  const auto sel = wh_lattice_subgroup(c.N, p, qq);
  const auto r0 = density_analog_experiment(rep, sel, F);
  const auto S = frame_operator(orbit_system(rep, F, sel));

  Json r = header("finite-demo");
  r["N"] = c.N;
  r["K"] = r0.orbit_size;
  r["translation_step"] = c.N / p;
  r["modulation_step"] = c.N / qq;
  r["frame_bounds"] = bounds_json(r0.frame);
  r["riesz_bounds"] = bounds_json(r0.riesz);
  r["is_frame"] = r0.is_frame;
  r["is_riesz"] = r0.is_riesz;
  r["tight"] = r0.is_frame && std::abs(r0.frame.B - r0.frame.A) <= 1e-10 * r0.frame.B;
  r["ratio_d_over_K"] = r0.ratio;
  r["consistent"] = r0.consistent;
  r["commutation_residual"] = commutation_residual(rep, S, sel);
  r["window_norm_sq"] = F.squaredNorm();
  return {r, kOk};
}

// ---------------------------------------------------------------------------
// Dispatch and rendering
// ---------------------------------------------------------------------------

inline CommandResult error_result(const std::string& command, const std::string& kind, const std::string& message, int code) {
  Json r = header(command);
  r["error"] = Json{{"kind", kind}, {"message", message}};
  return {r, code};
}

inline CommandResult run(const RunConfig& c) {
  try {
    if (c.inject_fault == "domain") throw DomainError("injected domain error");
    if (c.inject_fault == "numeric") throw NumericError("injected numeric error");
    if (c.command == "admissibility") return cmd_admissibility(c);
    if (c.command == "verdict") return cmd_verdict(c);
    if (c.command == "identity-suite") return cmd_identity_suite(c);
    if (c.command == "tile") return cmd_tile(c);
    if (c.command == "finite-demo") return cmd_finite_demo(c);
    if (c.command == "covolume") return cmd_covolume(c);
    if (c.command == "periodization") return cmd_periodization(c);
    throw DomainError("unknown command '" + c.command + "'");
  } catch (const DomainError& e) {
    return error_result(c.command, "domain", e.what(), kDomain);
  } catch (const std::domain_error& e) {
    return error_result(c.command, "domain", e.what(), kDomain);
  } catch (const NumericError& e) {
    return error_result(c.command, "numeric", e.what(), kNumeric);
  }
}

namespace detail {
inline void flatten(const nlohmann::json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}
}  // namespace detail

inline std::string render(const Json& report, const std::string& format, bool canonical) {
  if (format == "text") {
    // Converting to nlohmann::json sorts keys; the top level keeps insertion
    // order unless canonical output is requested.
    std::ostringstream os;
    if (canonical) {
      detail::flatten(nlohmann::json::parse(report.dump()), "", os);
    } else {
      for (const auto& [k, v] : report.items()) detail::flatten(nlohmann::json::parse(v.dump()), k, os);
    }
    return os.str();
  }
  if (canonical) return nlohmann::json::parse(report.dump()).dump(2) + "\n";
  return report.dump(2) + "\n";
}

}  // namespace hyperlattice::cli
