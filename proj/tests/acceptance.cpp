// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria. Tolerances are fixed here.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlattice/cli.hpp"

using namespace hyperlattice;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < budget_seconds, "runtime " + fmt(secs) + " s over budget");
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s) [%.1f s]%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
}

// 1. C_psi / ||psi||^2 = 2 / alpha.
Outcome admissibility_ratio_grid() {
  Outcome o;
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    for (const double a : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
      const double err = std::abs(admissibility_ratio(as_freq(Wavelet(n, a))) - 2.0 / a);
      worst = std::max(worst, err);
      o.require(err < 1e-8, "n=" + std::to_string(n) + " alpha=" + fmt(a) + " error " + fmt(err));
    }
  }
  if (o.pass) o.detail = "worst error " + fmt(worst);
  return o;
}

// 2. Formal dimension by frequency quadrature and by the G-integral.
Outcome formal_dimension_two_ways() {
  Outcome o;
  double worst = 0.0;
  for (const int n : {0, 1}) {
    for (const double a : {1.0, 2.0, 4.0}) {
      const double target = 0.5 * a;
      const double q = formal_dimension(Wavelet(n, a)).quadrature;
      const double h = formal_dim_numeric(n, a);
      const double eq = std::abs(q - target) / target;
      const double eh = std::abs(h - target) / target;
      worst = std::max({worst, eq, eh});
      o.require(eq < 1e-2, "quadrature n=" + std::to_string(n) + " alpha=" + fmt(a) + " relerr " + fmt(eq));
      o.require(eh < 1e-2, "G-integral n=" + std::to_string(n) + " alpha=" + fmt(a) + " relerr " + fmt(eh));
    }
  }
  if (o.pass) o.detail = "worst relerr " + fmt(worst);
  return o;
}

// 3. Covolumes.
Outcome covolumes() {
  Outcome o;
  const double m = covolume(modular_group()).value;
  o.require(std::abs(m - std::numbers::pi / 3.0) < 1e-6, "modular " + fmt(m));
  for (const int q : {4, 5, 6}) {
    const double v = covolume(hecke_group(q)).value;
    o.require(std::abs(v - std::numbers::pi * (1.0 - 2.0 / q)) < 1e-5, "hecke " + std::to_string(q) + " " + fmt(v));
  }
  if (o.pass) o.detail = "modular error " + fmt(std::abs(m - std::numbers::pi / 3.0));
  return o;
}

std::vector<PointH> grid_points() {
  std::vector<PointH> pts;
  for (const double x : {-1.5, -0.5, 0.0, 0.5, 1.5})
    for (const double y : {0.4, 0.8, 1.0, 1.6, 2.5}) pts.emplace_back(x, y);
  return pts;
}

// 4. Identity suite at n = 0, alpha = 2, with negative controls.
Outcome identity_suite() {
  Outcome o;
  const Wavelet w(0, 2.0);
  const auto pts = grid_points();
  const TransformFunction Wpsi = window_transform(w);
  std::ostringstream summary;

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> scale(0.5, 2.0), shift(-1.0, 1.0);
  std::normal_distribution<double> coef;
  SpanElement f;
  for (int k = 0; k < 3; ++k) {
    const double a = scale(rng), b = shift(rng), re = coef(rng), im = coef(rng);
    f.terms.push_back({complex(re, im), a, b});
  }

  const double inter = intertwine_residual(to_freq(f, w), w, 2.0, -1.0, pts);
  o.require(inter < 1e-8, "intertwining " + fmt(inter));

  const auto st = stationarity_report(w, 0.4, pts);
  o.require(st.modulus_residual < 1e-6, "stationarity modulus " + fmt(st.modulus_residual));
  o.require(st.dispersion < 1e-6, "stationarity dispersion " + fmt(st.dispersion));
  const SpanElement generic{{SpanTerm{1.0, 1.0, 0.0}, SpanTerm{1.0, 2.0, 1.0}}};
  const auto ctrl = stationarity_report(transform(generic, w), w, 0.4, pts);
  o.require(ctrl.dispersion > 0.1, "stationarity control " + fmt(ctrl.dispersion));

  const WindowKernel kernel(w);
  const double expect = admissibility_constant(w) * h2_inner(f, f, kernel).real();
  const auto F = transform(f, w);
  const double cald = std::abs(wspace_inner(F, F, w).real() - expect) / expect;
  o.require(cald < 1e-3, "calderon " + fmt(cald));

  const auto rel = ortho_relation_check(Wpsi, Wpsi, Wpsi, Wpsi, w, 0.5 * w.alpha, PairingSpec::for_window(w));
  o.require(rel.relerr < 1e-2, "orthogonality " + fmt(rel.relerr));
  const complex doubled = 0.5 * rel.rhs;  // same lhs, d replaced by 2d
  const double wrong = std::abs(rel.lhs - doubled) / std::abs(doubled);
  o.require(wrong >= 0.5, "orthogonality with 2d " + fmt(wrong));

  const double range = range_residual(rep_apply(rotation(0.5), w, Wpsi), w);
  o.require(range < 1e-2, "range " + fmt(range));
  const TransformFunction box{[](const PointH& z) {
                                return (std::abs(z.x) < 0.5 && z.y > 0.5 && z.y < 2.0) ? complex(1.0, 0.0) : complex{};
                              },
                              "box"};
  const double box_res = range_residual(box, w);
  o.require(box_res > 0.1, "range control " + fmt(box_res));

  summary << "intertwining " << fmt(inter) << ", dispersion " << fmt(st.dispersion) << " (control " << fmt(ctrl.dispersion)
          << "), calderon " << fmt(cald) << ", orthogonality " << fmt(rel.relerr) << " (2d: " << fmt(wrong) << "), range "
          << fmt(range) << " (box " << fmt(box_res) << ")";
  if (o.pass) o.detail = summary.str();
  return o;
}

// 5. Periodization on the standard configuration.
Outcome periodization() {
  Outcome o;
  const Wavelet w(0, 2.0);
  std::vector<double> errs;
  for (const int L : {4, 5, 6, 7, 8}) {
    PeriodizationSpec spec;
    spec.word_length = L;
    spec.cusp_height = 10.0;
    errs.push_back(periodization_check(w, modular_group(), spec).relerr);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) o.require(errs[i] < errs[i - 1], "not decreasing at L=" + std::to_string(4 + i));
  o.require(errs.back() < 5e-2, "L=8 relerr " + fmt(errs.back()));
  std::ostringstream s;
  s << "relerr L=4.." << 8 << ":";
  for (const double e : errs) s << " " << fmt(e);
  if (o.pass) o.detail = s.str();
  return o;
}

// 6. Finite frame exactness.
Outcome frame_core_exactness() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  auto random_matrix = [&](Eigen::Index r, Eigen::Index c) {
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
  };
  double parseval = 0.0, commute = 0.0, ortho = 0.0, spectrum = 0.0;
  std::uniform_int_distribution<int> dim(1, 8), count(1, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = dim(rng), N = count(rng);
    const VectorSystem sys(random_matrix(d, N));
    const auto eg = hermitian_eigen(gram(sys)).values;
    const auto es = hermitian_eigen(frame_operator(sys)).values;
    for (Eigen::Index i = 0; i < std::min(d, N); ++i) spectrum = std::max(spectrum, std::abs(eg(N - 1 - i) - es(d - 1 - i)) / std::max(1.0, es(d - 1)));
    for (Eigen::Index i = 0; i < N - std::min(d, N); ++i) spectrum = std::max(spectrum, std::abs(eg(i)) / std::max(1.0, es(d - 1)));
    for (Eigen::Index i = 0; i < d - std::min(d, N); ++i) spectrum = std::max(spectrum, std::abs(es(i)) / std::max(1.0, es(d - 1)));
    if (N >= d) {
      const auto t = canonical_tight(sys);
      const CVector x = random_matrix(d, 1);
      parseval = std::max(parseval, std::abs((t.vectors.adjoint() * x).squaredNorm() - x.squaredNorm()) / x.squaredNorm());
    }
    if (N <= d) {
      const auto on = riesz_orthonormalize(sys);
      ortho = std::max(ortho, (gram(on) - CMatrix::Identity(N, N)).cwiseAbs().maxCoeff());
    }
  }
  for (int N = 2; N <= 8; ++N) {
    const auto rep = finite_weyl_heisenberg(N);
    const CVector F = random_matrix(N, 1);
    for (int p = 1; p <= N; ++p) {
      if (N % p) continue;
      for (int q = 1; q <= N; ++q) {
        if (N % q) continue;
        const auto sel = wh_lattice_subgroup(N, p, q);
        commute = std::max(commute, commutation_residual(rep, frame_operator(orbit_system(rep, F, sel)), sel));
      }
    }
  }
  o.require(parseval < 1e-10, "parseval " + fmt(parseval));
  o.require(commute < 1e-10, "commutation " + fmt(commute));
  o.require(ortho < 1e-10, "riesz orthonormalization " + fmt(ortho));
  o.require(spectrum < 1e-10, "spectra " + fmt(spectrum));
  if (o.pass)
    o.detail = "parseval " + fmt(parseval) + ", commutation " + fmt(commute) + ", orthonormal " + fmt(ortho) + ", spectra " + fmt(spectrum);
  return o;
}

// 7. Verdict logic.
Outcome verdict_logic() {
  Outcome o;
  const double cov = covolume(modular_group()).value;
  const double threshold = frame_threshold(cov);
  o.require(std::abs(threshold - 6.0 / std::numbers::pi) < 1e-9, "threshold " + fmt(threshold - 6.0 / std::numbers::pi));
  o.require(density_verdict(modular_group(), threshold - 1e-9, 0).frame_admissible, "not admissible just below");
  o.require(!density_verdict(modular_group(), threshold + 1e-9, 0).frame_admissible, "admissible just above");
  o.require(density_verdict(modular_group(), 6.0 / std::numbers::pi - 1e-9, 0).frame_admissible, "below 6/pi");
  o.require(!density_verdict(modular_group(), 6.0 / std::numbers::pi + 1e-9, 0).frame_admissible, "above 6/pi");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cv(0.01, 50.0), al(0.01, 20.0);
  std::uniform_int_distribution<int> nn(0, 10);
  int bad_order = 0, bad_tri = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto v = density_verdict(cv(rng), al(rng), nn(rng));
    if (!(v.abdm_bound > v.sharp_bound)) ++bad_order;
    const bool below = v.product < 1.0 - kCriticalBand, above = v.product > 1.0 + kCriticalBand;
    const bool ok = below ? (v.frame_admissible && !v.riesz_admissible)
                          : above ? (!v.frame_admissible && v.riesz_admissible) : (v.frame_admissible && v.riesz_admissible);
    if (!ok) ++bad_tri;
  }
  const auto edge = density_verdict(2.0, 1.0, 0);
  o.require(edge.frame_admissible && edge.riesz_admissible, "critical case p = 1");
  o.require(bad_order == 0, std::to_string(bad_order) + " bound-order violations");
  o.require(bad_tri == 0, std::to_string(bad_tri) + " trichotomy violations");
  if (o.pass) o.detail = "threshold - 6/pi = " + fmt(threshold - 6.0 / std::numbers::pi);
  return o;
}

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation invoke(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / ("hyperlattice_acceptance_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = "\"" HYPERLATTICE_CLI "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Invocation r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  fs::remove(out);
  return r;
}

// 8. CLI contract.
Outcome cli_contract() {
  Outcome o;
  for (const std::string args : {"verdict --alpha 1.7 --canonical", "covolume --group hecke:5 --canonical",
                                 "tile --samples 300 --seed 9 --canonical", "finite-demo --N 6 --canonical",
                                 "admissibility --n 2 --alpha 3 --canonical"}) {
    const auto a = invoke(args), b = invoke(args);
    o.require(a.code == 0 && b.code == 0, "'" + args + "' failed");
    o.require(a.out == b.out, "'" + args + "' not byte-identical across runs");
    o.require(nlohmann::json::parse(a.out).dump(2) + "\n" == a.out, "'" + args + "' not in canonical form");
  }
  o.require(invoke("verdict --inject-fault domain").code == 2, "injected domain error");
  o.require(invoke("verdict --inject-fault numeric").code == 3, "injected numeric error");
  o.require(invoke("verdict --alpha 0").code == 2, "alpha = 0");
  o.require(invoke("identity-suite --tolerance 0 --word-length 2").code == 1, "failing identity suite");
  o.require(invoke("covolume").code == 0, "success");

  cli::RunConfig cfg;
  cfg.command = "verdict";
  cfg.alpha = 0.1 + 0.2;
  cfg.group = "hecke:7";
  cfg.seed = 42;
  cfg.canonical = true;
  const fs::path path = fs::temp_directory_path() / ("hyperlattice_acceptance_" + std::to_string(::getpid()) + ".cfg");
  std::ofstream(path) << cli::emit_config(cfg);
  const cli::RunConfig back = cli::parse_args({"--config", path.string()});
  o.require(back == cfg, "config round trip changed the configuration");
  const auto via_file = invoke("--config \"" + path.string() + "\"");
  const auto via_flags = invoke("verdict --alpha 0.30000000000000004 --group hecke:7 --seed 42 --canonical");
  o.require(via_file.code == 0 && via_file.out == via_flags.out, "config file and flags disagree");
  fs::remove(path);
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  criterion(1, "admissibility ratio 2/alpha", 10.0, admissibility_ratio_grid);
  criterion(2, "formal dimension two ways", 300.0, formal_dimension_two_ways);
  criterion(3, "covolumes", 30.0, covolumes);
  criterion(4, "identity suite", 600.0, identity_suite);
  criterion(5, "periodization", 300.0, periodization);
  criterion(6, "frame_core exactness", 60.0, frame_core_exactness);
  criterion(7, "verdict logic", 60.0, verdict_logic);
  criterion(8, "CLI contract", 600.0, cli_contract);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
