// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "latwh/latwh.hpp"
#include "oracles.hpp"
#include "problems.hpp"

using namespace latwh;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << ']';
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<cplx> circle(int n) {
  std::vector<cplx> out;
  for (int j = 0; j < n; ++j) out.push_back(std::polar(1.0, 2.0 * oracle::pi * (j + 0.5) / n));
  return out;
}

std::vector<cplx> ktilde_grid() {
  std::vector<cplx> out;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 4; ++b) out.push_back({0.3 + 0.6 * a, 0.05 + 0.3 * b});
  return out;
}

template <std::size_t D>
double greens_worst(const LatticeDomain<D>& dom, cplx k2, std::mt19937_64& rng, int pairs) {
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    Field<D> u, w;
    for (const auto& v : dom.nodes()) {
      u.set(v, oracle::random_complex(rng));
      w.set(v, oracle::random_complex(rng));
    }
    auto r = greens_identity(dom, u, w, helmholtz_forcing(dom, u, k2), helmholtz_forcing(dom, w, k2), k2);
    worst = std::max(worst, std::abs(r.residual) / r.scale);
  }
  return worst;
}

void greens(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  const cplx k2 = cplx(1.0, 0.2) * cplx(1.0, 0.2);
  double worst = 0.0;
  worst = std::max(worst, greens_worst(build_rectangle({0, 30}, {0, 30}), k2, rng, 50));
  worst = std::max(worst, greens_worst(build_rectangle({-4, 7}, {0, 19}), k2, rng, 50));
  worst = std::max(worst, greens_worst(build_l_shape({0, 20}, {0, 16}, 9, 7), k2, rng, 50));
  worst = std::max(worst, greens_worst(build_l_shape({0, 12}, {0, 12}, 3, 10), k2, rng, 50));
  worst = std::max(worst, greens_worst(build_box({0, 8}, {0, 8}, {0, 8}), k2, rng, 50));
  worst = std::max(worst, greens_worst(build_box({0, 3}, {0, 6}, {-2, 2}), k2, rng, 50));
  double t = seconds_since(t0);
  o.note << "max relative residual " << worst << ", " << t << " s";
  o.require(worst <= 1e-12, "residual");
  o.require(t < 10.0, "runtime");
}

void dispersion(Outcome& o) {
  double worst = 0.0;
  for (cplx kt : ktilde_grid()) {
    LatticeDispersion d{kt};
    for (cplx s : circle(64)) {
      auto r = q_roots(s, d);
      worst = std::max(worst, std::abs(r.inner * r.outer - 1.0));
      worst = std::max(worst, std::abs(q_physical(s, d) * q_other(s, d) - 1.0));
      worst = std::max(worst, std::abs(upsilon(s, d) - upsilon(1.0 / s, d)));
    }
    auto bp = branch_points(d);
    for (auto [e, target] : {std::pair{bp.eta11, 1.0}, std::pair{bp.eta21, 1.0}, std::pair{bp.eta12, -1.0},
                             std::pair{bp.eta22, -1.0}}) {
      auto r = q_roots(e, d);
      worst = std::max(worst, std::abs(r.inner - target));
      worst = std::max(worst, std::abs(upsilon_from_q(r.inner)));
    }
  }
  auto bp = branch_points(LatticeDispersion{std::sqrt(2.0)});
  const double r3 = std::sqrt(3.0);
  double sq = std::max({std::abs(bp.eta11 - cplx(0.0, -1.0)), std::abs(bp.eta21 - cplx(0.0, 1.0)),
                        std::abs(bp.eta12 - (2.0 + r3)), std::abs(bp.eta22 - (2.0 - r3))});
  o.note << "identities " << worst << ", sqrt2 branch points " << sq;
  o.require(worst <= 1e-12, "identities");
  o.require(sq <= 1e-13, "sqrt2 branch points");
}

void eigenrelation(Outcome& o) {
  LatticeDispersion d{cplx(1.0, 0.2)};
  auto dom = build_rectangle({-6, 6}, {0, 3});
  double w2 = 0.0;
  for (cplx s : circle(256)) {
    cplx q = oracle::lattice_q(s, d.k2());
    Field<2> u;
    for (const auto& v : dom.nodes()) u.set(v, std::pow(s, v[0]) * std::pow(q, v[1]));
    cplx Y = upsilon(s, d);
    for (int m : {-3, 0, 2, 5}) w2 = std::max(w2, std::abs(normal_derivative(dom, u, Node<2>{m, 0}, d.k2()) - Y * std::pow(s, m)));
  }
  auto box = build_box({-3, 3}, {-3, 3}, {0, 2});
  double w3 = 0.0;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      cplx s1 = std::polar(1.0, 2.0 * oracle::pi * (a + 0.25) / 16), s2 = std::polar(1.0, 2.0 * oracle::pi * (b + 0.5) / 16);
      cplx q = oracle::lattice_q3(s1, s2, d.k2());
      Field<3> u;
      for (const auto& v : box.nodes()) u.set(v, std::pow(s1, v[0]) * std::pow(s2, v[1]) * std::pow(q, v[2]));
      cplx Y = upsilon_3d(s1, s2, d);
      for (auto v : {Node<3>{0, 0, 0}, Node<3>{2, -1, 0}, Node<3>{-2, 2, 0}})
        w3 = std::max(w3, std::abs(normal_derivative(box, u, v, d.k2()) - Y * std::pow(s1, v[0]) * std::pow(s2, v[1])));
    }
  o.note << "2D " << w2 << ", 3D " << w3;
  o.require(w2 <= 1e-12, "2D");
  o.require(w3 <= 1e-12, "3D");
}

void analogy(Outcome& o) {
  double worst = 0.0;
  int checked = 0;
  for (Problem pr : all_problems) {
    if (pr == Problem::HalfPlaneNeumannElastic) continue;
    for (Side side : {Side::Discrete, Side::Continuous}) {
      auto p = fixture::make(pr, side);
      auto rep = analogy_report(p, default_samples(p, 256));
      worst = std::max(worst, rep.max_residual());
      o.require(rep.samples == 256, std::string(to_string(pr)) + " samples");
      if (pr == Problem::StripInWaveguide)
        o.require(rep.forcing_max < 0.0, "strip-in-waveguide forcing must be skipped");
      else
        o.require(rep.forcing_max >= 0.0, std::string(to_string(pr)) + " forcing checked");
      ++checked;
    }
  }
  o.note << checked << " problem/side pairs, max residual " << worst;
  o.require(worst <= 1e-12, "residual");
}

void deviator(Outcome& o) {
  int dc = deviator_polynomial(fixture::make(Problem::SoftHardHalfPlane, Side::Continuous)).degree();
  int dd = deviator_polynomial(fixture::make(Problem::SoftHardHalfPlane, Side::Discrete)).degree();
  o.note << "continuous degree " << dc << ", discrete degree " << dd;
  o.require(dc == 2, "continuous");
  o.require(dd == 4, "discrete");
}

double rel_dev(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

void half_plane(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  const LatticeDispersion d{cplx(1.0, 0.15)};
  auto inc = lattice_incidence(cplx(1.5, 0.0), d);
  auto sol = solve_half_plane(d, inc, BoundaryCondition::Dirichlet);
  TruncatedProblem tp;
  tp.problem.problem = Problem::HalfPlaneDirichlet;
  tp.problem.lattice = d;
  tp.problem.lin = inc;
  tp.R = 60;
  auto u = solve(tp);
  auto sp = extract_spectra(u, tp, circle(64));
  std::vector<cplx> wm, wp, om, op;
  for (const auto& x : sp.samples) {
    wm.push_back(sol.psi_minus(x.s));
    wp.push_back(sol.psi_plus(x.s));
    om.push_back(x.minus(0));
    op.push_back(x.plus(0));
  }
  double dm = rel_dev(wm, om), dp = rel_dev(wp, op);

  auto win = sol.reconstruct_window(-11, 11, 0, 21);
  std::vector<cplx> fw, fo;
  for (int m = -10; m <= 10; ++m)
    for (int n = 0; n <= 20; ++n) {
      fw.push_back(win.at({m, n}));
      fo.push_back(u.at(m, n));
    }
  double df = rel_dev(fw, fo);

  double helm = 0.0, bc = 0.0;
  for (int m = -10; m <= 10; ++m)
    for (int n = 1; n <= 20; ++n) helm = std::max(helm, std::abs(helmholtz_residual<2>(win, {m, n}, d.k2())));
  auto dom = build_rectangle({-11, 11}, {0, 21});
  for (int m = -10; m <= 10; ++m) {
    if (m >= 0)
      bc = std::max(bc, std::abs(win.at({m, 0}) + std::pow(inc.s_in, -m)));
    else
      bc = std::max(bc, std::abs(normal_derivative(dom, win, Node<2>{m, 0}, d.k2())));
  }
  double t = seconds_since(t0);
  o.note << "spectra minus " << dm << " plus " << dp << ", field " << df << ", Helmholtz " << helm
         << ", boundary " << bc << ", " << t << " s";
  o.require(dm <= 5e-3 && dp <= 5e-3, "spectra");
  o.require(df <= 5e-3, "field");
  o.require(helm <= 1e-8, "Helmholtz");
  o.require(bc <= 1e-8, "boundary conditions");
  o.require(t < 60.0, "runtime");
}

double matrix_residual(const TruncatedProblem& tp) {
  auto sp = extract_spectra(solve(tp), tp, circle(64));
  double r = 0.0;
  for (const auto& x : sp.samples)
    r = std::max(r, wh_residual(tp.problem, x.minus, x.plus, {x.s}).cwiseAbs().maxCoeff());
  return r;
}

void matrix_problems(Outcome& o) {
  TruncatedProblem strip;
  strip.problem = fixture::make(Problem::FiniteStrip, Side::Discrete);
  strip.problem.M = 3;
  TruncatedProblem stag;
  stag.problem = fixture::make(Problem::StaggeredWaveguide, Side::Discrete);
  stag.problem.M = 2;
  stag.problem.N = 3;
  for (auto* tp : {&strip, &stag}) {
    tp->R = 50;
    double r50 = matrix_residual(*tp);
    tp->R = 100;
    double r100 = matrix_residual(*tp);
    const std::string name = to_string(tp->problem.problem);
    o.note << name << " R=50 " << r50 << " R=100 " << r100 << "; ";
    o.require(r50 <= 1e-2, name + " residual");
    o.require(r100 <= 0.5 * r50, name + " halving");
  }
}

void quarter_plane(Outcome& o) {
  TruncatedProblem tp;
  tp.problem = fixture::make(Problem::QuarterPlane, Side::Discrete, {1.0, 0.4});
  tp.problem.lin3 = lattice_incidence_3d(2.0, 2.0, tp.problem.lattice);
  tp.R = 14;
  auto u = solve_3d(tp);
  std::vector<std::pair<cplx, cplx>> pts;
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b)
      pts.push_back({std::polar(1.0, 2.0 * oracle::pi * (a + 0.25) / 12), std::polar(1.0, 2.0 * oracle::pi * (b + 0.5) / 12)});
  auto sp = extract_spectra_3d(u, pts, tp.problem.lattice);
  double r = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    r = std::max(r, std::abs(wh_residual(tp.problem, sp.samples[k].minus(0), sp.samples[k].plus(0),
                                         {pts[k].first, pts[k].second})));
  o.note << "R=14 interior residual " << u.max_interior_residual() << ", WH residual " << r;
  o.require(u.max_interior_residual() <= 1e-9, "interior");
  o.require(r <= 5e-2, "WH residual");
}

void finite_elements(Outcome& o) {
  using fem::Rational;
  auto e = fem::element_matrices();
  auto s = fem::average_and_lump();
  auto at = [](const auto& m, int i, int j) { return m[i][j]; };
  const Rational h(1, 2), t(1, 24), q(1, 4);
  const int K3[3][3] = {{-2, 1, 1}, {1, -1, 0}, {1, 0, -1}}, M3[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  const int Ks[4][4] = {{-2, 1, 1, 0}, {1, -2, 0, 1}, {1, 0, -2, 1}, {0, 1, 1, -2}};
  const int Ms1[4][4] = {{2, 1, 1, 0}, {1, 4, 2, 1}, {1, 2, 4, 1}, {0, 1, 1, 2}};
  const int Ms2[4][4] = {{4, 1, 1, 2}, {1, 2, 0, 1}, {1, 0, 2, 1}, {2, 1, 1, 4}};
  const int Ms[4][4] = {{3, 1, 1, 1}, {1, 3, 1, 1}, {1, 1, 3, 1}, {1, 1, 1, 3}};
  bool exact = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) exact = exact && at(e.K, i, j) == h * Rational(K3[i][j]) && at(e.M, i, j) == t * Rational(M3[i][j]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      exact = exact && s.Ks1[i][j] == h * Rational(Ks[i][j]) && s.Ks2[i][j] == h * Rational(Ks[i][j]) &&
              s.Ms1[i][j] == t * Rational(Ms1[i][j]) && s.Ms2[i][j] == t * Rational(Ms2[i][j]) &&
              s.Ms[i][j] == t * Rational(Ms[i][j]) && s.Mhat[i][j] == (i == j ? q : Rational(0));
  o.require(exact, "printed matrices");

  int rows = 0, bad = 0;
  std::vector<Domain2> doms = {build_rectangle({0, 1}, {0, 1}), build_rectangle({0, 9}, {0, 9}),
                               build_rectangle({0, 12}, {0, 3}), build_rectangle({-3, 4}, {2, 8})};
  for (auto [c1, c2] : {std::pair{3, 3}, std::pair{2, 4}, std::pair{5, 2}, std::pair{4, 5}})
    doms.push_back(build_l_shape({0, 7}, {0, 7}, c1, c2));
  for (const auto& dom : doms) {
    auto rep = fem::check_equivalence(dom);
    rows += rep.rows_checked;
    bad += static_cast<int>(rep.mismatches.size());
    o.require(rep.rows_checked == static_cast<int>(dom.nodes().size()), "exhaustive rows");
  }
  o.note << "printed matrices " << (exact ? "exact" : "differ") << ", " << rows << " rows, " << bad << " mismatches";
  o.require(bad == 0, "stencil rows");
}

void continuum(Outcome& o) {
  const cplx k(1.0, 0.3), i(0.0, 1.0);
  double lowest = 1e300;
  for (int j = 0; j < 10; ++j) {
    double xi = -2.0 + 0.45 * j;
    double err[2];
    int idx = 0;
    for (double h : {1e-2, 1e-3}) {
      LatticeDispersion d{k * h, h};
      err[idx++] = std::abs(upsilon(std::polar(1.0, xi * h), d) / h - i * oracle::gamma(xi, k));
    }
    lowest = std::min(lowest, std::log10(err[0] / err[1]));
  }
  o.note << "lowest observed order " << lowest;
  o.require(lowest >= 1.0, "order");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"discrete Green's identity", greens},
      {"dispersion identities and branch points", dispersion},
      {"plane-wave normal-derivative eigenrelation", eigenrelation},
      {"direct vs generating-function analogy", analogy},
      {"deviator polynomial degrees", deviator},
      {"half-plane end-to-end vs truncated lattice", half_plane},
      {"matrix problems vs truncated lattice", matrix_problems},
      {"quarter-plane truncated lattice residual", quarter_plane},
      {"finite element assembly", finite_elements},
      {"continuum limit order", continuum},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      criteria[n].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << ']';
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", n + 1, criteria[n].first, o.note.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
