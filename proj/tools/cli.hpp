// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latwh/latwh.hpp"

namespace latwh::cli {

using nlohmann::json;

struct RunConfig {
  std::string out_dir = ".";
  std::string ktilde = "1+0.2i";
  std::string k = "1+0.2i";
  double h = 1.0;
  std::string problem = "half-plane-dirichlet";
  std::string side = "discrete";
  int M = 2, N = 3, L = 1;
  double a = 1.0, b = 2.0;
  std::string s_in = "1.5";
  std::string s1_in = "2", s2_in = "2";
  double theta = 0.7, phi = 0.6;
  int mode = 1;
  int samples = 256;
  int modes = 2048;
  int R = 60;
  int window = 20;
  bool verify = false;
  bool full = false;
  std::string placement = "plus";
  std::string domain_file;
  std::string shape = "rectangle";
  int extent = 12;
  int pairs = 50;
  unsigned seed = 1;
  std::string u_file, w_file;
};

namespace detail {

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline std::ofstream open_out(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  std::ofstream f(std::filesystem::path(c.out_dir) / name);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + name + " in " + c.out_dir);
  return f;
}

inline void write_json(const RunConfig& c, const std::string& name, json j) {
  j["schema"] = "v1";
  auto f = open_out(c, name);
  f << j.dump(2) << '\n';
}

inline void put(std::ostream& os, cplx z) { os << io::format_real(z.real()) << ',' << io::format_real(z.imag()); }

inline ProblemSpec build_problem(const RunConfig& c) {
  ProblemSpec p;
  p.problem = parse_problem(c.problem);
  p.side = parse_side(c.side);
  p.M = c.M;
  p.N = c.N;
  p.L = c.L;
  p.a = c.a;
  p.b = c.b;
  if (p.side == Side::Discrete) {
    p.lattice = {io::parse_complex(c.ktilde), c.h};
    if (p.problem == Problem::QuarterPlane) {
      p.lin3 = lattice_incidence_3d(io::parse_complex(c.s1_in), io::parse_complex(c.s2_in), p.lattice);
    } else if (p.problem == Problem::StripInWaveguide) {
      p.lin = lattice_guided_mode(c.mode, c.N, p.lattice);
    } else {
      p.lin = lattice_incidence(io::parse_complex(c.s_in), p.lattice);
    }
  } else {
    p.continuum = {io::parse_complex(c.k)};
    cplx k = p.continuum.k;
    if (p.problem == Problem::QuarterPlane) {
      p.cin3 = {k * std::sin(c.theta) * std::cos(c.phi), k * std::sin(c.theta) * std::sin(c.phi),
                k * std::cos(c.theta)};
    } else if (p.problem == Problem::StripInWaveguide) {
      p.cin = continuous_guided_mode(c.mode, c.b, p.continuum);
    } else {
      p.cin = continuous_incidence(c.theta, p.continuum);
    }
  }
  validate(p);
  return p;
}

inline Domain2 shape2(const RunConfig& c) {
  int e = c.extent;
  if (c.shape == "rectangle") return build_rectangle({0, e}, {0, e});
  if (c.shape == "l-shape") return build_l_shape({0, e}, {0, e}, e / 2, e / 2);
  throw Error(ErrorCode::InvalidArgument, "2D shape must be rectangle or l-shape");
}

inline io::AnyDomain load_domain(const RunConfig& c) {
  if (!c.domain_file.empty()) {
    std::ifstream f(c.domain_file);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + c.domain_file);
    json j;
    try {
      f >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    return io::domain_from_json(j);
  }
  if (c.extent < 2) throw Error(ErrorCode::DegenerateExtent, "extent must be >= 2");
  if (c.shape == "box") return build_box({0, c.extent}, {0, c.extent}, {0, c.extent});
  return shape2(c);
}

template <std::size_t D>
Field<D> read_field(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  return io::read_field_csv<D>(f);
}

// ---------------------------------------------------------------------------
// subcommands

inline void cmd_dispersion(const RunConfig& c, std::ostream& out) {
  LatticeDispersion d{io::parse_complex(c.ktilde), c.h};
  if (c.samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const double pi = std::acos(-1.0);
  auto f = open_out(c, "dispersion.csv");
  f << "re_s,im_s,re_q,im_q,re_upsilon,im_upsilon\n";
  for (int j = 0; j < c.samples; ++j) {
    cplx s = std::polar(1.0, 2.0 * pi * j / c.samples);
    cplx q = q_physical(s, d);
    put(f, s);
    f << ',';
    put(f, q);
    f << ',';
    put(f, upsilon_from_q(q));
    f << '\n';
  }
  BranchPoints bp = branch_points(d);
  json pts = json::array();
  const char* names[] = {"eta11", "eta21", "eta12", "eta22"};
  auto all = bp.all();
  for (int j = 0; j < 4; ++j) pts.push_back({{"name", names[j]}, {"value", complex_json(all[j])}});
  write_json(c, "branch_points.json",
             {{"ktilde", complex_json(d.ktilde)}, {"d1", complex_json(bp.d1)}, {"d2", complex_json(bp.d2)},
              {"branch_points", pts}});
  out << "wrote " << c.samples << " samples and 4 branch points\n";
}

inline void cmd_kernel(const RunConfig& c, std::ostream& out) {
  ProblemSpec p = build_problem(c);
  auto pts = default_samples(p, c.samples);
  const int n = kernel_size(p.problem);
  auto f = open_out(c, "kernel.csv");
  f << "re_z1,im_z1";
  if (is_3d(p.problem)) f << ",re_z2,im_z2";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f << ",re_K" << i << j << ",im_K" << i << j;
  for (int i = 0; i < n; ++i) f << ",re_F" << i << ",im_F" << i;
  f << '\n';
  for (const auto& z : pts) {
    KernelValue K = kernel(p, z);
    ForcingValue F = forcing(p, z);
    put(f, z.z1);
    if (is_3d(p.problem)) {
      f << ',';
      put(f, z.z2);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        f << ',';
        put(f, K(i, j));
      }
    for (int i = 0; i < n; ++i) {
      f << ',';
      put(f, F(i));
    }
    f << '\n';
  }
  out << "wrote " << pts.size() << " kernel samples for " << to_string(p.problem) << '\n';
}

inline void cmd_analogy(const RunConfig& c, std::ostream& out) {
  ProblemSpec p = build_problem(c);
  if (kernel_arity(p.problem) == 0) throw Error(ErrorCode::NotApplicable, "no generating kernel for this problem");
  AnalogyReport r = analogy_report(p, default_samples(p, c.samples));
  const double tol = 1e-12;
  json j = {{"problem", to_string(p.problem)},
            {"side", to_string(p.side)},
            {"samples", r.samples},
            {"kernel_max_residual", r.kernel_max},
            {"forcing_checked", r.forcing_max >= 0.0},
            {"forcing_max_residual", r.forcing_max >= 0.0 ? json(r.forcing_max) : json(nullptr)},
            {"max_residual", r.max_residual()},
            {"tolerance", tol},
            {"pass", r.max_residual() <= tol}};
  write_json(c, "analogy.json", j);
  out << to_string(p.problem) << ' ' << to_string(p.side) << " max_residual " << r.max_residual() << '\n';
}

template <std::size_t D>
json greens_run(const RunConfig& c, const LatticeDomain<D>& dom, cplx k2) {
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> nd;
  auto random_field = [&] {
    Field<D> u;
    for (const auto& v : dom.nodes()) u.set(v, {nd(rng), nd(rng)});
    return u;
  };
  double worst = 0.0;
  int checked = 0;
  auto check = [&](const Field<D>& u, const Field<D>& w) {
    auto r = greens_identity(dom, u, w, helmholtz_forcing(dom, u, k2), helmholtz_forcing(dom, w, k2), k2);
    worst = std::max(worst, std::abs(r.residual) / std::max(r.scale, 1e-300));
    ++checked;
  };
  if (!c.u_file.empty() || !c.w_file.empty()) {
    if (c.u_file.empty() || c.w_file.empty()) throw Error(ErrorCode::InvalidArgument, "--u and --w go together");
    check(read_field<D>(c.u_file), read_field<D>(c.w_file));
  } else {
    if (c.pairs < 1) throw Error(ErrorCode::InvalidArgument, "pairs must be >= 1");
    for (int j = 0; j < c.pairs; ++j) {
      Field<D> u = random_field();
      Field<D> w = random_field();
      check(u, w);
    }
  }
  std::map<std::string, int> classes;
  for (const auto& v : dom.boundary()) ++classes[to_string(classify_boundary(dom, v).kind)];
  const double tol = 1e-12;
  return {{"domain", io::domain_to_json(dom)},
          {"interior_nodes", dom.interior().size()},
          {"boundary_nodes", dom.boundary().size()},
          {"boundary_classes", classes},
          {"pairs", checked},
          {"max_relative_residual", worst},
          {"tolerance", tol},
          {"pass", worst <= tol}};
}

inline void cmd_greens(const RunConfig& c, std::ostream& out) {
  cplx kt = io::parse_complex(c.ktilde);
  io::AnyDomain dom = load_domain(c);
  json j = std::visit([&](const auto& d) { return greens_run(c, d, kt * kt); }, dom);
  write_json(c, "greens.json", j);
  out << "max_relative_residual " << j["max_relative_residual"].get<double>() << '\n';
}

inline double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

inline void cmd_solve(const RunConfig& c, std::ostream& out) {
  ProblemSpec p = build_problem(c);
  if (p.side != Side::Discrete) throw Error(ErrorCode::InvalidArgument, "solve works on the discrete side");
  BoundaryCondition bc;
  if (p.problem == Problem::HalfPlaneDirichlet) {
    bc = BoundaryCondition::Dirichlet;
  } else if (p.problem == Problem::HalfPlaneNeumann) {
    bc = BoundaryCondition::Neumann;
  } else {
    throw Error(ErrorCode::InvalidArgument, "solve handles half-plane-dirichlet and half-plane-neumann");
  }
  if (c.window < 0) throw Error(ErrorCode::InvalidArgument, "window must be >= 0");
  if (c.placement != "plus" && c.placement != "minus")
    throw Error(ErrorCode::InvalidArgument, "placement must be plus or minus");
  HalfPlaneOptions opt;
  opt.n_modes = c.modes;
  opt.placement = c.placement == "plus" ? ConstantPlacement::Plus : ConstantPlacement::Minus;
  HalfPlaneSolution sol = solve_half_plane(p.lattice, p.lin, bc, opt);

  const double pi = std::acos(-1.0);
  std::vector<cplx> ss(c.samples);
  for (int j = 0; j < c.samples; ++j) ss[j] = std::polar(1.0, 2.0 * pi * j / c.samples);
  {
    auto f = open_out(c, "spectra.csv");
    f << "re_s,im_s,re_psi_minus,im_psi_minus,re_psi_plus,im_psi_plus\n";
    for (auto s : ss) {
      put(f, s);
      f << ',';
      put(f, sol.psi_minus.interpolate(s));
      f << ',';
      put(f, sol.psi_plus.interpolate(s));
      f << '\n';
    }
  }
  Field<2> win = sol.reconstruct_window(-1, c.window + 1, 0, c.window + 1);
  Field<2> shown;
  for (int m = 0; m <= c.window; ++m)
    for (int n = 0; n <= c.window; ++n) shown.set({m, n}, win.at({m, n}));
  {
    auto f = open_out(c, "field.csv");
    io::write_field_csv(f, shown);
  }
  // residual checks on the window
  const cplx k2 = p.lattice.k2();
  double helm = 0.0, bc_res = 0.0;
  for (int m = 0; m <= c.window; ++m)
    for (int n = 1; n <= c.window; ++n) helm = std::max(helm, std::abs(helmholtz_residual<2>(win, {m, n}, k2)));
  for (int m = 0; m <= c.window; ++m) {
    cplx target = bc == BoundaryCondition::Dirichlet ? -std::pow(p.lin.s_in, -m) : p.lin.upsilon_in() * std::pow(p.lin.s_in, -m);
    cplx got = bc == BoundaryCondition::Dirichlet
                   ? win.at({m, 0})
                   : 0.5 * win.at({m - 1, 0}) + 0.5 * win.at({m + 1, 0}) + win.at({m, 1}) + 2.0 * (k2 / 4.0 - 1.0) * win.at({m, 0});
    bc_res = std::max(bc_res, std::abs(got - target));
  }
  const auto& d = sol.diagnostics;
  json j = {{"problem", to_string(p.problem)},
            {"ktilde", complex_json(p.lattice.ktilde)},
            {"s_in", complex_json(p.lin.s_in)},
            {"q_in", complex_json(p.lin.q_in)},
            {"n_modes", c.modes},
            {"index", d.index},
            {"factorization_error", d.factorization_error},
            {"aliasing_bound", d.aliasing_bound},
            {"split_error", d.split_error},
            {"forcing_tail", d.forcing_tail},
            {"entire_part", d.entire_part},
            {"wh_residual", d.wh_residual_fresh},
            {"minus_decay_10", d.minus_decay_10},
            {"minus_decay_100", d.minus_decay_100},
            {"plus_bound", d.plus_bound},
            {"window", c.window},
            {"field_helmholtz_residual", helm},
            {"boundary_data_residual", bc_res}};

  if (c.verify) {
    TruncatedProblem tp{p, c.R, true};
    LatticeSolution2D u = solve(tp);
    Spectra sp = extract_spectra(u, tp, ss);
    std::vector<cplx> dm, dp, om, op, df, of;
    double wh = 0.0;
    for (const auto& x : sp.samples) {
      dm.push_back(sol.psi_minus.interpolate(x.s) - x.minus(0));
      dp.push_back(sol.psi_plus.interpolate(x.s) - x.plus(0));
      om.push_back(x.minus(0));
      op.push_back(x.plus(0));
      wh = std::max(wh, std::abs(wh_residual(p, x.minus(0), x.plus(0), {x.s})));
    }
    for (int m = 0; m <= c.window && m < c.R; ++m)
      for (int n = 0; n <= c.window && n < c.R; ++n) {
        df.push_back(shown.at({m, n}) - u.at(m, n));
        of.push_back(u.at(m, n));
      }
    json v = {{"R", c.R},
              {"oracle_unknowns", u.unknowns},
              {"oracle_algebraic_residual", u.algebraic_residual},
              {"oracle_interior_residual", u.max_interior_residual()},
              {"oracle_wh_residual", wh},
              {"oracle_tail_bound", sp.tail_bound},
              {"psi_minus_relative_deviation", max_abs(dm) / std::max(max_abs(om), 1e-300)},
              {"psi_plus_relative_deviation", max_abs(dp) / std::max(max_abs(op), 1e-300)},
              {"field_relative_deviation", max_abs(df) / std::max(max_abs(of), 1e-300)}};
    j["verify"] = v;
  }
  write_json(c, "diagnostics.json", j);
  out << "wh_residual " << d.wh_residual_fresh << '\n';
}

inline void cmd_oracle(const RunConfig& c, std::ostream& out) {
  ProblemSpec p = build_problem(c);
  if (p.side != Side::Discrete) throw Error(ErrorCode::InvalidArgument, "oracle works on the discrete side");
  TruncatedProblem tp{p, c.R, !c.full};
  const double pi = std::acos(-1.0);
  json j = {{"problem", to_string(p.problem)}, {"R", c.R}, {"ktilde", complex_json(p.lattice.ktilde)}};
  double wh = 0.0;
  if (p.problem == Problem::QuarterPlane) {
    LatticeSolution3D u = solve_3d(tp);
    int side = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.samples)))));
    std::vector<std::pair<cplx, cplx>> pts;
    for (int a = 0; a < side; ++a)
      for (int b = 0; b < side; ++b)
        pts.push_back({std::polar(1.0, 2.0 * pi * (a + 0.25) / side), std::polar(1.0, 2.0 * pi * (b + 0.5) / side)});
    Spectra sp = extract_spectra_3d(u, pts, p.lattice);
    {
      auto f = open_out(c, "field.csv");
      io::write_field_csv(f, u.field);
    }
    auto f = open_out(c, "spectra.csv");
    f << "re_s1,im_s1,re_s2,im_s2,re_psi_minus,im_psi_minus,re_psi_plus,im_psi_plus,tail_bound\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& x = sp.samples[k];
      wh = std::max(wh, std::abs(wh_residual(p, x.minus(0), x.plus(0), {pts[k].first, pts[k].second})));
      put(f, pts[k].first);
      f << ',';
      put(f, pts[k].second);
      f << ',';
      put(f, x.minus(0));
      f << ',';
      put(f, x.plus(0));
      f << ',' << io::format_real(sp.tail_bound) << '\n';
    }
    j.update({{"unknowns", u.unknowns},
              {"algebraic_residual", u.algebraic_residual},
              {"interior_residual", u.max_interior_residual()},
              {"tail_bound", sp.tail_bound},
              {"wh_residual", wh}});
  } else {
    LatticeSolution2D u = solve(tp);
    std::vector<cplx> ss(c.samples);
    for (int k = 0; k < c.samples; ++k) ss[k] = std::polar(1.0, 2.0 * pi * (k + 0.5) / c.samples);
    Spectra sp = extract_spectra(u, tp, ss);
    {
      auto f = open_out(c, "field.csv");
      io::write_field_csv(f, u.field);
    }
    if (!u.plate.empty()) {
      auto f = open_out(c, "field_lower.csv");
      io::write_field_csv(f, u.lower);
    }
    const int n = kernel_size(p.problem);
    auto f = open_out(c, "spectra.csv");
    f << "re_s,im_s";
    for (int i = 0; i < n; ++i) f << ",re_psi_minus" << i << ",im_psi_minus" << i;
    for (int i = 0; i < n; ++i) f << ",re_psi_plus" << i << ",im_psi_plus" << i;
    f << ",tail_bound\n";
    for (const auto& x : sp.samples) {
      wh = std::max(wh, wh_residual(p, x.minus, x.plus, {x.s}).cwiseAbs().maxCoeff());
      put(f, x.s);
      for (int i = 0; i < n; ++i) {
        f << ',';
        put(f, x.minus(i));
      }
      for (int i = 0; i < n; ++i) {
        f << ',';
        put(f, x.plus(i));
      }
      f << ',' << io::format_real(sp.tail_bound) << '\n';
    }
    j.update({{"unknowns", u.unknowns},
              {"reduced", tp.reduced},
              {"algebraic_residual", u.algebraic_residual},
              {"interior_residual", u.max_interior_residual()},
              {"tail_bound", sp.tail_bound},
              {"wh_residual", wh}});
  }
  write_json(c, "diagnostics.json", j);
  out << "wh_residual " << wh << '\n';
}

inline json rational_json(const fem::Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

template <int N>
json matrix_json(const fem::RMatrix<N>& a) {
  json rows = json::array();
  for (const auto& row : a) {
    json r = json::array();
    for (const auto& x : row) r.push_back(rational_json(x));
    rows.push_back(r);
  }
  return rows;
}

inline void cmd_fem(const RunConfig& c, std::ostream& out) {
  io::AnyDomain any = load_domain(c);
  if (!std::holds_alternative<Domain2>(any)) throw Error(ErrorCode::InvalidArgument, "fem-check needs a 2D domain");
  const Domain2& dom = std::get<Domain2>(any);
  fem::ElementMatrices e = fem::element_matrices();
  fem::SquareMatrices s = fem::average_and_lump();
  fem::GlobalSystem g = fem::assemble_domain(dom);
  fem::EquivalenceReport rep = fem::check_equivalence(dom, g);
  json mism = json::array();
  for (const auto& m : rep.mismatches) mism.push_back({{"node", {m.node[0], m.node[1]}}, {"role", m.role}});
  json j = {{"element", {{"K", matrix_json<3>(e.K)}, {"M", matrix_json<3>(e.M)}}},
            {"square",
             {{"Ks1", matrix_json<4>(s.Ks1)},
              {"Ks2", matrix_json<4>(s.Ks2)},
              {"Ks", matrix_json<4>(s.Ks)},
              {"Ms1", matrix_json<4>(s.Ms1)},
              {"Ms2", matrix_json<4>(s.Ms2)},
              {"Ms", matrix_json<4>(s.Ms)},
              {"Mhat", matrix_json<4>(s.Mhat)}}},
            {"domain", io::domain_to_json(dom)},
            {"equivalence",
             {{"factor", rational_json(rep.factor)},
              {"rows_checked", rep.rows_checked},
              {"interior_rows", rep.interior_rows},
              {"boundary_rows", rep.boundary_rows},
              {"stiffness_symmetric", g.stiffness_symmetric()},
              {"mismatches", mism},
              {"ok", rep.ok()}}}};
  write_json(c, "fem.json", j);
  out << "rows " << rep.rows_checked << " mismatches " << rep.mismatches.size() << '\n';
}

}  // namespace detail

/// Entry point. Exit codes: 0 success, 1 invalid input, 2 numerical failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice and continuum Wiener-Hopf toolkit"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* s) { s->add_option("--out", c.out_dir, "output directory")->capture_default_str(); };
  auto lattice = [&](CLI::App* s) {
    s->add_option("--ktilde", c.ktilde, "lattice wavenumber k h, as a+bi")->capture_default_str();
    s->add_option("--spacing", c.h, "lattice edge length h")->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto problem = [&](CLI::App* s) {
    s->add_option("--problem", c.problem, "problem name")->capture_default_str();
    s->add_option("--side", c.side, "discrete or continuous")->capture_default_str();
    s->add_option("--k", c.k, "continuum wavenumber, as a+bi")->capture_default_str();
    s->add_option("--M", c.M, "horizontal integer")->capture_default_str();
    s->add_option("--N", c.N, "vertical integer")->capture_default_str();
    s->add_option("--L", c.L, "strip row inside the waveguide")->capture_default_str();
    s->add_option("--a", c.a, "continuum length a")->capture_default_str();
    s->add_option("--b", c.b, "continuum length b")->capture_default_str();
    s->add_option("--sin", c.s_in, "lattice incidence s_in, |s_in| > 1")->capture_default_str();
    s->add_option("--sin1", c.s1_in, "quarter-plane s1_in")->capture_default_str();
    s->add_option("--sin2", c.s2_in, "quarter-plane s2_in")->capture_default_str();
    s->add_option("--theta", c.theta, "continuum incidence angle")->capture_default_str();
    s->add_option("--phi", c.phi, "continuum azimuth (quarter-plane)")->capture_default_str();
    s->add_option("--mode", c.mode, "guided mode index")->capture_default_str();
  };
  auto samples = [&](CLI::App* s) {
    s->add_option("--samples", c.samples, "contour samples")->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto domain = [&](CLI::App* s) {
    s->add_option("--domain", c.domain_file, "domain JSON file");
    s->add_option("--shape", c.shape, "rectangle, l-shape or box")->capture_default_str();
    s->add_option("--extent", c.extent, "nodes per side minus one")->capture_default_str();
  };

  auto* disp = app.add_subcommand("dispersion", "dispersion samples and branch points");
  common(disp);
  lattice(disp);
  samples(disp);

  auto* kern = app.add_subcommand("kernel", "kernel and forcing over the contour");
  common(kern);
  lattice(kern);
  problem(kern);
  samples(kern);

  auto* anal = app.add_subcommand("analogy-check", "direct vs generating-function residual");
  common(anal);
  lattice(anal);
  problem(anal);
  samples(anal);

  auto* green = app.add_subcommand("greens-check", "discrete Green's identity residual");
  common(green);
  lattice(green);
  domain(green);
  green->add_option("--pairs", c.pairs, "random field pairs")->capture_default_str();
  green->add_option("--seed", c.seed, "random seed")->capture_default_str();
  green->add_option("--u", c.u_file, "field CSV for u");
  green->add_option("--w", c.w_file, "field CSV for w");

  auto* slv = app.add_subcommand("solve", "Wiener-Hopf solve of a lattice half-plane");
  common(slv);
  lattice(slv);
  problem(slv);
  samples(slv);
  slv->add_option("--modes", c.modes, "Fourier modes on the contour")->capture_default_str();
  slv->add_option("--window", c.window, "field window 0..W in m and n")->capture_default_str();
  slv->add_option("--placement", c.placement, "constant mode on plus or minus factor")->capture_default_str();
  slv->add_flag("--verify", c.verify, "compare against the truncated lattice solve");
  slv->add_option("--R", c.R, "truncation half-extent for --verify")->capture_default_str();

  auto* orc = app.add_subcommand("oracle", "truncated lattice solve and spectra");
  common(orc);
  lattice(orc);
  problem(orc);
  samples(orc);
  orc->add_option("--R", c.R, "truncation half-extent")->capture_default_str();
  orc->add_flag("--full", c.full, "solve both half-spaces instead of the reduced problem");

  auto* femc = app.add_subcommand("fem-check", "finite element assembly vs lattice stencils");
  common(femc);
  domain(femc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (*disp) detail::cmd_dispersion(c, out);
    if (*kern) detail::cmd_kernel(c, out);
    if (*anal) detail::cmd_analogy(c, out);
    if (*green) detail::cmd_greens(c, out);
    if (*slv) detail::cmd_solve(c, out);
    if (*orc) detail::cmd_oracle(c, out);
    if (*femc) detail::cmd_fem(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace latwh::cli
