// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "latwh/wh_catalog.hpp"
#include "oracles.hpp"
#include "problems.hpp"

using namespace latwh;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Kernel, DirichletTimesUpsilonIsOne) {
  auto p = fixture::make(Problem::HalfPlaneDirichlet, Side::Discrete);
  for (const auto& z : default_samples(p, 256)) {
    cplx q = oracle::lattice_q(z.z1, p.lattice.k2());
    EXPECT_LT(std::abs(kernel(p, z)(0, 0) * (q - 1.0 / q) / 2.0 - 1.0), 1e-12);
  }
}

TEST(Kernel, FiniteStripDeterminant) {
  auto p = fixture::make(Problem::FiniteStrip, Side::Discrete);
  for (int M : {1, 2, 5}) {
    p.M = M;
    for (const auto& z : default_samples(p, 64)) {
      auto K = kernel(p, z);
      EXPECT_LT(std::abs(K(0, 0) * K(1, 1) - K(0, 1) * K(1, 0) + 1.0), 1e-12);
      EXPECT_EQ(K(1, 0), cplx(0.0));
    }
  }
}

TEST(Kernel, SoftHardContinuousTrace) {
  auto p = fixture::make(Problem::SoftHardHalfPlane, Side::Continuous);
  const cplx i(0.0, 1.0);
  for (const auto& z : default_samples(p, 64)) {
    auto K = kernel(p, z);
    EXPECT_LT(std::abs(K.trace() - 1.0), 1e-14);
    cplx t = i * oracle::gamma(z.z1, p.continuum.k);
    EXPECT_LT(std::abs(K(0, 1) - 0.5 * t), 1e-14);
    EXPECT_LT(std::abs(K(1, 0) + 0.5 / t), 1e-13);
  }
}

TEST(Kernel, StaggeredSwapSymmetry) {
  auto p = fixture::make(Problem::StaggeredWaveguide, Side::Discrete);
  p.M = 3;
  p.N = 2;
  for (const auto& z : default_samples(p, 128)) {
    auto K = kernel(p, z);
    auto Kr = kernel(p, SpectralPoint{1.0 / z.z1});
    EXPECT_LT((K - Kr.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Kernel, QuarterPlaneIsHalfPlaneGenerator) {
  auto p = fixture::make(Problem::QuarterPlane, Side::Discrete);
  for (const auto& z : default_samples(p, 144)) {
    cplx q = oracle::lattice_q3(z.z1, z.z2, p.lattice.k2());
    EXPECT_LT(std::abs(kernel(p, z)(0, 0) * (q - 1.0 / q) / 2.0 - 1.0), 1e-12);
  }
  auto c = fixture::make(Problem::QuarterPlane, Side::Continuous);
  const cplx i(0.0, 1.0);
  for (const auto& z : default_samples(c, 144)) {
    cplx g = std::sqrt(c.continuum.k * c.continuum.k - z.z1 * z.z1 - z.z2 * z.z2);
    if (g.imag() < 0.0) g = -g;
    EXPECT_LT(std::abs(kernel(c, z)(0, 0) * i * g - 1.0), 1e-12);
  }
}

TEST(Kernel, ElasticVariant) {
  auto p = fixture::make(Problem::HalfPlaneNeumannElastic, Side::Discrete);
  cplx s = std::polar(1.0, 0.4);
  cplx q = oracle::lattice_q(s, p.lattice.k2());
  EXPECT_LT(std::abs(kernel(p, {s})(0, 0) - (s + 1.0 / s + q + p.lattice.k2() - 3.0)), 1e-13);
  auto c = p;
  c.side = Side::Continuous;
  EXPECT_EQ(code_of([&] { kernel(c, {cplx(0.1)}); }), ErrorCode::NotApplicable);
}

TEST(Kernel, SingularAtBranchPoint) {
  auto p = fixture::make(Problem::HalfPlaneDirichlet, Side::Continuous);
  EXPECT_EQ(code_of([&] { kernel(p, {p.continuum.k}); }), ErrorCode::KernelSingular);
  auto w = fixture::make(Problem::StripInWaveguide, Side::Continuous);
  // sin(gamma b) = 0 at gamma = pi / b.
  cplx xi = std::sqrt(w.continuum.k * w.continuum.k - std::pow(oracle::pi / w.b, 2));
  EXPECT_EQ(code_of([&] { kernel(w, {xi}); }), ErrorCode::KernelSingular);
}

TEST(Forcing, Examples) {
  auto p = fixture::make(Problem::HalfPlaneDirichlet, Side::Discrete);
  EXPECT_EQ(forcing(p, {cplx(0.0)})(0), cplx(1.0));
  auto c = fixture::make(Problem::QuarterPlane, Side::Continuous);
  EXPECT_LT(std::abs(forcing(c, {c.cin3.xi1_in + 1.0, c.cin3.xi2_in + 1.0})(0) + 1.0), 1e-15);
  EXPECT_EQ(code_of([&] { forcing(p, {p.lin.s_in}); }), ErrorCode::AtIncidencePole);
  auto d = fixture::make(Problem::HalfPlaneDirichlet, Side::Continuous);
  EXPECT_EQ(code_of([&] { forcing(d, {d.cin.xi_in}); }), ErrorCode::AtIncidencePole);
}

TEST(Forcing, WedgeResidueAtIncidence) {
  auto p = fixture::make(Problem::RightAngledWedge, Side::Discrete);
  const cplx s_in = p.lin.s_in;
  auto f3 = [&](cplx s) { return forcing(p, {s})(2); };
  cplx res = oracle::residue(f3, s_in, 0.05);
  cplx q = oracle::lattice_q(s_in, p.lattice.k2());
  cplx Y = (q - 1.0 / q) / 2.0;
  cplx expect = (-p.lin.upsilon_in() / Y) * (-s_in);
  EXPECT_LT(std::abs(res - expect), 1e-10 * std::abs(expect));
}

TEST(Generating, Examples) {
  std::vector<cplx> two{2.0};
  EXPECT_EQ(generating_kernel(Problem::HalfPlaneDirichlet, two)(0, 0), cplx(0.5));
  std::vector<cplx> t{cplx(0.3, 0.7), 1.0, 1.0};
  auto K = generating_kernel(Problem::StaggeredWaveguide, t);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) EXPECT_LT(std::abs(K(r, c) - t[0] / 2.0), 1e-15);
  std::vector<cplx> eq{cplx(0.4, -1.2), cplx(0.4, -1.2)};
  auto F = generating_forcing(Problem::FiniteStrip, eq);
  EXPECT_EQ(F(0), cplx(1.0));
  EXPECT_EQ(F(1), cplx(0.0));
}

TEST(Generating, ArityMismatch) {
  std::vector<cplx> bad{1.0, 2.0};
  EXPECT_EQ(code_of([&] { generating_kernel(Problem::HalfPlaneDirichlet, bad); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([&] { generating_forcing(Problem::SoftHardHalfPlane, bad); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([&] { generating_forcing(Problem::StripInWaveguide, bad); }), ErrorCode::NotApplicable);
}

TEST(Analogy, AllProblemsBothSides) {
  for (Problem pr : all_problems) {
    for (Side side : {Side::Discrete, Side::Continuous}) {
      if (pr == Problem::HalfPlaneNeumannElastic) continue;
      auto p = fixture::make(pr, side);
      auto rep = analogy_report(p, default_samples(p, 256));
      EXPECT_EQ(rep.samples, 256);
      EXPECT_LE(rep.kernel_max, 1e-12) << to_string(pr) << ' ' << to_string(side);
      if (pr == Problem::StripInWaveguide) {
        EXPECT_LT(rep.forcing_max, 0.0);
        EXPECT_EQ(code_of([&] { analogy_residual(p, {cplx(0.3, 0.9)}, AnalogyPart::Forcing); }), ErrorCode::NotApplicable);
      } else {
        EXPECT_GE(rep.forcing_max, 0.0);
        EXPECT_LE(rep.forcing_max, 1e-12) << to_string(pr) << ' ' << to_string(side);
      }
    }
  }
}

TEST(Analogy, StaggeredOtherGeometry) {
  auto p = fixture::make(Problem::StaggeredWaveguide, Side::Discrete);
  p.M = 3;
  p.N = 2;
  EXPECT_LE(analogy_report(p, default_samples(p, 256)).max_residual(), 1e-12);
}

TEST(Deviator, Degrees) {
  auto c = fixture::make(Problem::SoftHardHalfPlane, Side::Continuous);
  auto d = fixture::make(Problem::SoftHardHalfPlane, Side::Discrete);
  EXPECT_EQ(deviator_polynomial(c).degree(), 2);
  EXPECT_EQ(deviator_polynomial(d).degree(), 4);
  auto w = fixture::make(Problem::RightAngledWedge, Side::Discrete);
  EXPECT_EQ(code_of([&] { deviator_polynomial(w); }), ErrorCode::NotKhrapkov);
  EXPECT_EQ(code_of([&] { khrapkov_parts(w, {cplx(1.0)}); }), ErrorCode::NotKhrapkov);
}

TEST(Deviator, ContinuousMatchesExpansionOracle) {
  auto c = fixture::make(Problem::SoftHardHalfPlane, Side::Continuous);
  const cplx i(0.0, 1.0);
  std::vector<cplx> x, y;
  for (int j = 0; j < 12; ++j) {
    cplx xi(-1.5 + 0.27 * j, 0.05 * j);
    cplx t = i * oracle::gamma(xi, c.continuum.k);
    x.push_back(xi);
    y.push_back(-t * t);
  }
  auto fit = oracle::polynomial_fit(x, y, 4);
  auto P = deviator_polynomial(c);
  for (int k = 0; k <= 4; ++k) {
    cplx pk = k < static_cast<int>(P.coeffs.size()) ? P.coeffs[k] : cplx(0.0);
    EXPECT_LT(std::abs(fit[k] - pk), 1e-10) << k;
  }
  EXPECT_LT(std::abs(P(c.continuum.k)), 1e-14);
  EXPECT_LT(std::abs(P(-c.continuum.k)), 1e-14);
}

TEST(Deviator, DiscreteMatchesExpansionOracle) {
  auto d = fixture::make(Problem::SoftHardHalfPlane, Side::Discrete);
  std::vector<cplx> x, y;
  for (int j = 0; j < 12; ++j) {
    cplx s = std::polar(0.8 + 0.05 * j, 0.5 * j + 0.2);
    cplx q = oracle::lattice_q(s, d.lattice.k2());
    cplx Y = (q - 1.0 / q) / 2.0;
    x.push_back(s);
    y.push_back(-4.0 * s * s * Y * Y);
  }
  auto fit = oracle::polynomial_fit(x, y, 6);
  auto P = deviator_polynomial(d);
  for (int k = 0; k <= 6; ++k) {
    cplx pk = k < static_cast<int>(P.coeffs.size()) ? P.coeffs[k] : cplx(0.0);
    EXPECT_LT(std::abs(fit[k] - pk), 1e-9) << k;
  }
  // Independent expansion: -((s^2 + (k2 - 4) s + 1)^2 - 4 s^2).
  auto sq = oracle::poly_mul({1.0, d.lattice.k2() - 4.0, 1.0}, {1.0, d.lattice.k2() - 4.0, 1.0});
  sq[2] -= 4.0;
  for (std::size_t k = 0; k < sq.size(); ++k) EXPECT_LT(std::abs(P.coeffs[k] + sq[k]), 1e-13);
  for (cplx e : branch_points(d.lattice).all()) EXPECT_LT(std::abs(P(e)), 1e-11 * (1.0 + std::pow(std::abs(e), 4)));
}

TEST(Khrapkov, ReconstructsKernel) {
  for (Side side : {Side::Discrete, Side::Continuous}) {
    auto p = fixture::make(Problem::SoftHardHalfPlane, side);
    auto P = deviator_polynomial(p);
    for (const auto& z : default_samples(p, 64)) {
      auto parts = khrapkov_parts(p, z);
      Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
      Eigen::MatrixXcd K = parts.a * I + parts.b * parts.J;
      EXPECT_LT((K - kernel(p, z)).cwiseAbs().maxCoeff(), 1e-12);
      cplx delta = P(z.z1);
      EXPECT_LT((parts.J * parts.J - delta * I).cwiseAbs().maxCoeff(), 1e-11 * (1.0 + std::abs(delta)));
    }
  }
}

TEST(Residual, ZeroSpectraGiveMinusForcing) {
  auto p = fixture::make(Problem::SoftHardHalfPlane, Side::Discrete);
  SpectralPoint z{std::polar(1.0, 0.9)};
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  EXPECT_LT((wh_residual(p, zero, zero, z) + forcing(p, z)).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(3);
  EXPECT_EQ(code_of([&] { wh_residual(p, wrong, wrong, z); }), ErrorCode::ArityMismatch);
  auto h = fixture::make(Problem::HalfPlaneDirichlet, Side::Discrete);
  EXPECT_LT(std::abs(wh_residual(h, cplx(0.0), cplx(0.0), z) + forcing(h, z)(0)), 1e-15);
}

TEST(Residual, ConsistentSpectraGiveZero) {
  auto p = fixture::make(Problem::HalfPlaneNeumann, Side::Discrete);
  SpectralPoint z{std::polar(1.0, 2.1)};
  cplx plus(0.3, -0.2);
  cplx minus = kernel(p, z)(0, 0) * plus + forcing(p, z)(0);
  EXPECT_LT(std::abs(wh_residual(p, minus, plus, z)), 1e-15);
}

TEST(WedgeSpectra, ReflectionConsistency) {
  // One-sided sums of synthetic sequences 0.6^m, (0.5 + 0.1i)^m, 0.3^m.
  auto wp = [](cplx s) { return 1.0 / (1.0 - 0.6 * s); };
  auto wm = [](cplx s) { return cplx(0.5, 0.1) / (s - cplx(0.5, 0.1)); };
  auto um = [](cplx s) { return 0.3 / (s - 0.3); };
  for (int j = 0; j < 16; ++j) {
    cplx s = std::polar(1.0, 0.4 * j + 0.1);
    auto [minus, plus] = wedge_spectra(wp, wm, um, s);
    auto [minus_r, plus_r] = wedge_spectra(wp, wm, um, 1.0 / s);
    EXPECT_LT((minus + plus_r).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(std::abs(plus(0) - wp(s)), 1e-15);
    EXPECT_LT(std::abs(minus(1) - wm(s)), 1e-15);
  }
}

TEST(ContinuumLimit, HalfPlaneKernels) {
  const cplx k(1.0, 0.3), i(0.0, 1.0);
  for (double xi : {-1.5, -0.4, 0.2, 0.9, 2.0}) {
    double err[2];
    int idx = 0;
    for (double h : {1e-2, 1e-3}) {
      auto pd = fixture::make(Problem::HalfPlaneDirichlet, Side::Discrete, k * h);
      auto pn = fixture::make(Problem::HalfPlaneNeumann, Side::Discrete, k * h);
      SpectralPoint z{std::polar(1.0, xi * h)};
      cplx g = i * oracle::gamma(xi, k);
      err[idx++] = std::max(std::abs(kernel(pd, z)(0, 0) * h - 1.0 / g), std::abs(kernel(pn, z)(0, 0) / h - g));
    }
    EXPECT_GE(std::log10(err[0] / err[1]), 1.0);
  }
}

TEST(Parsing, ProblemAndSideNames) {
  for (Problem p : all_problems) EXPECT_EQ(parse_problem(to_string(p)), p);
  EXPECT_EQ(parse_side("continuous"), Side::Continuous);
  EXPECT_THROW(parse_problem("cylinder"), Error);
  EXPECT_THROW(parse_side("both"), Error);
}

TEST(Validate, RejectsBadGeometry) {
  auto p = fixture::make(Problem::StripInWaveguide, Side::Discrete);
  p.L = p.N;
  EXPECT_EQ(code_of([&] { validate(p); }), ErrorCode::InvalidArgument);
  auto e = fixture::make(Problem::HalfPlaneNeumannElastic, Side::Discrete);
  e.side = Side::Continuous;
  EXPECT_EQ(code_of([&] { validate(e); }), ErrorCode::InvalidArgument);
}
