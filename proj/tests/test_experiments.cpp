// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ris;

namespace
{
    ClarkeDraw single_path(double phi, Complex alpha)
    {
        ClarkeDraw d;
        d.alphas.push_back(alpha);
        d.phis.push_back(phi);
        return d;
    }

    // x^H S(z, r_n) x for an x-polarized plane wave arriving along r_n in the yz-plane.
    Complex pipeline_response(const ParticleConfig &cfg, double phi)
    {
        const Wavenumber wn = Wavenumber::from_lambda(1.0);
        const Direction r_n = Direction::unit(Vec3(0.0, -std::sin(phi), -std::cos(phi)));
        const CMat3 s = single_element_scattering(cfg, Direction::unit(Vec3(0, 0, 1)), r_n, wn);
        return s(0, 0) * 4.0 * wn.k() / 3.0;
    }

    double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    }
}

TEST(Clarke, DrawStatistics)
{
    std::mt19937_64 rng(1);
    double power = 0.0, mean_phi = 0.0;
    const int draws = 4000;
    for (int t = 0; t < draws; ++t)
    {
        const ClarkeDraw d = draw_clarke(rng, 16, 2.0);
        ASSERT_EQ(d.paths(), 16u);
        for (size_t m = 0; m < d.paths(); ++m)
        {
            power += std::norm(d.alphas[m]);
            mean_phi += d.phis[m];
            ASSERT_GE(d.phis[m], 0.0);
            ASSERT_LT(d.phis[m], 2.0 * pi);
        }
    }
    EXPECT_NEAR(power / draws, 2.0, 0.05);
    EXPECT_NEAR(mean_phi / (draws * 16.0), pi, 0.03);
    EXPECT_THROW(draw_clarke(rng, 0), ValidationError);
}

TEST(ElementResponse, MatchesScatteringPipelinePerPath)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ud(-pi, pi);
    for (int t = 0; t < 100; ++t)
    {
        const double phi = ud(rng), rho = ud(rng);
        const Complex alpha(ud(rng), ud(rng));
        const ClarkeDraw d = single_path(phi, alpha);
        const Complex hp = element_response(ConfigKind::parallel, d).at(rho);
        const Complex ho = element_response(ConfigKind::orthogonal, d).at(rho);
        EXPECT_LT(std::abs(hp - alpha * pipeline_response(named_config(NamedCase::B1, rho), phi)), 1e-12 * (1.0 + std::abs(hp)));
        EXPECT_LT(std::abs(ho - alpha * pipeline_response(named_config(NamedCase::B2, rho), phi)), 1e-12 * (1.0 + std::abs(ho)));
    }
}

TEST(ElementResponse, SuperposesPaths)
{
    std::mt19937_64 rng(3);
    const ClarkeDraw d = draw_clarke(rng, 8);
    for (ConfigKind kind : {ConfigKind::parallel, ConfigKind::orthogonal})
    {
        Complex sum = 0.0;
        for (size_t m = 0; m < d.paths(); ++m)
            sum += element_response(kind, single_path(d.phis[m], d.alphas[m])).at(0.7);
        EXPECT_LT(std::abs(sum - multipath_single_element(kind, 0.7, d)), 1e-14);
    }
    EXPECT_NEAR(multipath_scale(2.0, 3.0, 4.0), 18.0 / (64.0 * pi), 1e-15);
}

TEST(ElementResponse, PhaseShiftRatio)
{
    const double phi = 0.6, r1 = -0.4, r2 = 1.9;
    const ClarkeDraw d = single_path(phi, Complex(0.3, -1.1));
    const ElementResponse e = element_response(ConfigKind::parallel, d);
    const double g1 = 1 + std::cos(phi), g2 = 1 - std::cos(phi);
    const Complex ratio = (g1 * std::exp(Complex(0, r1)) - I * g2) / (g1 * std::exp(Complex(0, r2)) - I * g2);
    EXPECT_LT(std::abs(e.at(r1) - e.at(r2) * ratio), 1e-14);
}

TEST(Covariance, AnalyticProperties)
{
    for (double r1 : {0.0, 0.5, -2.0})
        for (double r2 : {0.0, 1.5, 3.0})
        {
            const auto c12 = analytic_covariances(r1, r2, 2.0), c21 = analytic_covariances(r2, r1, 2.0);
            EXPECT_LT(std::abs(c12.sigma_p2 - std::conj(c21.sigma_p2)), 1e-14);
            EXPECT_LT(std::abs(c12.sigma_o2 - std::conj(c21.sigma_o2)), 1e-14);
        }
    for (double r : {0.0, 0.3, 2.0})
    {
        const auto c = analytic_covariances(r, r, 1.0);
        EXPECT_NEAR(c.sigma_p2.imag(), 0.0, 1e-15);
        EXPECT_NEAR(c.sigma_p2.real(), 3.0 - std::sin(r), 1e-14);
        EXPECT_NEAR(c.sigma_o2.real(), 3.0 - 2.0 * std::sin(r), 1e-14);
    }
    const auto c0 = analytic_covariances(0.0, 0.0, 5.0);
    EXPECT_NEAR(c0.sigma_p2.real(), 15.0, 1e-13);
}

// Expectations over phi ~ U[0, 2 pi) computed by quadrature on the per-path response.
TEST(Covariance, QuadratureOracle)
{
    const int n = 4096;
    for (auto [r1, r2] : {std::pair{0.0, 0.0}, {0.4, -1.2}, {2.5, 1.0}})
    {
        Complex ep = 0.0, eo = 0.0;
        for (int j = 0; j < n; ++j)
        {
            const ClarkeDraw d = single_path(2 * pi * j / n, 1.0);
            const ElementResponse p = element_response(ConfigKind::parallel, d);
            const ElementResponse o = element_response(ConfigKind::orthogonal, d);
            ep += p.at(r1) * std::conj(p.at(r2)) / double(n);
            eo += o.at(r1) * std::conj(o.at(r2)) / double(n);
        }
        const auto c = analytic_covariances(r1, r2, 1.0);
        EXPECT_LT(std::abs(ep - c.sigma_p2), 1e-12);
        EXPECT_LT(std::abs(eo - c.sigma_o2), 1e-12);
    }
}

TEST(Covariance, MonteCarloWithinStandardErrors)
{
    std::mt19937_64 rng(4);
    const int draws = 20000;
    const double r1 = 0.8, r2 = -0.5;
    Complex sp = 0.0, so = 0.0;
    double vp = 0.0, vo = 0.0;
    for (int t = 0; t < draws; ++t)
    {
        const ClarkeDraw d = draw_clarke(rng, 32, 1.0);
        const ElementResponse p = element_response(ConfigKind::parallel, d);
        const ElementResponse o = element_response(ConfigKind::orthogonal, d);
        const Complex xp = p.at(r1) * std::conj(p.at(r2)), xo = o.at(r1) * std::conj(o.at(r2));
        sp += xp;
        so += xo;
        vp += std::norm(xp);
        vo += std::norm(xo);
    }
    sp /= draws;
    so /= draws;
    const double sep = std::sqrt((vp / draws - std::norm(sp)) / draws);
    const double seo = std::sqrt((vo / draws - std::norm(so)) / draws);
    const auto c = analytic_covariances(r1, r2, 1.0);
    EXPECT_LT(std::abs(sp - c.sigma_p2), 4.0 * sep);
    EXPECT_LT(std::abs(so - c.sigma_o2), 4.0 * seo);
}

TEST(Pilots, DftIsScaledUnitary)
{
    for (size_t n : {1u, 2u, 7u, 32u})
    {
        const PilotPlan p = PilotPlan::dft(n);
        const CMat g = p.p.adjoint() * p.p;
        EXPECT_LT((g - double(n) * CMat::Identity(n, n)).norm(), 1e-10 * n);
        EXPECT_NEAR(std::abs(p.p(0, 0)), 1.0, 1e-15);
    }
    EXPECT_THROW(PilotPlan::dft(0), ValidationError);
}

TEST(Estimation, NoUnmodelledPartIsLossless)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (size_t n : {1u, 4u, 16u})
    {
        std::vector<ElementResponse> e(n);
        for (auto &x : e)
            x.k1 = Complex(nd(rng), nd(rng));
        const auto m = estimation_metrics(e, PilotPlan::dft(n));
        EXPECT_NEAR(m.gamma, 1.0, 1e-10);
        EXPECT_NEAR(m.xi, 1.0, 1e-10);
    }
}

TEST(Estimation, InputValidation)
{
    std::vector<ElementResponse> e(3);
    EXPECT_THROW(estimation_metrics({}, PilotPlan::dft(1)), ValidationError);
    EXPECT_THROW(estimation_metrics(e, PilotPlan::dft(2)), ValidationError);
    EXPECT_THROW(estimation_metrics(e, PilotPlan::dft(3), 100), ValidationError);
    PilotPlan sing{CMat::Ones(3, 3)};
    EXPECT_THROW(estimation_metrics(e, sing), NumericalError);
}

TEST(Estimation, TrialsAreDeterministicAndThreadIndependent)
{
    const auto a = run_estimation_trials(8, ConfigKind::parallel, 40, 99, 256, 1);
    const auto b = run_estimation_trials(8, ConfigKind::parallel, 40, 99, 256, 3);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i)
    {
        EXPECT_EQ(a[i].gamma, b[i].gamma);
        EXPECT_EQ(a[i].xi, b[i].xi);
    }
    EXPECT_EQ(a[5].gamma, estimation_trial(8, ConfigKind::parallel, 99 ^ 5, 256).gamma);
    EXPECT_EQ(gamma_trial(4, ConfigKind::orthogonal, 7), estimation_trial(4, ConfigKind::orthogonal, 7).gamma);
    EXPECT_EQ(xi_trial(4, ConfigKind::orthogonal, 7), estimation_trial(4, ConfigKind::orthogonal, 7).xi);
}

TEST(Estimation, MetricsArePositiveAndLossy)
{
    const auto r = run_estimation_trials(16, ConfigKind::parallel, 200, 11, 512, 1);
    std::vector<double> xi, gamma;
    for (const auto &m : r)
    {
        EXPECT_GT(m.gamma, 0.0);
        EXPECT_GT(m.xi, 0.0);
        xi.push_back(m.xi);
        gamma.push_back(m.gamma);
    }
    EXPECT_LT(median(xi), 1.0);
    EXPECT_LT(median(gamma), 1.0);
}

TEST(Scenarios, Generators)
{
    {
        auto s = ScenarioSpec::defaults(ScenarioName::anomalous);
        s.points = 5;
        const auto p = scenario_points(s);
        ASSERT_EQ(p.size(), 5u);
        EXPECT_LT((p[0].r_in.vec() - Vec3(0, 0, -1)).norm(), 1e-15);
        EXPECT_LT((p[4].r_in.vec() - Vec3(0, -1, 0)).norm(), 1e-15);
        for (const auto &q : p)
        {
            EXPECT_LT((q.r_out.vec() - Vec3(0, 0, 1)).norm(), 1e-15);
            EXPECT_EQ(q.nx, 8);
            EXPECT_DOUBLE_EQ(q.spacing, 0.5);
        }
    }
    {
        auto s = ScenarioSpec::defaults(ScenarioName::specular);
        s.points = 3;
        for (const auto &q : scenario_points(s))
        {
            // mirror image in the xy-plane
            EXPECT_NEAR(q.r_in.vec().y(), q.r_out.vec().y(), 1e-15);
            EXPECT_NEAR(q.r_in.vec().z(), -q.r_out.vec().z(), 1e-15);
        }
    }
    {
        auto s = ScenarioSpec::defaults(ScenarioName::constant_spacing);
        const auto p = scenario_points(s);
        ASSERT_EQ(p.size(), 10u);
        EXPECT_EQ(p.front().nx, 1);
        EXPECT_EQ(p.back().ny, 10);
    }
    {
        auto s = ScenarioSpec::defaults(ScenarioName::constant_particles);
        s.points = 4;
        s.lambda = 2.0;
        const auto p = scenario_points(s);
        EXPECT_DOUBLE_EQ(p.front().spacing, 0.5);
        EXPECT_DOUBLE_EQ(p.back().spacing, 2.0);
    }
    EXPECT_EQ(parse_scenario("specular"), ScenarioName::specular);
    EXPECT_FALSE(parse_scenario("broadside").has_value());
}

TEST(Scenarios, Validation)
{
    auto s = ScenarioSpec::defaults(ScenarioName::anomalous);
    s.sweep_max = 2.0;
    EXPECT_THROW(s.validate(), ValidationError);
    s = ScenarioSpec::defaults(ScenarioName::constant_particles);
    s.sweep_min = 0.1;
    EXPECT_THROW(s.validate(), ValidationError);
    s = ScenarioSpec::defaults(ScenarioName::constant_spacing);
    s.sweep_max = 11;
    EXPECT_THROW(s.validate(), ValidationError);
    s = ScenarioSpec::defaults(ScenarioName::specular);
    s.nx = 0;
    EXPECT_THROW(s.validate(), ValidationError);
    s = ScenarioSpec::defaults(ScenarioName::specular);
    s.points = 0;
    EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Scenarios, SmallRcsSweep)
{
    auto s = ScenarioSpec::defaults(ScenarioName::anomalous);
    s.nx = s.ny = 2;
    s.points = 2;
    OptimizerOptions opt;
    opt.max_iters = 30;
    const auto rec = run_rcs_scenario(s, opt, 2);
    ASSERT_EQ(rec.size(), 2u);
    const Wavenumber wn = Wavenumber::from_lambda(1.0);
    for (const auto &r : rec)
    {
        EXPECT_NE(r.status, "failed") << r.message;
        EXPECT_NEAR(r.sigma_reference, pi * std::pow(12.0 / wn.k(), 2), 1e-12);
        EXPECT_GE(r.sigma, r.sigma_closed_form * (1.0 - 1e-12));
        EXPECT_GT(r.sigma_norm(), 0.0);
    }
    const auto again = run_rcs_scenario(s, opt, 1);
    EXPECT_EQ(rec[1].sigma, again[1].sigma);
}
