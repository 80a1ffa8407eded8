// SPDX-License-Identifier: Apache-2.0
//
// Clarke-model Monte Carlo for single elements, pilot-based estimation metrics
// (gamma, xi), analytic covariances and the lattice RCS sweeps.

#pragma once

#include "ris/channel.hpp"
#include "ris/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace ris
{
    // -------- parallel helper --------

    // Worker count: RIS_THREADS if set and positive, else hardware concurrency.
    inline unsigned worker_count()
    {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("RIS_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v > 0)
                return static_cast<unsigned>(v);
        }
        return hw;
    }

    // Runs fn(i) for i in [0, n). Results must be written by index so that the
    // outcome does not depend on scheduling.
    template <typename Fn>
    void parallel_for(size_t n, Fn &&fn, unsigned threads = 0)
    {
        if (threads == 0)
            threads = worker_count();
        threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(n, 1)));
        if (threads <= 1)
        {
            for (size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&]
                              {
                for (size_t i; (i = next.fetch_add(1)) < n;)
                {
                    try { fn(i); }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!err) err = std::current_exception();
                    }
                } });
        for (auto &th : pool)
            th.join();
        if (err)
            std::rethrow_exception(err);
    }

    // -------- Clarke multipath --------

    struct ClarkeDraw
    {
        std::vector<Complex> alphas;
        std::vector<double> phis;
        size_t paths() const { return alphas.size(); }
    };

    // alpha ~ CN(0, total_power / M) i.i.d., phi ~ U[0, 2 pi)
    inline ClarkeDraw draw_clarke(std::mt19937_64 &rng, size_t paths = 64, double total_power = 1.0)
    {
        if (paths == 0)
            throw ValidationError("path count must be positive");
        std::normal_distribution<double> nd(0.0, std::sqrt(total_power / (2.0 * static_cast<double>(paths))));
        std::uniform_real_distribution<double> ud(0.0, 2.0 * pi);
        ClarkeDraw d;
        d.alphas.reserve(paths);
        d.phis.reserve(paths);
        for (size_t m = 0; m < paths; ++m)
        {
            const double re = nd(rng);
            const double im = nd(rng);
            d.alphas.emplace_back(re, im);
            d.phis.push_back(ud(rng));
        }
        return d;
    }

    enum class ConfigKind
    {
        parallel,   // B1
        orthogonal, // B2
    };

    inline const char *to_string(ConfigKind k) { return k == ConfigKind::parallel ? "parallel" : "orthogonal"; }

    // h(rho) = e^{i rho} k1 + k2; k1 is the part a cascaded model can see.
    struct ElementResponse
    {
        Complex k1{0.0, 0.0};
        Complex k2{0.0, 0.0};
        Complex at(double rho) const { return std::exp(Complex(0.0, rho)) * k1 + k2; }
    };

    inline ElementResponse element_response(ConfigKind kind, const ClarkeDraw &d)
    {
        ElementResponse r;
        for (size_t m = 0; m < d.paths(); ++m)
        {
            const double c = std::cos(d.phis[m]), s = std::sin(d.phis[m]);
            const double g1 = kind == ConfigKind::parallel ? 1.0 + c : 1.0;
            const double g2 = kind == ConfigKind::parallel ? 1.0 - c : 1.0 - (s + c);
            r.k1 += g1 * d.alphas[m];
            r.k2 += Complex(0.0, -g2) * d.alphas[m];
        }
        return r;
    }

    // scale carries the LOS constants 3 eta a_r e^{-ik d_rs} / (16 pi d_rs)
    inline Complex multipath_single_element(ConfigKind kind, double rho, const ClarkeDraw &d, Complex scale = 1.0)
    {
        return scale * element_response(kind, d).at(rho);
    }

    // Constant of the single-element multipath response: 3 eta a_r / (16 pi d_rs).
    inline double multipath_scale(double eta, double a_r, double d_rs)
    {
        return 3.0 * eta * a_r / (16.0 * pi * d_rs);
    }

    struct Covariances
    {
        Complex sigma_p2;
        Complex sigma_o2;
    };

    // E[h(rho1) conj(h(rho2))]; prefactor = (3 eta |a_r| Sigma_a / (16 pi d_rs))^2
    inline Covariances analytic_covariances(double rho1, double rho2, double prefactor)
    {
        const Complex e1 = std::exp(Complex(0.0, rho1));
        const Complex e2c = std::exp(Complex(0.0, -rho2));
        const Complex e12 = std::exp(Complex(0.0, rho1 - rho2));
        const Complex cross = I * (e1 - e2c);
        return {prefactor * (cross + 3.0 * (e12 + 1.0)) / 2.0,
                prefactor * (cross + e12 + 2.0)};
    }

    // -------- pilot estimation --------

    struct PilotPlan
    {
        CMat p; // p(m, n) = e^{i rho_{n,m}}
        static PilotPlan dft(size_t n)
        {
            if (n == 0)
                throw ValidationError("pilot plan needs at least one element");
            const Eigen::Index nn = static_cast<Eigen::Index>(n);
            PilotPlan plan{CMat(nn, nn)};
            for (Eigen::Index m = 0; m < nn; ++m)
                for (Eigen::Index j = 0; j < nn; ++j)
                {
                    // reduce the index product first to keep the phase argument small
                    const double ph = -2.0 * pi * static_cast<double>((m * j) % nn) / static_cast<double>(nn);
                    plan.p(m, j) = std::exp(Complex(0.0, ph));
                }
            return plan;
        }
        double rho(Eigen::Index n, Eigen::Index m) const { return std::arg(p(m, n)); }
    };

    struct EstimationMetrics
    {
        double gamma = 0.0;
        double xi = 0.0;
    };

    inline constexpr size_t default_grid_points = 1024;

    // Pilots q = P k1 + (sum k2) 1, estimate h~ = P^{-1} q, configure rho*_n = -arg h~_n.
    // gamma: achieved power over the power the cascaded estimate predicts.
    // xi: achieved power over the best common-phase configuration found on a grid.
    inline EstimationMetrics estimation_metrics(const std::vector<ElementResponse> &elems, const PilotPlan &plan,
                                                size_t grid_points = default_grid_points)
    {
        const Eigen::Index n = static_cast<Eigen::Index>(elems.size());
        if (n == 0)
            throw ValidationError("need at least one element");
        if (plan.p.rows() != n || plan.p.cols() != n)
            throw ValidationError("pilot plan must be square with one column per element");
        if (grid_points < 256)
            throw ValidationError("grid search needs at least 256 points");

        CVec k1(n), q(n);
        Complex k2sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            k1(i) = elems[i].k1;
            k2sum += elems[i].k2;
        }
        q = plan.p * k1 + CVec::Constant(n, k2sum);

        Eigen::PartialPivLU<CMat> lu(plan.p);
        if (!(lu.rcond() > 1e-12))
            throw NumericalError("pilot matrix is singular", lu.rcond());
        const CVec h = lu.solve(q);

        Complex achieved = 0.0;
        double predicted = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            achieved += elems[i].at(-std::arg(h(i)));
            predicted += std::abs(h(i));
        }
        const double num = std::norm(achieved);

        double best = 0.0;
        for (size_t g = 0; g < grid_points; ++g)
        {
            const double nu = -pi + 2.0 * pi * static_cast<double>(g) / static_cast<double>(grid_points);
            Complex s = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                s += elems[i].at(nu - std::arg(elems[i].k1));
            best = std::max(best, std::norm(s));
        }
        return {num / (predicted * predicted), num / best};
    }

    inline std::vector<ElementResponse> draw_elements(size_t n, ConfigKind kind, uint64_t seed, size_t paths = 64)
    {
        std::mt19937_64 rng(seed);
        std::vector<ElementResponse> out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i)
            out.push_back(element_response(kind, draw_clarke(rng, paths)));
        return out;
    }

    inline EstimationMetrics estimation_trial(size_t n, ConfigKind kind, uint64_t seed,
                                              size_t grid_points = default_grid_points, size_t paths = 64)
    {
        return estimation_metrics(draw_elements(n, kind, seed, paths), PilotPlan::dft(n), grid_points);
    }

    inline double gamma_trial(size_t n, ConfigKind kind, uint64_t seed)
    {
        return estimation_trial(n, kind, seed).gamma;
    }

    inline double xi_trial(size_t n, ConfigKind kind, uint64_t seed, size_t grid_points = default_grid_points)
    {
        return estimation_trial(n, kind, seed, grid_points).xi;
    }

    // Trial t uses seed base ^ t.
    inline std::vector<EstimationMetrics> run_estimation_trials(size_t n, ConfigKind kind, size_t trials,
                                                                uint64_t base_seed,
                                                                size_t grid_points = default_grid_points,
                                                                unsigned threads = 0)
    {
        std::vector<EstimationMetrics> out(trials);
        const PilotPlan plan = PilotPlan::dft(n);
        parallel_for(trials, [&](size_t t)
                     { out[t] = estimation_metrics(draw_elements(n, kind, base_seed ^ static_cast<uint64_t>(t)), plan, grid_points); },
                     threads);
        return out;
    }

    // -------- RCS scenarios --------

    enum class ScenarioName
    {
        anomalous,
        specular,
        constant_spacing,
        constant_particles,
    };

    inline const char *to_string(ScenarioName s)
    {
        switch (s)
        {
        case ScenarioName::anomalous:
            return "anomalous";
        case ScenarioName::specular:
            return "specular";
        case ScenarioName::constant_spacing:
            return "constant_spacing";
        case ScenarioName::constant_particles:
            return "constant_particles";
        }
        return "unknown";
    }

    inline std::optional<ScenarioName> parse_scenario(std::string_view s)
    {
        for (ScenarioName n : {ScenarioName::anomalous, ScenarioName::specular, ScenarioName::constant_spacing,
                               ScenarioName::constant_particles})
            if (s == to_string(n))
                return n;
        return std::nullopt;
    }

    struct ScenarioSpec
    {
        ScenarioName name = ScenarioName::anomalous;
        double lambda = 1.0;
        int nx = 8, ny = 8;
        double spacing = 0.5; // in wavelengths
        size_t points = 10;   // sweep samples (constant_spacing always uses integer sizes)
        double sweep_min = 0.0, sweep_max = 0.0;

        // Ranges: phi in [0, pi/2] / [0, pi]; side length in [1, 10]; spacing in [1/4, 1] wavelengths.
        static ScenarioSpec defaults(ScenarioName n)
        {
            ScenarioSpec s;
            s.name = n;
            switch (n)
            {
            case ScenarioName::anomalous:
                s.sweep_max = pi / 2.0;
                break;
            case ScenarioName::specular:
                s.sweep_max = pi;
                break;
            case ScenarioName::constant_spacing:
                s.sweep_min = 1.0;
                s.sweep_max = 10.0;
                break;
            case ScenarioName::constant_particles:
                s.sweep_min = 0.25;
                s.sweep_max = 1.0;
                break;
            }
            return s;
        }

        void validate() const
        {
            if (!(lambda > 0.0))
                throw ValidationError("lambda must be positive");
            if (nx < 1 || ny < 1 || nx > 64 || ny > 64)
                throw ValidationError("lattice size out of range [1, 64]");
            if (!(spacing > 0.0))
                throw ValidationError("spacing must be positive");
            if (points < 1)
                throw ValidationError("sweep needs at least one point");
            if (!(sweep_min <= sweep_max))
                throw ValidationError("sweep range is empty");
            switch (name)
            {
            case ScenarioName::anomalous:
                if (sweep_min < 0.0 || sweep_max > pi / 2.0 + 1e-12)
                    throw ValidationError("anomalous sweep must lie in [0, pi/2]");
                break;
            case ScenarioName::specular:
                if (sweep_min < 0.0 || sweep_max > pi + 1e-12)
                    throw ValidationError("specular sweep must lie in [0, pi]");
                break;
            case ScenarioName::constant_spacing:
                if (sweep_min < 1.0 || sweep_max > 10.0)
                    throw ValidationError("array side must lie in [1, 10]");
                break;
            case ScenarioName::constant_particles:
                if (sweep_min < 0.25 - 1e-12 || sweep_max > 1.0 + 1e-12)
                    throw ValidationError("spacing sweep must lie in [1/4, 1] wavelengths");
                break;
            }
        }
    };

    struct ScenarioPoint
    {
        double sweep_value;
        int nx, ny;
        double spacing; // meters
        Direction r_in, r_out;
    };

    inline std::vector<double> linspace(double a, double b, size_t n)
    {
        std::vector<double> v(n);
        for (size_t i = 0; i < n; ++i)
            v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        return v;
    }

    inline std::vector<ScenarioPoint> scenario_points(const ScenarioSpec &spec)
    {
        spec.validate();
        const double lam = spec.lambda;
        const double h = std::sqrt(0.5);
        const Direction fixed_in = Direction::unit(Vec3(0.0, -h, -h));
        const Direction fixed_out = Direction::unit(Vec3(0.0, -h, h));
        std::vector<ScenarioPoint> pts;
        switch (spec.name)
        {
        case ScenarioName::anomalous:
            for (double phi : linspace(spec.sweep_min, spec.sweep_max, spec.points))
                pts.push_back({phi, spec.nx, spec.ny, spec.spacing * lam,
                               Direction::normalized(Vec3(0.0, -std::sin(phi), -std::cos(phi))),
                               Direction::unit(Vec3(0.0, 0.0, 1.0))});
            break;
        case ScenarioName::specular:
            for (double phi : linspace(spec.sweep_min, spec.sweep_max, spec.points))
                pts.push_back({phi, spec.nx, spec.ny, spec.spacing * lam,
                               Direction::normalized(Vec3(0.0, -std::sin(phi / 2), -std::cos(phi / 2))),
                               Direction::normalized(Vec3(0.0, -std::sin(phi / 2), std::cos(phi / 2)))});
            break;
        case ScenarioName::constant_spacing:
            for (int n = static_cast<int>(std::ceil(spec.sweep_min)); n <= static_cast<int>(std::floor(spec.sweep_max)); ++n)
                pts.push_back({static_cast<double>(n), n, n, spec.spacing * lam, fixed_in, fixed_out});
            break;
        case ScenarioName::constant_particles:
            for (double d : linspace(spec.sweep_min, spec.sweep_max, spec.points))
                pts.push_back({d, spec.nx, spec.ny, d * lam, fixed_in, fixed_out});
            break;
        }
        return pts;
    }

    struct ExperimentRecord
    {
        std::string scenario;
        size_t index = 0;
        double sweep_value = 0.0;
        int nx = 0, ny = 0;
        double spacing = 0.0;
        double sigma = 0.0;            // 4 pi |p_out^H S p_in|^2 after optimization
        double sigma_reference = 0.0;  // pi (3N/k)^2
        double sigma_closed_form = 0.0;
        int iterations = 0;
        std::string status;
        std::string message;

        double sigma_norm() const { return sigma / sigma_reference; }
    };

    inline double rcs_reference(size_t n, const Wavenumber &wn)
    {
        const double a = 3.0 * static_cast<double>(n) / wn.k();
        return pi * a * a;
    }

    inline Objective scenario_objective(const ScenarioPoint &p, double lambda)
    {
        Objective obj;
        obj.positions = square_lattice(p.nx, p.ny, p.spacing);
        obj.wn = Wavenumber::from_lambda(lambda);
        obj.r_in = p.r_in;
        obj.r_out = p.r_out;
        obj.p_in = CVec3(1.0, 0.0, 0.0);
        obj.p_out = CVec3(1.0, 0.0, 0.0);
        obj.mode = ObjectiveMode::rcs;
        return obj;
    }

    inline ExperimentRecord run_scenario_point(const ScenarioSpec &spec, const ScenarioPoint &p, size_t index,
                                               const OptimizerOptions &opt)
    {
        ExperimentRecord rec;
        rec.scenario = to_string(spec.name);
        rec.index = index;
        rec.sweep_value = p.sweep_value;
        rec.nx = p.nx;
        rec.ny = p.ny;
        rec.spacing = p.spacing;
        const Objective obj = scenario_objective(p, spec.lambda);
        rec.sigma_reference = rcs_reference(obj.positions.size(), obj.wn);
        try
        {
            const BlockMatrix init = opt.diagonal_only ? closed_form_diagonal(obj) : closed_form_no_coupling(obj);
            rec.sigma_closed_form = objective_value(obj, init);
            const OptimizerState st = manifold_optimize(obj, init, opt);
            const RisArray arr = RisArray::assemble(obj.positions, to_configs(st.v), obj.wn);
            rec.sigma = utility(arr, obj.r_in, obj.p_in, obj.r_out, obj.p_out).sigma_eff;
            rec.iterations = st.iterations;
            rec.status = to_string(st.status);
        }
        catch (const Error &e)
        {
            rec.status = "failed";
            rec.message = e.what();
        }
        return rec;
    }

    // Sweep points run concurrently; each optimization is single-threaded.
    inline std::vector<ExperimentRecord> run_rcs_scenario(const ScenarioSpec &spec, const OptimizerOptions &opt = {},
                                                          unsigned threads = 0)
    {
        const auto pts = scenario_points(spec);
        std::vector<ExperimentRecord> out(pts.size());
        parallel_for(pts.size(), [&](size_t i)
                     { out[i] = run_scenario_point(spec, pts[i], i, opt); },
                     threads);
        return out;
    }
} // namespace ris
