// SPDX-License-Identifier: Apache-2.0
//
// ris_sim command line: scatter, utility, optimize, gamma-xi, rcs-scenario, validate.
// Exit codes: 0 ok, 1 invalid input, 2 numerical failure. Data goes to files (or
// stdout when --out is absent); diagnostics go to the error stream.

#pragma once

#include "ris/ris.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace ris::cli
{
    inline constexpr const char *tool_version = "0.1.0";

    struct Options
    {
        std::string config;
        std::string out;
        uint64_t seed = 1;
        double lambda = 0.0; // 0: take from the config or default to 1
        std::vector<double> r_in, r_out, p_in, p_out;
        std::string case_name;
        double rho = 0.0;

        // optimize / rcs-scenario
        std::string objective = "rcs";
        bool diagonal_only = false;
        bool no_coupling = false;
        int max_iters = 2000;
        double grad_tol = 0.0; // 0: relative default
        int nx = 8, ny = 8;
        double spacing = 0.5;

        // gamma-xi
        size_t n = 128;
        size_t trials = 10000;
        size_t grid = default_grid_points;

        // rcs-scenario
        std::string name = "anomalous";
        size_t points = 10;
        std::vector<double> sweep;
    };

    namespace detail
    {
        inline Vec3 vec3_or(const std::vector<double> &v, const std::optional<Vec3> &doc, const char *what)
        {
            if (!v.empty())
            {
                if (v.size() != 3)
                    throw ValidationError(std::string(what) + " needs three comma-separated values");
                return {v[0], v[1], v[2]};
            }
            if (doc)
                return *doc;
            throw ValidationError(std::string("missing ") + what);
        }

        inline CVec3 pol_or(const std::vector<double> &v, const std::optional<CVec3> &doc, const char *what)
        {
            if (!v.empty())
            {
                if (v.size() != 3)
                    throw ValidationError(std::string(what) + " needs three comma-separated values");
                return CVec3(v[0], v[1], v[2]);
            }
            if (doc)
                return *doc;
            return CVec3(1.0, 0.0, 0.0);
        }

        inline json vec_json(const Vec3 &v) { return json::array({v.x(), v.y(), v.z()}); }

        inline json cvec_json(const CVec3 &v)
        {
            json a = json::array();
            for (int i = 0; i < 3; ++i)
                a.push_back(json::array({v(i).real(), v(i).imag()}));
            return a;
        }

        inline json unitary_json(const CMat6 &u)
        {
            json m = json::array();
            for (int r = 0; r < 6; ++r)
            {
                json row = json::array();
                for (int c = 0; c < 6; ++c)
                    row.push_back(json::array({u(r, c).real(), u(r, c).imag()}));
                m.push_back(row);
            }
            return {{"type", "unitary"}, {"matrix", m}};
        }

        // Writes to <out>/<file> or, without --out, to the data stream.
        class Sink
        {
        public:
            Sink(const Options &o, std::ostream &data) : dir_(o.out), data_(data)
            {
                if (!dir_.empty())
                {
                    std::error_code ec;
                    std::filesystem::create_directories(dir_, ec);
                    if (ec)
                        throw ValidationError("cannot create output directory '" + dir_ + "'");
                }
            }

            bool to_files() const { return !dir_.empty(); }

            template <typename Fn>
            void write(const std::string &file, Fn &&fn)
            {
                if (dir_.empty())
                {
                    fn(data_);
                    return;
                }
                const auto path = std::filesystem::path(dir_) / file;
                std::ofstream f(path, std::ios::binary | std::ios::trunc);
                if (!f)
                    throw ValidationError("cannot write '" + path.string() + "'");
                fn(f);
                written_.push_back(file);
            }

            void sidecar(const std::string &file, const json &run, const std::string &hash, const json &summary)
            {
                if (dir_.empty())
                    return;
                json j = {{"tool", "ris_sim"}, {"version", tool_version}, {"config_hash", hash},
                          {"run_config", run}, {"summary", summary}, {"outputs", written_}};
                write(file, [&](std::ostream &os)
                      { os << j.dump(2) << '\n'; });
            }

        private:
            std::string dir_;
            std::ostream &data_;
            std::vector<std::string> written_;
        };

        inline Wavenumber wavenumber_for(const Options &o, const std::optional<ArrayDocument> &doc)
        {
            if (o.lambda > 0.0)
                return Wavenumber::from_lambda(o.lambda, doc ? doc->wn.eta() : 1.0);
            if (doc)
                return doc->wn;
            return Wavenumber::from_lambda(1.0);
        }

        inline json base_run(const std::string &sub, const Options &o)
        {
            json r = {{"subcommand", sub}, {"seed", o.seed}};
            if (!o.config.empty())
            {
                if (parse_named_case(o.config))
                    r["config"] = o.config;
                else
                    r["config"] = read_json_file(o.config);
            }
            if (o.lambda > 0.0)
                r["lambda"] = o.lambda;
            return r;
        }
    } // namespace detail

    inline int cmd_validate(const Options &o, std::ostream &out, std::ostream &)
    {
        std::string cname = !o.case_name.empty() ? o.case_name : o.config;
        std::vector<ParticleConfig> cfgs;
        std::vector<std::string> labels;
        Wavenumber wn = Wavenumber::from_lambda(o.lambda > 0.0 ? o.lambda : 1.0);
        if (auto c = parse_named_case(cname))
        {
            cfgs.push_back(named_config(*c, o.rho));
            labels.push_back(cname);
        }
        else if (!o.config.empty())
        {
            const ArrayDocument doc = load_array_document(o.config);
            wn = detail::wavenumber_for(o, doc);
            cfgs = doc.configs;
            for (size_t i = 0; i < cfgs.size(); ++i)
                labels.push_back("particle" + std::to_string(i));
        }
        else
            throw ValidationError("validate needs --case B1..B6 or --config");

        json run = detail::base_run("validate", o);
        run["case"] = o.case_name;
        run["rho"] = o.rho;
        const std::string hash = config_hash(run);

        detail::Sink sink(o, out);
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < cfgs.size(); ++i)
        {
            const Polarizability x = polarizability_from_unitary(cfgs[i], wn);
            const double ures = unitarity_residual(cfgs[i].unitary());
            const double pres = check_passivity(x, wn);
            const bool rec = check_reciprocity(x);
            rows.push_back({hash, labels[i], fmt_double(ures), fmt_double(pres), rec ? "true" : "false"});
            if (sink.to_files())
                out << labels[i] << " unitarity_residual=" << fmt_double(ures) << " passivity_residual="
                    << fmt_double(pres) << " reciprocity=" << (rec ? "true" : "false") << '\n';
        }
        sink.write("validate.csv", [&](std::ostream &os)
                   {
            CsvWriter w(os, {"config_hash", "label", "unitarity_residual", "passivity_residual", "reciprocity"});
            for (const auto &r : rows) w.row(r); });
        sink.sidecar("validate.json", run, hash, json::object());
        return 0;
    }

    inline int cmd_scatter(const Options &o, std::ostream &out, std::ostream &err)
    {
        if (o.config.empty())
            throw ValidationError("scatter needs --config");
        const ArrayDocument doc = load_array_document(o.config);
        const Wavenumber wn = detail::wavenumber_for(o, doc);
        const Direction r_in = Direction::normalized(detail::vec3_or(o.r_in, doc.r_in, "r_in"));
        const Direction r_out = Direction::normalized(detail::vec3_or(o.r_out, doc.r_out, "r_out"));
        const RisArray arr = RisArray::assemble(doc.positions, doc.configs, wn);
        if (arr.ill_conditioned())
            err << "warning: coupled system condition estimate " << fmt_double(1.0 / arr.rcond()) << '\n';
        const CMat3 s = arr.scattering(r_out, r_in);

        json run = detail::base_run("scatter", o);
        run["r_in"] = detail::vec_json(r_in.vec());
        run["r_out"] = detail::vec_json(r_out.vec());
        const std::string hash = config_hash(run);

        detail::Sink sink(o, out);
        sink.write("scatter.csv", [&](std::ostream &os)
                   {
            CsvWriter w(os, {"config_hash", "row", "col", "re", "im"});
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    w.row({hash, std::to_string(r), std::to_string(c), fmt_double(s(r, c).real()), fmt_double(s(r, c).imag())}); });
        sink.sidecar("scatter.json", run, hash, {{"rcond", arr.rcond()}});
        return 0;
    }

    inline int cmd_utility(const Options &o, std::ostream &out, std::ostream &)
    {
        if (o.config.empty())
            throw ValidationError("utility needs --config");
        const ArrayDocument doc = load_array_document(o.config);
        const Wavenumber wn = detail::wavenumber_for(o, doc);
        const Direction r_in = Direction::normalized(detail::vec3_or(o.r_in, doc.r_in, "r_in"));
        const Direction r_out = Direction::normalized(detail::vec3_or(o.r_out, doc.r_out, "r_out"));
        const CVec3 p_in = detail::pol_or(o.p_in, doc.p_in, "p_in");
        const CVec3 p_out = detail::pol_or(o.p_out, doc.p_out, "p_out");
        const RisArray arr = RisArray::assemble(doc.positions, doc.configs, wn);
        const UtilityReport u = utility(arr, r_in, p_in, r_out, p_out);

        json run = detail::base_run("utility", o);
        run["r_in"] = detail::vec_json(r_in.vec());
        run["r_out"] = detail::vec_json(r_out.vec());
        run["p_in"] = detail::cvec_json(p_in);
        run["p_out"] = detail::cvec_json(p_out);
        const std::string hash = config_hash(run);

        detail::Sink sink(o, out);
        sink.write("utility.csv", [&](std::ostream &os)
                   {
            CsvWriter w(os, {"config_hash", "A_c_re", "A_c_im", "A", "sigma_eff", "sigma_bar"});
            w.row({hash, fmt_double(u.A_c.real()), fmt_double(u.A_c.imag()), fmt_double(u.A),
                   fmt_double(u.sigma_eff), fmt_double(u.sigma_bar)}); });
        sink.sidecar("utility.json", run, hash, json::object());
        return 0;
    }

    inline int cmd_optimize(const Options &o, std::ostream &out, std::ostream &err)
    {
        std::optional<ArrayDocument> doc;
        if (!o.config.empty())
            doc = load_array_document(o.config);

        Objective obj;
        obj.wn = detail::wavenumber_for(o, doc);
        obj.positions = doc ? doc->positions : square_lattice(o.nx, o.ny, o.spacing * obj.wn.lambda());
        obj.r_in = Direction::normalized(detail::vec3_or(o.r_in, doc ? doc->r_in : std::optional<Vec3>(Vec3(0, 0, -1)), "r_in"));
        obj.r_out = Direction::normalized(detail::vec3_or(o.r_out, doc ? doc->r_out : std::optional<Vec3>(Vec3(0, 0, 1)), "r_out"));
        obj.p_in = detail::pol_or(o.p_in, doc ? doc->p_in : std::nullopt, "p_in");
        obj.p_out = detail::pol_or(o.p_out, doc ? doc->p_out : std::nullopt, "p_out");
        if (o.objective == "rcs")
            obj.mode = ObjectiveMode::rcs;
        else if (o.objective == "utility")
            obj.mode = ObjectiveMode::utility;
        else
            throw ValidationError("--objective must be rcs or utility");
        obj.coupling = !o.no_coupling;

        OptimizerOptions opt;
        opt.max_iters = o.max_iters;
        opt.diagonal_only = o.diagonal_only;
        if (o.grad_tol > 0.0)
            opt.grad_tol = o.grad_tol;

        const OptimizerState st = manifold_optimize(obj, std::nullopt, opt);
        err << "status=" << to_string(st.status) << " iterations=" << st.iterations
            << " objective=" << fmt_double(st.objective()) << '\n';

        json run = detail::base_run("optimize", o);
        json pos = json::array();
        for (const auto &x : obj.positions)
            pos.push_back(detail::vec_json(x));
        run["positions"] = pos;
        run["r_in"] = detail::vec_json(obj.r_in.vec());
        run["r_out"] = detail::vec_json(obj.r_out.vec());
        run["p_in"] = detail::cvec_json(obj.p_in);
        run["p_out"] = detail::cvec_json(obj.p_out);
        run["objective"] = o.objective;
        run["coupling"] = obj.coupling;
        run["diagonal_only"] = o.diagonal_only;
        run["max_iters"] = o.max_iters;
        run["grad_tol"] = o.grad_tol;
        const std::string hash = config_hash(run);

        detail::Sink sink(o, out);
        sink.write("optimize_trace.csv", [&](std::ostream &os)
                   {
            CsvWriter w(os, {"config_hash", "iteration", "objective", "grad_norm"});
            for (size_t i = 0; i < st.objective_trace.size(); ++i)
                w.row({hash, std::to_string(i), fmt_double(st.objective_trace[i]),
                       i < st.grad_norm_trace.size() ? fmt_double(st.grad_norm_trace[i]) : ""}); });
        if (sink.to_files())
        {
            json cfgs = json::array();
            for (const auto &b : st.v)
                cfgs.push_back(detail::unitary_json(b));
            json result = {{"lambda", obj.wn.lambda()}, {"eta", obj.wn.eta()}, {"positions", pos}, {"configs", cfgs},
                           {"r_in", run["r_in"]}, {"r_out", run["r_out"]}, {"p_in", run["p_in"]}, {"p_out", run["p_out"]}};
            sink.write("optimized_array.json", [&](std::ostream &os)
                       { os << result.dump(2) << '\n'; });
        }
        sink.sidecar("optimize.json", run, hash,
                     {{"status", to_string(st.status)}, {"iterations", st.iterations}, {"objective", st.objective()}});
        return 0;
    }

    inline std::vector<double> sorted(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        return v;
    }

    inline double median(std::vector<double> v)
    {
        if (v.empty())
            return 0.0;
        v = sorted(std::move(v));
        const size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }

    inline int cmd_gamma_xi(const Options &o, std::ostream &out, std::ostream &err)
    {
        ConfigKind kind = ConfigKind::parallel;
        if (o.case_name.empty() || o.case_name == "B1" || o.case_name == "parallel")
            kind = ConfigKind::parallel;
        else if (o.case_name == "B2" || o.case_name == "orthogonal")
            kind = ConfigKind::orthogonal;
        else
            throw ValidationError("gamma-xi --case must be B1 (parallel) or B2 (orthogonal)");
        if (o.n < 1 || o.n > 4096)
            throw ValidationError("--N must lie in [1, 4096]");
        if (o.trials < 1)
            throw ValidationError("--trials must be positive");

        const auto res = run_estimation_trials(o.n, kind, o.trials, o.seed, o.grid);

        json run = {{"subcommand", "gamma-xi"}, {"seed", o.seed}, {"N", o.n}, {"trials", o.trials},
                    {"case", to_string(kind)}, {"grid_points", o.grid}, {"paths", 64}};
        const std::string hash = config_hash(run);

        std::vector<double> g, x;
        double gsum = 0.0;
        for (const auto &r : res)
        {
            g.push_back(r.gamma);
            x.push_back(r.xi);
            gsum += r.gamma;
        }
        const double gmean = gsum / static_cast<double>(res.size());
        double gvar = 0.0;
        for (double v : g)
            gvar += (v - gmean) * (v - gmean);
        gvar /= std::max<double>(1.0, static_cast<double>(res.size()) - 1.0);
        const double med_xi_db = 10.0 * std::log10(median(x));
        err << "N=" << o.n << " mean_gamma=" << fmt_double(gmean) << " var_gamma=" << fmt_double(gvar)
            << " median_xi_db=" << fmt_double(med_xi_db) << '\n';

        detail::Sink sink(o, out);
        sink.write("gamma_xi.csv", [&](std::ostream &os)
                   {
            CsvWriter w(os, {"config_hash", "trial", "N", "case", "seed", "gamma", "xi", "gamma_db", "xi_db"});
            for (size_t t = 0; t < res.size(); ++t)
                w.row({hash, std::to_string(t), std::to_string(o.n), to_string(kind),
                       std::to_string(o.seed ^ static_cast<uint64_t>(t)), fmt_double(res[t].gamma), fmt_double(res[t].xi),
                       fmt_double(10.0 * std::log10(res[t].gamma)), fmt_double(10.0 * std::log10(res[t].xi))}); });
        sink.sidecar("gamma_xi.json", run, hash,
                     {{"mean_gamma", gmean}, {"var_gamma", gvar}, {"median_xi_db", med_xi_db},
                      {"xi_denominator", "grid search over a common phase offset, not a global optimum"}});
        return 0;
    }

    inline int cmd_rcs_scenario(const Options &o, std::ostream &out, std::ostream &err)
    {
        const auto name = parse_scenario(o.name);
        if (!name)
            throw ValidationError("unknown scenario '" + o.name + "'");
        ScenarioSpec spec = ScenarioSpec::defaults(*name);
        spec.lambda = o.lambda > 0.0 ? o.lambda : 1.0;
        spec.nx = o.nx;
        spec.ny = o.ny;
        spec.spacing = o.spacing;
        spec.points = o.points;
        if (!o.sweep.empty())
        {
            if (o.sweep.size() != 2)
                throw ValidationError("--sweep needs min,max");
            spec.sweep_min = o.sweep[0];
            spec.sweep_max = o.sweep[1];
        }
        spec.validate();

        OptimizerOptions opt;
        opt.max_iters = o.max_iters;
        opt.diagonal_only = o.diagonal_only;
        if (o.grad_tol > 0.0)
            opt.grad_tol = o.grad_tol;

        const auto recs = run_rcs_scenario(spec, opt);

        json run = {{"subcommand", "rcs-scenario"}, {"seed", o.seed}, {"name", o.name}, {"lambda", spec.lambda},
                    {"nx", spec.nx}, {"ny", spec.ny}, {"spacing", spec.spacing}, {"points", spec.points},
                    {"sweep", {spec.sweep_min, spec.sweep_max}}, {"max_iters", o.max_iters},
                    {"grad_tol", o.grad_tol}, {"diagonal_only", o.diagonal_only}};
        const std::string hash = config_hash(run);

        for (const auto &r : recs)
            if (r.status == "failed")
                err << "point " << r.index << " failed: " << r.message << '\n';

        detail::Sink sink(o, out);
        const std::string file = "rcs_" + o.name + ".csv";
        sink.write(file, [&](std::ostream &os)
                   {
            // baseline_* columns are reserved for externally supplied reference curves
            CsvWriter w(os, {"config_hash", "scenario", "index", "sweep_value", "nx", "ny", "n_particles", "spacing",
                             "sigma", "sigma_db", "sigma_reference", "sigma_norm_db", "sigma_closed_form",
                             "iterations", "status", "message",
                             "baseline_antenna", "baseline_po_a", "baseline_po_b", "baseline_pec"});
            for (const auto &r : recs)
                w.row({hash, r.scenario, std::to_string(r.index), fmt_double(r.sweep_value), std::to_string(r.nx),
                       std::to_string(r.ny), std::to_string(r.nx * r.ny), fmt_double(r.spacing), fmt_double(r.sigma),
                       fmt_double(10.0 * std::log10(r.sigma)), fmt_double(r.sigma_reference),
                       fmt_double(10.0 * std::log10(r.sigma_norm())), fmt_double(r.sigma_closed_form),
                       std::to_string(r.iterations), r.status, r.message, "", "", "", ""}); });
        sink.sidecar("rcs_" + o.name + ".json", run, hash, {{"points", recs.size()}});
        return 0;
    }

    inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Power-conserving RIS scattering simulator", "ris_sim"};
        app.require_subcommand(1);
        Options o;

        auto common = [&o](CLI::App *s)
        {
            s->add_option("--config", o.config, "Array JSON document (or a case name B1..B6 for validate)");
            s->add_option("--out", o.out, "Output directory (default: CSV to stdout)");
            s->add_option("--seed", o.seed, "Random seed");
            s->add_option("--lambda", o.lambda, "Wavelength in meters")->check(CLI::PositiveNumber);
        };
        auto directions = [&o](CLI::App *s)
        {
            s->add_option("--r-in", o.r_in, "Ingoing direction x,y,z")->delimiter(',');
            s->add_option("--r-out", o.r_out, "Outgoing direction x,y,z")->delimiter(',');
            s->add_option("--p-in", o.p_in, "Ingoing polarization x,y,z (real)")->delimiter(',');
            s->add_option("--p-out", o.p_out, "Outgoing polarization x,y,z (real)")->delimiter(',');
        };
        auto optimizer = [&o](CLI::App *s)
        {
            s->add_flag("--diagonal-only", o.diagonal_only, "Restrict to diagonal (phase-only) configurations");
            s->add_option("--max-iters", o.max_iters, "Iteration cap")->check(CLI::NonNegativeNumber);
            s->add_option("--grad-tol", o.grad_tol, "Riemannian gradient tolerance (default 1e-6 f(init))")->check(CLI::NonNegativeNumber);
            s->add_option("--nx", o.nx, "Lattice columns")->check(CLI::Range(1, 64));
            s->add_option("--ny", o.ny, "Lattice rows")->check(CLI::Range(1, 64));
            s->add_option("--spacing", o.spacing, "Lattice spacing in wavelengths")->check(CLI::PositiveNumber);
        };

        auto *validate = app.add_subcommand("validate", "Passivity/reciprocity of configurations");
        common(validate);
        validate->add_option("--case", o.case_name, "Named case B1..B6");
        validate->add_option("--rho", o.rho, "Phase parameter of the named case");

        auto *scatter = app.add_subcommand("scatter", "Scattering matrix S(r_out, r_in)");
        common(scatter);
        directions(scatter);

        auto *util = app.add_subcommand("utility", "Effective scattering, utility and RCS");
        common(util);
        directions(util);

        auto *optim = app.add_subcommand("optimize", "Manifold optimization of the configurations");
        common(optim);
        directions(optim);
        optimizer(optim);
        optim->add_option("--objective", o.objective, "rcs or utility");
        optim->add_flag("--no-coupling", o.no_coupling, "Ignore inter-particle coupling");

        auto *gx = app.add_subcommand("gamma-xi", "Channel-estimation Monte Carlo");
        common(gx);
        gx->add_option("--N", o.n, "Number of elements (= pilots)");
        gx->add_option("--trials", o.trials, "Number of trials");
        gx->add_option("--case", o.case_name, "B1 (parallel) or B2 (orthogonal)");
        gx->add_option("--grid", o.grid, "Grid points for the xi reference")->check(CLI::Range(256, 1 << 20));

        auto *rcs = app.add_subcommand("rcs-scenario", "RCS sweep over one of the lattice scenarios");
        common(rcs);
        optimizer(rcs);
        rcs->add_option("--name", o.name, "anomalous | specular | constant_spacing | constant_particles");
        rcs->add_option("--points", o.points, "Sweep samples")->check(CLI::PositiveNumber);
        rcs->add_option("--sweep", o.sweep, "Sweep range min,max")->delimiter(',');

        std::vector<std::string> argv_store;
        argv_store.reserve(args.size() + 1);
        argv_store.push_back("ris_sim");
        argv_store.insert(argv_store.end(), args.begin(), args.end());
        std::vector<const char *> argv;
        for (const auto &a : argv_store)
            argv.push_back(a.c_str());

        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            return 1;
        }

        try
        {
            if (validate->parsed())
                return cmd_validate(o, out, err);
            if (scatter->parsed())
                return cmd_scatter(o, out, err);
            if (util->parsed())
                return cmd_utility(o, out, err);
            if (optim->parsed())
                return cmd_optimize(o, out, err);
            if (gx->parsed())
                return cmd_gamma_xi(o, out, err);
            if (rcs->parsed())
                return cmd_rcs_scenario(o, out, err);
        }
        catch (const NumericalError &e)
        {
            err << "numerical error: " << e.what() << '\n';
            return 2;
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        catch (const json::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 1;
        }
        return 1;
    }
} // namespace ris::cli
