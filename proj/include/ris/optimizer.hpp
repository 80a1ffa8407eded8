// SPDX-License-Identifier: Apache-2.0
//
// RCS / utility maximization over block-diagonal unitary configurations.

#pragma once

#include "ris/scattering.hpp"
#include "ris/single_element.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace ris
{
    enum class ObjectiveMode
    {
        rcs,     // 4 pi |p_out^H S p_in|^2
        utility, // Re{p_out^H S p_in}
    };

    struct Objective
    {
        std::vector<Vec3> positions;
        Wavenumber wn = Wavenumber::from_lambda(1.0);
        Direction r_in = Direction::unit(Vec3(0.0, 0.0, -1.0));
        CVec3 p_in = CVec3(1.0, 0.0, 0.0);
        Direction r_out = Direction::unit(Vec3(0.0, 0.0, 1.0));
        CVec3 p_out = CVec3(1.0, 0.0, 0.0);
        ObjectiveMode mode = ObjectiveMode::rcs;
        bool coupling = true; // false drops M (independent particles)
    };

    // One 6x6 block per particle.
    using BlockMatrix = std::vector<CMat6>;

    inline CMat to_dense(const BlockMatrix &v)
    {
        const Eigen::Index n = static_cast<Eigen::Index>(v.size());
        CMat out = CMat::Zero(6 * n, 6 * n);
        for (Eigen::Index i = 0; i < n; ++i)
            out.block<6, 6>(6 * i, 6 * i) = v[i];
        return out;
    }

    inline double block_norm(const BlockMatrix &v)
    {
        double s = 0.0;
        for (const auto &b : v)
            s += b.squaredNorm();
        return std::sqrt(s);
    }

    inline double max_unitarity_residual(const BlockMatrix &v)
    {
        double r = 0.0;
        for (const auto &b : v)
            r = std::max(r, unitarity_residual(b));
        return r;
    }

    inline std::vector<ParticleConfig> to_configs(const BlockMatrix &v)
    {
        std::vector<ParticleConfig> out;
        out.reserve(v.size());
        for (const auto &b : v)
            out.push_back(ParticleConfig::from_unitary(b, 1e-8));
        return out;
    }

    // z(V) = c b^H (I - kappa W M)^{-1} W a with W = V + I, a = T O p_in, b = H^H P^H p_out.
    class CoupledModel
    {
    public:
        explicit CoupledModel(const Objective &obj) : obj_(obj)
        {
            if (obj.positions.empty())
                throw ValidationError("objective needs at least one particle");
            require_unit(obj.p_out, "p_out");
            if (!obj.p_in.allFinite())
                throw ValidationError("p_in must be finite");
            const double k = obj.wn.k();
            const Eigen::Index n = static_cast<Eigen::Index>(obj.positions.size());
            const CVec6 op = incidence_operator(obj.r_in).cast<Complex>() * obj.p_in;
            const CVec6 pp = farfield_operator(obj.r_out).transpose().cast<Complex>() * obj.p_out;
            a_.resize(6 * n);
            b_.resize(6 * n);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const Vec3 &x = obj.positions[i];
                a_.segment<6>(6 * i) = std::exp(Complex(0.0, -k * obj.r_in.vec().dot(x))) * op;
                b_.segment<6>(6 * i) = std::exp(Complex(0.0, -k * obj.r_out.vec().dot(x))) * pp;
            }
            c_ = Complex(0.0, 3.0 / (4.0 * k));
            kappa_ = RisArray::kappa(obj.wn);
            if (obj.coupling)
            {
                for (size_t i = 0; i < obj.positions.size(); ++i)
                    for (size_t j = i + 1; j < obj.positions.size(); ++j)
                        if ((obj.positions[i] - obj.positions[j]).norm() <= 1e-12 * obj.wn.lambda())
                            throw ValidationError("duplicate particle positions");
                m_ = RisArray::coupling_matrix(obj.positions, obj.wn);
            }
        }

        struct Evaluation
        {
            Complex z;
            double f = 0.0;
            CVec y;  // (I - kappa W M)^{-1} W a
            CVec u;  // (I - kappa W M)^{-H} b
        };

        size_t size() const { return obj_.positions.size(); }
        const Objective &objective() const { return obj_; }
        const CVec &a() const { return a_; }
        const CVec &b() const { return b_; }

        double value(Complex z) const
        {
            return obj_.mode == ObjectiveMode::rcs ? 4.0 * pi * std::norm(z) : z.real();
        }

        Evaluation evaluate(const BlockMatrix &v, bool with_adjoint = true) const
        {
            check_blocks(v);
            const Eigen::Index n = static_cast<Eigen::Index>(size());
            CVec wa(6 * n);
            for (Eigen::Index i = 0; i < n; ++i)
                wa.segment<6>(6 * i) = (v[i] + CMat6::Identity()) * a_.segment<6>(6 * i);

            Evaluation e;
            if (!obj_.coupling)
            {
                e.y = wa;
                e.u = b_;
            }
            else
            {
                CMat sys = CMat::Identity(6 * n, 6 * n);
                for (Eigen::Index i = 0; i < n; ++i)
                    sys.middleRows<6>(6 * i).noalias() -= (kappa_ * (v[i] + CMat6::Identity())) * m_.middleRows<6>(6 * i);
                Eigen::PartialPivLU<CMat> lu(sys);
                const double rc = lu.rcond();
                if (!(rc > 1e-15) || !std::isfinite(rc))
                    throw NumericalError("coupled system matrix is singular (rcond " + std::to_string(rc) + ")", rc);
                e.y = lu.solve(wa);
                if (with_adjoint)
                    e.u = lu.adjoint().solve(b_);
            }
            e.z = c_ * b_.dot(e.y);
            e.f = value(e.z);
            return e;
        }

        // Euclidean gradient in the real inner product Re Tr(G^H xi), i.e. 2 df/d conj(V),
        // restricted to the diagonal blocks.
        BlockMatrix gradient(const BlockMatrix &v, const Evaluation &e) const
        {
            (void)v;
            const Eigen::Index n = static_cast<Eigen::Index>(size());
            // df/dconj(V) = w conj(c) u q^H with q = a + kappa M y
            const Complex w = obj_.mode == ObjectiveMode::rcs ? 4.0 * pi * e.z : Complex(0.5, 0.0);
            CVec q = a_;
            if (obj_.coupling)
                q.noalias() += kappa_ * (m_ * e.y);
            const Complex scale = 2.0 * w * std::conj(c_);
            BlockMatrix g(size());
            for (Eigen::Index i = 0; i < n; ++i)
                g[i] = scale * e.u.segment<6>(6 * i) * q.segment<6>(6 * i).adjoint();
            return g;
        }

    private:
        void check_blocks(const BlockMatrix &v) const
        {
            if (v.size() != size())
                throw ValidationError("configuration count does not match particle count");
        }

        Objective obj_;
        CVec a_, b_;
        CMat m_;
        Complex c_, kappa_;
    };

    inline double objective_value(const Objective &obj, const BlockMatrix &v)
    {
        return CoupledModel(obj).evaluate(v, false).f;
    }

    inline BlockMatrix euclidean_gradient(const Objective &obj, const BlockMatrix &v)
    {
        const CoupledModel model(obj);
        return model.gradient(v, model.evaluate(v));
    }

    // Skew-Hermitian projection per block: (G - U G^H U)/2.
    inline BlockMatrix riemannian_gradient(const BlockMatrix &v, const BlockMatrix &g, bool diagonal_only = false)
    {
        BlockMatrix r(v.size());
        for (size_t i = 0; i < v.size(); ++i)
        {
            CMat6 gi = g[i];
            if (diagonal_only)
                gi = CMat6(gi.diagonal().asDiagonal());
            r[i] = 0.5 * (gi - v[i] * gi.adjoint() * v[i]);
        }
        return r;
    }

    // Polar retraction per block; diagonal blocks stay exactly diagonal.
    inline BlockMatrix retract(const BlockMatrix &v, const BlockMatrix &step, double t, bool diagonal_only = false)
    {
        BlockMatrix out(v.size());
        for (size_t i = 0; i < v.size(); ++i)
        {
            const CMat6 y = v[i] + t * step[i];
            if (diagonal_only)
            {
                CMat6 d = CMat6::Zero();
                for (int j = 0; j < 6; ++j)
                {
                    const double m = std::abs(y(j, j));
                    d(j, j) = m > 0.0 ? y(j, j) / m : v[i](j, j);
                }
                out[i] = d;
            }
            else
                out[i] = polar_project(y);
        }
        return out;
    }

    // Per particle: maximize Re Tr(A_n U_n) with A_n = i O p_in p_out^H P e^{-ik (r_in - r_out).x_n}.
    inline BlockMatrix closed_form_no_coupling(const Objective &obj)
    {
        const CMat6 base = utility_target(obj.r_in, obj.p_in, obj.r_out, obj.p_out);
        const double k = obj.wn.k();
        BlockMatrix v;
        v.reserve(obj.positions.size());
        for (const Vec3 &x : obj.positions)
        {
            const Complex ph = std::exp(Complex(0.0, -k * (obj.r_in.vec() - obj.r_out.vec()).dot(x)));
            v.push_back(trace_maximizing_unitary<6>(CMat6(ph * base)));
        }
        return v;
    }

    // Diagonal restriction: v_j = exp(-i arg(i a_j conj(b_j))).
    inline BlockMatrix closed_form_diagonal(const Objective &obj)
    {
        Objective o = obj;
        o.coupling = false;
        const CoupledModel model(o);
        const Eigen::Index n = static_cast<Eigen::Index>(model.size());
        BlockMatrix v(model.size(), CMat6::Zero());
        for (Eigen::Index i = 0; i < n; ++i)
            for (int j = 0; j < 6; ++j)
            {
                const Complex bj = I * model.a()(6 * i + j) * std::conj(model.b()(6 * i + j));
                v[i](j, j) = std::exp(Complex(0.0, -std::arg(bj)));
            }
        return v;
    }

    struct OptimizerOptions
    {
        int max_iters = 2000;
        std::optional<double> grad_tol; // default 1e-6 |f(init)|
        bool diagonal_only = false;
        double armijo_c1 = 1e-4;
        int max_backtracks = 30;
    };

    enum class OptimizerStatus
    {
        converged,
        max_iterations,
        line_search_failed,
    };

    inline const char *to_string(OptimizerStatus s)
    {
        switch (s)
        {
        case OptimizerStatus::converged:
            return "converged";
        case OptimizerStatus::max_iterations:
            return "max_iterations";
        case OptimizerStatus::line_search_failed:
            return "line_search_failed";
        }
        return "unknown";
    }

    struct OptimizerState
    {
        BlockMatrix v;
        std::vector<double> objective_trace; // f after each accepted iterate, starting with init
        std::vector<double> grad_norm_trace; // Riemannian gradient norm at each iterate
        int iterations = 0;
        OptimizerStatus status = OptimizerStatus::max_iterations;
        double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
    };

    inline bool is_diagonal(const BlockMatrix &v)
    {
        for (const auto &b : v)
        {
            CMat6 off = b;
            off.diagonal().setZero();
            if (off.cwiseAbs().maxCoeff() > 0.0)
                return false;
        }
        return true;
    }

    // Riemannian ascent on the product of U(6) (or of U(1)^6 when diagonal_only),
    // Armijo backtracking from step 1/||G_R||.
    inline OptimizerState manifold_optimize(const Objective &obj, std::optional<BlockMatrix> init = std::nullopt,
                                            const OptimizerOptions &opt = {})
    {
        const CoupledModel model(obj);
        OptimizerState st;
        st.v = init ? *init : (opt.diagonal_only ? closed_form_diagonal(obj) : closed_form_no_coupling(obj));
        if (st.v.size() != model.size())
            throw ValidationError("initial configuration count does not match particle count");
        if (max_unitarity_residual(st.v) > unitarity_tolerance)
            throw ValidationError("initial configuration is not block unitary");
        if (opt.diagonal_only && !is_diagonal(st.v))
            throw ValidationError("diagonal-only optimization needs a diagonal initial configuration");
        if (opt.max_iters < 0 || opt.max_backtracks < 0)
            throw ValidationError("iteration limits must be non-negative");

        auto e = model.evaluate(st.v);
        const double tol = opt.grad_tol ? *opt.grad_tol : 1e-6 * (e.f != 0.0 ? std::abs(e.f) : 1.0);
        st.objective_trace.push_back(e.f);

        for (;;)
        {
            const BlockMatrix r = riemannian_gradient(st.v, model.gradient(st.v, e), opt.diagonal_only);
            const double nr = block_norm(r);
            st.grad_norm_trace.push_back(nr);
            if (nr < tol)
            {
                st.status = OptimizerStatus::converged;
                break;
            }
            if (st.iterations >= opt.max_iters)
            {
                st.status = OptimizerStatus::max_iterations;
                break;
            }

            double t = 1.0 / nr;
            bool accepted = false;
            for (int bt = 0; bt <= opt.max_backtracks; ++bt, t *= 0.5)
            {
                BlockMatrix trial = retract(st.v, r, t, opt.diagonal_only);
                std::optional<CoupledModel::Evaluation> et;
                try
                {
                    et = model.evaluate(trial);
                }
                catch (const NumericalError &)
                {
                    continue;
                }
                if (et->f >= e.f + opt.armijo_c1 * t * nr * nr)
                {
                    st.v = std::move(trial);
                    e = std::move(*et);
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
            {
                st.status = OptimizerStatus::line_search_failed;
                break;
            }
            ++st.iterations;
            st.objective_trace.push_back(e.f);
        }
        return st;
    }
} // namespace ris
