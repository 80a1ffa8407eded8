// SPDX-License-Identifier: Apache-2.0
//
// Particle polarizability from unitary configurations, passivity and reciprocity
// validators, and the coupled N-particle scattering matrix.

#pragma once

#include "ris/em_core.hpp"
#include "ris/linalg.hpp"

#include <Eigen/LU>
#include <memory>
#include <utility>
#include <vector>

namespace ris
{
    inline constexpr double unitarity_tolerance = 1e-9;

    class ParticleConfig
    {
    public:
        // Validates unitarity; reciprocity is derived from the sub-block symmetries.
        static ParticleConfig from_unitary(const CMat6 &u, double tol = unitarity_tolerance)
        {
            if (!u.allFinite())
                throw ValidationError("configuration has non-finite entries");
            const double res = unitarity_residual(u);
            if (res > tol)
                throw ValidationError("configuration is not unitary (residual " + std::to_string(res) + ")");
            return ParticleConfig(u);
        }

        // Explicit repair: polar projection onto the unitary group.
        static ParticleConfig repaired(const CMat6 &u) { return ParticleConfig(polar_project(u)); }

        static ParticleConfig dark() { return ParticleConfig(-CMat6::Identity()); }

        const CMat6 &unitary() const { return u_; }
        bool reciprocal() const { return reciprocal_; }

    private:
        explicit ParticleConfig(const CMat6 &u) : u_(u), reciprocal_(reciprocal_blocks(u)) {}
        CMat6 u_;
        bool reciprocal_;
    };

    struct Polarizability
    {
        CMat6 x;
        CMat3 ee() const { return x.topLeftCorner<3, 3>(); }
        CMat3 em() const { return x.topRightCorner<3, 3>(); }
        CMat3 me() const { return x.bottomLeftCorner<3, 3>(); }
        CMat3 mm() const { return x.bottomRightCorner<3, 3>(); }
    };

    // X = (-G0)^{-1/2} (U + I)/2 (-G0)^{-1/2}
    inline Polarizability polarizability_from_unitary(const ParticleConfig &cfg, const Wavenumber &wn)
    {
        const Eigen::Matrix<double, 6, 1> d = (-g0_limit(wn).diagonal()).cwiseSqrt().cwiseInverse();
        const CMat6 half = 0.5 * (cfg.unitary() + CMat6::Identity());
        return {d.cast<Complex>().asDiagonal() * half * d.cast<Complex>().asDiagonal()};
    }

    // || (X + X^H)/2 + X^H G0 X ||_F, zero iff passive and lossless
    inline double check_passivity(const Polarizability &p, const Wavenumber &wn)
    {
        const CMat6 g0 = g0_limit(wn).cast<Complex>();
        return (0.5 * (p.x + p.x.adjoint()) + p.x.adjoint() * g0 * p.x).norm();
    }

    inline bool check_reciprocity(const Polarizability &p, double tol = 1e-9)
    {
        const double scale = std::max(1.0, p.x.cwiseAbs().maxCoeff());
        return reciprocal_blocks(p.x, tol * scale);
    }

    struct ProbeResult
    {
        Complex h1, h2;
    };

    // Two point actors exchange a signal through a free-space scatterer at x0.
    // Forward: actor 1 at x1 radiates c = [j; m], actor 2 at x2 measures with a = [a_e; a_m].
    // Reverse: positions swapped and magnetic components sign-flipped; the measurement
    // vector now radiates and the source vector measures. With a = c this is the plain
    // position swap. h1 == h2 for every (a, c) iff X is reciprocal.
    inline ProbeResult two_actor_reciprocity_probe(const Polarizability &p, const Vec3 &x0,
                                                   const Vec3 &x1, const Vec3 &x2,
                                                   const CVec3 &j, const CVec3 &m,
                                                   const CVec3 &a_e, const CVec3 &a_m,
                                                   const Wavenumber &wn)
    {
        const double tol = 1e-12 * std::max({1.0, x0.norm(), x1.norm(), x2.norm()});
        if ((x1 - x2).norm() <= tol || (x0 - x1).norm() <= tol || (x0 - x2).norm() <= tol)
            throw DomainError("probe positions must be pairwise distinct");

        CVec6 c, a;
        c << j, m;
        a << a_e, a_m;
        const CMat6 s = sigma_em();

        auto path = [&](const Vec3 &from, const Vec3 &to)
        {
            return CMat6(green_full(to - from, wn) + green_full(to - x0, wn) * p.x * green_full(x0 - from, wn));
        };

        ProbeResult r;
        r.h1 = a.transpose() * path(x1, x2) * c;
        r.h2 = (s * c).transpose() * path(x2, x1) * (s * a);
        return r;
    }

    struct PlaneWave
    {
        Direction direction;
        CVec3 polarization;
        Complex amplitude{1.0, 0.0};
    };

    struct ScatteringResponse
    {
        CMat3 s;
        Direction r_out;
        Direction r_in;
    };

    // Immutable after assembly. Holds V, M and a factorization of I - kappa (V+I) M.
    class RisArray
    {
    public:
        static RisArray assemble(std::vector<Vec3> positions, std::vector<ParticleConfig> configs,
                                 const Wavenumber &wn)
        {
            if (positions.empty())
                throw ValidationError("array needs at least one particle");
            if (positions.size() != configs.size())
                throw ValidationError("positions and configs differ in length");
            for (const auto &x : positions)
                if (!x.allFinite())
                    throw ValidationError("particle position is not finite");
            const double tol = 1e-12 * wn.lambda();
            for (size_t i = 0; i < positions.size(); ++i)
                for (size_t j = i + 1; j < positions.size(); ++j)
                    if ((positions[i] - positions[j]).norm() <= tol)
                        throw ValidationError("duplicate particle positions " + std::to_string(i) + " and " + std::to_string(j));

            auto m = std::make_shared<CMat>(coupling_matrix(positions, wn));
            return RisArray(std::move(positions), std::move(configs), wn, std::move(m));
        }

        // Same geometry with new configurations; the coupling matrix is geometry-only and shared.
        RisArray with_configs(std::vector<ParticleConfig> configs) const
        {
            if (configs.size() != positions_.size())
                throw ValidationError("config count does not match particle count");
            return RisArray(positions_, std::move(configs), wn_, m_);
        }

        // M_ij = G'(x_i - x_j), zero diagonal blocks.
        static CMat coupling_matrix(const std::vector<Vec3> &positions, const Wavenumber &wn)
        {
            const Eigen::Index n = static_cast<Eigen::Index>(positions.size());
            CMat m = CMat::Zero(6 * n, 6 * n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j)
                {
                    const CMat6 g = green_coupling(positions[i] - positions[j], wn);
                    m.block<6, 6>(6 * i, 6 * j) = g;
                    // G'(-r): ee/mm even, em/me odd
                    CMat6 gr = g;
                    gr.topRightCorner<3, 3>() *= -1.0;
                    gr.bottomLeftCorner<3, 3>() *= -1.0;
                    m.block<6, 6>(6 * j, 6 * i) = gr;
                }
            return m;
        }

        static Complex kappa(const Wavenumber &wn) { return Complex(0.0, 3.0 * pi / wn.k()); }

        size_t size() const { return positions_.size(); }
        const std::vector<Vec3> &positions() const { return positions_; }
        const std::vector<ParticleConfig> &configs() const { return configs_; }
        const Wavenumber &wavenumber() const { return wn_; }
        const CMat &coupling() const { return *m_; }
        double rcond() const { return rcond_; }
        // True when the reciprocal condition estimate is below 1e-8 (condition above 1e8).
        bool ill_conditioned() const { return rcond_ < 1e-8; }

        CMat block_configs() const
        {
            const Eigen::Index n = static_cast<Eigen::Index>(size());
            CMat v = CMat::Zero(6 * n, 6 * n);
            for (Eigen::Index i = 0; i < n; ++i)
                v.block<6, 6>(6 * i, 6 * i) = configs_[i].unitary();
            return v;
        }

        // S(r_out, r_in) = (3i/4k) P H (I - kappa W M)^{-1} W T O,  W = V + I
        CMat3 scattering(const Direction &r_out, const Direction &r_in) const
        {
            const double k = wn_.k();
            const Eigen::Index n = static_cast<Eigen::Index>(size());
            const Eigen::Matrix<double, 6, 3> o = incidence_operator(r_in);
            const Eigen::Matrix<double, 3, 6> p = farfield_operator(r_out);

            CMat rhs(6 * n, 3);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const Complex t = std::exp(Complex(0.0, -k * r_in.vec().dot(positions_[i])));
                rhs.middleRows<6>(6 * i) = (configs_[i].unitary() + CMat6::Identity()) * (t * o.cast<Complex>());
            }
            const CMat y = lu_->solve(rhs);

            CMat3 acc = CMat3::Zero();
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const Complex h = std::exp(Complex(0.0, k * r_out.vec().dot(positions_[i])));
                acc += h * (p.cast<Complex>() * y.middleRows<6>(6 * i));
            }
            return Complex(0.0, 3.0 / (4.0 * k)) * acc;
        }

    private:
        RisArray(std::vector<Vec3> positions, std::vector<ParticleConfig> configs, const Wavenumber &wn,
                 std::shared_ptr<const CMat> m)
            : positions_(std::move(positions)), configs_(std::move(configs)), wn_(wn), m_(std::move(m))
        {
            const Eigen::Index n = static_cast<Eigen::Index>(positions_.size());
            CMat a = CMat::Identity(6 * n, 6 * n);
            const Complex kap = kappa(wn_);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const CMat6 w = configs_[i].unitary() + CMat6::Identity();
                a.middleRows<6>(6 * i) -= kap * w * m_->middleRows<6>(6 * i);
            }
            auto lu = std::make_shared<Eigen::PartialPivLU<CMat>>(a);
            rcond_ = lu->rcond();
            if (!(rcond_ > 1e-15) || !std::isfinite(rcond_))
                throw NumericalError("coupled system matrix is singular (rcond " + std::to_string(rcond_) + ")", rcond_);
            lu_ = std::move(lu);
        }

        std::vector<Vec3> positions_;
        std::vector<ParticleConfig> configs_;
        Wavenumber wn_;
        std::shared_ptr<const CMat> m_;
        std::shared_ptr<const Eigen::PartialPivLU<CMat>> lu_;
        double rcond_ = 1.0;
    };

    inline RisArray assemble_array(std::vector<Vec3> positions, std::vector<ParticleConfig> configs,
                                   const Wavenumber &wn)
    {
        return RisArray::assemble(std::move(positions), std::move(configs), wn);
    }

    inline ScatteringResponse scattering_matrix(const RisArray &array, const Direction &r_out, const Direction &r_in)
    {
        return {array.scattering(r_out, r_in), r_out, r_in};
    }

    inline CVec3 scattered_spectrum(const RisArray &array, const PlaneWave &e_in, const Direction &r_out)
    {
        return array.scattering(r_out, e_in.direction) * (e_in.amplitude * e_in.polarization);
    }

    // Regular square lattice in the xy-plane centred on the origin.
    inline std::vector<Vec3> square_lattice(int nx, int ny, double spacing)
    {
        if (nx < 1 || ny < 1)
            throw ValidationError("lattice dimensions must be positive");
        if (!(spacing > 0.0))
            throw ValidationError("lattice spacing must be positive");
        std::vector<Vec3> out;
        out.reserve(static_cast<size_t>(nx) * ny);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                out.emplace_back((ix - 0.5 * (nx - 1)) * spacing, (iy - 0.5 * (ny - 1)) * spacing, 0.0);
        return out;
    }
} // namespace ris
