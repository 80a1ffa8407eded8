// SPDX-License-Identifier: Apache-2.0
//
// Single-particle analysis: closed-form scattering, the SVD max-utility construction,
// a catalog of example configurations, one-way responses and two-channel multiplexing.

#pragma once

#include "ris/scattering.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ris
{
    // (3i/4k) P(r_out) (U + I) O(r_in)
    inline CMat3 single_element_scattering(const ParticleConfig &cfg, const Direction &r_out,
                                           const Direction &r_in, const Wavenumber &wn)
    {
        const CMat6 w = cfg.unitary() + CMat6::Identity();
        return Complex(0.0, 3.0 / (4.0 * wn.k())) *
               (farfield_operator(r_out).cast<Complex>() * w * incidence_operator(r_in).cast<Complex>());
    }

    // i O p_in p_out^H P; Re{A_c} = 3/(4k) Re Tr(target * U) + const
    inline CMat6 utility_target(const Direction &r_in, const CVec3 &p_in, const Direction &r_out, const CVec3 &p_out)
    {
        return I * (incidence_operator(r_in).cast<Complex>() * p_in) *
               (p_out.adjoint() * farfield_operator(r_out).cast<Complex>());
    }

    // Polarizations must be unit and transverse to their propagation directions; then the
    // target has a single singular value equal to 2.
    inline ParticleConfig max_utility_config(const Direction &r_in, const CVec3 &p_in,
                                             const Direction &r_out, const CVec3 &p_out)
    {
        require_unit(p_in, "p_in");
        require_unit(p_out, "p_out");
        if (std::abs(r_in.vec().cast<Complex>().dot(p_in)) > 1e-9 ||
            std::abs(r_out.vec().cast<Complex>().dot(p_out)) > 1e-9)
            throw ValidationError("polarizations must be transverse to their directions");
        Eigen::Matrix<double, 6, 1> sv;
        const CMat6 u = trace_maximizing_unitary<6>(utility_target(r_in, p_in, r_out, p_out), &sv);
        if (std::abs(sv(0) - 2.0) > 1e-9 || sv(1) > 1e-9)
            throw NumericalError("unexpected singular values for a rank-one utility target");
        return ParticleConfig::from_unitary(u);
    }

    // -------- geometry of the single-element examples --------

    struct SingleElementGeometry
    {
        double phi = 0.0;      // separation angle between in and out directions
        double vartheta = 0.0; // polarization rotation
        double rho = 0.0;      // phase of the outgoing polarization

        Direction r_in() const { return Direction::unit(Vec3(0.0, -std::sin(phi), -std::cos(phi))); }
        Direction r_out() const { return Direction::unit(Vec3(0.0, 0.0, 1.0)); }
        CVec3 p_in() const { return CVec3(1.0, 0.0, 0.0); }
        CVec3 p_out() const
        {
            return std::exp(Complex(0.0, rho)) * CVec3(std::cos(vartheta), std::sin(vartheta), 0.0);
        }
    };

    enum class NamedCase
    {
        B1, // parallel polarization, maximum at phi = 0
        B2, // parallel polarization, constant amplitude over rho at phi = pi/2
        B3, // orthogonal polarization, constant over all on-axis angles
        B4, // one-way, all separation angles
        B5, // two-channel multiplexing, parallel
        B6, // two-channel multiplexing, mirrored receivers
    };

    inline std::optional<NamedCase> parse_named_case(std::string_view s)
    {
        static constexpr std::array<std::pair<std::string_view, NamedCase>, 6> table{{
            {"B1", NamedCase::B1}, {"B2", NamedCase::B2}, {"B3", NamedCase::B3},
            {"B4", NamedCase::B4}, {"B5", NamedCase::B5}, {"B6", NamedCase::B6},
        }};
        for (const auto &[name, c] : table)
            if (name == s)
                return c;
        return std::nullopt;
    }

    inline std::string to_string(NamedCase c)
    {
        return "B" + std::to_string(static_cast<int>(c) + 1);
    }

    // Entries are 1-based (u_{n,m}) like the printed catalog; everything unset is -delta_nm.
    inline ParticleConfig named_config(NamedCase c, double rho = 0.0)
    {
        CMat6 u = -CMat6::Identity();
        auto at = [&u](int n, int m) -> Complex & { return u(n - 1, m - 1); };
        const Complex e = std::exp(Complex(0.0, rho + pi / 2.0));
        const double h = std::sqrt(0.5);

        switch (c)
        {
        case NamedCase::B1:
            at(1, 1) = e;
            at(5, 5) = -e;
            break;
        case NamedCase::B2:
            at(1, 1) = e;
            at(5, 5) = 0.0;
            at(6, 6) = 0.0;
            at(5, 6) = -1.0;
            at(6, 5) = -1.0;
            break;
        case NamedCase::B3:
            at(1, 1) = 0.0;
            at(2, 1) = h * e;
            at(1, 2) = h * e;
            at(1, 4) = h * e;
            at(4, 1) = -h * e;
            at(2, 2) = -0.5;
            at(4, 2) = -0.5;
            at(4, 4) = 0.5;
            at(2, 4) = 0.5;
            break;
        case NamedCase::B4:
            at(1, 1) = 0.0;
            at(3, 3) = 0.0;
            at(4, 4) = 0.0;
            at(2, 1) = h * e;
            at(4, 1) = -h * e;
            at(1, 3) = -1.0;
            at(3, 4) = -1.0;
            at(2, 2) = -h;
            at(4, 2) = -h;
            break;
        case NamedCase::B5:
            at(5, 5) = -I;
            at(6, 6) = -I;
            break;
        case NamedCase::B6:
        {
            const double s3 = std::sqrt(3.0);
            at(6, 6) = 1.0;
            at(1, 1) = -1.0 + s3 / 2.0;
            at(2, 2) = 1.0 - s3 / 2.0;
            at(1, 2) = std::sqrt(4.0 * s3 - 3.0) / 2.0;
            at(2, 1) = at(1, 2);
            break;
        }
        }
        return ParticleConfig::from_unitary(u, 1e-12);
    }

    // phi = pi/2, parallel: A_c = (3/4k)(2 + e^{-i(rho + pi/2)})
    inline ParticleConfig orthogonal_directions_config(double rho)
    {
        CMat6 u = -CMat6::Identity();
        const Complex e = std::exp(Complex(0.0, rho + pi / 2.0));
        u(0, 0) = e;
        u(4, 5) = e;
        u(5, 4) = e;
        u(4, 4) = 0.0;
        u(5, 5) = 0.0;
        return ParticleConfig::from_unitary(u);
    }

    // phi = pi/2, parallel: A_d = 3/(4k), A_u = 0. Non-reciprocal.
    inline ParticleConfig one_way_orthogonal_config(double rho)
    {
        CMat6 u = -CMat6::Identity();
        u(0, 0) = -1.0;
        u(4, 5) = std::exp(Complex(0.0, rho + pi / 2.0));
        u(3, 4) = -1.0;
        u(5, 3) = -1.0;
        u(3, 3) = 0.0;
        u(4, 4) = 0.0;
        u(5, 5) = 0.0;
        return ParticleConfig::from_unitary(u);
    }

    enum class PolarizationCase
    {
        parallel,   // vartheta = 0
        orthogonal, // vartheta = pi/2
    };

    // Closed forms of p_out^H S p_in for the single-element geometry.
    inline Complex analytic_Ac(PolarizationCase pc, const ParticleConfig &cfg, double phi, double rho,
                               const Wavenumber &wn)
    {
        auto u = [&cfg](int n, int m) { return cfg.unitary()(n - 1, m - 1); };
        const double c = std::cos(phi), s = std::sin(phi);
        const Complex pre = 3.0 / (4.0 * wn.k()) * std::exp(Complex(0.0, -(rho + pi / 2.0)));
        if (pc == PolarizationCase::parallel)
            return pre * ((-u(1, 5) - u(5, 5) - 1.0) * c + (u(1, 6) + u(5, 6)) * s + (u(1, 1) + u(5, 1) + 1.0));
        return pre * ((u(4, 5) - u(2, 5)) * c + (u(2, 6) - u(4, 6)) * s + (u(2, 1) - u(4, 1)));
    }

    struct OneWay
    {
        Complex downlink; // A_d
        Complex uplink;   // A_u
    };

    // Downlink p_out^H S(r_out, r_in) p_in; uplink reverses both directions and
    // swaps the roles of the polarizations.
    inline OneWay one_way_responses(const ParticleConfig &cfg, const SingleElementGeometry &g, const Wavenumber &wn)
    {
        const CVec3 pi_ = g.p_in(), po = g.p_out();
        const CMat3 down = single_element_scattering(cfg, g.r_out(), g.r_in(), wn);
        const CMat3 up = single_element_scattering(cfg, -g.r_in(), -g.r_out(), wn);
        return {po.dot(down * pi_), pi_.dot(up * po.conjugate())};
    }

    struct MuxChannel
    {
        Direction r_in;
        Direction r_out;
        CVec3 p_in;
        CVec3 p_out;
    };

    // Channel t arrives at angle phi and leaves at phi - delta, both in the yz-plane, x-polarized.
    inline MuxChannel mux_channel(double phi, double delta)
    {
        return {Direction::unit(Vec3(0.0, -std::sin(phi), -std::cos(phi))),
                Direction::unit(Vec3(0.0, std::sin(phi - delta), std::cos(phi - delta))),
                CVec3(1.0, 0.0, 0.0), CVec3(1.0, 0.0, 0.0)};
    }

    // A_ts = p_out,t^H S(r_out,t, r_in,s) p_in,s
    inline Eigen::Matrix2cd multiplexing_matrix(const ParticleConfig &cfg, const std::array<MuxChannel, 2> &ch,
                                                const Wavenumber &wn)
    {
        Eigen::Matrix2cd a;
        for (int t = 0; t < 2; ++t)
            for (int s = 0; s < 2; ++s)
                a(t, s) = ch[t].p_out.dot(single_element_scattering(cfg, ch[t].r_out, ch[s].r_in, wn) * ch[s].p_in);
        return a;
    }
} // namespace ris
