// SPDX-License-Identifier: Apache-2.0
//
// End-to-end LOS channel through an RIS: effective lengths, direct and
// RIS-assisted gains, received signal, RCS and utility metrics.

#pragma once

#include "ris/scattering.hpp"

#include <functional>

namespace ris
{
    // Power-normalized effective length as a function of the departure direction.
    using EffectiveLength = std::function<CVec3(const Direction &)>;

    struct Terminal
    {
        Vec3 position;
        EffectiveLength effective_length;
        double reference_power = 1.0;
    };

    // Gain 2 pi eta |l|^2 / lambda^2 = g in every direction, fixed linear polarization.
    inline EffectiveLength isotropic_element(const CVec3 &polarization, const Wavenumber &wn, double gain = 1.0)
    {
        const double mag = wn.lambda() * std::sqrt(gain / (2.0 * pi * wn.eta()));
        const CVec3 l = mag * polarization.normalized();
        return [l](const Direction &) { return l; };
    }

    inline EffectiveLength isotropic_x(const Wavenumber &wn, double gain = 1.0)
    {
        return isotropic_element(CVec3(1.0, 0.0, 0.0), wn, gain);
    }

    inline EffectiveLength isotropic_y(const Wavenumber &wn, double gain = 1.0)
    {
        return isotropic_element(CVec3(0.0, 1.0, 0.0), wn, gain);
    }

    inline double terminal_gain(const EffectiveLength &l, const Direction &d, const Wavenumber &wn)
    {
        return 2.0 * pi * wn.eta() * l(d).squaredNorm() / (wn.lambda() * wn.lambda());
    }

    struct LosChannels
    {
        Complex h_d;
        Complex h_a;
    };

    namespace detail
    {
        struct LosGeometry
        {
            double d_rt, d_rs, d_st;
            Direction u_rt, u_rs, u_st;
        };

        // The RIS reference point is the origin of the particle coordinates.
        inline LosGeometry los_geometry(const Vec3 &xt, const Vec3 &xr, double tol)
        {
            const Vec3 rt = xr - xt, rs = xr, st = -xt;
            if (rt.norm() <= tol || rs.norm() <= tol || st.norm() <= tol)
                throw DomainError("transmitter, receiver and RIS must not coincide");
            return {rt.norm(), rs.norm(), st.norm(),
                    Direction::normalized(rt), Direction::normalized(rs), Direction::normalized(st)};
        }
    } // namespace detail

    inline LosChannels los_channels(const Terminal &tx, const Terminal &rx, const RisArray &array)
    {
        const Wavenumber &wn = array.wavenumber();
        const double k = wn.k();
        const auto g = detail::los_geometry(tx.position, rx.position, 1e-12 * wn.lambda());

        const Complex hd = std::exp(Complex(0.0, -k * g.d_rt)) / g.d_rt *
                           rx.effective_length(-g.u_rt).dot(tx.effective_length(g.u_rt));
        const CMat3 s = array.scattering(g.u_rs, g.u_st);
        const Complex ha = std::exp(Complex(0.0, -k * (g.d_rs + g.d_st))) / (g.d_rs * g.d_st) *
                           rx.effective_length(-g.u_rs).dot(s * tx.effective_length(g.u_st));
        return {hd, ha};
    }

    inline Complex received_signal(Complex h_d, Complex h_a, Complex s, const Wavenumber &wn)
    {
        return wn.eta() / (2.0 * wn.lambda()) * (h_d + h_a) * s;
    }

    inline double channel_gain(Complex h_d, Complex h_a, const Wavenumber &wn)
    {
        const double c = wn.eta() / (2.0 * wn.lambda());
        return c * c * std::norm(h_d + h_a);
    }

    struct UtilityReport
    {
        Complex A_c;
        double A;
        double sigma_eff;
        double sigma_bar;
    };

    inline UtilityReport utility(const RisArray &array, const Direction &r_in, const CVec3 &p_in,
                                 const Direction &r_out, const CVec3 &p_out)
    {
        require_unit(p_in, "p_in");
        require_unit(p_out, "p_out");
        const CMat3 s = array.scattering(r_out, r_in);
        const CVec3 sp = s * p_in;
        const Complex ac = p_out.dot(sp);
        return {ac, ac.real(), 4.0 * pi * std::norm(ac), 4.0 * pi * sp.squaredNorm()};
    }

    // Vector-valued overload that validates plain vectors as unit directions.
    inline UtilityReport utility(const RisArray &array, const Vec3 &r_in, const CVec3 &p_in,
                                 const Vec3 &r_out, const CVec3 &p_out)
    {
        return utility(array, Direction::unit(r_in), p_in, Direction::unit(r_out), p_out);
    }

    struct LinkBudget
    {
        double a_d = 0.0, a_a = 0.0;
        double g_t_direct = 0.0, g_r_direct = 0.0; // G_t(d_rt), G_r(-d_rt)
        double g_t_ris = 0.0, g_r_ris = 0.0;       // G_t(d_st), G_r(-d_rs)
        double d_rt = 0.0, d_rs = 0.0, d_st = 0.0;
        double sigma_bar = 0.0;
        double phase_d = 0.0;       // arg of the direct summand of f
        double phase_a = 0.0;       // arg of the RIS summand of f
        Complex match_d{0.0, 0.0};  // l_r^H l_t for unit-normalized lengths
        Complex match_a{0.0, 0.0};  // l_r^H p_r for unit-normalized lengths
    };

    namespace detail
    {
        inline CVec3 unit_or_zero(const CVec3 &v)
        {
            const double n = v.norm();
            return n > 0.0 ? CVec3(v / n) : CVec3::Zero();
        }
    } // namespace detail

    inline LinkBudget link_budget(const Terminal &tx, const Terminal &rx, const RisArray &array)
    {
        const Wavenumber &wn = array.wavenumber();
        const double k = wn.k();
        const auto g = detail::los_geometry(tx.position, rx.position, 1e-12 * wn.lambda());

        LinkBudget b;
        b.d_rt = g.d_rt;
        b.d_rs = g.d_rs;
        b.d_st = g.d_st;
        b.g_t_direct = terminal_gain(tx.effective_length, g.u_rt, wn);
        b.g_r_direct = terminal_gain(rx.effective_length, -g.u_rt, wn);
        b.g_t_ris = terminal_gain(tx.effective_length, g.u_st, wn);
        b.g_r_ris = terminal_gain(rx.effective_length, -g.u_rs, wn);

        const CVec3 lt_d = detail::unit_or_zero(tx.effective_length(g.u_rt));
        const CVec3 lr_d = detail::unit_or_zero(rx.effective_length(-g.u_rt));
        const CVec3 lt_a = detail::unit_or_zero(tx.effective_length(g.u_st));
        const CVec3 lr_a = detail::unit_or_zero(rx.effective_length(-g.u_rs));

        const CVec3 sp = array.scattering(g.u_rs, g.u_st) * lt_a;
        b.sigma_bar = 4.0 * pi * sp.squaredNorm();

        b.a_d = std::sqrt(b.g_t_direct * b.g_r_direct) / g.d_rt;
        b.match_d = lr_d.dot(lt_d) * std::exp(Complex(0.0, -k * g.d_rt));
        if (b.sigma_bar > 0.0)
        {
            b.a_a = std::sqrt(b.g_t_ris * b.g_r_ris * b.sigma_bar / (4.0 * pi)) / (g.d_rs * g.d_st);
            const CVec3 pr = sp / sp.norm();
            b.match_a = lr_a.dot(pr) * std::exp(Complex(0.0, -k * (g.d_rs + g.d_st)));
        }
        b.phase_d = std::arg(b.match_d);
        b.phase_a = std::arg(b.match_a);
        return b;
    }

    // f = |a_d l_r^H l_t e^{-ik d_rt} + a_a l_r^H p_r e^{-ik(d_rs + d_st)}|^2;
    // the channel gain equals (lambda/4pi)^2 f.
    inline double objective_f(const LinkBudget &b)
    {
        return std::norm(b.a_d * b.match_d + b.a_a * b.match_a);
    }
} // namespace ris
