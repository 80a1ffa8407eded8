// SPDX-License-Identifier: Apache-2.0
//
// Free-space dyadic Green's functions, the self-term G0 and far-field projectors.
// Time convention: outgoing waves carry exp(-ikr).

#pragma once

#include "ris/core.hpp"

namespace ris
{
    struct GreensBlock
    {
        CMat3 ee, em, me, mm;
    };

    struct FarFieldProjectors
    {
        Mat3 p1; // d d^T - I
        Mat3 p2; // [d]x
    };

    namespace detail
    {
        inline void check_separation(const Vec3 &r)
        {
            const double n = r.norm();
            if (!(n > 0.0) || !std::isfinite(n))
                throw DomainError("Green's function evaluated at zero separation, use g0_limit for the self term");
        }

        // e^{-ikr}/(4 pi r)
        inline Complex scalar_kernel(double r, double k)
        {
            return std::exp(Complex(0.0, -k * r)) / (4.0 * pi * r);
        }
    } // namespace detail

    // (-1/k^2)(k^2 I + grad grad^T) g(r), expanded:
    //   g [ (-1 + i/x + 1/x^2) I + (1 - 3i/x - 3/x^2) r r^T ],  x = kr
    inline CMat3 green_ee(const Vec3 &r, const Wavenumber &wn)
    {
        detail::check_separation(r);
        const double k = wn.k(), rn = r.norm(), x = k * rn;
        const Vec3 d = r / rn;
        const Complex g = detail::scalar_kernel(rn, k);
        const Complex a = -1.0 + I / x + 1.0 / (x * x);
        const Complex b = 1.0 - 3.0 * I / x - 3.0 / (x * x);
        return g * (a * CMat3::Identity() + b * (d * d.transpose()).cast<Complex>());
    }

    // -1/(ik) curl g(r) as a matrix acting on a vector: g (1 - i/x) [r]x
    inline CMat3 green_em(const Vec3 &r, const Wavenumber &wn)
    {
        detail::check_separation(r);
        const double k = wn.k(), rn = r.norm(), x = k * rn;
        const Complex g = detail::scalar_kernel(rn, k);
        return g * (1.0 - I / x) * cross_matrix(r / rn).cast<Complex>();
    }

    inline CMat3 green_me(const Vec3 &r, const Wavenumber &wn) { return -green_em(r, wn); }

    inline GreensBlock green_blocks(const Vec3 &r, const Wavenumber &wn)
    {
        GreensBlock b;
        b.ee = green_ee(r, wn);
        b.em = green_em(r, wn);
        b.me = -b.em;
        b.mm = b.ee;
        return b;
    }

    // ik [[eta G_ee, G_em], [G_me, G_mm/eta]]
    inline CMat6 green_full(const Vec3 &r, const Wavenumber &wn)
    {
        const GreensBlock b = green_blocks(r, wn);
        const double eta = wn.eta();
        CMat6 g;
        g << eta * b.ee, b.em,
            b.me, b.mm / eta;
        return Complex(0.0, wn.k()) * g;
    }

    // Coupling block without the ik and impedance factors; used to build M.
    inline CMat6 green_coupling(const Vec3 &r, const Wavenumber &wn)
    {
        const GreensBlock b = green_blocks(r, wn);
        CMat6 g;
        g << b.ee, b.em,
            b.me, b.mm;
        return g;
    }

    // Limit of Re{G(r)} on the self term.
    inline Mat6 g0_limit(const Wavenumber &wn)
    {
        const double c = -wn.k() * wn.k() / (6.0 * pi);
        Mat6 g = Mat6::Zero();
        g.diagonal() << c * wn.eta(), c * wn.eta(), c * wn.eta(),
            c / wn.eta(), c / wn.eta(), c / wn.eta();
        return g;
    }

    inline FarFieldProjectors farfield_projectors(const Vec3 &d)
    {
        const Vec3 u = Direction::normalized(d).vec();
        return {u * u.transpose() - Mat3::Identity(), cross_matrix(u)};
    }

    // [P1(d), P2(d)], 3x6
    inline Eigen::Matrix<double, 3, 6> farfield_operator(const Direction &d)
    {
        const FarFieldProjectors p = farfield_projectors(d.vec());
        Eigen::Matrix<double, 3, 6> out;
        out << p.p1, p.p2;
        return out;
    }

    // Maps an ingoing plane-wave polarization to the stacked (e, eta h) field: [I; [d]x].
    inline Eigen::Matrix<double, 6, 3> incidence_operator(const Direction &d)
    {
        Eigen::Matrix<double, 6, 3> out;
        out << Mat3::Identity(), cross_matrix(d.vec());
        return out;
    }
} // namespace ris
