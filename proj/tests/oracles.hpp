// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used only by the tests.

#pragma once

#include "ris/ris.hpp"

#include <random>
#include <vector>

namespace oracle
{
    using namespace ris;

    inline Complex scalar_g(const Vec3 &r, double k)
    {
        const double rn = r.norm();
        return std::exp(Complex(0.0, -k * rn)) / (4.0 * pi * rn);
    }

    // Fourth-order central first derivative along axis a.
    template <typename F>
    Complex d1(F &&f, const Vec3 &r, int a, double h)
    {
        Vec3 e = Vec3::Zero();
        e[a] = h;
        return (-f(r + 2 * e) + 8.0 * f(r + e) - 8.0 * f(r - e) + f(r - 2 * e)) / (12.0 * h);
    }

    // Hessian of the scalar kernel by central differences (fourth-order stencils).
    inline CMat3 hessian_fd(const Vec3 &r, double k, double h)
    {
        auto g = [k](const Vec3 &x)
        { return scalar_g(x, k); };
        CMat3 out;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
            {
                if (a == b)
                {
                    Vec3 e = Vec3::Zero();
                    e[a] = h;
                    out(a, a) = (-g(r + 2 * e) + 16.0 * g(r + e) - 30.0 * g(r) + 16.0 * g(r - e) - g(r - 2 * e)) / (12.0 * h * h);
                }
                else
                {
                    auto db = [&](const Vec3 &x)
                    { return d1(g, x, b, h); };
                    out(a, b) = d1(db, r, a, h);
                }
            }
        return out;
    }

    // (-1/k^2)(k^2 I + grad grad^T) g
    inline CMat3 green_ee_fd(const Vec3 &r, double k, double h)
    {
        return (-1.0 / (k * k)) * (k * k * scalar_g(r, k) * CMat3::Identity() + hessian_fd(r, k, h));
    }

    // v -> -1/(ik) curl(g v) = -1/(ik) grad g x v
    inline CMat3 green_em_fd(const Vec3 &r, double k, double h)
    {
        auto g = [k](const Vec3 &x)
        { return scalar_g(x, k); };
        CVec3 grad;
        for (int a = 0; a < 3; ++a)
            grad(a) = d1(g, r, a, h);
        const CVec3 c = grad / Complex(0.0, -k); // -grad/(ik)
        CMat3 m;
        m << 0.0, -c(2), c(1),
            c(2), 0.0, -c(0),
            -c(1), c(0), 0.0;
        return m;
    }

    inline double rel_err(const CMat &a, const CMat &b) { return (a - b).norm() / b.norm(); }

    // Neumann expansion of the coupled solve, written per particle:
    // order 0 is independent scattering, order 1 adds one bounce, order 2 two bounces.
    inline CMat3 born_series(const std::vector<Vec3> &x, const std::vector<CMat6> &u, const Wavenumber &wn,
                             const Direction &r_out, const Direction &r_in, int order)
    {
        const double k = wn.k();
        const Complex kap(0.0, 3.0 * pi / k);
        const size_t n = x.size();
        Eigen::Matrix<Complex, 6, 3> o;
        o << Mat3::Identity().cast<Complex>(), cross_matrix(r_in.vec()).cast<Complex>();
        const FarFieldProjectors pr = farfield_projectors(r_out.vec());
        Eigen::Matrix<Complex, 3, 6> p;
        p << pr.p1.cast<Complex>(), pr.p2.cast<Complex>();

        auto coupling = [&](size_t i, size_t j)
        {
            CMat6 g;
            const Vec3 r = x[i] - x[j];
            g << green_ee(r, wn), green_em(r, wn), -green_em(r, wn), green_ee(r, wn);
            return g;
        };

        // y_i^(0) = W_i t_i O ; y^(m+1)_i = kappa W_i sum_j G'_ij y^(m)_j
        std::vector<Eigen::Matrix<Complex, 6, 3>> y(n), total(n);
        for (size_t i = 0; i < n; ++i)
        {
            y[i] = (u[i] + CMat6::Identity()) * std::exp(Complex(0.0, -k * r_in.vec().dot(x[i]))) * o;
            total[i] = y[i];
        }
        for (int m = 0; m < order; ++m)
        {
            std::vector<Eigen::Matrix<Complex, 6, 3>> next(n);
            for (size_t i = 0; i < n; ++i)
            {
                Eigen::Matrix<Complex, 6, 3> acc = Eigen::Matrix<Complex, 6, 3>::Zero();
                for (size_t j = 0; j < n; ++j)
                    if (j != i)
                        acc += coupling(i, j) * y[j];
                next[i] = kap * (u[i] + CMat6::Identity()) * acc;
                total[i] += next[i];
            }
            y = next;
        }
        CMat3 s = CMat3::Zero();
        for (size_t i = 0; i < n; ++i)
            s += std::exp(Complex(0.0, k * r_out.vec().dot(x[i]))) * (p * total[i]);
        return Complex(0.0, 3.0 / (4.0 * k)) * s;
    }

    // Gauss-Legendre nodes/weights on [-1, 1].
    inline void gauss_legendre(int n, std::vector<double> &x, std::vector<double> &w)
    {
        x.assign(n, 0.0);
        w.assign(n, 0.0);
        for (int i = 0; i < n; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = z;
                for (int l = 2; l <= n; ++l)
                {
                    const double p2 = ((2.0 * l - 1.0) * z * p1 - (l - 1.0) * p0) / l;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16)
                    break;
            }
            double p0 = 1.0, p1 = z;
            for (int l = 2; l <= n; ++l)
            {
                const double p2 = ((2.0 * l - 1.0) * z * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (z * p1 - p0) / (z * z - 1.0);
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }

    // Integral over the unit sphere of f(direction).
    template <typename F>
    double sphere_integral(F &&f, int n_theta = 64, int n_phi = 128)
    {
        std::vector<double> x, w;
        gauss_legendre(n_theta, x, w);
        double acc = 0.0;
        for (int i = 0; i < n_theta; ++i)
        {
            const double ct = x[i], st = std::sqrt(1.0 - ct * ct);
            for (int j = 0; j < n_phi; ++j)
            {
                const double ph = 2.0 * pi * j / n_phi;
                acc += w[i] * (2.0 * pi / n_phi) * f(Vec3(st * std::cos(ph), st * std::sin(ph), ct));
            }
        }
        return acc;
    }

    inline Vec3 random_direction(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> nd;
        Vec3 v;
        do
            v = Vec3(nd(rng), nd(rng), nd(rng));
        while (v.norm() < 1e-6);
        return v.normalized();
    }

    inline CVec3 random_transverse(const Vec3 &d, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> nd;
        CVec3 v(Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)));
        const CVec3 dc = d.cast<Complex>();
        v -= dc * dc.dot(v);
        return v.normalized();
    }

    // Hermitian H with H^T = S H S gives a reciprocal unitary exp(iH).
    inline CMat6 random_reciprocal_unitary(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> nd;
        CMat6 k;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                k(i, j) = Complex(nd(rng), nd(rng));
        k = 0.5 * (k + k.adjoint()).eval();
        const CMat6 s = sigma_em();
        const CMat6 h = 0.5 * (k + s * k.transpose() * s);
        Eigen::SelfAdjointEigenSolver<CMat6> es(h);
        const Eigen::Matrix<Complex, 6, 1> ph = (es.eigenvalues().cast<Complex>() * I).array().exp();
        return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    }
} // namespace oracle
