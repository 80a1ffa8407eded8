// SPDX-License-Identifier: Apache-2.0
//
// Unitary helpers: residuals, polar projection, Haar sampling, trace maximizers.

#pragma once

#include "ris/core.hpp"

#include <Eigen/SVD>
#include <random>

namespace ris
{
    template <typename Derived>
    double unitarity_residual(const Eigen::MatrixBase<Derived> &u)
    {
        using M = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
        const M uc = u.template cast<Complex>();
        return (uc.adjoint() * uc - M::Identity(uc.rows(), uc.cols())).norm();
    }

    // Closest unitary in Frobenius norm (polar factor).
    template <typename Derived>
    auto polar_project(const Eigen::MatrixBase<Derived> &a)
    {
        using M = Eigen::Matrix<Complex, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
        Eigen::JacobiSVD<M> svd(M(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
        return M(svd.matrixU() * svd.matrixV().adjoint());
    }

    // Sign-flip matrix diag(I3, -I3).
    inline CMat6 sigma_em()
    {
        CMat6 s = CMat6::Identity();
        s.bottomRightCorner<3, 3>() *= -1.0;
        return s;
    }

    // ee = ee^T, mm = mm^T, em = -me^T  <=>  A^T = S A S
    inline bool reciprocal_blocks(const CMat6 &a, double tol = 1e-9)
    {
        const CMat6 s = sigma_em();
        return (a.transpose() - s * a * s).cwiseAbs().maxCoeff() <= tol;
    }

    // Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix.
    template <int Dim = 6>
    Eigen::Matrix<Complex, Dim, Dim> random_unitary(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> nd(0.0, 1.0);
        Eigen::Matrix<Complex, Dim, Dim> z;
        for (int j = 0; j < Dim; ++j)
            for (int i = 0; i < Dim; ++i)
                z(i, j) = Complex(nd(rng), nd(rng));
        Eigen::HouseholderQR<Eigen::Matrix<Complex, Dim, Dim>> qr(z);
        Eigen::Matrix<Complex, Dim, Dim> q = qr.householderQ();
        const auto r = qr.matrixQR();
        for (int j = 0; j < Dim; ++j)
        {
            const double m = std::abs(r(j, j));
            if (m > 0.0)
                q.col(j) *= r(j, j) / m;
        }
        return q;
    }

    // Unitary mapping unit vector a to unit vector b, identity on span{a,b}^perp.
    template <int Dim>
    Eigen::Matrix<Complex, Dim, Dim> minimal_rotation(const Eigen::Matrix<Complex, Dim, 1> &a,
                                                      const Eigen::Matrix<Complex, Dim, 1> &b)
    {
        using M = Eigen::Matrix<Complex, Dim, Dim>;
        using V = Eigen::Matrix<Complex, Dim, 1>;
        const Complex alpha = a.dot(b); // a^H b
        V w = b - alpha * a;
        const double beta = w.norm();
        if (beta < 1e-14)
        {
            // b is a phase multiple of a
            M u = M::Identity(a.size(), a.size());
            u += (alpha / std::abs(alpha) - 1.0) * a * a.adjoint();
            return u;
        }
        w /= beta;
        // On the basis (a, w): [[alpha, -beta], [beta, conj(alpha)]]
        M u = M::Identity(a.size(), a.size()) - a * a.adjoint() - w * w.adjoint();
        u += (alpha * a + beta * w) * a.adjoint();
        u += (-beta * a + std::conj(alpha) * w) * w.adjoint();
        return u;
    }

    // argmax over unitary U of Re Tr(A U). Rank-1 targets use the minimal rotation
    // so that the null-space completion is deterministic.
    template <int Dim>
    Eigen::Matrix<Complex, Dim, Dim> trace_maximizing_unitary(const Eigen::Matrix<Complex, Dim, Dim> &a,
                                                              Eigen::Matrix<double, Dim, 1> *singular_values = nullptr)
    {
        using M = Eigen::Matrix<Complex, Dim, Dim>;
        Eigen::JacobiSVD<M> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto &s = svd.singularValues();
        if (singular_values)
            *singular_values = s;
        if (!(s(0) > 0.0))
            throw DomainError("target matrix is zero, no preferred configuration");
        if (s.size() < 2 || s(1) <= 1e-12 * s(0))
        {
            // U y1 = k1 with A = Y S K^H
            const Eigen::Matrix<Complex, Dim, 1> y1 = svd.matrixU().col(0);
            const Eigen::Matrix<Complex, Dim, 1> k1 = svd.matrixV().col(0);
            return minimal_rotation<Dim>(y1, k1);
        }
        return svd.matrixV() * svd.matrixU().adjoint();
    }
} // namespace ris
