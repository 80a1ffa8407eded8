// SPDX-License-Identifier: Apache-2.0
//
// Shared scalar/matrix aliases, error types and small strong types.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ris
{
    using Complex = std::complex<double>;

    using Vec3 = Eigen::Vector3d;
    using Mat3 = Eigen::Matrix3d;
    using CVec3 = Eigen::Vector3cd;
    using CMat3 = Eigen::Matrix3cd;
    using CVec6 = Eigen::Matrix<Complex, 6, 1>;
    using CMat6 = Eigen::Matrix<Complex, 6, 6>;
    using Mat6 = Eigen::Matrix<double, 6, 6>;
    using CMat = Eigen::MatrixXcd;
    using CVec = Eigen::VectorXcd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr Complex I{0.0, 1.0};

    // Free-space wave impedance in ohms.
    inline constexpr double eta0 = 376.730313668;

    // Base of everything thrown by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Bad user input (wrong shapes, non-unitary configs, out-of-range parameters).
    class ValidationError : public Error
    {
    public:
        using Error::Error;
    };

    // Evaluation outside the domain of a formula (coincident points, zero vectors).
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // Singular or badly conditioned linear algebra.
    class NumericalError : public Error
    {
    public:
        NumericalError(const std::string &msg, double rcond = 0.0)
            : Error(msg), rcond_(rcond) {}
        double rcond() const { return rcond_; }

    private:
        double rcond_;
    };

    class Wavenumber
    {
    public:
        static Wavenumber from_lambda(double lambda, double eta = 1.0)
        {
            if (!(lambda > 0.0) || !std::isfinite(lambda))
                throw ValidationError("wavelength must be positive and finite");
            return Wavenumber(2.0 * pi / lambda, eta);
        }

        static Wavenumber from_k(double k, double eta = 1.0)
        {
            if (!(k > 0.0) || !std::isfinite(k))
                throw ValidationError("wavenumber must be positive and finite");
            return Wavenumber(k, eta);
        }

        double k() const { return k_; }
        double lambda() const { return 2.0 * pi / k_; }
        double eta() const { return eta_; }

    private:
        Wavenumber(double k, double eta) : k_(k), eta_(eta)
        {
            if (!(eta > 0.0) || !std::isfinite(eta))
                throw ValidationError("impedance must be positive and finite");
        }
        double k_;
        double eta_;
    };

    // Real unit 3-vector.
    class Direction
    {
    public:
        // Accepts any nonzero vector and normalizes it.
        static Direction normalized(const Vec3 &v)
        {
            const double n = v.norm();
            if (!(n > 0.0) || !std::isfinite(n))
                throw DomainError("direction vector must be nonzero and finite");
            return Direction(v / n);
        }

        // Accepts only vectors that are already unit length.
        static Direction unit(const Vec3 &v, double tol = 1e-9)
        {
            if (!v.allFinite() || std::abs(v.norm() - 1.0) > tol)
                throw ValidationError("direction must be a unit vector");
            return Direction(v / v.norm());
        }

        const Vec3 &vec() const { return d_; }
        double operator[](int i) const { return d_[i]; }
        Direction operator-() const { return Direction(-d_); }

    private:
        explicit Direction(const Vec3 &d) : d_(d) {}
        Vec3 d_;
    };

    inline void require_unit(const CVec3 &p, const char *what, double tol = 1e-9)
    {
        if (!p.allFinite() || std::abs(p.norm() - 1.0) > tol)
            throw ValidationError(std::string(what) + " must have unit norm");
    }

    // [d]x, so that cross_matrix(d) * v == d.cross(v)
    inline Mat3 cross_matrix(const Vec3 &d)
    {
        Mat3 m;
        m << 0.0, -d.z(), d.y(),
            d.z(), 0.0, -d.x(),
            -d.y(), d.x(), 0.0;
        return m;
    }
} // namespace ris
