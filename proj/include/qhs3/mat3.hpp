#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qhs3/vec3.hpp"

namespace qhs3 {

// Row-major 3x3 matrix of doubles.
struct Mat3 {
    std::array<double, 9> m{};

    constexpr Mat3() = default;
    constexpr Mat3(double m11, double m12, double m13,
                   double m21, double m22, double m23,
                   double m31, double m32, double m33)
        : m{m11, m12, m13, m21, m22, m23, m31, m32, m33} {}

    static constexpr Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

    static constexpr Mat3 from_columns(const Vec3& c1, const Vec3& c2, const Vec3& c3) {
        return {c1[0], c2[0], c3[0],
                c1[1], c2[1], c3[1],
                c1[2], c2[2], c3[2]};
    }

    constexpr double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }
    constexpr double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }

    constexpr Vec3 row(std::size_t i) const { return {m[3 * i], m[3 * i + 1], m[3 * i + 2]}; }
    constexpr Vec3 column(std::size_t j) const { return {m[j], m[3 + j], m[6 + j]}; }

    constexpr void set_column(std::size_t j, const Vec3& v) {
        m[j] = v[0];
        m[3 + j] = v[1];
        m[6 + j] = v[2];
    }

    friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

constexpr Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
    return r;
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}

constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
            a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

constexpr Mat3 transpose(const Mat3& a) {
    return {a(0, 0), a(1, 0), a(2, 0),
            a(0, 1), a(1, 1), a(2, 1),
            a(0, 2), a(1, 2), a(2, 2)};
}

constexpr double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline double frobenius_norm(const Mat3& a) {
    double s = 0.0;
    for (double e : a.m) s += e * e;
    return std::sqrt(s);
}

// Frobenius norm of the strictly off-diagonal part.
inline double off_diagonal_norm(const Mat3& a) {
    const double s = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2) +
                     a(1, 0) * a(1, 0) + a(2, 0) * a(2, 0) + a(2, 1) * a(2, 1);
    return std::sqrt(s);
}

inline bool is_finite(const Mat3& a) {
    for (double e : a.m)
        if (!std::isfinite(e)) return false;
    return true;
}

struct DiagMat3 {
    std::array<double, 3> d{};

    constexpr DiagMat3() = default;
    constexpr DiagMat3(double d1, double d2, double d3) : d{d1, d2, d3} {}

    constexpr double operator[](std::size_t i) const { return d[i]; }
    constexpr double& operator[](std::size_t i) { return d[i]; }

    constexpr Mat3 to_mat3() const { return {d[0], 0, 0, 0, d[1], 0, 0, 0, d[2]}; }

    friend constexpr bool operator==(const DiagMat3&, const DiagMat3&) = default;
};

constexpr Vec3 operator*(const DiagMat3& a, const Vec3& v) {
    return {a[0] * v[0], a[1] * v[1], a[2] * v[2]};
}

// Symmetric 3x3 matrix, exactly symmetric after construction. The general
// constructor averages M and M^T, records the asymmetry residual
// ||M - M^T||_F, and rejects inputs with residual > 1e-8 * ||M||_F.
class SymMat3 {
public:
    static constexpr double kAsymmetryTol = 1e-8;

    explicit SymMat3(const Mat3& m) : asymmetry_(asymmetry_residual(m)) {
        if (!qhs3::is_finite(m))
            throw std::invalid_argument("SymMat3: non-finite entry");
        if (asymmetry_ > kAsymmetryTol * frobenius_norm(m))
            throw std::invalid_argument("SymMat3: input asymmetry " + std::to_string(asymmetry_) +
                                        " exceeds tolerance");
        for (std::size_t i = 0; i < 3; ++i) {
            m_(i, i) = m(i, i);
            for (std::size_t j = i + 1; j < 3; ++j) {
                const double avg = 0.5 * (m(i, j) + m(j, i));
                m_(i, j) = avg;
                m_(j, i) = avg;
            }
        }
    }

    // Entries m11, m12, m13, m22, m23, m33 of the upper triangle, row-major.
    static SymMat3 from_upper_triangle(double m11, double m12, double m13,
                                       double m22, double m23, double m33) {
        return SymMat3(Mat3{m11, m12, m13, m12, m22, m23, m13, m23, m33});
    }

    static SymMat3 from_diagonal(double d1, double d2, double d3) {
        return from_upper_triangle(d1, 0, 0, d2, 0, d3);
    }

    static SymMat3 from_diagonal(const DiagMat3& d) { return from_diagonal(d[0], d[1], d[2]); }

    static SymMat3 identity() { return from_diagonal(1, 1, 1); }
    static SymMat3 zero() { return from_diagonal(0, 0, 0); }

    constexpr double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    constexpr const Mat3& mat() const { return m_; }

    // ||M - M^T||_F of the matrix this was constructed from.
    constexpr double asymmetry() const { return asymmetry_; }

    friend constexpr bool operator==(const SymMat3& a, const SymMat3& b) { return a.m_ == b.m_; }

private:
    SymMat3() = default;

    static double asymmetry_residual(const Mat3& m) {
        const double d01 = m(0, 1) - m(1, 0);
        const double d02 = m(0, 2) - m(2, 0);
        const double d12 = m(1, 2) - m(2, 1);
        return std::sqrt(2.0 * (d01 * d01 + d02 * d02 + d12 * d12));
    }

    Mat3 m_;
    double asymmetry_ = 0.0;
};

constexpr Vec3 operator*(const SymMat3& a, const Vec3& v) { return a.mat() * v; }

inline double frobenius_norm(const SymMat3& a) { return frobenius_norm(a.mat()); }

// alpha*A + beta*K; entrywise on symmetric inputs, so the result is exactly
// symmetric and the constructor check cannot fire.
inline SymMat3 linear_combination(double alpha, const SymMat3& a, double beta, const SymMat3& k) {
    return SymMat3::from_upper_triangle(alpha * a(0, 0) + beta * k(0, 0),
                                        alpha * a(0, 1) + beta * k(0, 1),
                                        alpha * a(0, 2) + beta * k(0, 2),
                                        alpha * a(1, 1) + beta * k(1, 1),
                                        alpha * a(1, 2) + beta * k(1, 2),
                                        alpha * a(2, 2) + beta * k(2, 2));
}

// u^T S u
inline double quadratic_form(const SymMat3& s, const Vec3& u) { return dot(u, s * u); }

// Orthogonal 3x3 matrix. Construction validates ||R^T R - I||_F <= 1e-12 and
// |det R| = 1 within 1e-12; the determinant sign is cached as exactly +-1.
class OrthoMat3 {
public:
    static constexpr double kOrthoTol = 1e-12;

    explicit OrthoMat3(const Mat3& r) : r_(r) {
        if (!qhs3::is_finite(r))
            throw std::invalid_argument("OrthoMat3: non-finite entry");
        const double residual = frobenius_norm(transpose(r) * r - Mat3::identity());
        if (residual > kOrthoTol)
            throw std::invalid_argument("OrthoMat3: orthogonality residual " +
                                        std::to_string(residual) + " exceeds 1e-12");
        const double d = qhs3::det(r);
        if (std::fabs(std::fabs(d) - 1.0) > kOrthoTol)
            throw std::invalid_argument("OrthoMat3: determinant " + std::to_string(d) +
                                        " not within 1e-12 of +-1");
        det_sign_ = d > 0.0 ? 1.0 : -1.0;
    }

    static OrthoMat3 identity() { return OrthoMat3(Mat3::identity()); }

    constexpr const Mat3& mat() const { return r_; }
    constexpr double operator()(std::size_t i, std::size_t j) const { return r_(i, j); }

    // det(R), exactly +1.0 or -1.0
    constexpr double det() const { return det_sign_; }

    constexpr Vec3 apply(const Vec3& v) const { return r_ * v; }
    constexpr Vec3 apply_transpose(const Vec3& v) const {
        return {r_(0, 0) * v[0] + r_(1, 0) * v[1] + r_(2, 0) * v[2],
                r_(0, 1) * v[0] + r_(1, 1) * v[1] + r_(2, 1) * v[2],
                r_(0, 2) * v[0] + r_(1, 2) * v[1] + r_(2, 2) * v[2]};
    }

private:
    Mat3 r_;
    double det_sign_ = 1.0;
};

}  // namespace qhs3
