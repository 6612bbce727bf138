#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace qhs3 {

struct Vec3 {
    std::array<double, 3> c{};

    constexpr Vec3() = default;
    constexpr Vec3(double x1, double x2, double x3) : c{x1, x2, x3} {}

    constexpr double operator[](std::size_t i) const { return c[i]; }
    constexpr double& operator[](std::size_t i) { return c[i]; }

    static constexpr Vec3 basis(std::size_t i) {
        Vec3 e;
        e[i] = 1.0;
        return e;
    }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(const Vec3& u, const Vec3& v) {
    return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

constexpr Vec3 operator-(const Vec3& u, const Vec3& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

constexpr Vec3 operator-(const Vec3& u) { return {-u[0], -u[1], -u[2]}; }

constexpr Vec3 operator*(double s, const Vec3& u) { return {s * u[0], s * u[1], s * u[2]}; }
constexpr Vec3 operator*(const Vec3& u, double s) { return s * u; }
constexpr Vec3 operator/(const Vec3& u, double s) { return {u[0] / s, u[1] / s, u[2] / s}; }

constexpr double dot(const Vec3& u, const Vec3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

constexpr Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

// u . (v x w), equal to det[u v w]
constexpr double triple(const Vec3& u, const Vec3& v, const Vec3& w) {
    return dot(u, cross(v, w));
}

constexpr double norm_squared(const Vec3& u) { return dot(u, u); }

inline double norm(const Vec3& u) { return std::sqrt(norm_squared(u)); }

inline double norm_inf(const Vec3& u) {
    return std::max({std::fabs(u[0]), std::fabs(u[1]), std::fabs(u[2])});
}

inline bool is_finite(const Vec3& u) {
    return std::isfinite(u[0]) && std::isfinite(u[1]) && std::isfinite(u[2]);
}

}  // namespace qhs3
