#pragma once

#include <random>

#include "qhs3/mat3.hpp"
#include "qhs3/system.hpp"

namespace qhs3 {

inline Vec3 sample_vec3(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return {dist(rng), dist(rng), dist(rng)};
}

inline SymMat3 sample_sym_mat3(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    const double m11 = dist(rng), m12 = dist(rng), m13 = dist(rng);
    const double m22 = dist(rng), m23 = dist(rng), m33 = dist(rng);
    return SymMat3::from_upper_triangle(m11, m12, m13, m22, m23, m33);
}

inline QuadraticSystem sample_system(std::mt19937_64& rng, double lo, double hi) {
    const SymMat3 k = sample_sym_mat3(rng, lo, hi);
    const Vec3 kv = sample_vec3(rng, lo, hi);
    const SymMat3 a = sample_sym_mat3(rng, lo, hi);
    const Vec3 av = sample_vec3(rng, lo, hi);
    return {k, kv, a, av};
}

// Uniformly distributed rotation (det +1) from a random unit quaternion.
inline OrthoMat3 sample_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double w = gauss(rng), x = gauss(rng), y = gauss(rng), z = gauss(rng);
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    return OrthoMat3(Mat3{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
                          2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
                          2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)});
}

// Random orthogonal matrix with a coin-flipped determinant sign.
inline OrthoMat3 sample_orthogonal(std::mt19937_64& rng) {
    Mat3 r = sample_rotation(rng).mat();
    if (rng() % 2 == 0) r.set_column(2, -r.column(2));
    return OrthoMat3(r);
}

}  // namespace qhs3
