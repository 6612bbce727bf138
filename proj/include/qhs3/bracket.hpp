#pragma once

#include <functional>
#include <utility>

#include "qhs3/system.hpp"

namespace qhs3 {

inline constexpr double kFiniteDifferenceScale = 1e-5;

// Central-difference gradient with step h = 1e-5 * (1 + ||u||_inf), which
// balances truncation against round-off for order-1 quantities.
template <typename F>
Vec3 central_difference_gradient(F&& f, const Vec3& u) {
    const double h = kFiniteDifferenceScale * (1.0 + norm_inf(u));
    Vec3 g;
    for (std::size_t i = 0; i < 3; ++i) {
        Vec3 up = u;
        Vec3 um = u;
        up[i] += h;
        um[i] -= h;
        g[i] = (f(up) - f(um)) / (2.0 * h);
    }
    return g;
}

// A smooth function of the state with an optional exact gradient. When the
// gradient is absent it is produced by central finite differences. Both
// callables must be side-effect free.
struct ScalarField {
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> gradient;  // may be empty

    double operator()(const Vec3& u) const { return value(u); }

    Vec3 grad(const Vec3& u) const {
        if (gradient) return gradient(u);
        return central_difference_gradient(value, u);
    }

    // 1/2 u^T M u + u.b + c with its closed-form gradient M u + b.
    static ScalarField quadratic(const SymMat3& m, const Vec3& b, double c = 0.0) {
        return {[m, b, c](const Vec3& u) { return 0.5 * quadratic_form(m, u) + dot(u, b) + c; },
                [m, b](const Vec3& u) { return m * u + b; }};
    }

    // u -> u[i] with gradient e_i.
    static ScalarField coordinate(std::size_t i) {
        return {[i](const Vec3& u) { return u[i]; }, [i](const Vec3&) { return Vec3::basis(i); }};
    }
};

inline ScalarField casimir_field(const QuadraticSystem& sys) {
    return ScalarField::quadratic(sys.K, sys.k);
}

inline ScalarField hamiltonian_field(const QuadraticSystem& sys) {
    return ScalarField::quadratic(sys.A, sys.a);
}

// Minus Lie-Poisson bracket {f,g}(u) = -grad C . (grad f x grad g).
inline double poisson_bracket(const QuadraticSystem& sys, const ScalarField& f,
                              const ScalarField& g, const Vec3& u) {
    return -dot(grad_casimir(sys, u), cross(f.grad(u), g.grad(u)));
}

// Pi_ij(u) = {x_i, x_j}(u): the antisymmetric hat matrix of grad C, so that
// Pi(u) w = grad C(u) x w and the flow is Pi(u) grad H(u).
inline Mat3 structure_matrix(const QuadraticSystem& sys, const Vec3& u) {
    const Vec3 c = grad_casimir(sys, u);
    return {0.0, -c[2], c[1],
            c[2], 0.0, -c[0],
            -c[1], c[0], 0.0};
}

}  // namespace qhs3
