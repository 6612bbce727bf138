#pragma once

#include <stdexcept>

#include "qhs3/mat3.hpp"
#include "qhs3/vec3.hpp"

namespace qhs3 {

// The tuple (K, k, A, a) defining one system u' = (Ku + k) x (Au + a).
// (K, k) generate the conserved Casimir C(u) = 1/2 u^T K u + u.k and
// (A, a) the Hamiltonian H(u) = 1/2 u^T A u + u.a.
struct QuadraticSystem {
    SymMat3 K;
    Vec3 k;
    SymMat3 A;
    Vec3 a;

    QuadraticSystem(const SymMat3& K_, const Vec3& k_, const SymMat3& A_, const Vec3& a_)
        : K(K_), k(k_), A(A_), a(a_) {
        if (!is_finite(k) || !is_finite(a))
            throw std::invalid_argument("QuadraticSystem: non-finite control vector");
    }

    // Free rigid body with linear controls: K = I, k = 0, A = D, a = d.
    // d = 0 gives the classical rigid-body rotation equations.
    static QuadraticSystem rigid_body(const DiagMat3& inertia, const Vec3& controls = {}) {
        return {SymMat3::identity(), Vec3{}, SymMat3::from_diagonal(inertia), controls};
    }

    static QuadraticSystem diagonal(const DiagMat3& dk, const Vec3& k_, const DiagMat3& da,
                                    const Vec3& a_) {
        return {SymMat3::from_diagonal(dk), k_, SymMat3::from_diagonal(da), a_};
    }
};

inline double casimir(const QuadraticSystem& sys, const Vec3& u) {
    return 0.5 * quadratic_form(sys.K, u) + dot(u, sys.k);
}

inline double hamiltonian(const QuadraticSystem& sys, const Vec3& u) {
    return 0.5 * quadratic_form(sys.A, u) + dot(u, sys.a);
}

inline Vec3 grad_casimir(const QuadraticSystem& sys, const Vec3& u) { return sys.K * u + sys.k; }

inline Vec3 grad_hamiltonian(const QuadraticSystem& sys, const Vec3& u) {
    return sys.A * u + sys.a;
}

// u' = (Ku + k) x (Au + a), the cross product of the two gradients.
inline Vec3 vector_field(const QuadraticSystem& sys, const Vec3& u) {
    return cross(grad_casimir(sys, u), grad_hamiltonian(sys, u));
}

}  // namespace qhs3
