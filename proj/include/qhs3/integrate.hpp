#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qhs3/errors.hpp"
#include "qhs3/normal_form.hpp"
#include "qhs3/system.hpp"

namespace qhs3 {

// Classical fourth-order Runge-Kutta step. Throws NonFiniteError if any stage
// leaves the finite range, which signals blow-up or an oversized dt.
template <typename Field>
Vec3 rk4_step(Field&& field, const Vec3& u, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const Vec3 k1 = field(u);
    const Vec3 k2 = field(u + (0.5 * dt) * k1);
    const Vec3 k3 = field(u + (0.5 * dt) * k2);
    const Vec3 k4 = field(u + dt * k3);
    const Vec3 next = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!is_finite(k1) || !is_finite(k2) || !is_finite(k3) || !is_finite(k4) || !is_finite(next))
        throw NonFiniteError("rk4_step: non-finite stage");
    return next;
}

// Uniformly sampled solution curve with conservation drift relative to the
// initial values of H and C.
struct Trajectory {
    std::vector<double> times;   // times[i] = i * dt
    std::vector<Vec3> states;
    double drift_h = 0.0;  // max |H(u_t) - H(u_0)|
    double drift_c = 0.0;  // max |C(u_t) - C(u_0)|
};

// Fixed-step RK4 from t = 0 to ceil(T/dt) * dt. ceil(T/dt) + 1 states.
inline Trajectory simulate(const QuadraticSystem& sys, const Vec3& u0, double dt, double T) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
    if (!(T >= dt)) throw std::invalid_argument("simulate: T must be at least dt");

    const auto field = [&sys](const Vec3& u) { return vector_field(sys, u); };
    const auto steps = static_cast<std::size_t>(std::ceil(T / dt));

    Trajectory tr;
    tr.times.reserve(steps + 1);
    tr.states.reserve(steps + 1);
    tr.times.push_back(0.0);
    tr.states.push_back(u0);

    const double h0 = hamiltonian(sys, u0);
    const double c0 = casimir(sys, u0);

    Vec3 u = u0;
    for (std::size_t i = 1; i <= steps; ++i) {
        try {
            u = rk4_step(field, u, dt);
        } catch (const NonFiniteError&) {
            throw NonFiniteError("simulate: non-finite state at step " + std::to_string(i), i);
        }
        tr.times.push_back(static_cast<double>(i) * dt);
        tr.states.push_back(u);
        tr.drift_h = std::max(tr.drift_h, std::fabs(hamiltonian(sys, u) - h0));
        tr.drift_c = std::max(tr.drift_c, std::fabs(casimir(sys, u) - c0));
    }
    return tr;
}

// Integrates the system from u0 and its normal form from v0 = to_normal(u0)
// with the same step size, and returns the worst mismatch
// max_t ||u_t - det(R) R v_t||. The exact flows agree, so this measures
// only floating-point divergence of the two integrations.
inline double compare_with_normal_form(const QuadraticSystem& sys, const Vec3& u0, double dt,
                                       double T, double tol = kDefaultCommuteTol) {
    const NormalForm nf = normal_form(sys, tol);
    const Trajectory tu = simulate(sys, u0, dt, T);
    const Trajectory tv = simulate(normal_system(nf), to_normal(nf, u0), dt, T);

    double sup_error = 0.0;
    for (std::size_t i = 0; i < tu.states.size(); ++i)
        sup_error = std::max(sup_error, norm(tu.states[i] - from_normal(nf, tv.states[i])));
    return sup_error;
}

}  // namespace qhs3
