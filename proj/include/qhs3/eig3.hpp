#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "qhs3/errors.hpp"
#include "qhs3/mat3.hpp"

namespace qhs3 {

inline constexpr double kDefaultCommuteTol = 1e-10;

struct Eigen3 {
    Vec3 eigenvalues;        // ascending
    OrthoMat3 eigenvectors;  // column i pairs with eigenvalues[i]
};

namespace detail {

// One Jacobi rotation annihilating the (p,q) entry of s, accumulated into v.
inline void jacobi_rotate(std::array<std::array<double, 3>, 3>& s,
                          std::array<std::array<double, 3>, 3>& v,
                          std::size_t p, std::size_t q) {
    const double apq = s[p][q];
    if (apq == 0.0) return;
    const double theta = (s[q][q] - s[p][p]) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::hypot(theta, 1.0));
    const double c = 1.0 / std::hypot(t, 1.0);
    const double sn = t * c;
    const double tau = sn / (1.0 + c);

    s[p][p] -= t * apq;
    s[q][q] += t * apq;
    s[p][q] = 0.0;
    s[q][p] = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
        if (r != p && r != q) {
            const double srp = s[r][p];
            const double srq = s[r][q];
            s[r][p] = s[p][r] = srp - sn * (srq + tau * srp);
            s[r][q] = s[q][r] = srq + sn * (srp - tau * srq);
        }
        const double vrp = v[r][p];
        const double vrq = v[r][q];
        v[r][p] = vrp - sn * (vrq + tau * vrp);
        v[r][q] = vrq + sn * (vrp - tau * vrq);
    }
}

inline double off_norm(const std::array<std::array<double, 3>, 3>& s) {
    return std::sqrt(2.0 * (s[0][1] * s[0][1] + s[0][2] * s[0][2] + s[1][2] * s[1][2]));
}

}  // namespace detail

// Cyclic Jacobi with zero rotation threshold and a 50-sweep budget.
// Post: Q^T S Q diagonal with off-diagonal residual <= 1e-13 * (1 + ||S||_F),
// eigenvalues ascending. Throws NonConvergenceError if the budget runs out,
// which signals a broken implementation rather than bad input.
inline Eigen3 jacobi_eig(const SymMat3& sym) {
    constexpr int kMaxSweeps = 50;
    const double target = 1e-13 * (1.0 + frobenius_norm(sym));

    std::array<std::array<double, 3>, 3> s;
    std::array<std::array<double, 3>, 3> v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) s[i][j] = sym(i, j);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (detail::off_norm(s) <= target) {
            converged = true;
            break;
        }
        detail::jacobi_rotate(s, v, 0, 1);
        detail::jacobi_rotate(s, v, 0, 2);
        detail::jacobi_rotate(s, v, 1, 2);
    }
    if (!converged && detail::off_norm(s) > target)
        throw NonConvergenceError("jacobi_eig: residual above target after 50 sweeps");

    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return s[i][i] < s[j][j]; });

    Mat3 q;
    Vec3 vals;
    for (std::size_t j = 0; j < 3; ++j) {
        vals[j] = s[order[j]][order[j]];
        q.set_column(j, {v[0][order[j]], v[1][order[j]], v[2][order[j]]});
    }
    return {vals, OrthoMat3(q)};
}

// ||AK - KA||_F; zero iff the matrices commute exactly in floating point.
inline double commutator_norm(const SymMat3& a, const SymMat3& k) {
    return frobenius_norm(a.mat() * k.mat() - k.mat() * a.mat());
}

struct SimultaneousDiag {
    OrthoMat3 rotation;  // det +1
    DiagMat3 diag_a;
    DiagMat3 diag_k;
};

namespace detail {

// Columns p, q of basis are rotated so that the restriction of `a` to their
// span becomes diagonal, with the smaller Rayleigh quotient first.
inline void diagonalize_pair_restriction(std::array<Vec3, 3>& basis, const SymMat3& a,
                                         std::size_t p, std::size_t q) {
    const double bpp = dot(basis[p], a * basis[p]);
    const double bqq = dot(basis[q], a * basis[q]);
    const double bpq = dot(basis[p], a * basis[q]);
    if (bpq != 0.0) {
        const double theta = (bqq - bpp) / (2.0 * bpq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double sn = t * c;
        const Vec3 vp = basis[p];
        const Vec3 vq = basis[q];
        basis[p] = c * vp - sn * vq;
        basis[q] = sn * vp + c * vq;
    }
    if (dot(basis[p], a * basis[p]) > dot(basis[q], a * basis[q])) std::swap(basis[p], basis[q]);
}

}  // namespace detail

// One orthogonal basis diagonalizing a commuting symmetric pair: K is
// eigendecomposed, its eigenvalues are clustered at relative tolerance
// 1e-8 * (1 + ||K||_F), and the restriction of A is rediagonalized inside
// each cluster. Without the clustering the second stage is unstable for
// degenerate K. Output order: diag_k ascending, ties by diag_a ascending;
// rotation is normalized to det +1 by flipping its third column.
inline SimultaneousDiag simultaneous_diagonalize(const SymMat3& a, const SymMat3& k,
                                                 double tol = kDefaultCommuteTol) {
    const double comm = commutator_norm(a, k);
    const double bound = tol * (1.0 + frobenius_norm(a)) * (1.0 + frobenius_norm(k));
    if (comm > bound)
        throw NotCommutingError("simultaneous_diagonalize: commutator norm " +
                                    std::to_string(comm) + " exceeds tolerance " +
                                    std::to_string(bound),
                                comm, bound);

    const Eigen3 ek = jacobi_eig(k);
    std::array<Vec3, 3> basis{ek.eigenvectors.mat().column(0), ek.eigenvectors.mat().column(1),
                              ek.eigenvectors.mat().column(2)};

    const double cluster_tol = 1e-8 * (1.0 + frobenius_norm(k));
    const bool adjacent01 = ek.eigenvalues[1] - ek.eigenvalues[0] <= cluster_tol;
    const bool adjacent12 = ek.eigenvalues[2] - ek.eigenvalues[1] <= cluster_tol;

    if (adjacent01 && adjacent12) {
        // K ~ multiple of the identity: rediagonalize A over the whole basis.
        Mat3 b;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) b(i, j) = dot(basis[i], a * basis[j]);
        const Eigen3 ea = jacobi_eig(SymMat3(b));
        const std::array<Vec3, 3> old = basis;
        for (std::size_t j = 0; j < 3; ++j) {
            Vec3 col{0, 0, 0};
            for (std::size_t i = 0; i < 3; ++i) col = col + ea.eigenvectors(i, j) * old[i];
            basis[j] = col;
        }
    } else if (adjacent01) {
        detail::diagonalize_pair_restriction(basis, a, 0, 1);
    } else if (adjacent12) {
        detail::diagonalize_pair_restriction(basis, a, 1, 2);
    }

    Mat3 r = Mat3::from_columns(basis[0], basis[1], basis[2]);
    if (det(r) < 0.0) r.set_column(2, -r.column(2));

    DiagMat3 da, dk;
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec3 col = r.column(i);
        da[i] = dot(col, a * col);
        dk[i] = dot(col, k * col);
    }

    const double residual_budget = 1e-10 * (1.0 + frobenius_norm(a) + frobenius_norm(k));
    const Mat3 ra = transpose(r) * a.mat() * r;
    const Mat3 rk = transpose(r) * k.mat() * r;
    if (off_diagonal_norm(ra) > residual_budget || off_diagonal_norm(rk) > residual_budget)
        throw NotCommutingError(
            "simultaneous_diagonalize: off-diagonal residual above budget; the pair does not "
            "commute to working precision",
            comm, bound);

    return {OrthoMat3(r), da, dk};
}

}  // namespace qhs3
