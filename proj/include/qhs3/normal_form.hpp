#pragma once

#include <optional>
#include <vector>

#include "qhs3/eig3.hpp"
#include "qhs3/system.hpp"

namespace qhs3 {

// Orthogonal normal form of a commuting-pair system: with D_A = R^T A R,
// D_K = R^T K R, k_hat = det(R) R^T k and a_hat = det(R) R^T a, the state
// map u(t) = det(R) R v(t) carries solutions of
//   v' = (D_K v + k_hat) x (D_A v + a_hat)
// to solutions of u' = (Ku + k) x (Au + a). det_r is stored even though
// canonicalization forces +1, so the formulas stay valid for either sign.
struct NormalForm {
    OrthoMat3 rotation;
    double det_r;
    DiagMat3 diag_k;
    DiagMat3 diag_a;
    Vec3 k_hat;
    Vec3 a_hat;
};

// Requires [A,K] = 0 within tolerance; throws NotCommutingError otherwise.
// For a non-commuting pair only an affine (not orthogonal) reduction exists,
// which this library does not provide.
inline NormalForm normal_form(const QuadraticSystem& sys, double tol = kDefaultCommuteTol) {
    const SimultaneousDiag sd = simultaneous_diagonalize(sys.A, sys.K, tol);
    const double det_r = sd.rotation.det();
    return {sd.rotation,
            det_r,
            sd.diag_k,
            sd.diag_a,
            det_r * sd.rotation.apply_transpose(sys.k),
            det_r * sd.rotation.apply_transpose(sys.a)};
}

// v = det(R) R^T u
inline Vec3 to_normal(const NormalForm& nf, const Vec3& u) {
    return nf.det_r * nf.rotation.apply_transpose(u);
}

// u = det(R) R v
inline Vec3 from_normal(const NormalForm& nf, const Vec3& v) {
    return nf.det_r * nf.rotation.apply(v);
}

// The normal-form tuple (D_K, k_hat, D_A, a_hat) as a QuadraticSystem.
inline QuadraticSystem normal_system(const NormalForm& nf) {
    return QuadraticSystem::diagonal(nf.diag_k, nf.k_hat, nf.diag_a, nf.a_hat);
}

// Right-hand side of the normal-form system written out in coordinates:
//   x1' = (K2 A3 - K3 A2) x2 x3 + (K2 a3 - k3 A2) x2 + (k2 A3 - K3 a2) x3 + k2 a3 - k3 a2
// and cyclic, where Ki, Ai are the diagonal entries and ki, ai the hat
// components. Deliberately a separate code path from the cross-product form.
inline Vec3 normal_rhs_coordinates(const DiagMat3& dk, const DiagMat3& da, const Vec3& k_hat,
                                   const Vec3& a_hat, const Vec3& x) {
    const DiagMat3& K = dk;
    const DiagMat3& A = da;
    const Vec3& k = k_hat;
    const Vec3& a = a_hat;
    return {(K[1] * A[2] - K[2] * A[1]) * x[1] * x[2] + (K[1] * a[2] - k[2] * A[1]) * x[1] +
                (k[1] * A[2] - K[2] * a[1]) * x[2] + (k[1] * a[2] - k[2] * a[1]),
            (K[2] * A[0] - K[0] * A[2]) * x[0] * x[2] + (k[2] * A[0] - K[0] * a[2]) * x[0] +
                (K[2] * a[0] - k[0] * A[2]) * x[2] + (k[2] * a[0] - k[0] * a[2]),
            (K[0] * A[1] - K[1] * A[0]) * x[0] * x[1] + (K[0] * a[1] - k[1] * A[0]) * x[0] +
                (k[0] * A[1] - K[1] * a[0]) * x[1] + (k[0] * a[1] - k[1] * a[0])};
}

struct DefiniteCombination {
    double alpha;
    double beta;
    double margin;  // smallest eigenvalue of alpha*A + beta*K
};

namespace detail {

inline double min_eigenvalue_on_circle(const SymMat3& a, const SymMat3& k, double theta) {
    return jacobi_eig(linear_combination(std::cos(theta), a, std::sin(theta), k)).eigenvalues[0];
}

// Golden-section ascent of f over [lo, hi].
template <typename F>
double golden_maximize(F&& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

}  // namespace detail

// Searches for (alpha, beta) with alpha*A + beta*K positive definite. By
// homogeneity the search runs over the unit circle (cos t, sin t); a negative
// definite combination shows up as the antipodal positive one. The base scan
// uses 720 uniform samples of the smallest eigenvalue, which is Lipschitz in
// t with constant at most ||A||_F + ||K||_F; intervals that this bound cannot
// certify nonpositive are bisected down to 1e-9 rad, and positive samples are
// sharpened by golden-section ascent. Margins below the 1e-12 witness floor
// are reported as not definite.
inline std::optional<DefiniteCombination> definite_combination(const SymMat3& a,
                                                               const SymMat3& k) {
    constexpr int kGridSize = 720;
    constexpr double kWitnessFloor = 1e-12;
    constexpr double kMinWidth = 1e-9;
    constexpr double kTwoPi = 6.283185307179586;

    const auto f = [&](double theta) { return detail::min_eigenvalue_on_circle(a, k, theta); };
    const double lipschitz = frobenius_norm(a) + frobenius_norm(k);

    double best_theta = 0.0;
    double best_margin = -1.0;
    const auto refine = [&](double lo, double hi) {
        const double theta = detail::golden_maximize(f, lo, hi);
        const double margin = f(theta);
        if (margin > best_margin) {
            best_margin = margin;
            best_theta = theta;
        }
    };

    const double h = kTwoPi / kGridSize;
    std::array<double, kGridSize + 1> samples;
    for (int i = 0; i <= kGridSize; ++i) samples[i] = f(i * h);

    struct Interval {
        double lo, flo, hi, fhi;
    };
    std::vector<Interval> work;
    for (int i = 0; i < kGridSize; ++i) {
        if (samples[i] > 0.0) refine(std::max(0.0, (i - 1) * h), std::min(kTwoPi, (i + 1) * h));
        work.push_back({i * h, samples[i], (i + 1) * h, samples[i + 1]});
    }

    while (!work.empty() && best_margin <= kWitnessFloor) {
        const Interval iv = work.back();
        work.pop_back();
        const double width = iv.hi - iv.lo;
        if (std::max(iv.flo, iv.fhi) + 0.5 * lipschitz * width <= 0.0) continue;
        if (width < kMinWidth) continue;
        const double mid = 0.5 * (iv.lo + iv.hi);
        const double fmid = f(mid);
        if (fmid > 0.0) refine(iv.lo, iv.hi);
        work.push_back({iv.lo, iv.flo, mid, fmid});
        work.push_back({mid, fmid, iv.hi, iv.fhi});
    }

    if (best_margin > kWitnessFloor)
        return DefiniteCombination{std::cos(best_theta), std::sin(best_theta), best_margin};
    return std::nullopt;
}

}  // namespace qhs3
