#pragma once

// Complete complex eigensystem of a real 4x4 matrix.
//
// Eigenvalues come from the characteristic quartic in closed form
// (Faddeev-LeVerrier coefficients, Ferrari resolvent) with guarded Newton
// polishing.  Closed-form roots of multiplicity m only carry eps^(1/m)
// accuracy, so the cluster values and eigenvectors are then refined against
// the matrix itself with two-sided Rayleigh quotients, which converge
// quadratically for non-normal matrices as well.  Clusters whose refined
// values collapse onto each other are merged and re-refined, which resolves
// triple and quadruple eigenvalues without a coarser clustering threshold.

#include <complex>
#include <numbers>
#include <vector>

#include "projective.hpp"

namespace homrot {

template <typename T>
using Complex = std::complex<T>;

template <typename T>
using CVec4 = std::array<Complex<T>, 4>;

template <typename T>
struct EigenPair {
    Complex<T> value{};
    CVec4<T> vector{};
};

/// Four eigenpairs sorted by (descending |value|, descending re, descending
/// im).  Pairs that share a clustered eigenvalue carry the identical value.
template <typename T>
struct EigenSystem {
    std::array<EigenPair<T>, 4> pairs{};
    bool defect_flag = false;     // some geometric multiplicity < algebraic
    T residual = T(0);            // max ||M v - lambda v|| / ||M||_F over eigenvectors
    bool ill_conditioned = false; // residual above 1e-6
};

/// Monic characteristic polynomial coefficients (1, c3, c2, c1, c0) of
/// lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0, by Faddeev-LeVerrier.
template <typename T>
std::array<T, 5> char_poly(const Mat4<T>& M) {
    const Mat4<T> I = Mat4<T>::identity();
    Mat4<T> Mk = M;
    const T c1 = -trace(Mk);
    Mk = M * (Mk + c1 * I);
    const T c2 = -trace(Mk) / T(2);
    Mk = M * (Mk + c2 * I);
    const T c3 = -trace(Mk) / T(3);
    Mk = M * (Mk + c3 * I);
    const T c4 = -trace(Mk) / T(4);
    return {T(1), c1, c2, c3, c4};
}

namespace detail {

/// Real roots of x^3 + b x^2 + c x + d.  Returns the count (1 or 3).
template <typename T>
int cubic_real_roots(T b, T c, T d, std::array<T, 3>& out) {
    const T p = c - b * b / T(3);
    const T q = T(2) * b * b * b / T(27) - b * c / T(3) + d;
    const T disc = q * q / T(4) + p * p * p / T(27);
    int n = 0;
    if (disc > T(0)) {
        const T sq = std::sqrt(disc);
        out[n++] = std::cbrt(-q / T(2) + sq) + std::cbrt(-q / T(2) - sq) - b / T(3);
    } else {
        const T r = std::sqrt(std::max(-p / T(3), T(0)));
        if (r == T(0)) {
            out[n++] = -b / T(3);
        } else {
            const T arg = std::clamp(-q / (T(2) * r * r * r), T(-1), T(1));
            const T phi = std::acos(arg);
            for (int k = 0; k < 3; ++k)
                out[n++] = T(2) * r * std::cos((phi - T(2) * std::numbers::pi_v<T> * k) / T(3)) - b / T(3);
        }
    }
    return n;
}

template <typename T>
Complex<T> horner(const std::array<T, 5>& c, Complex<T> x) {
    Complex<T> r(c[0]);
    for (int i = 1; i < 5; ++i) r = r * x + c[i];
    return r;
}

template <typename T>
Complex<T> horner_deriv(const std::array<T, 5>& c, Complex<T> x) {
    Complex<T> r(T(4) * c[0]);
    r = r * x + T(3) * c[1];
    r = r * x + T(2) * c[2];
    return r * x + c[3];
}

} // namespace detail

/// All four complex roots of a monic quartic.  Ferrari's method through the
/// resolvent cubic, then guarded Newton polishing and exact conjugate pairing.
template <typename T>
std::array<Complex<T>, 4> solve_quartic(const std::array<T, 5>& coeffs) {
    if (std::abs(coeffs[0] - T(1)) > T(1e-9))
        throw std::invalid_argument("solve_quartic: leading coefficient must be 1");
    const T b = coeffs[1], c = coeffs[2], d = coeffs[3], e = coeffs[4];
    const T p = c - T(3) * b * b / T(8);
    const T q = d - b * c / T(2) + b * b * b / T(8);
    const T r = e - b * d / T(4) + b * b * c / T(16) - T(3) * b * b * b * b / T(256);

    std::array<Complex<T>, 4> ys;
    const T s_est = std::max({std::sqrt(std::abs(p)), std::pow(std::abs(r), T(0.25)),
                              std::cbrt(std::abs(q))});
    if (s_est == T(0) || std::abs(q) <= T(64) * std::numeric_limits<T>::epsilon() * s_est * s_est * s_est) {
        // biquadratic: y^2 = (-p +- sqrt(p^2 - 4r)) / 2
        const Complex<T> dsc = std::sqrt(Complex<T>(p * p - T(4) * r));
        const Complex<T> z0 = (-p + dsc) / T(2);
        const Complex<T> z1 = (-p - dsc) / T(2);
        ys[0] = std::sqrt(z0);
        ys[1] = -ys[0];
        ys[2] = std::sqrt(z1);
        ys[3] = -ys[2];
    } else {
        // resolvent u^3 + 2p u^2 + (p^2 - 4r) u - q^2 = 0; u = alpha^2
        std::array<T, 3> cand;
        const int n = detail::cubic_real_roots(T(2) * p, p * p - T(4) * r, -q * q, cand);
        T u = T(0);
        for (int i = 0; i < n; ++i)
            if (cand[i] > u) u = cand[i];
        if (u == T(0)) u = std::abs(cand[0]);
        const T alpha = std::sqrt(u);
        const T beta = (p + u - q / alpha) / T(2);
        const T gamma = (p + u + q / alpha) / T(2);
        // (y^2 + alpha y + beta)(y^2 - alpha y + gamma)
        const Complex<T> d0 = std::sqrt(Complex<T>(alpha * alpha - T(4) * beta));
        const Complex<T> d1 = std::sqrt(Complex<T>(alpha * alpha - T(4) * gamma));
        ys[0] = (-alpha + d0) / T(2);
        ys[1] = (-alpha - d0) / T(2);
        ys[2] = (alpha + d1) / T(2);
        ys[3] = (alpha - d1) / T(2);
    }

    std::array<Complex<T>, 4> roots;
    for (int i = 0; i < 4; ++i) roots[i] = ys[i] - b / T(4);

    // Guarded Newton polish: keep a step only if |f| strictly decreases.
    for (auto& z : roots) {
        T fz = std::abs(detail::horner(coeffs, z));
        for (int it = 0; it < 3; ++it) {
            const Complex<T> dz = detail::horner_deriv(coeffs, z);
            if (std::abs(dz) == T(0)) break;
            const Complex<T> zn = z - detail::horner(coeffs, z) / dz;
            const T fn = std::abs(detail::horner(coeffs, zn));
            if (fn < fz) {
                z = zn;
                fz = fn;
            } else {
                break;
            }
        }
    }

    // Conjugate symmetry: average matched pairs, mirror exactly.
    std::array<bool, 4> used{};
    for (int i = 0; i < 4; ++i) {
        if (used[i] || roots[i].imag() <= T(0)) continue;
        int best = -1;
        T bd = std::numeric_limits<T>::infinity();
        for (int j = 0; j < 4; ++j) {
            if (j == i || used[j] || roots[j].imag() > T(0)) continue;
            const T dist = std::abs(std::conj(roots[i]) - roots[j]);
            if (dist < bd) {
                bd = dist;
                best = j;
            }
        }
        if (best >= 0) {
            const Complex<T> z = (roots[i] + std::conj(roots[best])) / T(2);
            roots[i] = z;
            roots[best] = std::conj(z);
            used[i] = used[best] = true;
        }
    }
    return roots;
}

namespace detail {

template <typename T>
using CMat4 = std::array<Complex<T>, 16>;

template <typename T>
CMat4<T> cmat_from(const Mat4<T>& M) {
    CMat4<T> C;
    for (std::size_t i = 0; i < 16; ++i) C[i] = Complex<T>(M.m[i]);
    return C;
}

template <typename T>
CMat4<T> shifted(const Mat4<T>& M, Complex<T> lam) {
    CMat4<T> C = cmat_from(M);
    for (std::size_t i = 0; i < 4; ++i) C[5 * i] -= lam;
    return C;
}

template <typename T>
CMat4<T> adjoint(const CMat4<T>& A) {
    CMat4<T> R;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) R[4 * i + j] = std::conj(A[4 * j + i]);
    return R;
}

template <typename T>
CMat4<T> cmul(const CMat4<T>& A, const CMat4<T>& B) {
    CMat4<T> R{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            const Complex<T> a = A[4 * i + k];
            for (std::size_t j = 0; j < 4; ++j) R[4 * i + j] += a * B[4 * k + j];
        }
    return R;
}

template <typename T>
CVec4<T> cmatvec(const CMat4<T>& A, const CVec4<T>& x) {
    CVec4<T> r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) r[i] += A[4 * i + k] * x[k];
    return r;
}

template <typename T>
Complex<T> cdot(const CVec4<T>& a, const CVec4<T>& b) { // conjugate-linear in a
    Complex<T> s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

template <typename T>
T cnorm(const CVec4<T>& a) {
    T s = T(0);
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
}

template <typename T>
struct NullBasis {
    std::array<CVec4<T>, 4> vec{};
    int count = 0;
    std::array<T, 4> pivots{}; // magnitudes, non-increasing
};

/// Null-space basis of a complex 4x4 by Gaussian elimination with full
/// pivoting.  `want` vectors are forced out of the smallest pivots; the pivot
/// magnitudes allow a threshold-based rank decision by the caller.
template <typename T>
NullBasis<T> null_space_forced(CMat4<T> U, int want) {
    NullBasis<T> out;
    std::array<int, 4> colp = {0, 1, 2, 3};
    std::array<T, 4>& piv = out.pivots;
    int steps = 0;
    for (int step = 0; step < 4; ++step) {
        int pi = step, pj = step;
        T best = T(-1);
        for (int i = step; i < 4; ++i)
            for (int j = step; j < 4; ++j)
                if (std::abs(U[4 * i + j]) > best) {
                    best = std::abs(U[4 * i + j]);
                    pi = i;
                    pj = j;
                }
        piv[step] = best;
        if (best == T(0)) break;
        steps = step + 1;
        if (pi != step)
            for (int j = 0; j < 4; ++j) std::swap(U[4 * step + j], U[4 * pi + j]);
        if (pj != step) {
            for (int i = 0; i < 4; ++i) std::swap(U[4 * i + step], U[4 * i + pj]);
            std::swap(colp[step], colp[pj]);
        }
        for (int r = step + 1; r < 4; ++r) {
            const Complex<T> f = U[4 * r + step] / U[4 * step + step];
            U[4 * r + step] = Complex<T>(T(0));
            for (int j = step + 1; j < 4; ++j) U[4 * r + j] -= f * U[4 * step + j];
        }
    }
    int rank = 4 - want;
    while (rank > steps) --rank;
    if (rank < 0) rank = 0;
    for (int free = rank; free < 4 && out.count < want; ++free) {
        CVec4<T> x{};
        x[free] = Complex<T>(T(1));
        for (int r = rank - 1; r >= 0; --r) {
            Complex<T> s{};
            for (int c = r + 1; c < 4; ++c) s += U[4 * r + c] * x[c];
            x[r] = -s / U[4 * r + r];
        }
        CVec4<T> y{};
        for (int i = 0; i < 4; ++i) y[colp[i]] = x[i];
        // modified Gram-Schmidt against accepted vectors
        for (int k = 0; k < out.count; ++k) {
            const Complex<T> pr = cdot(out.vec[k], y);
            for (int i = 0; i < 4; ++i) y[i] -= pr * out.vec[k][i];
        }
        const T n = cnorm(y);
        if (n > T(1e-12)) {
            for (auto& yi : y) yi /= n;
            out.vec[out.count++] = y;
        }
    }
    return out;
}

/// Number of pivots at or below rel_cut of the largest (a numerical nullity).
template <typename T>
int threshold_nullity(const std::array<T, 4>& piv, T rel_cut) {
    if (piv[0] == T(0)) return 4;
    int k = 0;
    for (T x : piv)
        if (x <= rel_cut * piv[0]) ++k;
    return k;
}

/// Solve the m x m complex system G X = H in place; false when G is singular.
template <typename T>
bool small_solve(std::vector<Complex<T>>& G, std::vector<Complex<T>>& H, int m) {
    for (int k = 0; k < m; ++k) {
        int p = k;
        for (int i = k + 1; i < m; ++i)
            if (std::abs(G[i * m + k]) > std::abs(G[p * m + k])) p = i;
        if (std::abs(G[p * m + k]) < T(1e-14)) return false;
        if (p != k)
            for (int j = 0; j < m; ++j) {
                std::swap(G[k * m + j], G[p * m + j]);
                std::swap(H[k * m + j], H[p * m + j]);
            }
        for (int i = k + 1; i < m; ++i) {
            const Complex<T> f = G[i * m + k] / G[k * m + k];
            for (int j = k; j < m; ++j) G[i * m + j] -= f * G[k * m + j];
            for (int j = 0; j < m; ++j) H[i * m + j] -= f * H[k * m + j];
        }
    }
    for (int k = m - 1; k >= 0; --k)
        for (int j = 0; j < m; ++j) {
            Complex<T> s = H[k * m + j];
            for (int c = k + 1; c < m; ++c) s -= G[k * m + c] * H[c * m + j];
            H[k * m + j] = s / G[k * m + k];
        }
    return true;
}

template <typename T>
struct Cluster {
    Complex<T> value{};
    int mult = 0;
    bool real_enforced = false;
    std::array<CVec4<T>, 4> vec{};
    int nvec = 0;
    int eigen_count = 0; // leading vectors that are genuine eigenvectors
    bool defective = false;
};

/// Refine a cluster value with two-sided block Rayleigh quotients and extract
/// its (forced-dimension) eigenbasis.
template <typename T>
void refine_cluster(const Mat4<T>& M, T nrm, Cluster<T>& cl) {
    const int m = cl.mult;
    Complex<T> lam = cl.value;
    const CMat4<T> CM = cmat_from(M);

    auto extract = [&](Complex<T> l) {
        return null_space_forced<T>(shifted(M, l), m);
    };
    auto residual_of = [&](const NullBasis<T>& B, Complex<T> l) {
        T worst = T(0);
        for (int k = 0; k < B.count; ++k) {
            CVec4<T> r = cmatvec(CM, B.vec[k]);
            for (int i = 0; i < 4; ++i) r[i] -= l * B.vec[k][i];
            worst = std::max(worst, cnorm(r));
        }
        return worst;
    };

    NullBasis<T> best_basis = extract(lam);
    T best_res = residual_of(best_basis, lam);
    Complex<T> best_lam = lam;

    for (int it = 0; it < 6 && best_res > T(1e-14) * nrm; ++it) {
        const NullBasis<T> V = extract(lam);
        const NullBasis<T> U = null_space_forced<T>(adjoint(shifted(M, lam)), m);
        if (V.count < m || U.count < m) break;
        std::vector<Complex<T>> G(m * m), H(m * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                G[i * m + j] = cdot(U.vec[i], V.vec[j]);
                H[i * m + j] = cdot(U.vec[i], cmatvec(CM, V.vec[j]));
            }
        if (!small_solve<T>(G, H, m)) break;
        Complex<T> lam2{};
        for (int i = 0; i < m; ++i) lam2 += H[i * m + i];
        lam2 /= T(m);
        if (!std::isfinite(lam2.real()) || !std::isfinite(lam2.imag())) break;
        if (cl.real_enforced && std::abs(lam2.imag()) <= T(1e-7) * (std::abs(lam2) + nrm))
            lam2 = Complex<T>(lam2.real(), T(0));
        if (std::abs(lam2 - lam) > T(0.5) * (nrm + std::abs(lam))) break;
        lam = lam2;
        const NullBasis<T> B2 = extract(lam);
        const T r2 = residual_of(B2, lam);
        if (r2 < best_res) {
            best_res = r2;
            best_lam = lam;
            best_basis = B2;
        }
    }

    cl.value = best_lam;
    cl.nvec = 0;
    for (int k = 0; k < best_basis.count && k < m; ++k) cl.vec[cl.nvec++] = best_basis.vec[k];
    cl.eigen_count = cl.nvec;
    cl.defective = false;

    // Defect handling: keep the threshold-supported eigenvectors, fill the
    // remainder from the generalized null space of (M - lam I)^j.
    if (best_res > T(1e-8) * nrm && m > 1) {
        const NullBasis<T> probe = extract(best_lam);
        const int k_true = std::min(threshold_nullity(probe.pivots, T(1e-7)), m);
        if (k_true < m) {
            cl.defective = true;
            NullBasis<T> eig = null_space_forced<T>(shifted(M, best_lam), std::max(k_true, 1));
            cl.nvec = 0;
            for (int k = 0; k < eig.count; ++k) cl.vec[cl.nvec++] = eig.vec[k];
            cl.eigen_count = cl.nvec;
            CMat4<T> P = shifted(M, best_lam);
            CMat4<T> Pj = P;
            for (int j = 0; j < 3 && cl.nvec < m; ++j) {
                Pj = cmul(Pj, P);
                const NullBasis<T> gen = null_space_forced<T>(Pj, m);
                for (int g = 0; g < gen.count && cl.nvec < m; ++g) {
                    CVec4<T> y = gen.vec[g];
                    for (int k = 0; k < cl.nvec; ++k) {
                        const Complex<T> pr = cdot(cl.vec[k], y);
                        for (int i = 0; i < 4; ++i) y[i] -= pr * cl.vec[k][i];
                    }
                    const T n = cnorm(y);
                    if (n > T(1e-8)) {
                        for (auto& yi : y) yi /= n;
                        cl.vec[cl.nvec++] = y;
                    }
                }
            }
            while (cl.nvec < m && cl.nvec > 0) {
                cl.vec[cl.nvec] = cl.vec[cl.nvec - 1];
                ++cl.nvec;
            }
        }
    }
}

/// Deterministic phase: unit norm with the first significant component made
/// real and positive.
template <typename T>
void canonicalize_phase(CVec4<T>& v) {
    const T n = cnorm(v);
    if (n == T(0)) return;
    for (auto& x : v) x /= n;
    T amax = T(0);
    for (const auto& x : v) amax = std::max(amax, std::abs(x));
    for (const auto& x : v) {
        if (std::abs(x) >= T(1e-8) * amax) {
            const Complex<T> ph = std::conj(x) / std::abs(x);
            for (auto& y : v) y *= ph;
            break;
        }
    }
}

} // namespace detail

/// Full eigen-decomposition of a real 4x4 matrix.  Eigenvalues clustered
/// within 1e-6 (relative) are treated as one multiple eigenvalue and share a
/// jointly extracted eigenspace; defect_flag reports geometric deficiency.
template <typename T>
EigenSystem<T> eigen_decompose(const Mat4<T>& M, const Tolerance<T>& tol = {}) {
    (void)tol;
    using C = Complex<T>;
    const T nrm = frobenius_norm(M);
    if (nrm == T(0)) throw std::invalid_argument("eigen_decompose: zero matrix");

    const auto roots = solve_quartic(char_poly(M));
    T scale = T(0);
    for (const auto& z : roots) scale = std::max(scale, std::abs(z));
    if (scale == T(0)) scale = T(1);
    const T ctol = T(1e-6) * scale;

    // initial clustering of the quartic roots
    std::vector<detail::Cluster<T>> cls;
    {
        std::vector<std::vector<int>> groups;
        for (int i = 0; i < 4; ++i) {
            bool placed = false;
            for (auto& g : groups)
                if (std::abs(roots[i] - roots[g[0]]) <= ctol) {
                    g.push_back(i);
                    placed = true;
                    break;
                }
            if (!placed) groups.push_back({i});
        }
        for (const auto& g : groups) {
            detail::Cluster<T> cl;
            C mean{};
            for (int i : g) mean += roots[i];
            mean /= T(g.size());
            bool conj_closed = true;
            for (int i : g) {
                bool found = false;
                for (int j : g)
                    if (std::abs(std::conj(roots[i]) - roots[j]) <= T(2) * ctol) found = true;
                conj_closed = conj_closed && found;
            }
            if (conj_closed && std::abs(mean.imag()) <= ctol) {
                mean = C(mean.real(), T(0));
                cl.real_enforced = true;
            }
            cl.value = mean;
            cl.mult = static_cast<int>(g.size());
            cls.push_back(cl);
        }
    }

    // Refine every cluster, mirroring across conjugate partners so the output
    // stays exactly conjugate-symmetric; merge clusters whose refined values
    // collapse onto each other and go again.
    for (int round = 0; round < 4; ++round) {
        std::vector<int> partner(cls.size(), -1);
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (cls[i].value.imag() <= ctol || partner[i] >= 0) continue;
            for (std::size_t j = 0; j < cls.size(); ++j) {
                if (j == i || partner[j] >= 0) continue;
                if (cls[j].mult == cls[i].mult &&
                    std::abs(std::conj(cls[i].value) - cls[j].value) <= T(2) * ctol) {
                    partner[i] = static_cast<int>(j);
                    partner[j] = static_cast<int>(i);
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (partner[i] >= 0 && cls[i].value.imag() < T(0)) continue; // mirrored below
            detail::refine_cluster(M, nrm, cls[i]);
        }
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (partner[i] < 0 || cls[i].value.imag() >= T(0)) continue;
            const auto& src = cls[partner[i]];
            cls[i].value = std::conj(src.value);
            cls[i].nvec = src.nvec;
            cls[i].eigen_count = src.eigen_count;
            cls[i].defective = src.defective;
            for (int k = 0; k < src.nvec; ++k)
                for (int m = 0; m < 4; ++m) cls[i].vec[k][m] = std::conj(src.vec[k][m]);
        }
        // transitive merge of collapsed clusters
        bool merged = false;
        for (std::size_t i = 0; i < cls.size(); ++i) {
            for (std::size_t j = i + 1; j < cls.size();) {
                if (std::abs(cls[i].value - cls[j].value) <= ctol) {
                    const int mi = cls[i].mult, mj = cls[j].mult;
                    cls[i].value = (T(mi) * cls[i].value + T(mj) * cls[j].value) / T(mi + mj);
                    cls[i].mult = mi + mj;
                    if (cls[i].real_enforced || cls[j].real_enforced ||
                        std::abs(cls[i].value.imag()) <= ctol) {
                        cls[i].value = C(cls[i].value.real(), T(0));
                        cls[i].real_enforced = true;
                    }
                    cls.erase(cls.begin() + j);
                    merged = true;
                } else {
                    ++j;
                }
            }
        }
        if (!merged) break;
    }

    EigenSystem<T> out;
    int slot = 0;
    T resid = T(0);
    const detail::CMat4<T> CM = detail::cmat_from(M);
    for (auto& cl : cls) {
        out.defect_flag = out.defect_flag || cl.defective;
        for (int k = 0; k < cl.mult && slot < 4; ++k) {
            const int kk = std::max(0, std::min(k, cl.nvec - 1));
            EigenPair<T> pr;
            pr.value = cl.value;
            pr.vector = cl.vec[kk];
            detail::canonicalize_phase(pr.vector);
            out.pairs[slot++] = pr;
        }
        // residual over the genuinely eigen vectors only
        for (int k = 0; k < cl.eigen_count; ++k) {
            CVec4<T> r = detail::cmatvec(CM, cl.vec[k]);
            for (int i = 0; i < 4; ++i) r[i] -= cl.value * cl.vec[k][i];
            resid = std::max(resid, detail::cnorm(r) / nrm);
        }
    }

    std::stable_sort(out.pairs.begin(), out.pairs.end(),
                     [](const EigenPair<T>& a, const EigenPair<T>& b) {
                         const T ma = std::abs(a.value), mb = std::abs(b.value);
                         if (ma != mb) return ma > mb;
                         if (a.value.real() != b.value.real())
                             return a.value.real() > b.value.real();
                         return a.value.imag() > b.value.imag();
                     });

    out.residual = resid;
    out.ill_conditioned = resid > T(1e-6);
    return out;
}

} // namespace homrot
