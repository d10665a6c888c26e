#pragma once

// The twelve elementary projective transformations determined by a center
// point S and a hyperplane pi through rank-one updates of the identity,
// plus the classifier that recovers (S, pi) and the row from a matrix.

#include <string>

#include "eigen4.hpp"
#include "projective.hpp"

namespace homrot {

enum class StereoClass {
    Identity = 0,
    CentralProjection = 1,
    ParallelProjection = 2,
    Direction = 3,
    SpaceHomology = 4,
    ElementaryScaling = 5,
    CentralDilation = 6,
    InvolutorySpaceHomology = 7,
    Reflection = 8,
    CentralSymmetry = 9,
    SpaceElation = 10,
    Shearing = 11,
    Translation = 12,
    NotStereohomology = 13,
};

inline const char* to_string(StereoClass c) {
    switch (c) {
        case StereoClass::Identity: return "Identity";
        case StereoClass::CentralProjection: return "CentralProjection";
        case StereoClass::ParallelProjection: return "ParallelProjection";
        case StereoClass::Direction: return "Direction";
        case StereoClass::SpaceHomology: return "SpaceHomology";
        case StereoClass::ElementaryScaling: return "ElementaryScaling";
        case StereoClass::CentralDilation: return "CentralDilation";
        case StereoClass::InvolutorySpaceHomology: return "InvolutorySpaceHomology";
        case StereoClass::Reflection: return "Reflection";
        case StereoClass::CentralSymmetry: return "CentralSymmetry";
        case StereoClass::SpaceElation: return "SpaceElation";
        case StereoClass::Shearing: return "Shearing";
        case StereoClass::Translation: return "Translation";
        case StereoClass::NotStereohomology: return "NotStereohomology";
    }
    return "?";
}

/// Table row number 1..12, or 0 when the class is not an elementary row.
inline int row_id(StereoClass c) {
    const int v = static_cast<int>(c);
    return (v >= 1 && v <= 12) ? v : 0;
}

/// Center, hyperplane and the scalar parameters of an elementary
/// transformation.  rho only applies to scaling rows, mu to shear rows.
template <typename T>
struct StereoSpec {
    HomPoint<T> center;
    Hyperplane<T> plane;
    T lambda = T(1);
    T rho = T(1);
    T mu = T(0);
};

namespace detail {

template <typename T>
T center_plane_product(const HomPoint<T>& s, const Hyperplane<T>& pi) {
    return dot(s.coords, pi.coeffs);
}

template <typename T>
void require_center_off_plane(const HomPoint<T>& s, const Hyperplane<T>& pi,
                              const Tolerance<T>& tol) {
    const T d = std::abs(center_plane_product(s, pi));
    if (d <= tol.rel * norm(s.coords) * norm(pi.coeffs))
        throw std::invalid_argument("stereohomology: center lies on the plane");
}

template <typename T>
void require_nonzero(T x, const char* what) {
    if (x == T(0)) throw std::invalid_argument(std::string("stereohomology: ") + what);
}

} // namespace detail

/// Rows 1-3: lambda*I - lambda*(s pi^T)/(s^T pi).  Singular of rank 3; fixes
/// pi pointwise and projects s to the indeterminate point.
template <typename T>
Mat4<T> make_projection(const HomPoint<T>& s, const Hyperplane<T>& pi, T lambda = T(1),
                        const Tolerance<T>& tol = {}) {
    detail::require_nonzero(lambda, "lambda must be nonzero");
    detail::require_center_off_plane(s, pi, tol);
    const T sp = detail::center_plane_product(s, pi);
    return lambda * Mat4<T>::identity() - (lambda / sp) * Mat4<T>::outer(s.coords, pi.coeffs);
}

/// Rows 4-6: lambda*I + (rho - lambda)*(s pi^T)/(s^T pi).  Eigenvalue lambda
/// on pi (multiplicity 3) and rho on s.
template <typename T>
Mat4<T> make_scaling(const HomPoint<T>& s, const Hyperplane<T>& pi, T rho, T lambda = T(1),
                     const Tolerance<T>& tol = {}) {
    detail::require_nonzero(lambda, "lambda must be nonzero");
    detail::require_nonzero(rho, "rho must be nonzero");
    detail::require_center_off_plane(s, pi, tol);
    const T sp = detail::center_plane_product(s, pi);
    return lambda * Mat4<T>::identity() +
           ((rho - lambda) / sp) * Mat4<T>::outer(s.coords, pi.coeffs);
}

/// Rows 7-9: lambda*I - 2*lambda*(s pi^T)/(s^T pi).  Involutory up to scale;
/// fixes pi pointwise and negates s.
template <typename T>
Mat4<T> make_reflection(const HomPoint<T>& s, const Hyperplane<T>& pi, T lambda = T(1),
                        const Tolerance<T>& tol = {}) {
    detail::require_nonzero(lambda, "lambda must be nonzero");
    detail::require_center_off_plane(s, pi, tol);
    const T sp = detail::center_plane_product(s, pi);
    return lambda * Mat4<T>::identity() -
           (T(2) * lambda / sp) * Mat4<T>::outer(s.coords, pi.coeffs);
}

/// Orthographic reflection in an ordinary plane: the center is the infinite
/// point along the plane normal (Table row 8).
template <typename T>
Mat4<T> make_orthographic_reflection(const Hyperplane<T>& pi, const Tolerance<T>& tol = {}) {
    const Vec4<T>& c = pi.coeffs;
    const HomPoint<T> s = HomPoint<T>::direction(c[0], c[1], c[2]);
    return make_reflection(s, pi, T(1), tol);
}

/// Rows 10-12 (center on the plane): lambda*I + mu*(s pi^T)/sqrt(s^T s pi^T pi).
/// All eigenvalues lambda, (M - lambda I)^2 = 0.
template <typename T>
Mat4<T> make_shear(const HomPoint<T>& s, const Hyperplane<T>& pi, T lambda = T(1), T mu = T(1),
                   const Tolerance<T>& tol = {}) {
    detail::require_nonzero(lambda, "lambda must be nonzero");
    const T sp = std::abs(detail::center_plane_product(s, pi));
    const T ns = norm(s.coords), np = norm(pi.coeffs);
    if (sp > tol.rel * ns * np)
        throw std::invalid_argument("stereohomology: center must lie on the plane");
    return lambda * Mat4<T>::identity() + (mu / (ns * np)) * Mat4<T>::outer(s.coords, pi.coeffs);
}

/// Classification outcome with the recovered spec (canonical-scale
/// representatives; sign-fixed unit center and plane).
template <typename T>
struct StereoResult {
    StereoClass cls = StereoClass::NotStereohomology;
    int row = 0;
    StereoSpec<T> recovered{};
    T residual = T(0); // projective distance between the input and the rebuilt matrix
};

namespace detail {

/// Pivot magnitudes of a real 4x4 under full-pivot elimination.
template <typename T>
std::array<T, 4> real_pivots(const Mat4<T>& A) {
    CMat4<T> C = cmat_from(A);
    const NullBasis<T> nb = null_space_forced<T>(C, 1);
    return nb.pivots;
}

template <typename T>
void sign_canonicalize(Vec4<T>& v) {
    T amax = max_abs(v);
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(v[i]) >= T(1e-8) * amax) {
            if (v[i] < T(0)) v = T(-1) * v;
            return;
        }
    }
}

} // namespace detail

/// Decide which Table row (if any) a matrix represents and recover its
/// center, plane and scalars.  Works on the canonical-scale representative.
template <typename T>
StereoResult<T> classify_stereo(const Mat4<T>& M, const Tolerance<T>& tol = {}) {
    StereoResult<T> out;
    const Mat4<T> C = canonical(M, tol);
    const T amax = max_abs(C);
    const auto cp = char_poly(C);

    // Candidate repeated eigenvalues: the all-equal case uses tr/4 (exact for
    // quadruple roots); the triple+single case uses the roots of p'', of
    // which the triple eigenvalue is a simple root.
    std::array<T, 3> cand{trace(C) / T(4), T(0), T(0)};
    int ncand = 1;
    {
        const T qa = T(12), qb = T(6) * cp[1], qc = T(2) * cp[2];
        const T disc = qb * qb - T(4) * qa * qc;
        if (disc >= T(0)) {
            const T sq = std::sqrt(disc);
            cand[ncand++] = (-qb + sq) / (T(2) * qa);
            cand[ncand++] = (-qb - sq) / (T(2) * qa);
        }
    }

    T best_score = std::numeric_limits<T>::infinity();
    T lambda = T(0);
    for (int i = 0; i < ncand; ++i) {
        const Mat4<T> D = C - cand[i] * Mat4<T>::identity();
        const auto piv = detail::real_pivots(D);
        if (piv[0] <= T(1e-12) * amax) {
            out.cls = StereoClass::Identity;
            out.recovered.lambda = cand[i];
            return out;
        }
        const T score = piv[1] / piv[0];
        if (score < best_score) {
            best_score = score;
            lambda = cand[i];
        }
    }
    if (best_score > T(1e-7)) return out; // rank(M - lambda I) > 1 for every candidate

    const Mat4<T> D = C - lambda * Mat4<T>::identity();

    // rank-one factorization D = kappa * u v^T via the dominant column
    Vec4<T> u{};
    {
        T bestn = T(-1);
        for (std::size_t j = 0; j < 4; ++j) {
            Vec4<T> col{D(0, j), D(1, j), D(2, j), D(3, j)};
            if (norm(col) > bestn) {
                bestn = norm(col);
                u = col;
            }
        }
        u = (T(1) / norm(u)) * u;
    }
    Vec4<T> v = transpose(D) * u;
    v = (T(1) / norm(v)) * v;
    detail::sign_canonicalize(u);
    detail::sign_canonicalize(v);
    const T kappa = dot(u, D * v);

    const T uv = dot(u, v);
    const T rho_other = trace(C) - T(3) * lambda; // fourth eigenvalue for rows 1-9

    const Tolerance<T> highm{T(1e-7), tol.abs};
    HomPoint<T> s(u);
    Hyperplane<T> pi(v);
    const bool s_inf = s.is_infinite(highm);
    const bool pi_inf = pi.is_infinite(highm);

    Mat4<T> rebuilt;
    if (std::abs(uv) <= T(1e-7)) {
        // nilpotent rank-one update: elation / shearing / translation
        out.cls = pi_inf ? StereoClass::Translation
                         : (s_inf ? StereoClass::Shearing : StereoClass::SpaceElation);
        out.recovered = {s, pi, lambda, T(1), kappa};
        rebuilt = make_shear(s, pi, lambda, kappa, tol);
    } else if (std::abs(rho_other) <= T(1e-7) * std::max(std::abs(lambda), T(1))) {
        // singular: projections and the direction map
        out.cls = pi_inf ? StereoClass::Direction
                         : (s_inf ? StereoClass::ParallelProjection
                                  : StereoClass::CentralProjection);
        out.recovered = {s, pi, lambda, T(1), T(0)};
        rebuilt = make_projection(s, pi, lambda, tol);
    } else if (std::abs(rho_other + lambda) <=
               T(1e-7) * std::max(std::abs(lambda), std::abs(rho_other))) {
        // involutory: reflections and central symmetry
        const Mat4<T> C2 = C * C;
        const T offd = detail::mat_proj_residual(C2, Mat4<T>::identity());
        if (offd > T(1e-7)) return out;
        out.cls = pi_inf ? StereoClass::CentralSymmetry
                         : (s_inf ? StereoClass::Reflection
                                  : StereoClass::InvolutorySpaceHomology);
        out.recovered = {s, pi, lambda, -lambda, T(0)};
        rebuilt = make_reflection(s, pi, lambda, tol);
    } else {
        const T rho = lambda + kappa * uv;
        out.cls = pi_inf ? StereoClass::CentralDilation
                         : (s_inf ? StereoClass::ElementaryScaling : StereoClass::SpaceHomology);
        out.recovered = {s, pi, lambda, rho, T(0)};
        rebuilt = make_scaling(s, pi, rho, lambda, tol);
    }

    out.residual = detail::mat_proj_residual(C, rebuilt);
    if (!(out.residual <= T(1e-7))) {
        out.cls = StereoClass::NotStereohomology;
        out.row = 0;
        return out;
    }
    out.row = row_id(out.cls);
    return out;
}

} // namespace homrot
