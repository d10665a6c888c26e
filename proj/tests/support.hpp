#pragma once

// Shared test helpers: deterministic random generators (hand-rolled uniforms
// so results do not depend on the standard library) and reference
// constructions that are independent of the library code paths they check.

#include <cstdint>
#include <random>

#include <homrot/homrot.hpp>

namespace testsup {

using T = double;
using namespace homrot;

inline T uniform(std::mt19937_64& rng, T lo, T hi) {
    const T u = static_cast<T>(rng() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
}

inline Vec4<T> random_unit_dir(std::mt19937_64& rng) {
    T a, b, c, n2;
    do {
        a = uniform(rng, -1, 1);
        b = uniform(rng, -1, 1);
        c = uniform(rng, -1, 1);
        n2 = a * a + b * b + c * c;
    } while (n2 > T(1) || n2 < T(1e-4));
    const T n = std::sqrt(n2);
    return {a / n, b / n, c / n, T(0)};
}

inline HomPoint<T> random_point(std::mt19937_64& rng, T extent = 10) {
    return HomPoint<T>::point(uniform(rng, -extent, extent), uniform(rng, -extent, extent),
                              uniform(rng, -extent, extent));
}

inline RotationSpec<T> random_spec(std::mt19937_64& rng, T min_theta = T(5e-3)) {
    const Vec4<T> d = random_unit_dir(rng);
    T theta;
    do {
        theta = uniform(rng, -std::numbers::pi, std::numbers::pi);
    } while (std::abs(theta) < min_theta);
    return RotationSpec<T>{
        AxisByPointDir<T>(random_point(rng), HomPoint<T>(d)), theta};
}

/// Column-convention Givens rotation about z (transpose of the row form).
inline Mat4<T> givens_z(T theta) {
    Mat4<T> G = Mat4<T>::identity();
    G(0, 0) = std::cos(theta);
    G(0, 1) = -std::sin(theta);
    G(1, 0) = std::sin(theta);
    G(1, 1) = std::cos(theta);
    return G;
}

/// Independent oracle: classic 3x3 Rodrigues formula embedded homogeneously
/// and conjugated by translations.  Shares no code with rotation_rodrigues.
inline Mat4<T> classic_rodrigues_oracle(const Vec4<T>& p, const Vec4<T>& u, T theta) {
    const T c = std::cos(theta), s = std::sin(theta);
    T R3[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) R3[i][j] = (i == j ? c : T(0)) + (T(1) - c) * u[i] * u[j];
    R3[0][1] += -s * u[2];
    R3[0][2] += s * u[1];
    R3[1][0] += s * u[2];
    R3[1][2] += -s * u[0];
    R3[2][0] += -s * u[1];
    R3[2][1] += s * u[0];

    Mat4<T> H = Mat4<T>::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) H(i, j) = R3[i][j];
    Mat4<T> Tp = Mat4<T>::identity(), Tm = Mat4<T>::identity();
    for (int i = 0; i < 3; ++i) {
        Tp(i, 3) = p[i];
        Tm(i, 3) = -p[i];
    }
    return Tp * H * Tm;
}

/// The matrix with sqrt(3) and sqrt(35) entries: a rotation by pi/6 about the
/// axis through (-4,4,0,1) with direction (-5,3,1,0), carried at scale 70.
inline Mat4<T> golden_sqrt35_matrix() {
    const T s3 = std::sqrt(T(3)), s35 = std::sqrt(T(35));
    Mat4<T> E;
    const T e[16] = {50 + 10 * s3, -30 + 15 * s3 - s35, -10 + 5 * s3 + 3 * s35, 40 - 20 * s3 + 4 * s35,
                     -30 + 15 * s3 + s35, 18 + 26 * s3, 6 - 3 * s3 + 5 * s35, 88 - 44 * s3 + 4 * s35,
                     -10 + 5 * s3 - 3 * s35, 6 - 3 * s3 - 5 * s35, 2 + 34 * s3, -64 + 32 * s3 + 8 * s35,
                     0, 0, 0, 70};
    for (int i = 0; i < 16; ++i) E.m[i] = e[i];
    return E;
}

/// Row-vector-convention golden rotation about the axis through (2,1,5) and
/// (4,7,2), at scale 1/49; the transpose matches the column convention.
inline Mat4<T> golden_axis257_row_matrix(T th) {
    const T c = std::cos(th), s = std::sin(th);
    Mat4<T> E;
    const T e[16] = {45 * c + 4, 12 - 12 * c - 21 * s, 6 * c - 42 * s - 6, 0,
                     12 - 12 * c + 21 * s, 36 + 13 * c, 18 * c + 14 * s - 18, 0,
                     6 * c + 42 * s - 6, 18 * c - 14 * s - 18, 40 * c + 9, 0,
                     108 - 108 * c - 231 * s, 79 - 79 * c + 112 * s, 230 - 230 * c + 70 * s, 49};
    for (int i = 0; i < 16; ++i) E.m[i] = e[i] / T(49);
    return E;
}

/// Random elementary-transformation spec for a given table row, valid by
/// construction and safely away from degenerate parameter choices.
inline StereoSpec<T> random_stereo_spec(std::mt19937_64& rng, int row) {
    const T lambda = uniform(rng, 0.5, 2.0) * (uniform(rng, 0, 1) < 0.5 ? T(-1) : T(1));
    T rho = lambda * uniform(rng, 1.2, 3.0) * (uniform(rng, 0, 1) < 0.5 ? T(-1) : T(1));
    if (std::abs(std::abs(rho) - std::abs(lambda)) < T(0.1) * std::abs(lambda))
        rho = lambda * T(1.7);
    const T mu = uniform(rng, 0.3, 3.0) * (uniform(rng, 0, 1) < 0.5 ? T(-1) : T(1));

    const int kind = (row - 1) % 3; // 0: pi ord + S ord, 1: pi ord + S inf, 2: pi inf + S ord
    const bool on_plane = row >= 10;

    if (!on_plane) {
        if (kind == 2) {
            // infinite plane, ordinary center
            const Hyperplane<T> pi(0, 0, 0, uniform(rng, 0.5, 2.0));
            const HomPoint<T> s = random_point(rng, 5);
            return {s, pi, lambda, rho, mu};
        }
        Vec4<T> n = random_unit_dir(rng);
        const Hyperplane<T> pi(n[0], n[1], n[2], uniform(rng, -5, 5));
        if (kind == 1) {
            Vec4<T> u;
            do {
                u = random_unit_dir(rng);
            } while (std::abs(dot3(u, n)) < T(0.2)); // keep s^T pi away from zero
            return {HomPoint<T>(u), pi, lambda, rho, mu};
        }
        HomPoint<T> s = random_point(rng, 5);
        while (std::abs(dot(s.coords, pi.coeffs)) < T(0.3)) s = random_point(rng, 5);
        return {s, pi, lambda, rho, mu};
    }

    // rows 10-12: center on the plane
    if (row == 12) {
        const Hyperplane<T> pi(0, 0, 0, uniform(rng, 0.5, 2.0));
        return {HomPoint<T>(random_unit_dir(rng)), pi, lambda, rho, mu};
    }
    Vec4<T> n = random_unit_dir(rng);
    const T d = uniform(rng, -5, 5);
    const Hyperplane<T> pi(n[0], n[1], n[2], d);
    if (row == 11) {
        // infinite center in the plane: direction orthogonal to the normal
        Vec4<T> u = random_unit_dir(rng);
        Vec4<T> w = cross3(n, u);
        while (norm3(w) < T(0.2)) {
            u = random_unit_dir(rng);
            w = cross3(n, u);
        }
        const T nw = norm3(w);
        return {HomPoint<T>(Vec4<T>{w[0] / nw, w[1] / nw, w[2] / nw, 0}), pi, lambda, rho, mu};
    }
    // row 10: ordinary point projected onto the plane
    const HomPoint<T> q = random_point(rng, 5);
    const T off = dot3(q.coords, n) + d;
    return {HomPoint<T>::point(q.coords[0] - off * n[0], q.coords[1] - off * n[1],
                               q.coords[2] - off * n[2]),
            pi, lambda, rho, mu};
}

inline Mat4<T> build_stereo(const StereoSpec<T>& sp, int row) {
    if (row <= 3) return make_projection(sp.center, sp.plane, sp.lambda);
    if (row <= 6) return make_scaling(sp.center, sp.plane, sp.rho, sp.lambda);
    if (row <= 9) return make_reflection(sp.center, sp.plane, sp.lambda);
    return make_shear(sp.center, sp.plane, sp.lambda, sp.mu);
}

/// Random rigid motion built from the library's own constructors:
/// a rotation about a random axis composed with a translation.
inline Mat4<T> random_rigid(std::mt19937_64& rng) {
    const RotationSpec<T> spec = random_spec(rng);
    const Mat4<T> R = rotation_rodrigues(spec);
    const Vec4<T> t = {uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5), T(0)};
    const T nt = norm3(t);
    const Mat4<T> Tr = make_shear(HomPoint<T>(Vec4<T>{t[0] / nt, t[1] / nt, t[2] / nt, 0}),
                                  Hyperplane<T>(0, 0, 0, 1), T(1), nt);
    return Tr * R;
}

} // namespace testsup
