#pragma once

// Homogeneous points, hyperplanes and scale-identified 4x4 matrices.
// Points are column vectors; transformations act by left multiplication.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace homrot {

/// Comparison tolerances: `rel` scales with the magnitude of the quantities
/// compared, `abs` is the floor.
template <typename T>
struct Tolerance {
    static_assert(std::is_floating_point_v<T>);
    T rel = T(1e-9);
    T abs = T(1e-12);

    Tolerance() = default;
    Tolerance(T rel_, T abs_) : rel(rel_), abs(abs_) {
        if (!(rel > T(0)) || !(abs > T(0)))
            throw std::invalid_argument("Tolerance: rel and abs must be positive");
    }
};

template <typename T>
struct Vec4 {
    static_assert(std::is_floating_point_v<T>);
    std::array<T, 4> v{};

    constexpr Vec4() = default;
    constexpr Vec4(T x1, T x2, T x3, T x4) : v{x1, x2, x3, x4} {}

    constexpr T& operator[](std::size_t i) { return v[i]; }
    constexpr const T& operator[](std::size_t i) const { return v[i]; }

    friend constexpr Vec4 operator+(const Vec4& a, const Vec4& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }
    friend constexpr Vec4 operator-(const Vec4& a, const Vec4& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    friend constexpr Vec4 operator*(T s, const Vec4& a) {
        return {s * a[0], s * a[1], s * a[2], s * a[3]};
    }
    friend constexpr Vec4 operator-(const Vec4& a) { return T(-1) * a; }
};

template <typename T>
constexpr T dot(const Vec4<T>& a, const Vec4<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Dot product of the spatial parts only.
template <typename T>
constexpr T dot3(const Vec4<T>& a, const Vec4<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Cross product of the spatial parts; the result carries w = 0.
template <typename T>
constexpr Vec4<T> cross3(const Vec4<T>& a, const Vec4<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0], T(0)};
}

template <typename T>
T norm(const Vec4<T>& a) {
    return std::sqrt(dot(a, a));
}

template <typename T>
T norm3(const Vec4<T>& a) {
    return std::sqrt(dot3(a, a));
}

template <typename T>
T max_abs(const Vec4<T>& a) {
    T m = T(0);
    for (T x : a.v) m = std::max(m, std::abs(x));
    return m;
}

/// Real 4x4 matrix in row-major storage.  Interpreted projectively (up to
/// nonzero scale) by the operations that say so.
template <typename T>
struct Mat4 {
    static_assert(std::is_floating_point_v<T>);
    std::array<T, 16> m{};

    constexpr T& operator()(std::size_t r, std::size_t c) { return m[4 * r + c]; }
    constexpr const T& operator()(std::size_t r, std::size_t c) const { return m[4 * r + c]; }

    static constexpr Mat4 identity() {
        Mat4 I;
        I(0, 0) = I(1, 1) = I(2, 2) = I(3, 3) = T(1);
        return I;
    }

    static constexpr Mat4 diag(T a, T b, T c, T d) {
        Mat4 D;
        D(0, 0) = a; D(1, 1) = b; D(2, 2) = c; D(3, 3) = d;
        return D;
    }

    /// Rank-one product s * pi^T.
    static constexpr Mat4 outer(const Vec4<T>& s, const Vec4<T>& pi) {
        Mat4 O;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) O(r, c) = s[r] * pi[c];
        return O;
    }

    friend constexpr Mat4 operator+(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (std::size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] + b.m[i];
        return r;
    }
    friend constexpr Mat4 operator-(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (std::size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
        return r;
    }
    friend constexpr Mat4 operator*(T s, const Mat4& a) {
        Mat4 r;
        for (std::size_t i = 0; i < 16; ++i) r.m[i] = s * a.m[i];
        return r;
    }
    friend constexpr Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                T s = T(0);
                for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }
    friend constexpr Vec4<T> operator*(const Mat4& a, const Vec4<T>& x) {
        Vec4<T> r;
        for (std::size_t i = 0; i < 4; ++i) {
            T s = T(0);
            for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * x[k];
            r[i] = s;
        }
        return r;
    }
};

template <typename T>
constexpr Mat4<T> transpose(const Mat4<T>& a) {
    Mat4<T> r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = a(j, i);
    return r;
}

template <typename T>
constexpr T trace(const Mat4<T>& a) {
    return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3);
}

template <typename T>
T frobenius_norm(const Mat4<T>& a) {
    T s = T(0);
    for (T x : a.m) s += x * x;
    return std::sqrt(s);
}

template <typename T>
T max_abs(const Mat4<T>& a) {
    T m = T(0);
    for (T x : a.m) m = std::max(m, std::abs(x));
    return m;
}

namespace detail {

/// LU decomposition with partial pivoting, in place.  Returns false when a
/// pivot falls below `pivot_tol` (matrix treated as singular).
template <typename T>
bool lu_decompose(Mat4<T>& a, std::array<std::size_t, 4>& perm, T pivot_tol, T& det) {
    perm = {0, 1, 2, 3};
    det = T(1);
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < 4; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (std::abs(a(p, k)) <= pivot_tol) return false;
        if (p != k) {
            for (std::size_t j = 0; j < 4; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < 4; ++i) {
            a(i, k) /= a(k, k);
            for (std::size_t j = k + 1; j < 4; ++j) a(i, j) -= a(i, k) * a(k, j);
        }
    }
    return true;
}

template <typename T>
Vec4<T> lu_solve(const Mat4<T>& lu, const std::array<std::size_t, 4>& perm, const Vec4<T>& b) {
    Vec4<T> y;
    for (std::size_t i = 0; i < 4; ++i) {
        T s = b[perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
        y[i] = s;
    }
    Vec4<T> x;
    for (std::size_t ii = 4; ii-- > 0;) {
        T s = y[ii];
        for (std::size_t j = ii + 1; j < 4; ++j) s -= lu(ii, j) * x[j];
        x[ii] = s / lu(ii, ii);
    }
    return x;
}

} // namespace detail

template <typename T>
T det(const Mat4<T>& a) {
    Mat4<T> lu = a;
    std::array<std::size_t, 4> perm;
    T d;
    if (!detail::lu_decompose(lu, perm, T(0), d)) return T(0);
    return d;
}

/// Inverse via partially pivoted LU.  Throws std::invalid_argument on a
/// (numerically) singular matrix.
template <typename T>
Mat4<T> inverse(const Mat4<T>& a, const Tolerance<T>& tol = {}) {
    Mat4<T> lu = a;
    std::array<std::size_t, 4> perm;
    T d;
    const T cut = tol.abs * std::max(max_abs(a), T(1)) * T(1e-3);
    if (!detail::lu_decompose(lu, perm, cut, d))
        throw std::invalid_argument("inverse: singular matrix");
    Mat4<T> inv;
    for (std::size_t c = 0; c < 4; ++c) {
        Vec4<T> e;
        e[c] = T(1);
        Vec4<T> x = detail::lu_solve(lu, perm, e);
        for (std::size_t r = 0; r < 4; ++r) inv(r, c) = x[r];
    }
    return inv;
}

/// Projective point in homogeneous coordinates (x1,x2,x3,x4); w = 0 encodes a
/// direction.  Never the zero vector.
template <typename T>
struct HomPoint {
    Vec4<T> coords{T(0), T(0), T(0), T(1)};

    HomPoint() = default;
    explicit HomPoint(const Vec4<T>& c) : coords(c) {
        if (max_abs(c) == T(0))
            throw std::invalid_argument("HomPoint: zero coordinate vector");
    }
    HomPoint(T x1, T x2, T x3, T x4) : HomPoint(Vec4<T>{x1, x2, x3, x4}) {}

    /// Ordinary point at cartesian position (x,y,z).
    static HomPoint point(T x, T y, T z) { return HomPoint(x, y, z, T(1)); }

    /// Infinite point for the direction (a,b,c), unit-normalized.
    static HomPoint direction(T a, T b, T c) {
        const T n = std::sqrt(a * a + b * b + c * c);
        if (n == T(0)) throw std::invalid_argument("HomPoint: zero direction");
        return HomPoint(a / n, b / n, c / n, T(0));
    }

    bool is_ordinary(const Tolerance<T>& tol = {}) const {
        return std::abs(coords[3]) > tol.rel * max_abs(coords);
    }
    bool is_infinite(const Tolerance<T>& tol = {}) const { return !is_ordinary(tol); }

    /// Representative with w = 1 (ordinary points only).
    HomPoint affine(const Tolerance<T>& tol = {}) const {
        if (!is_ordinary(tol))
            throw std::invalid_argument("HomPoint: infinite point has no affine form");
        const T w = coords[3];
        return HomPoint(coords[0] / w, coords[1] / w, coords[2] / w, T(1));
    }
};

/// Plane a*x + b*y + c*z + d = 0 as the coefficient vector (a,b,c,d).
/// Never the zero vector.
template <typename T>
struct Hyperplane {
    Vec4<T> coeffs{T(0), T(0), T(0), T(1)};

    Hyperplane() = default;
    explicit Hyperplane(const Vec4<T>& c) : coeffs(c) {
        if (max_abs(c) == T(0))
            throw std::invalid_argument("Hyperplane: zero coefficient vector");
    }
    Hyperplane(T a, T b, T c, T d) : Hyperplane(Vec4<T>{a, b, c, d}) {}

    /// The plane at infinity has (a,b,c) ~ 0 and d != 0.
    bool is_infinite(const Tolerance<T>& tol = {}) const {
        const T n = std::max({std::abs(coeffs[0]), std::abs(coeffs[1]), std::abs(coeffs[2])});
        return n <= tol.rel * max_abs(coeffs);
    }

    /// Hessian form with a^2 + b^2 + c^2 = 1 (ordinary planes only).
    Hyperplane unit_normalized(const Tolerance<T>& tol = {}) const {
        if (is_infinite(tol))
            throw std::invalid_argument("Hyperplane: cannot unit-normalize the infinite plane");
        const T n = norm3(coeffs);
        return Hyperplane(T(1) / n * coeffs);
    }

    /// Signed incidence value pi . p.
    T eval(const HomPoint<T>& p) const { return dot(coeffs, p.coords); }
};

template <typename T>
using ProjMatrix = Mat4<T>;

namespace detail {

/// Residual of the best projective match ||u - s v|| / ||u||, s taken from the
/// pair of entries at v's largest magnitude.  Infinity when no match exists.
template <typename T>
T proj_residual(const Vec4<T>& u, const Vec4<T>& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = i;
    if (v[k] == T(0) || u[k] == T(0)) return std::numeric_limits<T>::infinity();
    const T s = u[k] / v[k];
    return norm(u - s * v) / norm(u);
}

template <typename T>
T mat_proj_residual(const Mat4<T>& a, const Mat4<T>& b) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 16; ++i)
        if (std::abs(b.m[i]) > std::abs(b.m[k])) k = i;
    if (b.m[k] == T(0) || a.m[k] == T(0)) return std::numeric_limits<T>::infinity();
    const T s = a.m[k] / b.m[k];
    T num = T(0), den = T(0);
    for (std::size_t i = 0; i < 16; ++i) {
        const T d = a.m[i] - s * b.m[i];
        num += d * d;
        den += a.m[i] * a.m[i];
    }
    return std::sqrt(num / den);
}

} // namespace detail

/// True iff u = s*v for some nonzero scalar s, within tolerance.
template <typename T>
bool proj_equal(const Vec4<T>& u, const Vec4<T>& v, const Tolerance<T>& tol = {}) {
    if (max_abs(u) == T(0) || max_abs(v) == T(0))
        throw std::invalid_argument("proj_equal: zero vector");
    const T r = detail::proj_residual(u, v);
    return r * norm(u) <= tol.rel * norm(u) + tol.abs;
}

template <typename T>
bool proj_equal(const HomPoint<T>& p, const HomPoint<T>& q, const Tolerance<T>& tol = {}) {
    return proj_equal(p.coords, q.coords, tol);
}

template <typename T>
bool proj_equal(const Hyperplane<T>& p, const Hyperplane<T>& q, const Tolerance<T>& tol = {}) {
    return proj_equal(p.coeffs, q.coeffs, tol);
}

/// Projective equality of matrices, on the 16-entry flattening.
template <typename T>
bool mat_proj_equal(const Mat4<T>& a, const Mat4<T>& b, const Tolerance<T>& tol = {}) {
    if (max_abs(a) == T(0) || max_abs(b) == T(0))
        throw std::invalid_argument("mat_proj_equal: zero matrix");
    T na = T(0);
    for (T x : a.m) na += x * x;
    na = std::sqrt(na);
    return detail::mat_proj_residual(a, b) * na <= tol.rel * na + tol.abs;
}

/// M applied to p as a raw homogeneous vector (no normalization).  Throws
/// std::domain_error when p lies in the null space of a singular M.
template <typename T>
HomPoint<T> apply(const Mat4<T>& M, const HomPoint<T>& p, const Tolerance<T>& tol = {}) {
    if (max_abs(M) == T(0)) throw std::invalid_argument("apply: zero matrix");
    const Vec4<T> r = M * p.coords;
    if (max_abs(r) <= tol.abs + tol.rel * max_abs(M) * max_abs(p.coords))
        throw std::domain_error("apply: projected to indeterminate point");
    return HomPoint<T>(r);
}

/// Matrix product A*B; under the column convention B acts first.
template <typename T>
Mat4<T> compose(const Mat4<T>& a, const Mat4<T>& b) {
    return a * b;
}

/// Change of frame T*A*T^{-1}.
template <typename T>
Mat4<T> conjugate(const Mat4<T>& a, const Mat4<T>& frame, const Tolerance<T>& tol = {}) {
    Mat4<T> finv;
    try {
        finv = inverse(frame, tol);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("conjugate: singular frame matrix");
    }
    return frame * a * finv;
}

/// Image of a point under M.
template <typename T>
HomPoint<T> transform_point(const Mat4<T>& M, const HomPoint<T>& p, const Tolerance<T>& tol = {}) {
    return apply(M, p, tol);
}

/// Image of a plane under the point map M: coefficients map by M^{-T}.
template <typename T>
Hyperplane<T> transform_plane(const Mat4<T>& M, const Hyperplane<T>& pi, const Tolerance<T>& tol = {}) {
    return Hyperplane<T>(transpose(inverse(M, tol)) * pi.coeffs);
}

/// True iff the bottom row is (0,0,0,w) with w != 0, within tolerance.
template <typename T>
bool affine_normalizable(const Mat4<T>& M, const Tolerance<T>& tol = {}) {
    const T a = max_abs(M);
    if (a == T(0)) return false;
    return std::abs(M(3, 0)) <= tol.rel * a && std::abs(M(3, 1)) <= tol.rel * a &&
           std::abs(M(3, 2)) <= tol.rel * a && std::abs(M(3, 3)) > tol.rel * a;
}

/// Canonical scale representative: affine matrices are divided by w so the
/// corner entry is exactly 1; anything else gets unit Frobenius norm with the
/// first largest-magnitude entry made positive.  Idempotent.
template <typename T>
Mat4<T> canonical(const Mat4<T>& M, const Tolerance<T>& tol = {}) {
    if (max_abs(M) == T(0)) throw std::invalid_argument("canonical: zero matrix");
    if (affine_normalizable(M, tol)) {
        return (T(1) / M(3, 3)) * M;
    }
    const T f = frobenius_norm(M);
    std::size_t k = 0;
    for (std::size_t i = 1; i < 16; ++i)
        if (std::abs(M.m[i]) > std::abs(M.m[k])) k = i;
    constexpr T eps16 = T(16) * std::numeric_limits<T>::epsilon();
    if (std::abs(f - T(1)) <= eps16 && M.m[k] > T(0)) return M;
    Mat4<T> r = (T(1) / f) * M;
    if (r.m[k] < T(0)) r = T(-1) * r;
    return r;
}

} // namespace homrot
