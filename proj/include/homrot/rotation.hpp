#pragma once

// General 3D homogeneous rotations about axes not necessarily through the
// origin, built three independent ways:
//   - composition of two orthographic reflections in planes through the axis,
//   - reconstruction from the prescribed eigensystem,
//   - the closed-form factorization R = C1 + (sin A2 - (1-cos) O3) T4,
// which is this library's canonical definition; the sign ambiguities of the
// first two routes are resolved against it.

#include <utility>

#include "stereohomology.hpp"

namespace homrot {

/// Rotation axis as the intersection line of two ordinary planes, stored
/// unit-normalized and ordered so that n1 x n2 points along the axis.
template <typename T>
struct AxisByPlanes {
    Hyperplane<T> p1, p2;

    AxisByPlanes(const Hyperplane<T>& a, const Hyperplane<T>& b, const Tolerance<T>& tol = {})
        : p1(a.unit_normalized(tol)), p2(b.unit_normalized(tol)) {
        const Vec4<T> cr = cross3(p1.coeffs, p2.coeffs);
        if (norm3(cr) <= tol.rel)
            throw std::invalid_argument("AxisByPlanes: planes are parallel");
    }
};

/// Rotation axis as ordinary point (w = 1) plus unit direction (w = 0).
template <typename T>
struct AxisByPointDir {
    HomPoint<T> point;
    HomPoint<T> dir;

    AxisByPointDir(const HomPoint<T>& p, const HomPoint<T>& d, const Tolerance<T>& tol = {})
        : point(p.affine(tol)), dir(HomPoint<T>::direction(d.coords[0], d.coords[1], d.coords[2])) {
        if (d.is_ordinary(tol))
            throw std::invalid_argument("AxisByPointDir: direction must be an infinite point");
    }
};

/// Axis plus right-handed rotation angle, reduced to (-pi, pi].
template <typename T>
struct RotationSpec {
    AxisByPointDir<T> axis;
    T theta;

    RotationSpec(const AxisByPointDir<T>& a, T t) : axis(a), theta(reduce_angle(t)) {}

    static T reduce_angle(T t) {
        if (!std::isfinite(t)) throw std::invalid_argument("RotationSpec: theta must be finite");
        T r = std::remainder(t, T(2) * std::numbers::pi_v<T>);
        if (r <= -std::numbers::pi_v<T>) r = std::numbers::pi_v<T>;
        return r;
    }
};

/// Axis through two projectively distinct points, at least one ordinary.
/// The direction points from the first ordinary point toward the other.
template <typename T>
AxisByPointDir<T> two_points_to_axis(const HomPoint<T>& P, const HomPoint<T>& Q,
                                     const Tolerance<T>& tol = {}) {
    const bool p_ord = P.is_ordinary(tol), q_ord = Q.is_ordinary(tol);
    if (!p_ord && !q_ord)
        throw std::invalid_argument("two_points_to_axis: no ordinary point on the axis");
    if (proj_equal(P.coords, Q.coords, tol))
        throw std::invalid_argument("two_points_to_axis: points coincide, axis is degenerate");
    if (!p_ord) return two_points_to_axis(Q, P, tol);
    const HomPoint<T> base = P.affine(tol);
    if (!q_ord) {
        return AxisByPointDir<T>(
            base, HomPoint<T>::direction(Q.coords[0], Q.coords[1], Q.coords[2]), tol);
    }
    const HomPoint<T> tip = Q.affine(tol);
    const Vec4<T> d = tip.coords - base.coords;
    return AxisByPointDir<T>(base, HomPoint<T>::direction(d[0], d[1], d[2]), tol);
}

/// Basis planes of the hyperplane pencil through the axis line.  With the
/// direction (a,b,c) and c != 0 the pencil is spanned by
/// (c, 0, -a, a z0 - c x0) and (0, c, -b, b z0 - c y0); when |c| is not the
/// largest direction component the coordinates are permuted so the dominant
/// component takes that role.  Output planes are unit-normalized and ordered
/// so that n1 x n2 points along +dir.
template <typename T>
AxisByPlanes<T> axis_to_plane_pair(const AxisByPointDir<T>& axis, const Tolerance<T>& tol = {}) {
    const Vec4<T>& d = axis.dir.coords;
    const Vec4<T>& p = axis.point.coords;
    if (norm3(d) == T(0)) throw std::invalid_argument("axis_to_plane_pair: zero direction");

    // roles (a,b,c) with the largest-magnitude component as c
    std::array<int, 3> role = {0, 1, 2};
    {
        int c_role = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(d[i]) > std::abs(d[c_role])) c_role = i;
        int k = 0;
        for (int i = 0; i < 3; ++i)
            if (i != c_role) role[k++] = i;
        role[2] = c_role;
    }
    const T a = d[role[0]], b = d[role[1]], c = d[role[2]];
    const T x0 = p[role[0]], y0 = p[role[1]], z0 = p[role[2]];

    Vec4<T> q1{}, q2{};
    q1[role[0]] = c;
    q1[role[2]] = -a;
    q1[3] = a * z0 - c * x0;
    q2[role[1]] = c;
    q2[role[2]] = -b;
    q2[3] = b * z0 - c * y0;

    Hyperplane<T> h1{q1}, h2{q2};
    if (dot3(cross3(q1, q2), d) < T(0)) std::swap(h1, h2);
    return AxisByPlanes<T>(h1, h2, tol);
}

/// Dihedral angle in (0, pi) from the plane normals.
template <typename T>
T dihedral_angle(const Hyperplane<T>& p1, const Hyperplane<T>& p2, const Tolerance<T>& tol = {}) {
    const T n1 = norm3(p1.coeffs), n2 = norm3(p2.coeffs);
    if (n1 <= tol.abs || n2 <= tol.abs)
        throw std::invalid_argument("dihedral_angle: plane must be ordinary");
    if (norm3(cross3(p1.coeffs, p2.coeffs)) <= tol.rel * n1 * n2)
        throw std::invalid_argument("dihedral_angle: planes are parallel");
    const T c = std::clamp(dot3(p1.coeffs, p2.coeffs) / (n1 * n2), T(-1), T(1));
    return std::acos(c);
}

/// The same angle through Laguerre's formula: (1/2i) Log of the cross ratio
/// of (p1, p2; I+, I-), where I+- are the isotropic members of the pencil
/// mu p1 + nu p2, i.e. the roots of (mu n1 + nu n2).(mu n1 + nu n2) = 0.
template <typename T>
T dihedral_angle_laguerre(const Hyperplane<T>& p1, const Hyperplane<T>& p2,
                          const Tolerance<T>& tol = {}) {
    const T a = dot3(p1.coeffs, p1.coeffs);
    const T b = dot3(p1.coeffs, p2.coeffs);
    const T c = dot3(p2.coeffs, p2.coeffs);
    if (a <= tol.abs * tol.abs || c <= tol.abs * tol.abs)
        throw std::invalid_argument("dihedral_angle: plane must be ordinary");
    const T disc = a * c - b * b;
    if (disc <= tol.rel * tol.rel * a * c)
        throw std::invalid_argument("dihedral_angle: planes are parallel");
    const Complex<T> tp = (Complex<T>(-b) + Complex<T>(T(0), std::sqrt(disc))) / a;
    const Complex<T> tm = (Complex<T>(-b) - Complex<T>(T(0), std::sqrt(disc))) / a;
    // pencil parameters: p1 at infinity, p2 at 0, so (p1,p2;I+,I-) = tm/tp
    const Complex<T> cr = tm / tp;
    T ang = std::arg(cr);
    if (ang <= T(0)) ang += T(2) * std::numbers::pi_v<T>;
    return ang / T(2);
}

/// The two pencil planes with dihedral angles theta/2 on either side of p1:
/// sin(w - t/2) p1 + sin(t/2) p2  and  sin(w + t/2) p1 - sin(t/2) p2, where w
/// is the dihedral angle of the pair.  Both contain the axis line; both are
/// returned unit-normalized.
template <typename T>
std::pair<Hyperplane<T>, Hyperplane<T>> bisector_planes(const AxisByPlanes<T>& axis, T theta,
                                                        const Tolerance<T>& tol = {}) {
    const T w = dihedral_angle(axis.p1, axis.p2, tol);
    const T h = theta / T(2);
    const Vec4<T> f = std::sin(w - h) * axis.p1.coeffs + std::sin(h) * axis.p2.coeffs;
    const Vec4<T> g = std::sin(w + h) * axis.p1.coeffs - std::sin(h) * axis.p2.coeffs;
    return {Hyperplane<T>(f).unit_normalized(tol), Hyperplane<T>(g).unit_normalized(tol)};
}

/// Closed-form right-handed homogeneous rotation
///     R(x0,y0,z0,a,b,c,theta) = C1 + (sin theta A2 - (1-cos theta) O3) T4
/// with C1 = diag(1,1,1,2-cos), A2 the cross-product matrix of the unit
/// direction, O3 the orthographic projection along it, and T4 the translation
/// taking the axis point to the origin.  Bottom row is exactly (0,0,0,1);
/// the 3x3 block is special orthogonal.
template <typename T>
Mat4<T> rotation_rodrigues(const RotationSpec<T>& spec, const Tolerance<T>& tol = {}) {
    const Vec4<T>& d = spec.axis.dir.coords;
    const T a = d[0], b = d[1], c = d[2];
    if (std::abs(a * a + b * b + c * c - T(1)) > T(64) * std::numeric_limits<T>::epsilon())
        throw std::invalid_argument("rotation_rodrigues: direction must be unit length");
    const T st = std::sin(spec.theta), ct = std::cos(spec.theta);

    const Mat4<T> C1 = Mat4<T>::diag(T(1), T(1), T(1), T(2) - ct);
    Mat4<T> A2{};
    A2(0, 1) = -c; A2(0, 2) = b;
    A2(1, 0) = c;  A2(1, 2) = -a;
    A2(2, 0) = -b; A2(2, 1) = a;
    const Mat4<T> O3 = Mat4<T>::identity() - Mat4<T>::outer(d, d);
    Mat4<T> T4 = Mat4<T>::identity();
    T4(0, 3) = -spec.axis.point.coords[0];
    T4(1, 3) = -spec.axis.point.coords[1];
    T4(2, 3) = -spec.axis.point.coords[2];

    Mat4<T> R = C1 + (st * A2 - (T(1) - ct) * O3) * T4;
    // the corner combines as (2 - cos) - (1 - cos), identically 1; write the
    // exact value instead of the rounded difference
    R(3, 3) = T(1);
    return R;
}

namespace detail {

/// Ordinary point on the intersection line of two unit-normalized planes,
/// minimum-norm in the spatial coordinates.
template <typename T>
HomPoint<T> point_on_axis(const AxisByPlanes<T>& axis) {
    const Vec4<T>& u = axis.p1.coeffs;
    const Vec4<T>& v = axis.p2.coeffs;
    const T c = dot3(u, v);
    const T den = T(1) - c * c;
    const T al = (-u[3] + c * v[3]) / den;
    const T be = (-v[3] + c * u[3]) / den;
    return HomPoint<T>(al * u[0] + be * v[0], al * u[1] + be * v[1], al * u[2] + be * v[2], T(1));
}

} // namespace detail

/// Rotation as the product of two orthographic reflections: one in p1, one in
/// the pencil plane at dihedral angle theta/2.  The rotation turns by theta
/// right-handed about normalize(n1 x n2); the product order realizing that
/// sign is picked against the closed form.
template <typename T>
Mat4<T> rotation_from_reflections(const AxisByPlanes<T>& axis, T theta,
                                  const Tolerance<T>& tol = {}) {
    const T th = RotationSpec<T>::reduce_angle(theta);
    const auto half = bisector_planes(axis, th, tol).first;
    const Mat4<T> R1 = make_orthographic_reflection(axis.p1, tol);
    const Mat4<T> Rh = make_orthographic_reflection(half, tol);
    const Mat4<T> A = Rh * R1;
    const Mat4<T> B = R1 * Rh;

    const Vec4<T> cr = cross3(axis.p1.coeffs, axis.p2.coeffs);
    const HomPoint<T> dir = HomPoint<T>::direction(cr[0], cr[1], cr[2]);
    const RotationSpec<T> spec{AxisByPointDir<T>(detail::point_on_axis(axis), dir, tol), th};
    const Mat4<T> ref = rotation_rodrigues(spec, tol);

    return detail::mat_proj_residual(ref, A) <= detail::mat_proj_residual(ref, B) ? A : B;
}

/// The conjugate pair of eigenvectors prescribed for the complex eigenvalues:
/// (alpha + i beta, lambda + i rho, 1, 0) and its conjugate, with
///   alpha = -ac/(a^2+b^2),  beta  =  b/(a^2+b^2),
///   lambda = -bc/(a^2+b^2), rho   = -a/(a^2+b^2)
/// for a unit direction (a,b,c).  When c dominates (a^2+b^2 < 1/2) the
/// coordinates are permuted so the two largest components take the a,b roles.
/// Both vectors are isotropic, infinite, and orthogonal to the direction.
template <typename T>
std::pair<CVec4<T>, CVec4<T>> eigvec_complex_pair(const HomPoint<T>& dir,
                                                  const Tolerance<T>& tol = {}) {
    const Vec4<T>& d = dir.coords;
    if (norm3(d) <= tol.abs) throw std::invalid_argument("eigvec_complex_pair: zero direction");

    std::array<int, 3> role = {0, 1, 2};
    if (d[0] * d[0] + d[1] * d[1] < T(0.5) * dot3(d, d)) {
        // sort indices by |component| descending; roles a,b get the largest two
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(),
                  [&](int i, int j) { return std::abs(d[i]) > std::abs(d[j]); });
        role = idx;
    }
    const T a = d[role[0]], b = d[role[1]], c = d[role[2]];
    const T nn = std::sqrt(a * a + b * b + c * c);
    const T ab2 = a * a + b * b;
    const T alpha = -a * c / ab2;
    const T beta = b * nn / ab2;
    const T lam = -b * c / ab2;
    const T rho = -a * nn / ab2;

    CVec4<T> vp{};
    vp[role[0]] = Complex<T>(alpha, beta);
    vp[role[1]] = Complex<T>(lam, rho);
    vp[role[2]] = Complex<T>(T(1), T(0));
    CVec4<T> vm;
    for (int i = 0; i < 4; ++i) vm[i] = std::conj(vp[i]);
    return {vp, vm};
}

namespace detail {

/// Inverse of a complex 4x4 by partially pivoted Gauss-Jordan elimination.
template <typename T>
CMat4<T> cinverse(const CMat4<T>& A) {
    CMat4<T> a = A;
    CMat4<T> inv{};
    for (int i = 0; i < 4; ++i) inv[5 * i] = Complex<T>(T(1));
    for (int k = 0; k < 4; ++k) {
        int p = k;
        for (int i = k + 1; i < 4; ++i)
            if (std::abs(a[4 * i + k]) > std::abs(a[4 * p + k])) p = i;
        if (std::abs(a[4 * p + k]) == T(0))
            throw std::invalid_argument("cinverse: singular matrix");
        if (p != k)
            for (int j = 0; j < 4; ++j) {
                std::swap(a[4 * k + j], a[4 * p + j]);
                std::swap(inv[4 * k + j], inv[4 * p + j]);
            }
        const Complex<T> pivot = a[4 * k + k];
        for (int j = 0; j < 4; ++j) {
            a[4 * k + j] /= pivot;
            inv[4 * k + j] /= pivot;
        }
        for (int i = 0; i < 4; ++i) {
            if (i == k) continue;
            const Complex<T> f = a[4 * i + k];
            if (f == Complex<T>(T(0))) continue;
            for (int j = 0; j < 4; ++j) {
                a[4 * i + j] -= f * a[4 * k + j];
                inv[4 * i + j] -= f * inv[4 * k + j];
            }
        }
    }
    return inv;
}

template <typename T>
Mat4<T> eigen_rebuild(const CVec4<T>& p, const CVec4<T>& d, const CVec4<T>& vp,
                      const CVec4<T>& vm, T theta) {
    CMat4<T> V{};
    for (int i = 0; i < 4; ++i) {
        V[4 * i + 0] = p[i];
        V[4 * i + 1] = d[i];
        V[4 * i + 2] = vp[i];
        V[4 * i + 3] = vm[i];
    }
    const CMat4<T> Vi = cinverse<T>(V);
    const Complex<T> e{std::cos(theta), std::sin(theta)};
    CMat4<T> D{};
    D[0] = D[5] = Complex<T>(T(1));
    D[10] = e;
    D[15] = std::conj(e);
    const CMat4<T> R = cmul(cmul(V, D), Vi);
    T re_max = T(0), im_max = T(0);
    for (const auto& z : R) {
        re_max = std::max(re_max, std::abs(z.real()));
        im_max = std::max(im_max, std::abs(z.imag()));
    }
    if (im_max > T(1e-9) * std::max(re_max, T(1)))
        throw std::domain_error("rotation_eigen_reconstruct: imaginary residual too large");
    Mat4<T> out;
    for (int i = 0; i < 16; ++i) out.m[i] = R[i].real();
    return out;
}

} // namespace detail

/// Rotation rebuilt from its eigen-decomposition: V = [point dir v+ v-],
/// D = diag(1, 1, e^{i theta}, e^{-i theta}), R = Re(V D V^-1).  The branch
/// assignment of the complex pair is fixed against the closed form.
template <typename T>
Mat4<T> rotation_eigen_reconstruct(const RotationSpec<T>& spec, const Tolerance<T>& tol = {}) {
    const auto [vp, vm] = eigvec_complex_pair(spec.axis.dir, tol);
    CVec4<T> p{}, d{};
    for (int i = 0; i < 4; ++i) {
        p[i] = Complex<T>(spec.axis.point.coords[i]);
        d[i] = Complex<T>(spec.axis.dir.coords[i]);
    }
    const Mat4<T> A = detail::eigen_rebuild<T>(p, d, vp, vm, spec.theta);
    const Mat4<T> B = detail::eigen_rebuild<T>(p, d, vm, vp, spec.theta);
    const Mat4<T> ref = rotation_rodrigues(spec, tol);
    return detail::mat_proj_residual(ref, A) <= detail::mat_proj_residual(ref, B) ? A : B;
}

} // namespace homrot
