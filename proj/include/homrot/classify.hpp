#pragma once

// Inverse problem: decide whether a homogeneous 4x4 matrix is a 3D rotation
// and recover axis, fixed point and angle from its eigensystem.  A rotation
// has eigenvalues proportional to {e^{i theta}, e^{-i theta}, 1, 1}; the
// repeated real eigenvalue carries the axis (one infinite direction plus
// ordinary fixed points) and the complex eigenvectors lie on the isotropic
// quadric at infinity, orthogonal to the axis direction.

#include <string>

#include "rotation.hpp"

namespace homrot {

template <typename T>
struct RotationReport {
    bool is_rotation = false;
    HomPoint<T> direction{};   // infinite, unit, sign-canonicalized (valid iff is_rotation)
    HomPoint<T> fixed_point{}; // ordinary, w = 1, minimum-norm point on the axis
    T theta = T(0);            // right-handed about `direction`, in (0, pi]
    T eig_residual = T(0);
    T scale = T(1);            // repeated real eigenvalue of the input matrix
    std::string note;
};

namespace detail {

template <typename T>
bool lex_greater_than_negation(const Vec4<T>& d) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(d[i]) > T(1e-12)) return d[i] > T(0);
    }
    return true;
}

/// Axis data extracted from the two eigenvectors of the repeated eigenvalue:
/// the unique infinite member and the minimum-norm ordinary member.
template <typename T>
bool axis_from_eigenspace(const CVec4<T>& e1, const CVec4<T>& e2, T wtol, Vec4<T>& dir_out,
                          Vec4<T>& point_out) {
    Vec4<T> v1, v2;
    for (int i = 0; i < 4; ++i) {
        v1[i] = e1[i].real();
        v2[i] = e2[i].real();
    }
    if (norm(v1) < T(0.5) || norm(v2) < T(0.5)) return false; // vectors were not real
    const bool inf1 = std::abs(v1[3]) <= wtol, inf2 = std::abs(v2[3]) <= wtol;
    if (inf1 && inf2) return false; // whole eigenspace at infinity: no ordinary axis
    Vec4<T> d = v2[3] * v1 - v1[3] * v2; // w components cancel
    d[3] = T(0);
    const T dn = norm3(d);
    if (dn <= wtol) return false;
    d = (T(1) / dn) * d;
    const Vec4<T>& o = std::abs(v1[3]) >= std::abs(v2[3]) ? v1 : v2;
    Vec4<T> q = (T(1) / o[3]) * o;
    const T along = dot3(q, d);
    point_out = {q[0] - along * d[0], q[1] - along * d[1], q[2] - along * d[2], T(1)};
    dir_out = d;
    return true;
}

} // namespace detail

/// Classify M per the eigenvalue-ratio criterion.  Total: failures come back
/// as is_rotation = false with a note, never as an exception.
template <typename T>
RotationReport<T> classify_rotation(const Mat4<T>& M, const Tolerance<T>& tol = {}) {
    RotationReport<T> rep;
    EigenSystem<T> es;
    try {
        es = eigen_decompose(M, tol);
    } catch (const std::invalid_argument& e) {
        rep.note = e.what();
        return rep;
    }
    rep.eig_residual = es.residual;
    if (es.defect_flag) {
        rep.note = "defective eigensystem";
        return rep;
    }

    // group pairs by (shared) eigenvalue
    struct Group {
        Complex<T> value;
        std::array<int, 4> idx{};
        int n = 0;
    };
    std::array<Group, 4> groups{};
    int ng = 0;
    T vmax = T(0);
    for (int i = 0; i < 4; ++i) vmax = std::max(vmax, std::abs(es.pairs[i].value));
    const T gtol = T(1e-9) * std::max(vmax, T(1));
    for (int i = 0; i < 4; ++i) {
        bool placed = false;
        for (int g = 0; g < ng; ++g)
            if (std::abs(es.pairs[i].value - groups[g].value) <= gtol) {
                groups[g].idx[groups[g].n++] = i;
                placed = true;
                break;
            }
        if (!placed) {
            groups[ng].value = es.pairs[i].value;
            groups[ng].idx[groups[ng].n++] = i;
            ++ng;
        }
    }

    const T rtol = std::max(T(100) * tol.rel, T(1e-7));
    const T ctol = std::max(T(100) * tol.rel, T(1e-7));
    const T angle_res = T(1e-6);

    if (ng == 1) {
        // single quadruple eigenvalue: identity up to scale, or sub-resolution
        rep.scale = groups[0].value.real();
        rep.note = "identity (no rotation above angle resolution)";
        return rep;
    }

    // locate the repeated real group and the rotated pair
    int axis_g = -1, rot_g1 = -1, rot_g2 = -1;
    if (ng == 3) {
        for (int g = 0; g < ng; ++g) {
            if (groups[g].n == 2 && std::abs(groups[g].value.imag()) <= gtol)
                axis_g = g;
            else if (groups[g].value.imag() > gtol)
                rot_g1 = g;
            else if (groups[g].value.imag() < -gtol)
                rot_g2 = g;
        }
        if (axis_g < 0 || rot_g1 < 0 || rot_g2 < 0 || groups[rot_g1].n != 1 ||
            groups[rot_g2].n != 1) {
            rep.note = "eigenvalue multiset is not {mu e^{i t}, mu e^{-i t}, mu, mu}";
            return rep;
        }
        if (std::abs(groups[rot_g1].value - std::conj(groups[rot_g2].value)) >
            rtol * std::abs(groups[rot_g1].value)) {
            rep.note = "complex eigenvalues are not a conjugate pair";
            return rep;
        }
    } else if (ng == 2 && groups[0].n == 2 && groups[1].n == 2 &&
               std::abs(groups[0].value.imag()) <= gtol &&
               std::abs(groups[1].value.imag()) <= gtol) {
        // half-turn candidate: {mu, mu, -mu, -mu}
        if (std::abs(groups[0].value + groups[1].value) >
            rtol * std::abs(groups[0].value)) {
            rep.note = "two real eigenvalue pairs are not opposite";
            return rep;
        }
        // the axis group is the one whose eigenspace holds an ordinary point
        const T wtol = T(1e-6);
        int cand = -1;
        for (int g = 0; g < 2; ++g) {
            for (int k = 0; k < 2; ++k) {
                const auto& v = es.pairs[groups[g].idx[k]].vector;
                if (std::abs(v[3]) > wtol) cand = g;
            }
        }
        if (cand < 0) {
            rep.note = "no ordinary fixed point in either eigenspace";
            return rep;
        }
        axis_g = cand;
        rot_g1 = 1 - cand;
        rot_g2 = rot_g1;
    } else {
        rep.note = "eigenvalue multiplicities do not match a rotation";
        return rep;
    }

    const Complex<T> mu = groups[axis_g].value;
    if (std::abs(mu) <= gtol) {
        rep.note = "repeated eigenvalue is zero";
        return rep;
    }
    const T mu_r = mu.real();
    rep.scale = mu_r;

    // modulus ratio must be 1
    const Complex<T> lam_c = groups[rot_g1].value;
    if (std::abs(std::abs(lam_c) - std::abs(mu)) > rtol * std::abs(mu)) {
        rep.note = "complex eigenvalue modulus differs from the real one";
        return rep;
    }

    // axis from the mu-eigenspace
    const T wtol = T(1e-6);
    Vec4<T> dir, fixed;
    if (!detail::axis_from_eigenspace<T>(es.pairs[groups[axis_g].idx[0]].vector,
                                         es.pairs[groups[axis_g].idx[1]].vector, wtol, dir,
                                         fixed)) {
        rep.note = "axis eigenspace lacks an ordinary point or a unique direction";
        return rep;
    }

    T theta;
    Vec4<T> d_final = dir;
    if (rot_g1 != rot_g2) {
        const Complex<T> ratio = lam_c / mu_r;
        theta = std::atan2(ratio.imag(), ratio.real());
        const int which = theta > T(0) ? rot_g1 : rot_g2;
        theta = std::abs(theta);
        if (theta < angle_res) {
            rep.note = "rotation angle below resolution; reporting identity";
            return rep;
        }
        // clause 3: the complex eigenvectors sit on the isotropic quadric at
        // infinity, orthogonal to the axis direction
        const auto& v = es.pairs[groups[which].idx[0]].vector;
        Complex<T> iso{};
        Complex<T> orth{};
        for (int i = 0; i < 3; ++i) {
            iso += v[i] * v[i];
            orth += dir[i] * v[i];
        }
        if (std::abs(v[3]) > ctol || std::abs(iso) > ctol || std::abs(orth) > ctol) {
            rep.note = "complex eigenvectors are not isotropic infinite points";
            return rep;
        }
        // right-hand rule: for the eigenvalue with positive phase the axis is
        // -(Re v x Im v)
        Vec4<T> xr, xi;
        for (int i = 0; i < 4; ++i) {
            xr[i] = v[i].real();
            xi[i] = v[i].imag();
        }
        const Vec4<T> u0 = T(-1) * cross3(xr, xi);
        const T side = dot3(dir, u0);
        if (std::abs(side) <= T(1e-8) * norm3(u0)) {
            rep.note = "handedness is indeterminate";
            return rep;
        }
        if (side < T(0)) d_final = T(-1) * d_final;
    } else {
        // half-turn: rotated eigenspace must be infinite and orthogonal to the axis
        theta = std::numbers::pi_v<T>;
        for (int k = 0; k < 2; ++k) {
            const auto& v = es.pairs[groups[rot_g1].idx[k]].vector;
            Complex<T> orth{};
            for (int i = 0; i < 3; ++i) orth += dir[i] * v[i];
            if (std::abs(v[3]) > ctol || std::abs(orth) > ctol) {
                rep.note = "half-turn eigenspace is not the infinite plane section "
                           "orthogonal to the axis";
                return rep;
            }
        }
        if (!detail::lex_greater_than_negation(d_final)) d_final = T(-1) * d_final;
    }

    // residuals of the axis members as eigenvectors of M / mu
    const Mat4<T> C = (T(1) / mu_r) * M;
    const Vec4<T> rd = C * d_final - d_final;
    const Vec4<T> rf = C * fixed - fixed;
    rep.eig_residual = std::max({es.residual, norm(rd), norm(rf)});
    if (rep.eig_residual > std::max(T(1e-6), T(1000) * tol.rel)) {
        rep.note = "axis residual too large";
        return rep;
    }

    rep.is_rotation = true;
    rep.direction = HomPoint<T>(Vec4<T>{d_final[0], d_final[1], d_final[2], T(0)});
    rep.fixed_point = HomPoint<T>(fixed);
    rep.theta = theta;
    return rep;
}

/// Construct-then-classify self test for one spec.
template <typename T>
struct RoundTrip {
    RotationReport<T> report;
    T direction_error = T(0); // euclidean gap to the expected unit direction
    T theta_error = T(0);
    T axis_distance = T(0); // recovered fixed point to the spec axis line
    bool consistent = false;
};

template <typename T>
RoundTrip<T> round_trip(const RotationSpec<T>& spec, const Tolerance<T>& tol = {}) {
    RoundTrip<T> rt;
    const Mat4<T> R = rotation_rodrigues(spec, tol);
    rt.report = classify_rotation(R, tol);
    if (!rt.report.is_rotation) return rt;

    const Vec4<T>& d_rep = rt.report.direction.coords;
    const Vec4<T> d_exp = spec.theta >= T(0) ? spec.axis.dir.coords
                                             : T(-1) * spec.axis.dir.coords;
    T derr = norm(d_rep - d_exp);
    if (std::abs(std::abs(spec.theta) - std::numbers::pi_v<T>) < T(1e-9))
        derr = std::min(derr, norm(d_rep + d_exp)); // half-turn sign freedom
    rt.direction_error = derr;
    rt.theta_error = std::abs(rt.report.theta - std::abs(spec.theta));

    const Vec4<T> f = rt.report.fixed_point.coords;
    const Vec4<T> p0 = spec.axis.point.coords;
    Vec4<T> diff = f - p0;
    diff[3] = T(0);
    const T along = dot3(diff, spec.axis.dir.coords);
    const Vec4<T> perp = diff - along * spec.axis.dir.coords;
    rt.axis_distance = norm3(perp);

    const T thr = T(1e-8);
    rt.consistent = derr <= thr && rt.theta_error <= thr && rt.axis_distance <= thr;
    return rt;
}

} // namespace homrot
