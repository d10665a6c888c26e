// Build a rotation about an arbitrary axis three ways, print it, classify it.

#include <cstdio>

#include <homrot/homrot.hpp>

int main() {
    using namespace homrot;
    using T = double;

    // axis through P = (2,1,5) and Q = (4,7,2), quarter turn
    const auto axis = two_points_to_axis(HomPoint<T>(2, 1, 5, 1), HomPoint<T>(4, 7, 2, 1));
    const RotationSpec<T> spec{axis, std::numbers::pi / 2};

    const Mat4<T> r1 = rotation_rodrigues(spec);
    const Mat4<T> r2 = rotation_from_reflections(axis_to_plane_pair(axis), spec.theta);
    const Mat4<T> r3 = rotation_eigen_reconstruct(spec);

    std::printf("closed form:\n%s", format_matrix_text(r1).c_str());
    std::printf("reflection composition agrees: %s\n",
                mat_proj_equal(r1, r2) ? "yes" : "no");
    std::printf("eigen reconstruction agrees:  %s\n",
                mat_proj_equal(r1, r3) ? "yes" : "no");

    const auto rep = classify_rotation(r1);
    std::printf("classified: rotation=%d theta=%.12g direction=(%g, %g, %g)\n",
                static_cast<int>(rep.is_rotation), rep.theta, rep.direction.coords[0],
                rep.direction.coords[1], rep.direction.coords[2]);

    const auto refl = make_orthographic_reflection(Hyperplane<T>(1, 1, 1, -3).unit_normalized());
    const auto sr = classify_stereo(refl);
    std::printf("reflection in x+y+z=3 classifies as %s (row %d)\n", to_string(sr.cls), sr.row);
    return 0;
}
