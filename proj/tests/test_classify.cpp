#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace testsup;

namespace {
const T PI = std::numbers::pi;

T axis_line_distance(const Vec4<T>& fixed, const Vec4<T>& p0, const Vec4<T>& dir) {
    Vec4<T> diff = fixed - p0;
    diff[3] = 0;
    const T along = dot3(diff, dir);
    return norm3(diff - along * dir);
}

} // namespace

TEST_CASE("classify the sqrt35 golden matrix") {
    const auto rep = classify_rotation(golden_sqrt35_matrix());
    REQUIRE(rep.is_rotation);
    CHECK(proj_equal(rep.direction.coords, Vec4<T>{-5, 3, 1, 0}, Tolerance<T>{1e-9, 1e-12}));
    CHECK(std::abs(rep.theta - PI / 6) < 1e-9);
    CHECK(rep.scale == Catch::Approx(70.0).margin(1e-6));
    // fixed point lies on the line (-4-5t, 4+3t, t)
    const T s35 = std::sqrt(35.0);
    CHECK(axis_line_distance(rep.fixed_point.coords, Vec4<T>{-4, 4, 0, 1},
                             Vec4<T>{-5 / s35, 3 / s35, 1 / s35, 0}) < 1e-8);
}

TEST_CASE("classify a coordinate-axis rotation") {
    const auto rep = classify_rotation(givens_z(PI / 3));
    REQUIRE(rep.is_rotation);
    CHECK(norm(rep.direction.coords - Vec4<T>{0, 0, 1, 0}) < 1e-10);
    CHECK(std::abs(rep.theta - PI / 3) < 1e-12);
    CHECK(norm(rep.fixed_point.coords - Vec4<T>{0, 0, 0, 1}) < 1e-10);

    // negative angle flips the reported direction, not the angle sign
    const auto rep2 = classify_rotation(givens_z(-PI / 3));
    REQUIRE(rep2.is_rotation);
    CHECK(norm(rep2.direction.coords - Vec4<T>{0, 0, -1, 0}) < 1e-10);
    CHECK(std::abs(rep2.theta - PI / 3) < 1e-12);
}

TEST_CASE("reflections are not rotations") {
    const auto rep = classify_rotation(Mat4<T>::diag(1, 1, -1, 1));
    CHECK_FALSE(rep.is_rotation);
}

TEST_CASE("identity and sub-resolution angles report as identity") {
    const auto rep = classify_rotation(Mat4<T>::identity());
    CHECK_FALSE(rep.is_rotation);
    CHECK(rep.note.find("identity") != std::string::npos);

    const RotationSpec<T> tiny{
        AxisByPointDir<T>(HomPoint<T>(1, 2, 3, 1), HomPoint<T>(0, 1, 0, 0)), T(1e-8)};
    const auto rep2 = classify_rotation(rotation_rodrigues(tiny));
    CHECK_FALSE(rep2.is_rotation);
}

TEST_CASE("half turns") {
    const RotationSpec<T> spec{
        AxisByPointDir<T>(HomPoint<T>(2, 1, 5, 1), HomPoint<T>(2, 6, -3, 0)), PI};
    const auto rep = classify_rotation(rotation_rodrigues(spec));
    REQUIRE(rep.is_rotation);
    CHECK(std::abs(rep.theta - PI) < 1e-12);
    const T derr = std::min(norm(rep.direction.coords - spec.axis.dir.coords),
                            norm(rep.direction.coords + spec.axis.dir.coords));
    CHECK(derr < 1e-9);
    CHECK(axis_line_distance(rep.fixed_point.coords, spec.axis.point.coords,
                             spec.axis.dir.coords) < 1e-8);

    const auto rt = round_trip(spec);
    CHECK(rt.consistent);
}

TEST_CASE("round_trip examples") {
    const RotationSpec<T> s1{
        AxisByPointDir<T>(HomPoint<T>(2, 1, 5, 1), HomPoint<T>(2, 6, -3, 0)), T(1.0)};
    const auto rt1 = round_trip(s1);
    CHECK(rt1.consistent);
    CHECK(rt1.direction_error < 1e-10);
    CHECK(rt1.theta_error < 1e-10);

    // the golden spec at t = 0: fixed point on the published line
    const T s35 = std::sqrt(35.0);
    const RotationSpec<T> s2{
        AxisByPointDir<T>(HomPoint<T>(-4, 4, 0, 1), HomPoint<T>(-5 / s35, 3 / s35, 1 / s35, 0)),
        PI / 6};
    const auto rt2 = round_trip(s2);
    CHECK(rt2.consistent);
    CHECK(rt2.axis_distance < 1e-8);
}

TEST_CASE("round trip on random specs") {
    std::mt19937_64 rng(31415);
    int n = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto spec = random_spec(rng);
        const auto rt = round_trip(spec);
        INFO("spec theta " << spec.theta);
        REQUIRE(rt.report.is_rotation);
        CHECK(rt.direction_error <= 1e-8);
        CHECK(rt.theta_error <= 1e-8);
        CHECK(rt.axis_distance <= 1e-8);
        ++n;
    }
    CHECK(n == 1000);
}

TEST_CASE("classification is scale invariant") {
    const Mat4<T> M = rotation_rodrigues(RotationSpec<T>{
        AxisByPointDir<T>(HomPoint<T>(2, 1, 5, 1), HomPoint<T>(2, 6, -3, 0)), T(0.8)});
    const auto base = classify_rotation(M);
    REQUIRE(base.is_rotation);
    for (T k : {T(-3), T(0.01), T(70)}) {
        const auto rep = classify_rotation(k * M);
        REQUIRE(rep.is_rotation);
        CHECK(norm(rep.direction.coords - base.direction.coords) < 1e-9);
        CHECK(std::abs(rep.theta - base.theta) < 1e-9);
        CHECK(norm(rep.fixed_point.coords - base.fixed_point.coords) < 1e-7);
        CHECK(rep.scale == Catch::Approx(k * base.scale).epsilon(1e-9));
    }
}

TEST_CASE("classification commutes with rigid changes of frame") {
    std::mt19937_64 rng(14142);
    for (int i = 0; i < 100; ++i) {
        const auto spec = random_spec(rng);
        const Mat4<T> M = rotation_rodrigues(spec);
        const Mat4<T> Fr = random_rigid(rng);
        const auto base = classify_rotation(M);
        const auto moved = classify_rotation(conjugate(M, Fr));
        REQUIRE(base.is_rotation);
        REQUIRE(moved.is_rotation);
        CHECK(std::abs(moved.theta - base.theta) < 1e-7);
        const Vec4<T> want = Fr * base.direction.coords;
        CHECK(proj_equal(moved.direction.coords, want, Tolerance<T>{1e-7, 1e-9}));
        // and the direction keeps its orientation under the right-hand rule
        const T align = dot3(moved.direction.coords, want);
        CHECK(align > 0);
    }
}

TEST_CASE("negative closure") {
    std::mt19937_64 rng(16180);

    // every elementary transformation family classifies as not-a-rotation
    for (int row = 1; row <= 12; ++row) {
        for (int i = 0; i < 20; ++i) {
            const auto sp = random_stereo_spec(rng, row);
            const Mat4<T> M = build_stereo(sp, row);
            const auto rep = classify_rotation(M);
            INFO("row " << row << " case " << i);
            CHECK_FALSE(rep.is_rotation);
        }
    }

    // random matrices are never rotations
    for (int i = 0; i < 100; ++i) {
        Mat4<T> M;
        for (int k = 0; k < 16; ++k) M.m[k] = uniform(rng, -3, 3);
        CHECK_FALSE(classify_rotation(M).is_rotation);
    }

    // a stretched conjugate of a rotation keeps the eigenvalue pattern but
    // fails the isotropy clause
    for (int i = 0; i < 50; ++i) {
        const auto spec = random_spec(rng, T(0.3));
        const Mat4<T> S = Mat4<T>::diag(uniform(rng, 1.5, 3.0), 1, 1, 1);
        const Mat4<T> M = conjugate(rotation_rodrigues(spec), S);
        CHECK_FALSE(classify_rotation(M).is_rotation);
    }

    // screw motions are defective and rejected
    for (int i = 0; i < 50; ++i) {
        const auto spec = random_spec(rng, T(0.3));
        const Vec4<T>& d = spec.axis.dir.coords;
        const Mat4<T> shift =
            make_shear(HomPoint<T>(d), Hyperplane<T>(0, 0, 0, 1), T(1), uniform(rng, 0.5, 3.0));
        const Mat4<T> M = shift * rotation_rodrigues(spec);
        CHECK_FALSE(classify_rotation(M).is_rotation);
    }
}
