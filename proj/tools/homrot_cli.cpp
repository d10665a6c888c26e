// Command-line surface: construct rotations (three methods), classify
// matrices, build elementary transformations, verify one spec end to end,
// and compute dihedral angles.
//
// Exit codes: 0 success, 1 recognized failure (verification or
// classification negative), 2 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <homrot/homrot.hpp>

namespace {

using T = double;
using namespace homrot;

std::vector<T> parse_csv(const std::string& s, std::size_t want, const char* what) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double x;
        try {
            x = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": malformed number '" + item + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size())
            throw std::invalid_argument(std::string(what) + ": malformed number '" + item + "'");
        out.push_back(x);
    }
    if (out.size() != want)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(want) +
                                    " comma-separated numbers");
    return out;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_matrix(const Mat4<T>& M, const std::string& format) {
    if (format == "json")
        std::cout << matrix_to_json(M).dump() << "\n";
    else
        std::cout << format_matrix_text(M);
}

nlohmann::json vec_json(const Vec4<T>& v) { return {v[0], v[1], v[2], v[3]}; }

// deterministic uniforms; std::uniform_real_distribution is not portable
// across standard libraries
T uniform(std::mt19937_64& rng, T lo, T hi) {
    const T u = static_cast<T>(rng() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
}

RotationSpec<T> spec_from_seed(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const T px = uniform(rng, -10, 10), py = uniform(rng, -10, 10), pz = uniform(rng, -10, 10);
    T a, b, c, n2;
    do {
        a = uniform(rng, -1, 1);
        b = uniform(rng, -1, 1);
        c = uniform(rng, -1, 1);
        n2 = a * a + b * b + c * c;
    } while (n2 > T(1) || n2 < T(1e-4));
    const T theta = uniform(rng, -std::numbers::pi, std::numbers::pi);
    return RotationSpec<T>{
        AxisByPointDir<T>(HomPoint<T>::point(px, py, pz), HomPoint<T>::direction(a, b, c)), theta};
}

int cmd_rotate(const std::vector<T>& p, const std::vector<T>& d, T theta, bool degrees,
               const std::string& method, const std::string& format, T tol_rel) {
    if (degrees) theta *= std::numbers::pi / T(180);
    const Tolerance<T> tol{tol_rel, 1e-12};
    const RotationSpec<T> spec{AxisByPointDir<T>(HomPoint<T>::point(p[0], p[1], p[2]),
                                                 HomPoint<T>::direction(d[0], d[1], d[2])),
                               theta};
    Mat4<T> R;
    if (method == "rodrigues")
        R = rotation_rodrigues(spec, tol);
    else if (method == "reflections")
        R = rotation_from_reflections(axis_to_plane_pair(spec.axis, tol), spec.theta, tol);
    else if (method == "eigen")
        R = rotation_eigen_reconstruct(spec, tol);
    else
        throw std::invalid_argument("unknown method '" + method + "'");
    print_matrix(R, format);
    return 0;
}

int cmd_classify(const std::string& input, T tol_rel) {
    const Tolerance<T> tol{tol_rel, 1e-12};
    const Mat4<T> M = parse_matrix_auto<T>(input);
    const RotationReport<T> rep = classify_rotation(M, tol);
    nlohmann::json j;
    if (rep.is_rotation) {
        j = {{"is_rotation", true},
             {"direction", vec_json(rep.direction.coords)},
             {"fixed_point", vec_json(rep.fixed_point.coords)},
             {"theta", rep.theta},
             {"scale", rep.scale},
             {"eig_residual", rep.eig_residual}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    const StereoResult<T> sr = classify_stereo(M, tol);
    j["is_rotation"] = false;
    j["class"] = to_string(sr.cls);
    if (sr.cls == StereoClass::NotStereohomology) {
        if (!rep.note.empty()) j["note"] = rep.note;
        std::cout << j.dump() << "\n";
        return 1;
    }
    if (sr.cls != StereoClass::Identity) {
        j["row"] = sr.row;
        j["center"] = vec_json(sr.recovered.center.coords);
        j["plane"] = vec_json(sr.recovered.plane.coeffs);
        j["lambda"] = sr.recovered.lambda;
        if (sr.row >= 4 && sr.row <= 9) j["rho"] = sr.recovered.rho;
        if (sr.row >= 10) j["mu"] = sr.recovered.mu;
        j["residual"] = sr.residual;
    }
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_stereo(const std::string& kind, const std::vector<T>& s, const std::vector<T>& P,
               T lambda, T rho, T mu, const std::string& format, T tol_rel) {
    const Tolerance<T> tol{tol_rel, 1e-12};
    const HomPoint<T> center(s[0], s[1], s[2], s[3]);
    const Hyperplane<T> plane(P[0], P[1], P[2], P[3]);
    Mat4<T> M;
    if (kind == "projection")
        M = make_projection(center, plane, lambda, tol);
    else if (kind == "scaling")
        M = make_scaling(center, plane, rho, lambda, tol);
    else if (kind == "reflection")
        M = make_reflection(center, plane, lambda, tol);
    else if (kind == "shear")
        M = make_shear(center, plane, lambda, mu, tol);
    else
        throw std::invalid_argument("unknown kind '" + kind + "'");
    print_matrix(M, format);
    return 0;
}

int cmd_verify(const RotationSpec<T>& spec, T tol_rel, const std::string& format) {
    const Tolerance<T> tol{tol_rel, 1e-12};
    const T check_tol = std::max(tol_rel * T(10), T(1e-8));

    const Mat4<T> R = rotation_rodrigues(spec, tol);
    const Mat4<T> Rr = rotation_from_reflections(axis_to_plane_pair(spec.axis, tol), spec.theta, tol);
    const Mat4<T> Re = rotation_eigen_reconstruct(spec, tol);
    const T m_rr = detail::mat_proj_residual(R, Rr);
    const T m_re = detail::mat_proj_residual(R, Re);
    const T m_er = detail::mat_proj_residual(Rr, Re);
    const T method_agreement = std::max({m_rr, m_re, m_er});

    const Vec4<T> rp = R * spec.axis.point.coords - spec.axis.point.coords;
    const Vec4<T> rd = R * spec.axis.dir.coords - spec.axis.dir.coords;
    const T axis_residual = std::max(norm(rp), norm(rd));

    T orth = T(0), detb;
    {
        Mat4<T> B{}; // 3x3 block embedded back into a 4x4 with unit corner
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) B(i, j) = R(i, j);
        B(3, 3) = T(1);
        const Mat4<T> G = transpose(B) * B - Mat4<T>::identity();
        orth = frobenius_norm(G);
        detb = det(B);
    }
    const T orth_residual = std::max(orth, std::abs(detb - T(1)));

    const RoundTrip<T> rt = round_trip(spec, tol);
    const T rt_residual =
        rt.report.is_rotation
            ? std::max({rt.direction_error, rt.theta_error, rt.axis_distance})
            : std::numeric_limits<T>::infinity();

    const bool half_turn = std::abs(std::abs(spec.theta) - std::numbers::pi) < 1e-9;

    struct Check {
        const char* name;
        T value;
        T threshold;
    } checks[] = {
        {"method_agreement", method_agreement, check_tol},
        {"axis_eigenvector_residual", axis_residual, T(1e-10)},
        {"orthogonality", orth_residual, T(1e-12)},
        {"round_trip", rt_residual, check_tol},
    };

    bool all_ok = true;
    if (format == "json") {
        nlohmann::json j;
        for (const auto& c : checks) {
            const bool ok = c.value <= c.threshold;
            all_ok = all_ok && ok;
            j[c.name] = {{"residual", c.value}, {"threshold", c.threshold}, {"pass", ok}};
        }
        if (half_turn) j["note"] = "half-turn: axis direction sign is ambiguous";
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& c : checks) {
            const bool ok = c.value <= c.threshold;
            all_ok = all_ok && ok;
            std::printf("%-28s %11.4e  (<= %.1e)  %s\n", c.name, c.value, c.threshold,
                        ok ? "ok" : "FAIL");
        }
        if (half_turn) std::printf("note: half-turn, axis direction sign is ambiguous\n");
    }
    return all_ok ? 0 : 1;
}

int cmd_angle(const std::vector<T>& a, const std::vector<T>& b, const std::string& format) {
    const Hyperplane<T> p1(a[0], a[1], a[2], a[3]);
    const Hyperplane<T> p2(b[0], b[1], b[2], b[3]);
    const T w1 = dihedral_angle(p1, p2);
    const T w2 = dihedral_angle_laguerre(p1, p2);
    if (format == "json") {
        std::cout << nlohmann::json{{"arccos", w1}, {"laguerre", w2}}.dump() << "\n";
    } else {
        std::printf("arccos   %.17g\nlaguerre %.17g\n", w1, w2);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homogeneous 3D rotations and elementary projective transformations"};
    app.require_subcommand(1);

    std::string p_str, d_str, s_str, P_str, a_str, b_str;
    std::string method = "rodrigues", format = "text", kind, input = "-";
    double theta = 0, lambda = 1, rho = 2, mu = 1, tol_rel = 1e-9;
    bool degrees = false;
    std::uint64_t seed = 0;
    bool has_seed = false;

    auto* rot = app.add_subcommand("rotate", "rotation matrix from axis and angle");
    rot->add_option("-p,--point", p_str, "axis point x,y,z")->required();
    rot->add_option("-d,--dir", d_str, "axis direction a,b,c (normalized internally)")->required();
    rot->add_option("-t,--theta", theta, "rotation angle")->required();
    rot->add_option("-m,--method", method, "rodrigues | reflections | eigen");
    rot->add_flag("--degrees", degrees, "interpret the angle in degrees");
    rot->add_option("--format", format, "text | json");
    rot->add_option("--tol", tol_rel, "relative tolerance");

    auto* cls = app.add_subcommand("classify", "classify a homogeneous 4x4 matrix");
    cls->add_option("input", input, "matrix file, or - for stdin");
    cls->add_option("--tol", tol_rel, "relative tolerance");

    auto* ste = app.add_subcommand("stereo", "elementary transformation from center and plane");
    ste->add_option("-k,--kind", kind, "projection | scaling | reflection | shear")->required();
    ste->add_option("-s,--center", s_str, "center point x1,x2,x3,x4")->required();
    ste->add_option("-P,--plane", P_str, "plane coefficients a,b,c,d")->required();
    ste->add_option("--lambda", lambda, "scale parameter (default 1)");
    ste->add_option("--rho", rho, "second eigenvalue (scaling only)");
    ste->add_option("--mu", mu, "shear magnitude (shear only)");
    ste->add_option("--format", format, "text | json");
    ste->add_option("--tol", tol_rel, "relative tolerance");

    auto* ver = app.add_subcommand("verify", "cross-method and round-trip checks for one spec");
    ver->add_option("-p,--point", p_str, "axis point x,y,z");
    ver->add_option("-d,--dir", d_str, "axis direction a,b,c");
    ver->add_option("-t,--theta", theta, "rotation angle");
    ver->add_flag("--degrees", degrees, "interpret the angle in degrees");
    ver->add_option("--seed", seed, "derive the spec from a seed instead")->each([&](const std::string&) {
        has_seed = true;
    });
    ver->add_option("--format", format, "text | json");
    ver->add_option("--tol", tol_rel, "relative tolerance");

    auto* ang = app.add_subcommand("angle", "dihedral angle between two planes, both modes");
    ang->add_option("-a,--plane-a", a_str, "first plane a,b,c,d")->required();
    ang->add_option("-b,--plane-b", b_str, "second plane a,b,c,d")->required();
    ang->add_option("--format", format, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (rot->parsed())
            return cmd_rotate(parse_csv(p_str, 3, "point"), parse_csv(d_str, 3, "dir"), theta,
                              degrees, method, format, tol_rel);
        if (cls->parsed()) return cmd_classify(read_input(input), tol_rel);
        if (ste->parsed())
            return cmd_stereo(kind, parse_csv(s_str, 4, "center"), parse_csv(P_str, 4, "plane"),
                              lambda, rho, mu, format, tol_rel);
        if (ver->parsed()) {
            if (has_seed) return cmd_verify(spec_from_seed(seed), tol_rel, format);
            if (p_str.empty() || d_str.empty())
                throw std::invalid_argument("verify needs -p/-d/-t or --seed");
            if (degrees) theta *= std::numbers::pi / 180.0;
            const auto p = parse_csv(p_str, 3, "point");
            const auto d = parse_csv(d_str, 3, "dir");
            const RotationSpec<T> spec{AxisByPointDir<T>(HomPoint<T>::point(p[0], p[1], p[2]),
                                                         HomPoint<T>::direction(d[0], d[1], d[2])),
                                       theta};
            return cmd_verify(spec, tol_rel, format);
        }
        if (ang->parsed())
            return cmd_angle(parse_csv(a_str, 4, "plane-a"), parse_csv(b_str, 4, "plane-b"),
                             format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
