#include "tesscode/geometry.hpp"

#include <algorithm>

namespace tess {

std::string surface_name(Surface s) {
    switch (s) {
        case Surface::Sphere: return "sphere";
        case Surface::Euclidean: return "euclidean";
        case Surface::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

Surface surface_from_name(const std::string& s) {
    if (s == "sphere") return Surface::Sphere;
    if (s == "euclidean") return Surface::Euclidean;
    if (s == "hyperbolic") return Surface::Hyperbolic;
    throw std::invalid_argument("unknown surface name: " + s);
}

Surface classify_tessellation(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2) throw std::invalid_argument("tessellation integers must be >= 2");
    // sign of qr + pr + pq - pqr  <=>  sign of 1/p + 1/q + 1/r - 1
    long long s = 1LL * q * r + 1LL * p * r + 1LL * p * q - 1LL * p * q * r;
    if (s > 0) return Surface::Sphere;
    if (s == 0) return Surface::Euclidean;
    return Surface::Hyperbolic;
}

SurfacePoint surface_origin(Surface kind) {
    switch (kind) {
        case Surface::Sphere: return {kind, {0, 0, 1}};
        case Surface::Euclidean: return {kind, {0, 0, 1}};
        case Surface::Hyperbolic: return {kind, {1, 0, 0}};
    }
    return {};
}

SurfacePoint sphere_point(double theta, double phi) {
    return {Surface::Sphere, {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}};
}

SurfacePoint euclid_point(double x, double y) { return {Surface::Euclidean, {x, y, 1.0}}; }

SurfacePoint hyperbolic_point(double eta, double theta) {
    return {Surface::Hyperbolic, {std::cosh(eta), std::sinh(eta) * std::cos(theta), std::sinh(eta) * std::sin(theta)}};
}

void check_point(const SurfacePoint& p, double tol) {
    double defect = 0;
    switch (p.kind) {
        case Surface::Sphere: defect = std::abs(dot(p.v, p.v) - 1.0); break;
        case Surface::Euclidean: defect = std::abs(p.v.z - 1.0); break;
        case Surface::Hyperbolic:
            defect = std::abs(mdot(p.v, p.v) + 1.0);
            if (p.v.x < 1.0 - tol) defect = std::max(defect, 1.0 - p.v.x);
            break;
    }
    if (defect > tol) throw std::invalid_argument("point violates surface constraint, defect " + std::to_string(defect));
}

Mat3 operator*(const Mat3& A, const Mat3& B) {
    Mat3 C;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += A(i, k) * B(k, j);
            C(i, j) = s;
        }
    return C;
}

Vec3 operator*(const Mat3& A, const Vec3& v) {
    return {A(0, 0) * v.x + A(0, 1) * v.y + A(0, 2) * v.z,
            A(1, 0) * v.x + A(1, 1) * v.y + A(1, 2) * v.z,
            A(2, 0) * v.x + A(2, 1) * v.y + A(2, 2) * v.z};
}

double max_abs_diff(const Mat3& A, const Mat3& B) {
    double m = 0;
    for (int i = 0; i < 9; ++i) m = std::max(m, std::abs(A.a[i] - B.a[i]));
    return m;
}

static void require_same_kind(Surface a, Surface b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": surface kind mismatch");
}

double distance(const SurfacePoint& a, const SurfacePoint& b) {
    require_same_kind(a.kind, b.kind, "distance");
    switch (a.kind) {
        case Surface::Sphere: {
            double c = norm(a.v - b.v);
            if (c < 1.0) return 2.0 * std::asin(std::min(1.0, c / 2.0));
            return std::acos(std::clamp(dot(a.v, b.v), -1.0, 1.0));
        }
        case Surface::Euclidean: {
            double dx = a.v.x - b.v.x, dy = a.v.y - b.v.y;
            return std::hypot(dx, dy);
        }
        case Surface::Hyperbolic: {
            // Minkowski norm of the difference is 2 cosh d - 2 = 4 sinh^2(d/2)
            Vec3 d = a.v - b.v;
            double q = std::max(0.0, mdot(d, d));
            return 2.0 * std::asinh(std::sqrt(q) / 2.0);
        }
    }
    return 0;
}

static Mat3 planar_rotation(double alpha, int i, int j) {
    // rotation in the (i,j) coordinate plane
    Mat3 R;
    double c = std::cos(alpha), s = std::sin(alpha);
    R(i, i) = c;
    R(i, j) = -s;
    R(j, i) = s;
    R(j, j) = c;
    return R;
}

Isometry rotation_about(const SurfacePoint& c, double alpha) {
    switch (c.kind) {
        case Surface::Sphere: {
            // Rodrigues about the unit axis c
            double s = std::sin(alpha), t = 1.0 - std::cos(alpha);
            const Vec3& u = c.v;
            Mat3 K{std::array<double, 9>{0, -u.z, u.y, u.z, 0, -u.x, -u.y, u.x, 0}};
            Mat3 K2 = K * K;
            Mat3 R;
            for (int i = 0; i < 9; ++i) R.a[i] = Mat3::identity().a[i] + s * K.a[i] + t * K2.a[i];
            return {c.kind, R};
        }
        case Surface::Euclidean: {
            Mat3 R = planar_rotation(alpha, 0, 1);
            // translation part t = c - R c
            R(0, 2) = c.v.x - (R(0, 0) * c.v.x + R(0, 1) * c.v.y);
            R(1, 2) = c.v.y - (R(1, 0) * c.v.x + R(1, 1) * c.v.y);
            return {c.kind, R};
        }
        case Surface::Hyperbolic: {
            // conjugate the origin rotation by the boost taking origin -> c
            Mat3 rot = planar_rotation(alpha, 1, 2);
            if (c.v.x <= 1.0 + 1e-15) return {c.kind, rot};
            double eta = std::acosh(c.v.x);
            double th = std::atan2(c.v.z, c.v.y);
            Mat3 Rz = planar_rotation(th, 1, 2);
            Mat3 RzT = planar_rotation(-th, 1, 2);
            Mat3 B;
            B(0, 0) = std::cosh(eta);
            B(0, 1) = std::sinh(eta);
            B(1, 0) = std::sinh(eta);
            B(1, 1) = std::cosh(eta);
            B(2, 2) = 1.0;
            Mat3 Binv = B;
            Binv(0, 1) = -B(0, 1);
            Binv(1, 0) = -B(1, 0);
            Mat3 T = Rz * B * RzT;
            Mat3 Tinv = Rz * Binv * RzT;
            return {c.kind, T * rot * Tinv};
        }
    }
    return Isometry::identity(c.kind);
}

double rotated_point_distance(double d0, double alpha, Surface kind) {
    if (d0 < 0) throw std::invalid_argument("rotated_point_distance: d0 must be >= 0");
    switch (kind) {
        case Surface::Sphere: {
            double s = std::sin(d0), c = std::cos(d0);
            return std::acos(std::clamp(s * s * std::cos(alpha) + c * c, -1.0, 1.0));
        }
        case Surface::Euclidean: return 2.0 * d0 * std::abs(std::sin(alpha / 2.0));
        case Surface::Hyperbolic: {
            // cosh d = cosh^2 d0 - sinh^2 d0 cos alpha = 1 + 2 sinh^2 d0 sin^2(alpha/2)
            double sh = std::sinh(d0), sa = std::sin(alpha / 2.0);
            double q = 2.0 * sh * sh * sa * sa;  // cosh d - 1 = 2 sinh^2(d/2)
            return 2.0 * std::asinh(std::sqrt(q / 2.0));
        }
    }
    return 0;
}

Isometry compose(const Isometry& g, const Isometry& h) {
    require_same_kind(g.kind, h.kind, "compose");
    return orthonormalize({g.kind, g.m * h.m});
}

Isometry inverse(const Isometry& g) {
    switch (g.kind) {
        case Surface::Sphere: {
            Mat3 T;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) T(i, j) = g.m(j, i);
            return {g.kind, T};
        }
        case Surface::Euclidean: {
            Mat3 T;
            // [R t]^{-1} = [R^T, -R^T t]
            T(0, 0) = g.m(0, 0);
            T(0, 1) = g.m(1, 0);
            T(1, 0) = g.m(0, 1);
            T(1, 1) = g.m(1, 1);
            T(0, 2) = -(T(0, 0) * g.m(0, 2) + T(0, 1) * g.m(1, 2));
            T(1, 2) = -(T(1, 0) * g.m(0, 2) + T(1, 1) * g.m(1, 2));
            T(2, 0) = T(2, 1) = 0;
            T(2, 2) = 1;
            return {g.kind, T};
        }
        case Surface::Hyperbolic: {
            // M^{-1} = eta M^T eta
            Mat3 T;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double s = (i == 0 ? -1.0 : 1.0) * (j == 0 ? -1.0 : 1.0);
                    T(i, j) = s * g.m(j, i);
                }
            return {g.kind, T};
        }
    }
    return g;
}

static Vec3 reproject(Surface kind, Vec3 v) {
    switch (kind) {
        case Surface::Sphere: {
            double n = norm(v);
            return v * (1.0 / n);
        }
        case Surface::Euclidean: return {v.x / v.z, v.y / v.z, 1.0};
        case Surface::Hyperbolic: {
            double q = -mdot(v, v);
            v = v * (1.0 / std::sqrt(std::max(q, 1e-300)));
            if (v.x < 0) v = v * -1.0;
            return v;
        }
    }
    return v;
}

SurfacePoint apply(const Isometry& g, const SurfacePoint& p) {
    require_same_kind(g.kind, p.kind, "apply");
    return {p.kind, reproject(p.kind, g.m * p.v)};
}

Isometry orthonormalize(const Isometry& g) {
    Mat3 M = g.m;
    switch (g.kind) {
        case Surface::Sphere: {
            Vec3 c0{M(0, 0), M(1, 0), M(2, 0)};
            Vec3 c1{M(0, 1), M(1, 1), M(2, 1)};
            c0 = c0 * (1.0 / norm(c0));
            c1 = c1 - c0 * dot(c1, c0);
            c1 = c1 * (1.0 / norm(c1));
            Vec3 c2 = cross(c0, c1);
            Mat3 R;
            for (int i = 0; i < 3; ++i) {
                R(i, 0) = c0[i];
                R(i, 1) = c1[i];
                R(i, 2) = c2[i];
            }
            return {g.kind, R};
        }
        case Surface::Euclidean: {
            Vec3 c0{M(0, 0), M(1, 0), 0};
            double n = std::hypot(c0.x, c0.y);
            c0 = c0 * (1.0 / n);
            Vec3 c1{-c0.y, c0.x, 0};
            if (M(0, 1) * c1.x + M(1, 1) * c1.y < 0) c1 = c1 * -1.0;
            Mat3 R;
            R(0, 0) = c0.x;
            R(1, 0) = c0.y;
            R(0, 1) = c1.x;
            R(1, 1) = c1.y;
            R(0, 2) = M(0, 2);
            R(1, 2) = M(1, 2);
            R(2, 0) = R(2, 1) = 0;
            R(2, 2) = 1;
            return {g.kind, R};
        }
        case Surface::Hyperbolic: {
            // Minkowski Gram-Schmidt: column 0 timelike, columns 1,2 spacelike
            Vec3 c0{M(0, 0), M(1, 0), M(2, 0)};
            Vec3 c1{M(0, 1), M(1, 1), M(2, 1)};
            Vec3 c2{M(0, 2), M(1, 2), M(2, 2)};
            c0 = c0 * (1.0 / std::sqrt(std::max(-mdot(c0, c0), 1e-300)));
            if (c0.x < 0) c0 = c0 * -1.0;
            c1 = c1 + c0 * mdot(c1, c0);  // metric of c0 is -1, so projection flips sign
            c1 = c1 * (1.0 / std::sqrt(std::max(mdot(c1, c1), 1e-300)));
            c2 = c2 + c0 * mdot(c2, c0) - c1 * mdot(c2, c1);
            c2 = c2 * (1.0 / std::sqrt(std::max(mdot(c2, c2), 1e-300)));
            Mat3 R;
            for (int i = 0; i < 3; ++i) {
                R(i, 0) = c0[i];
                R(i, 1) = c1[i];
                R(i, 2) = c2[i];
            }
            // restore orientation if Gram-Schmidt flipped the last column
            double det = R(0, 0) * (R(1, 1) * R(2, 2) - R(1, 2) * R(2, 1)) -
                         R(0, 1) * (R(1, 0) * R(2, 2) - R(1, 2) * R(2, 0)) +
                         R(0, 2) * (R(1, 0) * R(2, 1) - R(1, 1) * R(2, 0));
            if (det < 0)
                for (int i = 0; i < 3; ++i) R(i, 2) = -R(i, 2);
            return {g.kind, R};
        }
    }
    return g;
}

double isometry_defect(const Isometry& g) {
    const Mat3& M = g.m;
    double d = 0;
    switch (g.kind) {
        case Surface::Sphere: {
            Mat3 T;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) T(i, j) = M(j, i);
            d = max_abs_diff(T * M, Mat3::identity());
            break;
        }
        case Surface::Euclidean: {
            double c0 = std::hypot(M(0, 0), M(1, 0)) - 1.0;
            double c1 = std::hypot(M(0, 1), M(1, 1)) - 1.0;
            double ortho = M(0, 0) * M(0, 1) + M(1, 0) * M(1, 1);
            double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0) - 1.0;
            d = std::max({std::abs(c0), std::abs(c1), std::abs(ortho), std::abs(det), std::abs(M(2, 0)),
                          std::abs(M(2, 1)), std::abs(M(2, 2) - 1.0)});
            break;
        }
        case Surface::Hyperbolic: {
            // M^T eta M = eta, upper sheet preserved
            Mat3 E;
            E(0, 0) = -1;
            Mat3 MT;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) MT(i, j) = M(j, i);
            d = max_abs_diff(MT * (E * M), E);
            if (M(0, 0) < 1.0) d = std::max(d, 1.0 - M(0, 0));
            break;
        }
    }
    return d;
}

std::array<double, 2> project_poincare(const SurfacePoint& p) {
    if (p.kind != Surface::Hyperbolic) throw std::invalid_argument("project_poincare: point is not hyperbolic");
    double s = 1.0 + p.v.x;
    return {p.v.y / s, p.v.z / s};
}

TriangleFrame unit_triangle(int p, int q, int r) {
    Surface kind = classify_tessellation(p, q, r);
    const double pi = 3.14159265358979323846;
    double A = pi / p, B = pi / q, C = pi / r;
    TriangleFrame tri;
    tri.kind = kind;
    tri.p = p;
    tri.q = q;
    tri.r = r;
    tri.C = surface_origin(kind);
    switch (kind) {
        case Surface::Sphere: {
            // spherical side law: cos a = (cos A + cos B cos C)/(sin B sin C)
            double a = std::acos((std::cos(A) + std::cos(B) * std::cos(C)) / (std::sin(B) * std::sin(C)));
            double b = std::acos((std::cos(B) + std::cos(C) * std::cos(A)) / (std::sin(C) * std::sin(A)));
            tri.A = sphere_point(b, 0.0);
            tri.B = sphere_point(a, C);
            tri.side_ca = b;
            tri.side_cb = a;
            break;
        }
        case Surface::Euclidean: {
            double b = 1.0;
            double a = std::sin(A) / std::sin(B) * b;
            tri.A = euclid_point(b, 0.0);
            tri.B = euclid_point(a * std::cos(C), a * std::sin(C));
            tri.side_ca = b;
            tri.side_cb = a;
            break;
        }
        case Surface::Hyperbolic: {
            double a = std::acosh((std::cos(A) + std::cos(B) * std::cos(C)) / (std::sin(B) * std::sin(C)));
            double b = std::acosh((std::cos(B) + std::cos(C) * std::cos(A)) / (std::sin(C) * std::sin(A)));
            tri.A = hyperbolic_point(b, 0.0);
            tri.B = hyperbolic_point(a, C);
            tri.side_ca = b;
            tri.side_cb = a;
            break;
        }
    }
    return tri;
}

GeneratorIsometries generator_isometries(const TriangleFrame& tri) {
    const double pi = 3.14159265358979323846;
    return {rotation_about(tri.A, 2 * pi / tri.p), rotation_about(tri.B, 2 * pi / tri.q),
            rotation_about(tri.C, 2 * pi / tri.r)};
}

bool point_in_triangle(const TriangleFrame& tri, const SurfacePoint& p) {
    // Each edge lies in a plane through the embedding origin (sphere and
    // hyperboloid) or is a 2D line (Euclidean). The point must be on each
    // edge's inner side, where the inner side is the one containing the
    // opposite vertex.
    auto side = [&](const SurfacePoint& v1, const SurfacePoint& v2, const SurfacePoint& x) {
        if (tri.kind == Surface::Euclidean) {
            double ex = v2.v.x - v1.v.x, ey = v2.v.y - v1.v.y;
            return ex * (x.v.y - v1.v.y) - ey * (x.v.x - v1.v.x);
        }
        // geodesics lift to planes through the embedding origin on both the
        // sphere and the hyperboloid; det(v1, v2, x) picks the side
        return dot(cross(v1.v, v2.v), x.v);
    };
    const double eps = 1e-9;
    double sab = side(tri.A, tri.B, p), sab0 = side(tri.A, tri.B, tri.C);
    double sbc = side(tri.B, tri.C, p), sbc0 = side(tri.B, tri.C, tri.A);
    double sca = side(tri.C, tri.A, p), sca0 = side(tri.C, tri.A, tri.B);
    return sab * (sab0 > 0 ? 1 : -1) >= -eps && sbc * (sbc0 > 0 ? 1 : -1) >= -eps &&
           sca * (sca0 > 0 ? 1 : -1) >= -eps;
}

}  // namespace tess
