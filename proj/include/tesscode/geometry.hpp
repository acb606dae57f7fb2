#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tess {

enum class Surface { Sphere, Euclidean, Hyperbolic };

std::string surface_name(Surface s);
Surface surface_from_name(const std::string& s);

/// Curvature class of the {p,q,r} tessellation, decided in exact integer
/// arithmetic from the sign of 1/p + 1/q + 1/r - 1.
Surface classify_tessellation(int p, int q, int r);

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
// Minkowski form with signature (-,+,+); vectors stored as (x0, x1, x2).
inline double mdot(const Vec3& a, const Vec3& b) { return -a.x * b.x + a.y * b.y + a.z * b.z; }

/// Point on one of the three unit-curvature surfaces, in embedding coordinates.
/// Sphere: unit vector in R^3. Euclidean: (x, y, 1). Hyperbolic: upper-sheet
/// hyperboloid vector with -x0^2 + x1^2 + x2^2 = -1, x0 >= 1.
struct SurfacePoint {
    Surface kind = Surface::Euclidean;
    Vec3 v;
};

SurfacePoint surface_origin(Surface kind);
SurfacePoint sphere_point(double theta, double phi);
SurfacePoint euclid_point(double x, double y);
SurfacePoint hyperbolic_point(double eta, double theta);

/// Checks the embedding constraint; throws std::invalid_argument when violated
/// beyond `tol`.
void check_point(const SurfacePoint& p, double tol = 1e-12);

struct Mat3 {
    // row-major
    std::array<double, 9> a{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double& operator()(int r, int c) { return a[3 * r + c]; }
    double operator()(int r, int c) const { return a[3 * r + c]; }
    static Mat3 identity() { return Mat3{}; }
};

Mat3 operator*(const Mat3& A, const Mat3& B);
Vec3 operator*(const Mat3& A, const Vec3& v);
double max_abs_diff(const Mat3& A, const Mat3& B);

/// Orientation-preserving isometry as a 3x3 matrix acting on embedding
/// coordinates. Sphere: SO(3). Euclidean: affine [R t; 0 1]. Hyperbolic:
/// SO(2,1)^+ (upper sheet preserved).
struct Isometry {
    Surface kind = Surface::Euclidean;
    Mat3 m;

    static Isometry identity(Surface kind) { return Isometry{kind, Mat3::identity()}; }
};

/// Geodesic distance. Small separations are evaluated through chord length
/// (2 asin, 2 asinh) instead of arccos/arccosh, which lose half the digits
/// near zero.
double distance(const SurfacePoint& a, const SurfacePoint& b);

/// Rotation by `alpha` about the point `c` (right-handed about the outward
/// axis on the sphere, counterclockwise in the plane / hyperboloid charts).
Isometry rotation_about(const SurfacePoint& c, double alpha);

/// Distance between a point at distance d0 from a rotation center and its
/// image under rotation by alpha, in closed form per surface.
double rotated_point_distance(double d0, double alpha, Surface kind);

Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);
SurfacePoint apply(const Isometry& g, const SurfacePoint& p);

/// Snaps the matrix back onto its isometry group (Gram-Schmidt in the
/// surface metric). Keeps long word products from drifting off the group.
Isometry orthonormalize(const Isometry& g);

/// Largest violation of the defining matrix identity (M^T M = I, affine
/// structure, or M^T eta M = eta).
double isometry_defect(const Isometry& g);

/// Hyperbolic point mapped to the Poincare disk: (u, v) = (x1, x2)/(1 + x0).
std::array<double, 2> project_poincare(const SurfacePoint& p);

/// Unit triangle of the {p,q,r} tessellation with interior angles
/// pi/p, pi/q, pi/r at vertices A, B, C. Vertex C sits at the surface
/// origin, vertex A along the theta = 0 ray, vertex B at azimuth pi/r.
/// Euclidean triangles use |CA| = 1.
struct TriangleFrame {
    Surface kind;
    int p, q, r;
    SurfacePoint A, B, C;
    double side_ca;  // |CA|, the side opposite B
    double side_cb;  // |CB|, the side opposite A
};

TriangleFrame unit_triangle(int p, int q, int r);

/// Generator rotations of the proper triangle group: rotation by 2*pi/p
/// about A, 2*pi/q about B, 2*pi/r about C. Satisfies rho(a) rho(b) rho(c) = I.
struct GeneratorIsometries {
    Isometry a, b, c;
};
GeneratorIsometries generator_isometries(const TriangleFrame& tri);

/// True if p lies inside the closed triangle (geodesic side tests).
bool point_in_triangle(const TriangleFrame& tri, const SurfacePoint& p);

}  // namespace tess
