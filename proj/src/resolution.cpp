#include "tesscode/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tess {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double min_pairwise_distance_serial(Surface kind, const std::vector<SurfacePoint>& pts) {
    double best = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d = distance(pts[i], pts[j]);
            if (d > 1e-6 && d < best) best = d;  // fp-coincident copies are not a pair
        }
    return best / 2;
}

double min_pairwise_distance_parallel(Surface kind, const std::vector<SurfacePoint>& pts) {
    double best = 1e300;
    const std::ptrdiff_t n = (std::ptrdiff_t)pts.size();
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        for (std::ptrdiff_t j = i + 1; j < n; ++j) {
            double d = distance(pts[i], pts[j]);
            if (d > 1e-6 && d < best) best = d;
        }
    return best / 2;
}

ResolutionReport resolution(const Code& code, bool run_scan, bool parallel) {
    ResolutionReport rpt;
    rpt.seed = code.seed;
    const TriangleFrame& tri = code.tri;
    const SurfacePoint vs[3] = {tri.A, tri.B, tri.C};
    const int orders[3] = {tri.p, tri.q, tri.r};
    double best = 1e300;
    for (int i = 0; i < 3; ++i) {
        double d0 = distance(code.seed, vs[i]);
        if (d0 < 1e-7) continue;  // rotation fixes the seed: no pair
        double d = rotated_point_distance(d0, 2 * kPi / orders[i], tri.kind);
        if (d < best) {
            best = d;
            rpt.argmin_vertex = i;
        }
    }
    if (best >= 1e300) throw std::runtime_error("resolution: seed is fixed by all vertex rotations");
    rpt.dx = best / 2;

    if (run_scan) {
        std::vector<SurfacePoint> pts;
        pts.reserve(code.points.size());
        for (const auto& pt : code.points) pts.push_back(pt.x);
        rpt.dx_scan = parallel ? min_pairwise_distance_parallel(tri.kind, pts)
                               : min_pairwise_distance_serial(tri.kind, pts);
        rpt.methods_agree = std::abs(rpt.dx - rpt.dx_scan) < 1e-7;
        if (!rpt.methods_agree)
            throw std::runtime_error("resolution: closed-form and pairwise-scan values disagree (dx=" +
                                     std::to_string(rpt.dx) + ", scan=" + std::to_string(rpt.dx_scan) + ")");
    }
    return rpt;
}

namespace {

struct Objective {
    TriangleFrame tri;

    SurfacePoint seed_at(double c1, double c2) const {
        switch (tri.kind) {
            case Surface::Sphere: return sphere_point(c1, c2);
            case Surface::Euclidean: return euclid_point(c1, c2);
            case Surface::Hyperbolic: return hyperbolic_point(c1, c2);
        }
        return surface_origin(tri.kind);
    }

    // min of the three vertex-rotation distances; -inf outside the triangle
    // or inside the vertex exclusion disks
    double operator()(double c1, double c2) const {
        SurfacePoint p = seed_at(c1, c2);
        if (!point_in_triangle(tri, p)) return -1e9;
        const SurfacePoint vs[3] = {tri.A, tri.B, tri.C};
        const int orders[3] = {tri.p, tri.q, tri.r};
        double best = 1e300;
        for (int i = 0; i < 3; ++i) {
            double d0 = distance(p, vs[i]);
            if (d0 < 1e-6) return -1e9;  // vertex exclusion disk
            best = std::min(best, rotated_point_distance(d0, 2 * kPi / orders[i], tri.kind));
        }
        return best;
    }
};

struct NmResult {
    double c1, c2, value;
    int evals;
};

// plain 2-D Nelder-Mead maximization
NmResult nelder_mead(const Objective& f, double x0, double y0, double scale, int budget) {
    struct V {
        double x, y, v;
    };
    auto ev = [&](double x, double y) { return f(x, y); };
    V s[3] = {{x0, y0, ev(x0, y0)},
              {x0 + scale, y0, ev(x0 + scale, y0)},
              {x0, y0 + scale, ev(x0, y0 + scale)}};
    int evals = 3;
    for (int it = 0; it < budget; ++it) {
        std::sort(s, s + 3, [](const V& a, const V& b) { return a.v > b.v; });
        if (std::abs(s[0].v - s[2].v) < 1e-14 &&
            std::hypot(s[0].x - s[2].x, s[0].y - s[2].y) < 1e-12)
            break;
        double cx = (s[0].x + s[1].x) / 2, cy = (s[0].y + s[1].y) / 2;
        double rx = cx + (cx - s[2].x), ry = cy + (cy - s[2].y);
        double rv = ev(rx, ry);
        ++evals;
        if (rv > s[0].v) {
            double ex = cx + 2 * (cx - s[2].x), eyy = cy + 2 * (cy - s[2].y);
            double evv = ev(ex, eyy);
            ++evals;
            s[2] = evv > rv ? V{ex, eyy, evv} : V{rx, ry, rv};
        } else if (rv > s[1].v) {
            s[2] = {rx, ry, rv};
        } else {
            double kx = cx + 0.5 * (s[2].x - cx), ky = cy + 0.5 * (s[2].y - cy);
            double kv = ev(kx, ky);
            ++evals;
            if (kv > s[2].v) {
                s[2] = {kx, ky, kv};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
                    s[i].v = ev(s[i].x, s[i].y);
                    ++evals;
                }
            }
        }
    }
    std::sort(s, s + 3, [](const V& a, const V& b) { return a.v > b.v; });
    return {s[0].x, s[0].y, s[0].v, evals};
}

}  // namespace

SeedOptimum optimize_seed(int p, int q, int r, int starts, int iter_budget, std::uint64_t rng_seed) {
    Objective f{unit_triangle(p, q, r)};
    const TriangleFrame& tri = f.tri;

    // interior sample used as a start: blend chart coordinates of the three
    // vertices with random positive weights
    auto chart = [&](const SurfacePoint& v) -> std::array<double, 2> {
        switch (tri.kind) {
            case Surface::Sphere: return {std::acos(std::clamp(v.v.z, -1.0, 1.0)), std::atan2(v.v.y, v.v.x)};
            case Surface::Euclidean: return {v.v.x, v.v.y};
            case Surface::Hyperbolic: return {std::acosh(std::max(1.0, v.v.x)), std::atan2(v.v.z, v.v.y)};
        }
        return {0, 0};
    };
    auto ca = chart(tri.A), cb = chart(tri.B), cc = chart(tri.C);

    std::vector<NmResult> results(starts);
    for (int s = 0; s < starts; ++s) {
        std::mt19937_64 rng(rng_seed + 1000003ull * (std::uint64_t)s);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        double wa = u(rng), wb = u(rng), wc = u(rng), w = wa + wb + wc;
        double x0 = (wa * ca[0] + wb * cb[0] + wc * cc[0]) / w;
        double y0 = (wa * ca[1] + wb * cb[1] + wc * cc[1]) / w;
        results[s] = nelder_mead(f, x0, y0, 0.05, iter_budget);
    }
    // pick the best; ties resolved by coordinates so scheduling order is moot
    const NmResult* best = &results[0];
    for (const auto& rr : results)
        if (rr.value > best->value + 1e-15 ||
            (std::abs(rr.value - best->value) <= 1e-15 &&
             std::make_pair(rr.c1, rr.c2) < std::make_pair(best->c1, best->c2)))
            best = &rr;

    SeedOptimum opt;
    opt.c1 = best->c1;
    opt.c2 = best->c2;
    opt.seed = f.seed_at(best->c1, best->c2);
    opt.dx = best->value / 2;
    opt.evaluations = best->evals;

    const SurfacePoint vs[3] = {tri.A, tri.B, tri.C};
    const int orders[3] = {tri.p, tri.q, tri.r};
    double dd[3];
    for (int i = 0; i < 3; ++i)
        dd[i] = rotated_point_distance(distance(opt.seed, vs[i]), 2 * kPi / orders[i], tri.kind);
    opt.equal_residual = std::max({std::abs(dd[0] - dd[1]), std::abs(dd[1] - dd[2]), std::abs(dd[0] - dd[2])});
    opt.converged = opt.equal_residual < 1e-6;
    return opt;
}

}  // namespace tess
