#include "tesscode/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tess {

namespace {

std::string key_string(const std::vector<std::int64_t>& key) {
    std::string s;
    s.reserve(key.size() * 10);
    for (auto v : key) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

std::vector<std::int64_t> canonical_class_key(const CMat& logi, const std::vector<CMat>& stab) {
    std::vector<std::int64_t> best;
    for (const auto& s : stab) {
        auto k = logical_key(logi * s);
        if (best.empty() || k < best) best = std::move(k);
    }
    return best;
}

}  // namespace

std::size_t PointIndex::KeyHash::operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) {
        h ^= (std::size_t)v;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<PointIndex::Key> PointIndex::probe_keys(const Vec3& v) const {
    Key base;
    std::vector<int> near;
    double c[3] = {v.x, v.y, v.z};
    for (int i = 0; i < 3; ++i) {
        double t = c[i] / tol_;
        double fl = std::floor(t + 0.5);
        base[i] = (std::int64_t)fl;
        double frac = t + 0.5 - fl;
        if (frac < margin_ / tol_ || frac > 1.0 - margin_ / tol_) near.push_back(i);
    }
    std::vector<Key> keys{base};
    for (int idx : near) {
        std::size_t cnt = keys.size();
        for (std::size_t k = 0; k < cnt; ++k) {
            Key lo = keys[k], hi = keys[k];
            lo[idx] -= 1;
            hi[idx] += 1;
            keys.push_back(lo);
            keys.push_back(hi);
        }
    }
    return keys;
}

std::optional<std::size_t> PointIndex::insert(const Vec3& v, std::size_t id) {
    auto keys = probe_keys(v);
    for (const auto& k : keys) {
        auto it = map_.find(k);
        if (it != map_.end()) return it->second;
    }
    map_.emplace(keys[0], id);
    return std::nullopt;
}

std::optional<std::size_t> PointIndex::find(const Vec3& v) const {
    for (const auto& k : probe_keys(v)) {
        auto it = map_.find(k);
        if (it != map_.end()) return it->second;
    }
    return std::nullopt;
}

LogicalRep resolve_rep(const CodeSpec& spec) {
    LogicalRep rep = rep_by_name(spec.rep_name);
    rep.gen_a = eval_matrix_expr(rep, spec.ident_a);
    rep.gen_b = eval_matrix_expr(rep, spec.ident_b);
    if (unitarity_defect(rep.gen_a) > 1e-12 || unitarity_defect(rep.gen_b) > 1e-12)
        throw std::invalid_argument(spec.name + ": generator identification is not unitary");
    if (!spec.ident_c.empty()) {
        CMat gc = eval_matrix_expr(rep, spec.ident_c);
        CMat prod = rep.gen_a * rep.gen_b * gc;
        if (max_abs_diff(prod, CMat::identity(rep.dim)) > 1e-10)
            throw std::invalid_argument(spec.name + ": identifications violate rA*rB*rC = identity");
    }
    return rep;
}

SurfacePoint resolve_seed(const CodeSpec& spec, const TriangleFrame& tri) {
    switch (tri.kind) {
        case Surface::Sphere: return sphere_point(spec.seed_c1, spec.seed_c2);
        case Surface::Euclidean: return euclid_point(spec.seed_c1, spec.seed_c2);
        case Surface::Hyperbolic: return hyperbolic_point(spec.seed_c1, spec.seed_c2);
    }
    throw std::logic_error("unreachable");
}

Code build_code(const CodeSpec& spec) {
    Code code;
    code.spec = spec;
    code.tri = unit_triangle(spec.p, spec.q, spec.r);
    code.rep = resolve_rep(spec);
    code.seed = resolve_seed(spec, code.tri);
    const int d = code.rep.dim;

    if (!point_in_triangle(code.tri, code.seed))
        throw std::invalid_argument(spec.name + ": seed point lies outside the unit triangle");

    std::vector<cplx> sigma = spec.sigma;
    if (sigma.empty()) {
        sigma.assign(d, cplx(0, 0));
        sigma[0] = 1.0;
    }
    if ((int)sigma.size() != d) throw std::invalid_argument(spec.name + ": reference vector has wrong dimension");
    double n2 = 0;
    for (auto& s : sigma) n2 += std::norm(s);
    if (std::abs(n2 - 1.0) > 1e-9) {
        double s = 1.0 / std::sqrt(n2);
        for (auto& v : sigma) v *= s;
    }

    code.ball = enumerate_ball(code.tri, code.rep, code.seed, spec.trunc);
    code.quotient = quotient_check(code.ball, code.rep, spec.relation_exprs, spec.expected_order);
    if (!code.quotient.relations_ok) {
        std::ostringstream os;
        os << spec.name << ": extra relation does not map to the logical identity:";
        for (const auto& rc : code.quotient.relations)
            if (rc.logical_defect > 1e-9) os << " " << rc.expr << " (defect " << rc.logical_defect << ")";
        throw std::runtime_error(os.str());
    }

    // seed stabilizer (logical side)
    std::vector<std::vector<std::int64_t>> stab_keys;
    for (const auto& e : code.ball.elems) {
        if (distance(apply(e.geo, code.seed), code.seed) < 1e-7) {
            auto k = logical_key(e.logi);
            if (std::find(stab_keys.begin(), stab_keys.end(), k) == stab_keys.end()) {
                stab_keys.push_back(k);
                code.stabilizer_logicals.push_back(e.logi);
            }
        }
    }

    // merge points, assign classes
    code.kernel_elems.push_back(0);
    for (auto id : code.quotient.kernel_ids) code.kernel_elems.push_back(id);

    for (std::size_t ei = 0; ei < code.ball.elems.size(); ++ei) {
        const auto& e = code.ball.elems[ei];
        SurfacePoint x = apply(e.geo, code.seed);
        std::vector<cplx> amp(d);
        // <Sigma| rho_L(g)^+ |k> = conj( (rho_L(g) Sigma)_k )
        for (int k = 0; k < d; ++k) {
            cplx v = 0;
            for (int s = 0; s < d; ++s) v += e.logi(k, s) * sigma[s];
            amp[k] = std::conj(v);
        }
        auto existing = code.point_index.insert(x.v, code.points.size());
        if (existing) {
            auto& pa = code.point_amps[*existing];
            for (int k = 0; k < d; ++k) pa[k] += amp[k];
        } else {
            code.points.push_back({x, cplx(0, 0), ei, 0});
            code.point_amps.push_back(std::move(amp));
        }
    }

    // coset classes keyed by canonical logical matrix
    for (auto& pt : code.points) {
        const CMat& logi = code.ball.elems[pt.elem_id].logi;
        auto key = canonical_class_key(logi, code.stabilizer_logicals);
        std::string ks = key_string(key);
        auto it = code.class_lookup_.find(ks);
        if (it == code.class_lookup_.end()) {
            pt.cls = code.classes.size();
            code.class_lookup_.emplace(ks, pt.cls);
            code.classes.push_back({key, logi, code.point_amps[&pt - code.points.data()]});
        } else {
            pt.cls = it->second;
            // periodicity check: amplitudes must agree across the class
            const auto& ref = code.classes[it->second].amps;
            const auto& mine = code.point_amps[&pt - code.points.data()];
            for (int k = 0; k < d; ++k)
                if (std::abs(ref[k] - mine[k]) > 1e-7)
                    throw std::runtime_error(spec.name + ": amplitudes are not constant on a coset class");
        }
    }

    // per-codeword constellations (points with non-negligible amplitude)
    code.codewords.assign(d, Constellation{code.tri.kind, 0, {}});
    for (int k = 0; k < d; ++k) code.codewords[k].codeword = k;
    for (std::size_t pi = 0; pi < code.points.size(); ++pi) {
        for (int k = 0; k < d; ++k) {
            cplx a = code.point_amps[pi][k];
            if (std::abs(a) > 1e-9) {
                SupportPoint sp = code.points[pi];
                sp.amp = a;
                code.codewords[k].pts.push_back(sp);
            }
        }
    }
    for (int k = 0; k < d; ++k)
        if (code.codewords[k].pts.empty())
            throw std::runtime_error(spec.name + ": codeword " + std::to_string(k) +
                                     " has an empty constellation (all amplitudes vanished)");
    return code;
}

std::size_t Code::class_of_logical(const CMat& m) const {
    auto key = canonical_class_key(m, stabilizer_logicals);
    auto it = class_lookup_.find(key_string(key));
    if (it == class_lookup_.end()) throw std::runtime_error("logical coset class not present in the ball");
    return it->second;
}

CMat cell_gram(const Code& code) {
    const int d = code.dim();
    CMat g(d);
    for (const auto& cls : code.classes)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) += std::conj(cls.amps[i]) * cls.amps[j];
    return g;
}

cplx inner_product(const Code& code, int i, int j) {
    CMat g = cell_gram(code);
    double n = 0;
    for (int k = 0; k < code.dim(); ++k) n += g(k, k).real();
    n /= code.dim();
    return g(i, j) / n;
}

LogicalActionReport verify_logical_action(const Code& code, const Isometry& g) {
    LogicalActionReport rpt;
    const int d = code.dim();
    auto found = code.ball.find(g);
    if (!found) throw std::invalid_argument("verify_logical_action: isometry is not an enumerated group element");
    const CMat lambda = code.ball.elems[*found].logi;
    rpt.target = lambda;

    // pointwise: g must move each support point onto a support point of the
    // transported coset class (images leaving the ball are only counted)
    for (const auto& pt : code.points) {
        SurfacePoint y = apply(g, pt.x);
        auto hit = code.point_index.find(y.v);
        if (!hit) {
            ++rpt.boundary_skipped;
            continue;
        }
        if (distance(y, code.points[*hit].x) > 1e-7) {
            ++rpt.mismatches;
            continue;
        }
        std::size_t expect = code.class_of_logical(lambda * code.classes[pt.cls].rep_logi);
        if (code.points[*hit].cls != expect) ++rpt.mismatches;
        ++rpt.points_checked;
    }

    // cell-level matrix: M[j][k] = sum_cls conj(a_j[cls]) a_k[lambda^{-1} cls]
    CMat lam_inv = unitary_inverse(lambda);
    CMat M(d);
    for (const auto& cls : code.classes) {
        std::size_t src = code.class_of_logical(lam_inv * cls.rep_logi);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) M(j, k) += std::conj(cls.amps[j]) * code.classes[src].amps[k];
    }
    CMat gram = cell_gram(code);
    double n = 0;
    for (int k = 0; k < d; ++k) n += gram(k, k).real();
    n /= d;
    for (auto& v : M.a) v /= n;
    rpt.matrix = M;
    rpt.max_err = diff_up_to_phase(M, lambda, &rpt.phase);
    rpt.flagged = rpt.points_checked == 0 || rpt.mismatches > 0;
    return rpt;
}

Constellation apply_phase_profile(const Constellation& c, const std::function<cplx(const SurfacePoint&)>& f) {
    Constellation out = c;
    for (auto& pt : out.pts) {
        cplx ph = f(pt.x);
        if (std::abs(std::abs(ph) - 1.0) > 1e-9)
            throw std::invalid_argument("apply_phase_profile: profile is not a unit phase on the support");
        pt.amp *= ph;
    }
    return out;
}

EuclideanCell euclidean_cell(const Code& code) {
    if (code.tri.kind != Surface::Euclidean)
        throw std::invalid_argument("euclidean_cell: code is not Euclidean");
    // pure translations among kernel elements
    std::vector<std::array<double, 2>> trans;
    for (auto id : code.kernel_elems) {
        const Mat3& m = code.ball.elems[id].geo.m;
        if (std::abs(m(0, 0) - 1) < 1e-9 && std::abs(m(1, 1) - 1) < 1e-9 && std::abs(m(0, 1)) < 1e-9 &&
            std::abs(m(1, 0)) < 1e-9) {
            double tx = m(0, 2), ty = m(1, 2);
            if (std::hypot(tx, ty) > 1e-9) trans.push_back({tx, ty});
        }
    }
    if (trans.size() < 2) throw std::runtime_error("euclidean_cell: fewer than two kernel translations in the ball");
    std::sort(trans.begin(), trans.end(), [](auto& a, auto& b) {
        return std::hypot(a[0], a[1]) < std::hypot(b[0], b[1]);
    });
    EuclideanCell cell;
    cell.v1 = trans[0];
    bool got = false;
    for (std::size_t i = 1; i < trans.size() && !got; ++i) {
        double det = cell.v1[0] * trans[i][1] - cell.v1[1] * trans[i][0];
        if (std::abs(det) > 1e-9) {
            cell.v2 = trans[i];
            got = true;
        }
    }
    if (!got) throw std::runtime_error("euclidean_cell: kernel translations are collinear");

    double det = cell.v1[0] * cell.v2[1] - cell.v1[1] * cell.v2[0];
    auto reduce = [&](double x, double y) {
        // coefficients in the (v1, v2) basis
        double c1 = (x * cell.v2[1] - y * cell.v2[0]) / det;
        double c2 = (-x * cell.v1[1] + y * cell.v1[0]) / det;
        c1 -= std::floor(c1 + 1e-9);
        c2 -= std::floor(c2 + 1e-9);
        return std::array<double, 2>{c1 * cell.v1[0] + c2 * cell.v2[0], c1 * cell.v1[1] + c2 * cell.v2[1]};
    };
    cell.reduced.resize(code.dim());
    for (int k = 0; k < code.dim(); ++k) {
        PointIndex seen(1e-6, 1e-9);
        for (const auto& pt : code.codewords[k].pts) {
            auto xy = reduce(pt.x.v.x, pt.x.v.y);
            SupportPoint sp = pt;
            sp.x = euclid_point(xy[0], xy[1]);
            if (!seen.insert(sp.x.v, cell.reduced[k].size())) cell.reduced[k].push_back(sp);
        }
    }
    return cell;
}

}  // namespace tess
