#include "tesscode/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tess {

namespace {

Word invert_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        char c = *it;
        out.push_back(std::isupper((unsigned char)c) ? (char)std::tolower(c) : (char)std::toupper(c));
    }
    return out;
}

Word repeat_word(const Word& w, long e) {
    Word base = e < 0 ? invert_word(w) : w;
    long n = std::abs(e);
    Word out;
    for (long i = 0; i < n; ++i) out += base;
    return out;
}

}  // namespace

Word expand_word_expr(const std::string& expr) {
    // tokens separated by '*': rA, rB, rC, Omega with optional ^<int>
    static const Word wA = "a", wB = "b";
    static const Word wC = invert_word("ab");                  // rC = (rA rB)^-1
    static const Word wOmega = wB + wA + wC;                   // Omega = rB rA rC
    Word out;
    std::size_t i = 0;
    while (i < expr.size()) {
        while (i < expr.size() && (std::isspace((unsigned char)expr[i]) || expr[i] == '*')) ++i;
        if (i >= expr.size()) break;
        std::size_t j = i;
        while (j < expr.size() && std::isalnum((unsigned char)expr[j])) ++j;
        std::string tok = expr.substr(i, j - i);
        i = j;
        Word base;
        if (tok == "rA") base = wA;
        else if (tok == "rB") base = wB;
        else if (tok == "rC") base = wC;
        else if (tok == "Omega") base = wOmega;
        else throw std::invalid_argument("unknown word token '" + tok + "' in: " + expr);
        long e = 1;
        if (i < expr.size() && expr[i] == '^') {
            ++i;
            std::size_t k = i;
            if (k < expr.size() && (expr[k] == '-' || expr[k] == '+')) ++k;
            while (k < expr.size() && std::isdigit((unsigned char)expr[k])) ++k;
            e = std::stol(expr.substr(i, k - i));
            i = k;
        }
        out += repeat_word(base, e);
    }
    return out;
}

CMat logical_image(const Word& word, const LogicalRep& rep) {
    CMat M = CMat::identity(rep.dim);
    CMat ga_inv = unitary_inverse(rep.gen_a), gb_inv = unitary_inverse(rep.gen_b);
    for (char c : word) {
        switch (c) {
            case 'a': M = M * rep.gen_a; break;
            case 'A': M = M * ga_inv; break;
            case 'b': M = M * rep.gen_b; break;
            case 'B': M = M * gb_inv; break;
            default: throw std::invalid_argument(std::string("bad word letter: ") + c);
        }
    }
    return M;
}

Isometry geometric_image(const Word& word, const GeneratorIsometries& gens) {
    Isometry M = Isometry::identity(gens.a.kind);
    Isometry a_inv = inverse(gens.a), b_inv = inverse(gens.b);
    for (char c : word) {
        switch (c) {
            case 'a': M = compose(M, gens.a); break;
            case 'A': M = compose(M, a_inv); break;
            case 'b': M = compose(M, gens.b); break;
            case 'B': M = compose(M, b_inv); break;
            default: throw std::invalid_argument(std::string("bad word letter: ") + c);
        }
    }
    return M;
}

SignatureSet::SignatureSet(Surface kind, double tol, double margin)
    : kind_(kind), tol_(tol), margin_(margin) {
    probe1_ = surface_origin(kind);
    switch (kind) {
        case Surface::Sphere: probe2_ = sphere_point(0.9, 0.4); break;
        case Surface::Euclidean: probe2_ = euclid_point(0.37, 0.71); break;
        case Surface::Hyperbolic: probe2_ = hyperbolic_point(0.8, 0.5); break;
    }
}

std::size_t SignatureSet::KeyHash::operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) {
        h ^= (std::size_t)v;
        h *= 1099511628211ull;
    }
    return h;
}

std::array<double, 6> SignatureSet::signature(const Isometry& g) const {
    SurfacePoint i1 = apply(g, probe1_), i2 = apply(g, probe2_);
    return {i1.v.x, i1.v.y, i1.v.z, i2.v.x, i2.v.y, i2.v.z};
}

std::vector<SignatureSet::Key> SignatureSet::probe_keys(const std::array<double, 6>& sig) const {
    Key base;
    std::vector<int> near;
    for (int i = 0; i < 6; ++i) {
        double t = sig[i] / tol_;
        double fl = std::floor(t + 0.5);
        base[i] = (std::int64_t)fl;
        double frac = t + 0.5 - fl;
        if (frac < margin_ / tol_ || frac > 1.0 - margin_ / tol_) near.push_back(i);
    }
    std::vector<Key> keys{base};
    // probe both neighbors of every boundary-flagged coordinate
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

std::optional<std::size_t> SignatureSet::insert(const Isometry& g, std::size_t id) {
    auto sig = signature(g);
    auto keys = probe_keys(sig);
    for (const auto& k : keys) {
        auto it = map_.find(k);
        if (it != map_.end()) return it->second;
    }
    map_.emplace(keys[0], id);
    return std::nullopt;
}

std::optional<std::size_t> SignatureSet::find(const Isometry& g) const {
    auto keys = probe_keys(signature(g));
    for (const auto& k : keys) {
        auto it = map_.find(k);
        if (it != map_.end()) return it->second;
    }
    return std::nullopt;
}

Ball enumerate_ball(const TriangleFrame& tri, const LogicalRep& rep, const SurfacePoint& seed,
                    const BallOptions& opt) {
    if (opt.max_word_len < 1) throw std::invalid_argument("max_word_len must be >= 1");
    GeneratorIsometries gens = generator_isometries(tri);
    Ball ball{tri.kind, gens, {}, SignatureSet(tri.kind)};
    SurfacePoint o = surface_origin(tri.kind);

    const Isometry gen[4] = {gens.a, inverse(gens.a), gens.b, inverse(gens.b)};
    const char letter[4] = {'a', 'A', 'b', 'B'};
    auto inverse_letter = [](char c) {
        return std::isupper((unsigned char)c) ? (char)std::tolower(c) : (char)std::toupper(c);
    };

    ball.elems.push_back({Word(), Isometry::identity(tri.kind), CMat::identity(rep.dim)});
    ball.index.insert(ball.elems[0].geo, 0);
    const CMat logi_gen[4] = {rep.gen_a, unitary_inverse(rep.gen_a), rep.gen_b, unitary_inverse(rep.gen_b)};

    std::vector<std::size_t> frontier{0};
    for (int depth = 0; depth < opt.max_word_len && !frontier.empty(); ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t ei : frontier) {
            for (int k = 0; k < 4; ++k) {
                // skip freely reducible extensions
                if (!ball.elems[ei].word.empty() && inverse_letter(ball.elems[ei].word.back()) == letter[k])
                    continue;
                Isometry g2 = compose(ball.elems[ei].geo, gen[k]);
                if (tri.kind != Surface::Sphere &&
                    distance(o, apply(g2, seed)) > opt.max_radius)
                    continue;
                std::size_t id = ball.elems.size();
                if (ball.index.insert(g2, id).has_value()) continue;
                ball.elems.push_back({ball.elems[ei].word + letter[k], g2, ball.elems[ei].logi * logi_gen[k]});
                next.push_back(id);
            }
        }
        if (tri.kind == Surface::Sphere && next.empty()) return ball;  // saturated
        frontier = std::move(next);
    }
    if (tri.kind == Surface::Sphere && !frontier.empty())
        throw std::runtime_error("spherical enumeration did not saturate within the word-length cap");
    return ball;
}

std::vector<std::int64_t> logical_key(const CMat& m, double scale) {
    std::vector<std::int64_t> key;
    key.reserve(2 * m.a.size());
    for (const auto& v : m.a) {
        key.push_back((std::int64_t)std::llround(v.real() * scale));
        key.push_back((std::int64_t)std::llround(v.imag() * scale));
    }
    return key;
}

QuotientReport quotient_check(const Ball& ball, const LogicalRep& rep,
                              const std::vector<std::string>& relation_exprs,
                              std::size_t expected_order) {
    QuotientReport rpt;
    rpt.expected_order = expected_order;

    const GeneratorIsometries& gens = ball.gens;

    rpt.relations_ok = true;
    for (const auto& expr : relation_exprs) {
        RelationCheck rc;
        rc.expr = expr;
        rc.word = expand_word_expr(expr);
        rc.logical_defect = max_abs_diff(logical_image(rc.word, rep), CMat::identity(rep.dim));
        Isometry g = geometric_image(rc.word, gens);
        rc.geometric_defect = max_abs_diff(g.m, Mat3::identity());
        if (rc.logical_defect > 1e-9) rpt.relations_ok = false;
        rpt.relations.push_back(rc);
    }

    // distinct logical matrices, exact (not up to phase)
    std::map<std::vector<std::int64_t>, std::size_t> images;
    CMat I = CMat::identity(rep.dim);
    for (std::size_t i = 0; i < ball.elems.size(); ++i) {
        const auto& e = ball.elems[i];
        images.emplace(logical_key(e.logi), i);
        if (max_abs_diff(e.logi, I) < 1e-9 && !e.word.empty()) rpt.kernel_ids.push_back(i);
    }
    rpt.image_order = images.size();
    rpt.surjective = (expected_order == 0) || (rpt.image_order == expected_order);

    // shortest kernel representatives (up to 8 reported)
    std::vector<std::size_t> ks = rpt.kernel_ids;
    std::sort(ks.begin(), ks.end(), [&](std::size_t x, std::size_t y) {
        return ball.elems[x].word.size() < ball.elems[y].word.size();
    });
    for (std::size_t i = 0; i < ks.size() && i < 8; ++i) rpt.kernel_words.push_back(ball.elems[ks[i]].word);
    return rpt;
}

}  // namespace tess
