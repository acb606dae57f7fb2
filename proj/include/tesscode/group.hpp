#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tesscode/geometry.hpp"
#include "tesscode/rep.hpp"

namespace tess {

/// Word over the proper-triangle-group generators, one char per letter:
/// 'a' = r_A, 'A' = r_A^{-1}, 'b' = r_B, 'B' = r_B^{-1}.
using Word = std::string;

/// Expands a relation expression such as "rB^2", "rB^2*rA^3",
/// "Omega*rA*Omega^-1*rA^-1" into generator letters. rC stands for
/// (rA*rB)^{-1} and Omega for rB*rA*rC.
Word expand_word_expr(const std::string& expr);

/// Ordered product of generator logical matrices along a word.
CMat logical_image(const Word& word, const LogicalRep& rep);
/// Same for the geometric side.
Isometry geometric_image(const Word& word, const GeneratorIsometries& gens);

/// Set of isometries keyed by the quantized images of two probe points.
/// Quantization grid `tol` with boundary probing of width `margin` makes
/// membership tests immune to floating-point drift far below `tol` while
/// distinct group elements stay many grid cells apart.
class SignatureSet {
  public:
    SignatureSet(Surface kind, double tol = 1e-3, double margin = 2e-4);

    /// Returns the stored id, or inserts with `id` and returns nullopt.
    std::optional<std::size_t> insert(const Isometry& g, std::size_t id);
    std::optional<std::size_t> find(const Isometry& g) const;
    std::size_t size() const { return map_.size(); }

  private:
    using Key = std::array<std::int64_t, 6>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    std::array<double, 6> signature(const Isometry& g) const;
    std::vector<Key> probe_keys(const std::array<double, 6>& sig) const;

    Surface kind_;
    double tol_, margin_;
    SurfacePoint probe1_, probe2_;
    std::unordered_map<Key, std::size_t, KeyHash> map_;
};

struct GroupElement {
    Word word;
    Isometry geo;
    CMat logi;
};

struct BallOptions {
    int max_word_len = 16;
    double max_radius = 8.0;  // prune on d(origin, g * seed); ignored on the sphere
};

/// Breadth-first ball of the proper triangle group, deduplicated by
/// geometric signature. Spherical enumerations must saturate below the
/// word-length cap or an inconsistency error is thrown.
struct Ball {
    Surface kind;
    GeneratorIsometries gens;
    std::vector<GroupElement> elems;
    SignatureSet index;

    std::optional<std::size_t> find(const Isometry& g) const { return index.find(g); }
};

Ball enumerate_ball(const TriangleFrame& tri, const LogicalRep& rep, const SurfacePoint& seed,
                    const BallOptions& opt);

struct RelationCheck {
    std::string expr;
    Word word;
    double logical_defect;   // distance of the logical image from identity
    double geometric_defect; // distance of the geometric image from identity
};

struct QuotientReport {
    std::size_t image_order = 0;
    std::size_t expected_order = 0;
    bool surjective = false;
    std::vector<RelationCheck> relations;
    bool relations_ok = false;
    std::vector<Word> kernel_words;       // shortest generalized-stabilizer representatives
    std::vector<std::size_t> kernel_ids;  // indices into ball.elems with logical == identity
};

/// Verifies the quotient structure: extra relations evaluate to the logical
/// identity, the distinct logical matrices in the ball form a set of the
/// expected order, and nontrivial kernel elements are collected.
QuotientReport quotient_check(const Ball& ball, const LogicalRep& rep,
                              const std::vector<std::string>& relation_exprs,
                              std::size_t expected_order);

/// Canonical quantized key of a logical matrix (used to identify cosets).
std::vector<std::int64_t> logical_key(const CMat& m, double scale = 1e6);

}  // namespace tess
