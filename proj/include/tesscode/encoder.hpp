#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <unordered_map>

#include "tesscode/group.hpp"

namespace tess {

/// Complete recipe for one tessellation code.
struct CodeSpec {
    std::string name;
    int p = 2, q = 2, r = 2;
    std::string rep_name;  // qudit-pauli <d> | clifford | binary-icosahedral
    std::string ident_a, ident_b, ident_c;
    std::vector<std::string> relation_exprs;
    // seed coordinates in the chart of the code's surface:
    // sphere (theta, phi), plane (x, y), hyperbolic (eta, theta)
    double seed_c1 = 0, seed_c2 = 0;
    std::string seed_expr1, seed_expr2;  // original expressions, kept for emit
    std::vector<cplx> sigma;             // empty = basis state |0>
    BallOptions trunc;
    std::size_t expected_order = 0;      // 0 = not declared
    double expected_resolution = -1;     // < 0 = not declared
    std::string expected_resolution_expr;
    std::string resolution_provenance;   // e.g. "table", "oracle"
    std::string order_provenance;
    std::string violation_note;          // expected violation family, free text
};

struct SupportPoint {
    SurfacePoint x;
    cplx amp;              // merged amplitude, unnormalized
    std::size_t elem_id;   // first ball element landing here
    std::size_t cls;       // coset class id
};

struct Constellation {
    Surface kind;
    int codeword = 0;
    std::vector<SupportPoint> pts;
};

/// Right coset g * (seed stabilizer) * Gamma; one class per distinct
/// constellation point of the infinite code.
struct CosetClass {
    std::vector<std::int64_t> key;  // canonical quantized logical matrix
    CMat rep_logi;                  // a representative logical matrix
    std::vector<cplx> amps;         // merged amplitude per codeword
};

/// Quantized point membership map with the same boundary-probing scheme as
/// the group signature set.
class PointIndex {
  public:
    explicit PointIndex(double tol = 1e-5, double margin = 1e-7) : tol_(tol), margin_(margin) {}
    std::optional<std::size_t> insert(const Vec3& v, std::size_t id);
    std::optional<std::size_t> find(const Vec3& v) const;

  private:
    using Key = std::array<std::int64_t, 3>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };
    std::vector<Key> probe_keys(const Vec3& v) const;
    double tol_, margin_;
    std::unordered_map<Key, std::size_t, KeyHash> map_;
};

/// A fully built code: enumerated ball, codeword constellations, coset
/// classes, and the quotient report.
struct Code {
    CodeSpec spec;
    TriangleFrame tri;
    LogicalRep rep;
    SurfacePoint seed;
    Ball ball;
    QuotientReport quotient;
    std::vector<CMat> stabilizer_logicals;  // logical images fixing the seed
    std::vector<SupportPoint> points;       // union support, merged amplitudes dropped per codeword below
    PointIndex point_index;                 // embedding coords -> index into `points`
    std::vector<std::vector<cplx>> point_amps;  // per point, length-d amplitude vectors
    std::vector<CosetClass> classes;
    std::vector<Constellation> codewords;
    std::vector<std::size_t> kernel_elems;  // ball ids with logical == identity (incl. id 0)

    int dim() const { return rep.dim; }
    std::size_t class_of_logical(const CMat& m) const;  // throws if missing

  private:
    friend Code build_code(const CodeSpec&);
    std::unordered_map<std::string, std::size_t> class_lookup_;  // serialized key -> class id
};

/// Resolves the logical representation and generator identifications of a
/// spec; validates unitarity and the rA*rB*rC = I consistency.
LogicalRep resolve_rep(const CodeSpec& spec);
SurfacePoint resolve_seed(const CodeSpec& spec, const TriangleFrame& tri);

/// Builds codewords by the covariant orbit sum: amplitude <Sigma|rho_L(g)^+|k>
/// at point g(seed) for every ball element, with coincident points merged by
/// amplitude addition. Throws if any codeword comes out empty or a relation
/// fails.
Code build_code(const CodeSpec& spec);

/// Cell Gram matrix: G[i][j] = sum over coset classes of conj(a_i) a_j.
CMat cell_gram(const Code& code);
/// Per-unit-cell inner product <i|j>, normalized by the mean cell norm.
cplx inner_product(const Code& code, int i, int j);

struct LogicalActionReport {
    CMat matrix;             // measured d x d action, cell-normalized
    CMat target;             // logical image of g from the ball
    double max_err = 1e300;  // vs target, up to one global phase
    cplx phase = 1.0;
    std::size_t points_checked = 0;
    std::size_t boundary_skipped = 0;  // images left the truncated ball
    std::size_t mismatches = 0;        // geometric/logical class disagreements
    bool flagged = false;              // truncation too small to verify
};

/// Verifies that the geometric rotation g (which must be an enumerated group
/// element) permutes the constellation according to its logical image, and
/// measures the induced d x d matrix on the codewords.
LogicalActionReport verify_logical_action(const Code& code, const Isometry& g);

/// Pointwise phase profile: amplitude at x multiplied by f(x); |f| must be 1
/// on the support.
Constellation apply_phase_profile(const Constellation& c, const std::function<cplx(const SurfacePoint&)>& f);

/// Translation sublattice of the generalized stabilizer group (Euclidean
/// codes): the two shortest independent pure translations in the kernel.
struct EuclideanCell {
    std::array<double, 2> v1, v2;
    /// support points of each codeword reduced to one fundamental cell
    std::vector<std::vector<SupportPoint>> reduced;
};
EuclideanCell euclidean_cell(const Code& code);

}  // namespace tess
