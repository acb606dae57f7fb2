#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace tess {

using cplx = std::complex<double>;

/// Small dense complex matrix (logical dimensions here are 2..5).
struct CMat {
    int n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(int dim) : n(dim), a(dim * dim, cplx(0, 0)) {}
    static CMat identity(int dim);

    cplx& operator()(int r, int c) { return a[r * n + c]; }
    cplx operator()(int r, int c) const { return a[r * n + c]; }
};

CMat operator*(const CMat& A, const CMat& B);
CMat operator*(cplx s, const CMat& A);
CMat adjoint(const CMat& A);
/// Inverse of a unitary is its adjoint; that is all this library needs.
CMat unitary_inverse(const CMat& A);
double max_abs_diff(const CMat& A, const CMat& B);
double unitarity_defect(const CMat& A);
/// max |A - phase*B| minimized over a global phase (phase taken from the
/// largest entry of B). Returns a large value when the phase is degenerate.
double diff_up_to_phase(const CMat& A, const CMat& B, cplx* phase_out = nullptr);

std::vector<cplx> col0(const CMat& A);

/// Unitary logical representation data for a code: the images of the two
/// proper-triangle-group generators plus the named constant matrices used
/// in identification expressions.
struct LogicalRep {
    int dim = 0;
    std::string kind;  // qudit-pauli | clifford | binary-icosahedral
    std::map<std::string, CMat> named;
    CMat gen_a, gen_b;  // images of r_A, r_B (gen_c is (gen_a*gen_b)^-1)
};

/// Qudit Pauli matrices with X|j> = |j+1>, Z|j> = w^{-j}|j>. With this
/// phase convention the commutator XZX^{-1}Z^{-1} equals +e^{2 pi i/d} * I.
LogicalRep qudit_pauli_rep(int d);
/// Single-qubit Clifford realization generated by S = diag(e^{i pi/4},
/// e^{-i pi/4}) and the order-6 U; S^4 = U^3 = (US)^2 = -I, 48 elements.
LogicalRep clifford_rep();
/// Binary icosahedral group generated by F, Phi with F^3 = Phi^5 =
/// (Phi F^{-1})^2 = -I; 120 elements.
LogicalRep binary_icosahedral_rep();

LogicalRep rep_by_name(const std::string& name);

/// Evaluates an identification expression like "Z", "(X*Z)^-1", "-F",
/// "Phi*F^-1" over the rep's named matrices.
CMat eval_matrix_expr(const LogicalRep& rep, const std::string& expr);

/// Brute-force closure of a matrix set under multiplication (test oracle for
/// expected group orders). Throws if the closure exceeds `cap`.
std::size_t matrix_group_order(const std::vector<CMat>& generators, double tol = 1e-9,
                               std::size_t cap = 100000);

}  // namespace tess
