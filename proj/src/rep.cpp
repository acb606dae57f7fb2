#include "tesscode/rep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tess {

CMat CMat::identity(int dim) {
    CMat I(dim);
    for (int i = 0; i < dim; ++i) I(i, i) = 1.0;
    return I;
}

CMat operator*(const CMat& A, const CMat& B) {
    if (A.n != B.n) throw std::invalid_argument("CMat dimension mismatch");
    CMat C(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            cplx aik = A(i, k);
            if (aik == cplx(0, 0)) continue;
            for (int j = 0; j < A.n; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

CMat operator*(cplx s, const CMat& A) {
    CMat C = A;
    for (auto& v : C.a) v *= s;
    return C;
}

CMat adjoint(const CMat& A) {
    CMat C(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) C(i, j) = std::conj(A(j, i));
    return C;
}

CMat unitary_inverse(const CMat& A) { return adjoint(A); }

double max_abs_diff(const CMat& A, const CMat& B) {
    if (A.n != B.n) return 1e300;
    double m = 0;
    for (std::size_t i = 0; i < A.a.size(); ++i) m = std::max(m, std::abs(A.a[i] - B.a[i]));
    return m;
}

double unitarity_defect(const CMat& A) { return max_abs_diff(adjoint(A) * A, CMat::identity(A.n)); }

double diff_up_to_phase(const CMat& A, const CMat& B, cplx* phase_out) {
    if (A.n != B.n) return 1e300;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < B.a.size(); ++i)
        if (std::abs(B.a[i]) > std::abs(B.a[imax])) imax = i;
    if (std::abs(B.a[imax]) < 1e-12) return 1e300;
    cplx ph = A.a[imax] / B.a[imax];
    if (std::abs(std::abs(ph) - 1.0) > 0.5) return 1e300;
    ph /= std::abs(ph);
    if (phase_out) *phase_out = ph;
    double m = 0;
    for (std::size_t i = 0; i < A.a.size(); ++i) m = std::max(m, std::abs(A.a[i] - ph * B.a[i]));
    return m;
}

std::vector<cplx> col0(const CMat& A) {
    std::vector<cplx> v(A.n);
    for (int i = 0; i < A.n; ++i) v[i] = A(i, 0);
    return v;
}

LogicalRep qudit_pauli_rep(int d) {
    if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
    const double pi = 3.14159265358979323846;
    LogicalRep rep;
    rep.dim = d;
    rep.kind = "qudit-pauli";
    CMat X(d), Z(d);
    for (int j = 0; j < d; ++j) {
        X((j + 1) % d, j) = 1.0;
        Z(j, j) = std::polar(1.0, -2.0 * pi * j / d);
    }
    rep.named["X"] = X;
    rep.named["Z"] = Z;
    rep.named["Omega"] = X * Z * unitary_inverse(X) * unitary_inverse(Z);
    return rep;
}

LogicalRep clifford_rep() {
    const double pi = 3.14159265358979323846;
    LogicalRep rep;
    rep.dim = 2;
    rep.kind = "clifford";
    CMat S(2), U(2);
    cplx e = std::polar(1.0, pi / 4), ec = std::conj(e);
    S(0, 0) = e;
    S(1, 1) = ec;
    double s2 = 1.0 / std::sqrt(2.0);
    U(0, 0) = s2 * e;
    U(0, 1) = s2 * e;
    U(1, 0) = -s2 * ec;
    U(1, 1) = s2 * ec;
    rep.named["S"] = S;
    rep.named["U"] = U;
    return rep;
}

LogicalRep binary_icosahedral_rep() {
    const double pi = 3.14159265358979323846;
    LogicalRep rep;
    rep.dim = 2;
    rep.kind = "binary-icosahedral";
    double g = (std::sqrt(5.0) + 1.0) / 2.0;
    CMat F(2), Phi(2);
    cplx w = std::polar(1.0 / std::sqrt(2.0), -pi / 4);
    F(0, 0) = w;
    F(0, 1) = w * cplx(0, -1);
    F(1, 0) = w;
    F(1, 1) = w * cplx(0, 1);
    Phi(0, 0) = 0.5 * cplx(g, 1.0 / g);
    Phi(0, 1) = 0.5;
    Phi(1, 0) = -0.5;
    Phi(1, 1) = 0.5 * cplx(g, -1.0 / g);
    rep.named["F"] = F;
    rep.named["Phi"] = Phi;
    return rep;
}

LogicalRep rep_by_name(const std::string& name) {
    if (name == "clifford") return clifford_rep();
    if (name == "binary-icosahedral") return binary_icosahedral_rep();
    if (name.rfind("qudit-pauli", 0) == 0) {
        std::string rest = name.substr(11);
        int d = 2;
        if (!rest.empty()) d = std::stoi(rest);
        return qudit_pauli_rep(d);
    }
    throw std::invalid_argument("unknown logical rep: " + name);
}

namespace {

// identification expressions:  expr := ['-'] factor {'*' factor}
//                              factor := (name | '(' expr ')') ['^' int]
struct ExprParser {
    const LogicalRep& rep;
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }

    CMat power(CMat M, long e) {
        if (e < 0) {
            M = unitary_inverse(M);
            e = -e;
        }
        CMat R = CMat::identity(M.n);
        for (long k = 0; k < e; ++k) R = R * M;
        return R;
    }

    CMat factor() {
        skip();
        CMat M;
        if (i < s.size() && s[i] == '(') {
            ++i;
            M = expr();
            skip();
            if (i >= s.size() || s[i] != ')') throw std::invalid_argument("expected ')' in: " + s);
            ++i;
        } else {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]))) ++j;
            std::string name = s.substr(i, j - i);
            auto it = rep.named.find(name);
            if (it == rep.named.end()) throw std::invalid_argument("unknown matrix '" + name + "' in: " + s);
            M = it->second;
            i = j;
        }
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            std::size_t j = i;
            if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            long e = std::stol(s.substr(i, j - i));
            i = j;
            M = power(M, e);
        }
        return M;
    }

    CMat expr() {
        skip();
        bool neg = false;
        if (i < s.size() && s[i] == '-') {
            neg = true;
            ++i;
        }
        CMat M = factor();
        skip();
        while (i < s.size() && s[i] == '*') {
            ++i;
            M = M * factor();
            skip();
        }
        if (neg) M = cplx(-1, 0) * M;
        return M;
    }
};

}  // namespace

CMat eval_matrix_expr(const LogicalRep& rep, const std::string& expr) {
    ExprParser p{rep, expr};
    CMat M = p.expr();
    p.skip();
    if (p.i != expr.size()) throw std::invalid_argument("trailing junk in matrix expression: " + expr);
    return M;
}

std::size_t matrix_group_order(const std::vector<CMat>& generators, double tol, std::size_t cap) {
    if (generators.empty()) return 1;
    std::vector<CMat> elems{CMat::identity(generators[0].n)};
    auto contains = [&](const CMat& M) {
        for (const auto& E : elems)
            if (max_abs_diff(E, M) < tol) return true;
        return false;
    };
    std::vector<CMat> frontier = elems;
    while (!frontier.empty()) {
        std::vector<CMat> next;
        for (const auto& E : frontier)
            for (const auto& g : generators) {
                CMat M = E * g;
                if (!contains(M)) {
                    elems.push_back(M);
                    next.push_back(M);
                    if (elems.size() > cap) throw std::runtime_error("matrix group closure exceeded cap");
                }
            }
        frontier = std::move(next);
    }
    return elems.size();
}

}  // namespace tess
