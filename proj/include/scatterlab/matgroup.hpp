#pragma once

#include <cstdint>
#include <vector>

#include "scatterlab/field.hpp"
#include "scatterlab/matrix.hpp"

namespace scatterlab {

// Companion matrix of a monic polynomial (coefficients low-degree-first over
// any field level).
Mat companion_matrix(const std::vector<FElem>& monic_poly);

// Everything needed to realize GL(n, q^m) inside GL(nm, q):
//   gamma   primitive element of F_{q^m}, B = {1, gamma, ..., gamma^{m-1}}
//   companion  matrix of x -> gamma x  w.r.t. B (= companion of min poly)
//   frob_bar   matrix of x -> x^q      w.r.t. B (order m)
// The F_{q^m}-basis of F_{q^{nm}} is the power basis of the top tower
// generator delta; the F_q-basis C is the nm products delta^i gamma^j.
class EmbeddingContext {
public:
    EmbeddingContext(const Field* fq, unsigned m, unsigned n);

    const Field* fq() const { return fq_; }
    const Field* fqm() const { return fqm_; }
    const Field* fbig() const { return fbig_; }
    unsigned m() const { return m_; }
    unsigned n() const { return n_; }
    unsigned d() const { return n_ * m_; }
    FElem gamma() const { return gamma_; }
    FElem delta() const { return delta_; }
    const Mat& companion() const { return companion_; }
    const Mat& frob_bar() const { return frob_bar_; }

    // Coordinates of an F_{q^m} element over B (length m, entries in F_q).
    std::vector<uint64_t> b_coords(uint64_t a) const;
    uint64_t from_b_coords(const std::vector<uint64_t>& v) const;
    // Coordinates of an F_{q^{nm}} element over C (length nm).
    std::vector<uint64_t> c_coords(uint64_t a) const;
    uint64_t from_c_coords(const std::vector<uint64_t>& v) const;

private:
    const Field* fq_;
    const Field* fqm_;
    const Field* fbig_;
    unsigned m_, n_;
    FElem gamma_, delta_;
    Mat companion_, frob_bar_;
    Mat gbasis_, gbasis_inv_; // nested coords of gamma powers, and inverse
};

// phi(a) = ((a)_B | C (a)_B | ... | C^{m-1} (a)_B): the ring embedding of
// F_{q^m} into m x m matrices over F_q.
Mat phi(const EmbeddingContext& ctx, const FElem& a);

// Natural embedding eta_{A,C}: entry-wise phi on an n x n matrix over F_{q^m}.
Mat eta(const EmbeddingContext& ctx, const Mat& T);

// Recover T from eta(T); throws if the input is not in the image.
Mat eta_inverse(const EmbeddingContext& ctx, const Mat& big);

// M = diag(Mbar, ..., Mbar), the image of the Frobenius generator.
Mat frobenius_block(const EmbeddingContext& ctx);

// The commutation relation diag(phi(a),I,..,I) M = M diag(phi(a^{q^{m-1}}),I,..,I).
bool check_commutation(const EmbeddingContext& ctx, const FElem& a);

// Elements of GammaL_q(n, q^m) as (linear part, Frobenius power); the product
// is (N, s)(N', s') = (N sigma^s(N'), s + s') with sigma the entry-wise
// q-power Frobenius. eta extends to a homomorphism via (N, s) -> eta(N) M^s.
struct Semilinear {
    Mat linear;        // n x n over F_{q^m}
    unsigned frob = 0; // mod m
};
Semilinear semilinear_mul(const EmbeddingContext& ctx, const Semilinear& a,
                          const Semilinear& b);
Mat eta_semilinear(const EmbeddingContext& ctx, const Semilinear& g);
Mat frobenius_entrywise(const EmbeddingContext& ctx, const Mat& T, unsigned s);

// --- symplectic machinery ----------------------------------------------------

// H = ((0, I), (-I, 0)) of size e (e even).
Mat symplectic_form(const Field* f, unsigned e);

// A invertible with A H A^T = H.
bool is_symplectic(const Mat& A);

// omega(x, y) = x^T H y for column vectors of length e.
FElem symplectic_product(const Field* f, const std::vector<uint64_t>& x,
                         const std::vector<uint64_t>& y);

// Extend pairwise-isotropic independent vectors f_1..f_t (t <= e/2) to a full
// symplectic basis (u_1..u_{e/2}, w_1..w_{e/2}) with u_i = f_i and Gram matrix
// exactly H. Greedy: u-slots fill from standard basis vectors projected off
// the completed hyperbolic pairs; each partner w_i is the echelon solution of
// its pairing conditions with free variables zero. The returned matrix has the
// basis as columns and is symplectic.
Mat extend_symplectic_basis(const Field* f, unsigned e,
                            const std::vector<std::vector<uint64_t>>& prescribed);

// e x e matrix with prescribed first two columns and prescribed determinant:
// Steinitz fill with standard basis vectors, then scale the last added column.
// Requires e > 2 and independent columns.
Mat sl_complete(const Field* f, unsigned e, const std::vector<uint64_t>& c1,
                const std::vector<uint64_t>& c2, const FElem& det_target);

} // namespace scatterlab
