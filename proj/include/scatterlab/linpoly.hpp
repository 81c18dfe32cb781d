#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scatterlab/field.hpp"
#include "scatterlab/matrix.hpp"

namespace scatterlab {

// A q-linearized polynomial sum a_i x^{q^i} over F_{q^n}, where F_q is the
// immediate base level of `field`. Coefficients are trimmed; the zero
// polynomial is the empty list. Construction enforces q-degree k < n.
struct LinearizedPoly {
    const Field* field = nullptr; // F_{q^n}
    const Field* base = nullptr;  // F_q
    std::vector<uint64_t> coeffs; // a_0..a_k as field indices, a_k != 0

    int qdegree() const { return static_cast<int>(coeffs.size()) - 1; }
    unsigned n() const { return field->degree_over_base(); }
    uint64_t q() const { return base->size(); }
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const LinearizedPoly& o) const {
        return field == o.field && coeffs == o.coeffs;
    }
};

LinearizedPoly make_linpoly(const Field* fqn, const std::vector<FElem>& coeffs);
LinearizedPoly make_linpoly_idx(const Field* fqn, const std::vector<uint64_t>& coeffs);

FElem evaluate(const LinearizedPoly& f, const FElem& x);

// Coefficient-wise embedding into an extension of the same base structure
// (used when probing scatteredness over F_{q^{nm}}).
LinearizedPoly embed_linpoly(const LinearizedPoly& f, const Field* ext);

// The ell-normalization predicate of the classification setup: k < n, monic,
// zero coefficient at x^{q^ell}, and separability when ell > 0. The first
// violated condition is reported; the normalizing transform itself is out of
// scope here.
enum class NormViolation { None, DegreeTooLarge, NotMonic, EllCoeffNonzero, NotSeparable };
struct NormalizationCheck {
    bool ok;
    NormViolation first_violation;
    std::string reason;
};
NormalizationCheck is_ell_normalized(const LinearizedPoly& f, unsigned ell);

// Matrix of x -> f(x) as an F_q-linear map, n x n over F_q in the power basis
// of the field generator; column j holds the coordinates of f(g^j).
Mat as_matrix(const LinearizedPoly& f);
unsigned kernel_dim(const LinearizedPoly& f);

// Known families. Constructors return the polynomial together with the
// family conditions re-derived from (s, n, delta); the flags are data, not
// preconditions.
struct FamilyPoly {
    LinearizedPoly poly;
    std::string family; // "pseudoregulus" | "lp"
    unsigned declared_index = 0;
    unsigned s = 0;
    uint64_t delta_idx = 0; // lp only
    bool gcd_ok = false;
    bool norm_ok = false;  // lp only: N_{q^n/q}(delta) != 1
    bool rescaled = false; // lp only: delta^{-1} x + x^{q^{2s}} form
    bool family_conditions_hold() const {
        return family == "pseudoregulus" ? gcd_ok : (gcd_ok && norm_ok);
    }
};

// f(x) = x^{q^s}, declared index 0; family condition gcd(s,n) = 1.
FamilyPoly pseudoregulus(const Field* fqn, unsigned s);

// f(x) = x + delta x^{q^{2s}}, declared index s; conditions gcd(s,n) = 1 and
// N(delta) != 1. With rescale_monic the stored polynomial is the scalar
// multiple delta^{-1} x + x^{q^{2s}} (scatteredness is scalar-invariant).
FamilyPoly lp_binomial(const Field* fqn, unsigned s, const FElem& delta,
                       bool rescale_monic = false);

// U_f = {(x^{q^ell}, f(x))} as an F_q-subspace of F_{q^n} x F_{q^n}, stored
// as a 2n x n coordinate basis. Always has dimension exactly n.
struct UfSubspace {
    const Field* field = nullptr;
    const Field* base = nullptr;
    unsigned ell = 0;
    Mat basis; // 2n x n over F_q, columns = images of the power basis
};
UfSubspace u_f_subspace(const LinearizedPoly& f, unsigned ell);

} // namespace scatterlab
