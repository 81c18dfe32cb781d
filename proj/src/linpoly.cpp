#include "scatterlab/linpoly.hpp"

#include <numeric>
#include <stdexcept>

namespace scatterlab {

namespace {

void require_extension(const Field* fqn) {
    if (!fqn || fqn->is_prime_field())
        throw std::invalid_argument("linearized polynomials need an extension field F_{q^n}");
}

} // namespace

LinearizedPoly make_linpoly_idx(const Field* fqn, const std::vector<uint64_t>& coeffs) {
    require_extension(fqn);
    LinearizedPoly f;
    f.field = fqn;
    f.base = fqn->base();
    f.coeffs = coeffs;
    while (!f.coeffs.empty() && f.coeffs.back() == 0) f.coeffs.pop_back();
    for (uint64_t c : f.coeffs)
        if (c >= fqn->size()) throw std::out_of_range("coefficient index out of range");
    const unsigned n = f.n();
    if (!f.coeffs.empty() && f.coeffs.size() - 1 >= n)
        throw std::invalid_argument("q-degree " + std::to_string(f.coeffs.size() - 1) +
                                    " must be smaller than n = " + std::to_string(n));
    return f;
}

LinearizedPoly make_linpoly(const Field* fqn, const std::vector<FElem>& coeffs) {
    std::vector<uint64_t> idx;
    idx.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        if (c.field != fqn) {
            // accept elements of lower levels of the same tower
            idx.push_back(c.lift(fqn).idx);
        } else {
            idx.push_back(c.idx);
        }
    }
    return make_linpoly_idx(fqn, idx);
}

FElem evaluate(const LinearizedPoly& f, const FElem& x) {
    const Field* F = f.field;
    if (x.field != F) throw std::invalid_argument("evaluation point not in F_{q^n}; embed first");
    uint64_t acc = 0;
    uint64_t xp = x.idx; // x^{q^i}
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i]) acc = F->add(acc, F->mul(f.coeffs[i], xp));
        if (i + 1 < f.coeffs.size()) xp = F->frobenius(xp, f.base, 1);
    }
    return {F, acc};
}

LinearizedPoly embed_linpoly(const LinearizedPoly& f, const Field* ext) {
    std::vector<uint64_t> coeffs(f.coeffs.size());
    for (size_t i = 0; i < f.coeffs.size(); ++i)
        coeffs[i] = embed_tower({f.field, f.coeffs[i]}, f.field, ext).idx;
    LinearizedPoly g = make_linpoly_idx(ext, coeffs);
    if (g.base->size() != f.base->size())
        throw std::invalid_argument("extension does not preserve the base level F_q");
    return g;
}

NormalizationCheck is_ell_normalized(const LinearizedPoly& f, unsigned ell) {
    if (ell >= f.n()) throw std::invalid_argument("index ell out of range");
    // (i) is structural here (construction enforces k < n), kept for the record
    if (f.is_zero() || f.coeffs.back() != 1)
        return {false, NormViolation::NotMonic, "f is not monic"};
    if (ell < f.coeffs.size() && f.coeffs[ell] != 0)
        return {false, NormViolation::EllCoeffNonzero,
                "coefficient of x^{q^ell} is nonzero"};
    if (ell > 0 && f.coeffs[0] == 0)
        return {false, NormViolation::NotSeparable,
                "ell > 0 requires a nonzero coefficient of x (separability)"};
    return {true, NormViolation::None, ""};
}

Mat as_matrix(const LinearizedPoly& f) {
    const Field* F = f.field;
    const Field* B = f.base;
    const unsigned n = f.n();
    Mat m(B, n, n);
    // power basis of the field generator: basis_j has a single base-level
    // coordinate at block j
    for (unsigned j = 0; j < n; ++j) {
        std::vector<uint64_t> coords(j + 1, 0);
        coords[j] = 1;
        const uint64_t bj = F->from_coords_over(B, coords);
        const FElem img = evaluate(f, {F, bj});
        const auto img_coords = F->coords_over(img.idx, B);
        for (unsigned i = 0; i < n; ++i) m.at(i, j) = img_coords[i];
    }
    return m;
}

unsigned kernel_dim(const LinearizedPoly& f) {
    return f.n() - static_cast<unsigned>(as_matrix(f).rank());
}

FamilyPoly pseudoregulus(const Field* fqn, unsigned s) {
    require_extension(fqn);
    const unsigned n = fqn->degree_over_base();
    if (s < 1 || s >= n) throw std::invalid_argument("pseudoregulus requires 1 <= s < n");
    std::vector<uint64_t> coeffs(s + 1, 0);
    coeffs[s] = 1;
    FamilyPoly out;
    out.poly = make_linpoly_idx(fqn, coeffs);
    out.family = "pseudoregulus";
    out.declared_index = 0;
    out.s = s;
    out.gcd_ok = std::gcd(s, n) == 1;
    out.norm_ok = true; // no norm condition in this family
    return out;
}

FamilyPoly lp_binomial(const Field* fqn, unsigned s, const FElem& delta, bool rescale_monic) {
    require_extension(fqn);
    const unsigned n = fqn->degree_over_base();
    if (delta.field != fqn) throw std::invalid_argument("delta must lie in F_{q^n}");
    if (delta.is_zero()) throw std::invalid_argument("delta must be nonzero");
    if (2 * s >= n) throw std::invalid_argument("LP binomial requires 2s < n");
    std::vector<uint64_t> coeffs(2 * s + 1, 0);
    FamilyPoly out;
    if (rescale_monic) {
        coeffs[0] = fqn->inv(delta.idx);
        coeffs[2 * s] = 1;
        out.rescaled = true;
    } else {
        coeffs[0] = 1;
        coeffs[2 * s] = delta.idx;
    }
    out.poly = make_linpoly_idx(fqn, coeffs);
    out.family = "lp";
    out.declared_index = s;
    out.s = s;
    out.delta_idx = delta.idx;
    out.gcd_ok = std::gcd(s, n) == 1;
    out.norm_ok = norm_rel(delta, fqn->base()) != fqn->base()->one();
    return out;
}

UfSubspace u_f_subspace(const LinearizedPoly& f, unsigned ell) {
    const Field* F = f.field;
    const Field* B = f.base;
    const unsigned n = f.n();
    if (ell >= n) throw std::invalid_argument("index ell out of range");
    UfSubspace u;
    u.field = F;
    u.base = B;
    u.ell = ell;
    u.basis = Mat(B, 2 * n, n);
    // x -> (x^{q^ell}, f(x)) is F_q-linear; the images of a basis span U_f
    for (unsigned j = 0; j < n; ++j) {
        std::vector<uint64_t> coords(j + 1, 0);
        coords[j] = 1;
        const uint64_t bj = F->from_coords_over(B, coords);
        const uint64_t first = F->frobenius(bj, B, ell);
        const uint64_t second = evaluate(f, {F, bj}).idx;
        const auto c1 = F->coords_over(first, B);
        const auto c2 = F->coords_over(second, B);
        for (unsigned i = 0; i < n; ++i) {
            u.basis.at(i, j) = c1[i];
            u.basis.at(n + i, j) = c2[i];
        }
    }
    if (u.basis.rank() != n) throw std::logic_error("U_f basis is rank deficient");
    return u;
}

} // namespace scatterlab
