#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scatterlab/matgroup.hpp"
#include "scatterlab/rng.hpp"

namespace scatterlab {

// --- Hering case enumeration -------------------------------------------------

enum class HeringTag { GammaL1, SL, Sp, G2, Sporadic };

struct HeringCase {
    HeringTag tag;
    unsigned e = 0;    // SL / Sp / GammaL1(e=1); 6 for G2
    uint64_t q_de = 0; // q^{d/e}
    uint64_t q_d = 0;  // field size q^d (sporadic)
};

const char* hering_tag_name(HeringTag t);

// All transitive-linear-group cases instantiated for (q, d): SL(e, q^{d/e})
// for every divisor e >= 2 of d, the e = 1 degenerate tagged GammaL1,
// Sp(e, q^{d/e}) for even e | d with e >= 4, G2 when char(q) = 2 and 6 | d,
// and the fixed nine sporadic orders.
std::vector<HeringCase> hering_cases(uint64_t q, unsigned d);

// --- rank certificates ---------------------------------------------------------

// The consumed non-exceptionality criterion: rank(A - I_d) < d - 1.
bool fm_rank_criterion(const Mat& A, unsigned d);

// Decomposed element of Aut_q(Sp(e, q^{d/e})) x Z_q: R o sigma^s o S_alpha o A
// with A symplectic, alpha != 0, and R either the identity or R_{a^{q^i}} for
// the fixed nonsquare a of F_{q^{d/e}}. In even characteristic every element
// is a square, so (R_a)_q is trivial and r_nonsquare must be false.
struct SpInput {
    bool r_nonsquare = false; // R-part: identity vs R_{a^{q^i}}
    unsigned a_exp = 0;       // Frobenius exponent i on a
    unsigned frob = 0;        // sigma = q-Frobenius power s
    uint64_t alpha = 1;       // scalar, as an F_{q^{d/e}} index
    Mat sp;                   // e x e symplectic part
};

struct RankCertificate {
    std::string kind; // "sl" | "sp"
    uint64_t q = 0;
    unsigned e = 0, d = 0;
    // input
    Mat beta;      // sl
    unsigned j = 0; // sl: Frobenius power of the arithmetic element
    SpInput sp_in; // sp
    // output
    Mat companion_elt;        // alpha in SL(e, q^{d/e}) / B in Sp(e, q^{d/e})
    unsigned achieved_rank = 0;
    unsigned bound = 0; // inclusive: d-2 for sl, d - e/2 for sp
    bool verified = false;
    Mat symplectic_basis; // sp only: the extended basis, Gram = H
};

// Smallest-index nonsquare of f (odd characteristic); 1 when every element is
// a square.
FElem fixed_nonsquare(const Field* f);

// Certificate for beta phi^j in GammaL_q(e, q^{d/e}) with SL normal: the
// companion alpha in SL(e, q^{d/e}) makes rank(eta(alpha beta phi^j) - I_d)
// <= d - 2. Requires e > 2; any integer j is accepted and reduced modulo the
// order of M.
RankCertificate sl_certificate(const EmbeddingContext& ctx, const Mat& beta, unsigned j);

// Certificate for a decomposed Sp-normalizer element: the companion
// B = A^{-1} D~ in Sp(e, q^{d/e}) built from a symplectic basis extension of
// the designated columns of eta(D)^{-1}; rank(eta(M B) - I_d) <= d - e/2.
// Requires e even, e >= 4.
RankCertificate sp_certificate(const EmbeddingContext& ctx, const SpInput& input);

// Re-verify a certificate from its stored parts.
bool verify_certificate(const EmbeddingContext& ctx, const RankCertificate& cert);

Semilinear sp_compose(const EmbeddingContext& ctx, const SpInput& input);
// Canonical decomposition (alpha normalized to the smaller of +-alpha, sp part
// absorbing the sign); throws when the linear part is not a similitude of H.
SpInput sp_decompose(const EmbeddingContext& ctx, const Semilinear& g);

// Seeded samplers used by the certificate batches.
Mat random_gl(Rng& rng, const Field* f, unsigned e);
Mat random_sp(Rng& rng, const Field* f, unsigned e); // product of transvections
SpInput random_sp_input(Rng& rng, const EmbeddingContext& ctx);

struct CertificateBatch {
    size_t total = 0;
    size_t verified = 0;
    unsigned max_rank = 0;
    std::vector<RankCertificate> certificates;
};
CertificateBatch sl_certificate_batch(const EmbeddingContext& ctx, size_t samples,
                                      uint64_t seed);
CertificateBatch sp_certificate_batch(const EmbeddingContext& ctx, size_t samples,
                                      uint64_t seed);

// --- arithmetic sieves ---------------------------------------------------------

enum class SieveOutcome { Excluded, MonomialBranch, Unresolved, Survivor, ExcludedByProp };

struct SieveVerdict {
    uint64_t q = 0;
    unsigned k = 0, ell = 0, d = 0;
    std::string branch; // "ell<k" | "k<ell" | "k=0"
    unsigned long long quantity = 0; // divisibility quantity (fits: desk scale)
    uint64_t bound = 0;
    SieveOutcome outcome = SieveOutcome::Unresolved;
    std::string note;
};

const char* sieve_outcome_name(SieveOutcome o);

// GammaL(1) endgame: Q = (q^max - q^min)/(q^gcd - 1) with gcd(k,0) := k must
// divide some i <= d; "excluded" when Q > d, "monomial-branch" when k = 0,
// otherwise the honest "unresolved".
SieveVerdict gammaL1_sieve(uint64_t q, unsigned k, unsigned ell);

// Spread-compatibility constraints for d = max(k, ell) even: both orbit
// divisibility conditions, with survivors exactly (k, ell) = (d, d/2).
SieveVerdict spread_constraints(uint64_t q, unsigned k, unsigned ell);

} // namespace scatterlab
