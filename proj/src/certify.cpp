#include "scatterlab/certify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scatterlab {

namespace {

unsigned long long ipow(uint64_t q, unsigned e) {
    unsigned long long r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

const uint64_t kSporadicOrders[] = {25, 49, 121, 529, 841, 3481, 16, 81, 729};

} // namespace

const char* hering_tag_name(HeringTag t) {
    switch (t) {
    case HeringTag::GammaL1: return "gammaL1";
    case HeringTag::SL: return "SL";
    case HeringTag::Sp: return "Sp";
    case HeringTag::G2: return "G2";
    case HeringTag::Sporadic: return "sporadic";
    }
    return "?";
}

std::vector<HeringCase> hering_cases(uint64_t q, unsigned d) {
    uint64_t p;
    unsigned a;
    factor_prime_power(q, p, a);
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    const uint64_t q_d = ipow(q, d);
    std::vector<HeringCase> out;
    std::vector<unsigned> divisors;
    for (unsigned e = 1; e <= d; ++e)
        if (d % e == 0) divisors.push_back(e);
    // e = 1 is the GammaL(1) degenerate of the SL case, handled by the sieve
    out.push_back({HeringTag::GammaL1, 1, q_d, q_d});
    for (unsigned e : divisors)
        if (e >= 2) out.push_back({HeringTag::SL, e, ipow(q, d / e), q_d});
    for (unsigned e : divisors)
        if (e >= 4 && e % 2 == 0) out.push_back({HeringTag::Sp, e, ipow(q, d / e), q_d});
    if (p == 2 && d % 6 == 0) out.push_back({HeringTag::G2, 6, ipow(q, d / 6), q_d});
    if (std::find(std::begin(kSporadicOrders), std::end(kSporadicOrders), q_d) !=
        std::end(kSporadicOrders))
        out.push_back({HeringTag::Sporadic, 0, 0, q_d});
    return out;
}

bool fm_rank_criterion(const Mat& A, unsigned d) {
    if (A.rows() != d || A.cols() != d) throw std::invalid_argument("matrix size mismatch");
    return (A - Mat::identity(A.field(), d)).rank() < static_cast<size_t>(d) - 1;
}

FElem fixed_nonsquare(const Field* f) {
    if (f->characteristic() == 2) return f->one(); // squaring is a bijection
    const uint64_t half = (f->size() - 1) / 2;
    for (uint64_t x = 2; x < f->size(); ++x)
        if (f->pow(x, half) != 1) return {f, x};
    throw std::logic_error("no nonsquare found in a field of odd characteristic");
}

// --- SL certificates (Prop. analogue: companion element via column-prescribed
// determinant completion) ------------------------------------------------------

RankCertificate sl_certificate(const EmbeddingContext& ctx, const Mat& beta, unsigned j) {
    const unsigned e = ctx.n();
    const unsigned m = ctx.m();
    const unsigned d = ctx.d();
    if (e <= 2) throw std::invalid_argument("the SL construction needs e > 2");
    if (beta.field() != ctx.fqm() || beta.rows() != e || beta.cols() != e)
        throw std::invalid_argument("beta must be e x e over F_{q^{d/e}}");
    if (!beta.is_invertible()) throw std::invalid_argument("beta must be invertible");

    const unsigned jr = j % m;
    const Mat M = frobenius_block(ctx);
    const Mat Mj = M.pow(jr);
    const Mat Mj_inv = M.pow((m - jr) % m);

    // first and (d/e+1)-th column of (M^j)^{-1}; only one block of each is
    // nonzero because M is block diagonal
    const auto col1 = Mj_inv.column(0);
    const auto col2 = Mj_inv.column(m);
    std::vector<uint64_t> y1_b(col1.begin(), col1.begin() + m);
    std::vector<uint64_t> y2_b(col2.begin() + m, col2.begin() + 2 * m);
    const uint64_t y1 = ctx.from_b_coords(y1_b);
    const uint64_t y2 = ctx.from_b_coords(y2_b);

    const Mat B = eta(ctx, beta);
    const Mat Bbar = Mj_inv * B * Mj;
    const Mat Tbar = eta_inverse(ctx, Bbar);
    const FElem det_target = Tbar.det();

    std::vector<uint64_t> c1(e, 0), c2(e, 0);
    c1[0] = y1;
    c2[1] = y2;
    const Mat D = sl_complete(ctx.fqm(), e, c1, c2, det_target);

    const Mat Abar = eta(ctx, D) * Bbar.inverse();
    const Mat A = Mj * Abar * Mj_inv;
    const Mat alpha = eta_inverse(ctx, A);
    if (alpha.det() != ctx.fqm()->one()) throw std::logic_error("companion is not in SL");

    RankCertificate cert;
    cert.kind = "sl";
    cert.q = ctx.fq()->size();
    cert.e = e;
    cert.d = d;
    cert.beta = beta;
    cert.j = j;
    cert.companion_elt = alpha;
    cert.bound = d - 2;
    const Mat product = eta(ctx, alpha) * B * Mj;
    cert.achieved_rank =
        static_cast<unsigned>((product - Mat::identity(ctx.fq(), d)).rank());
    cert.verified = cert.achieved_rank <= cert.bound;
    if (!cert.verified) throw std::logic_error("SL certificate failed its rank bound");
    return cert;
}

// --- Sp certificates ------------------------------------------------------------

Semilinear sp_compose(const EmbeddingContext& ctx, const SpInput& input) {
    const Field* fqm = ctx.fqm();
    const unsigned e = ctx.n();
    if (e % 2 != 0) throw std::invalid_argument("Sp elements need even e");
    if (input.alpha == 0) throw std::invalid_argument("scalar part must be nonzero");
    if (input.sp.field() != fqm || input.sp.rows() != e)
        throw std::invalid_argument("symplectic part must be e x e over F_{q^{d/e}}");
    if (!is_symplectic(input.sp)) throw std::invalid_argument("sp part is not symplectic");
    if (input.r_nonsquare && fqm->characteristic() == 2)
        throw std::invalid_argument("(R_a)_q is trivial in even characteristic");

    Mat R = Mat::identity(fqm, e);
    if (input.r_nonsquare) {
        const uint64_t a0 = fixed_nonsquare(fqm).idx;
        const uint64_t a = fqm->frobenius(a0, ctx.fq(), input.a_exp);
        for (unsigned i = e / 2; i < e; ++i) R.at(i, i) = a;
    }
    const unsigned s = input.frob % ctx.m();
    // R o sigma^s o S_alpha o A has linear part R * S_{sigma^s(alpha)} * sigma^s(A)
    const uint64_t alpha_s = fqm->frobenius(input.alpha, ctx.fq(), s);
    Mat S = Mat::identity(fqm, e).scaled({fqm, alpha_s});
    Semilinear out;
    out.linear = R * S * frobenius_entrywise(ctx, input.sp, s);
    out.frob = s;
    return out;
}

SpInput sp_decompose(const EmbeddingContext& ctx, const Semilinear& g) {
    const Field* fqm = ctx.fqm();
    const unsigned e = ctx.n();
    const Mat H = symplectic_form(fqm, e);
    const Mat sim = g.linear * H * g.linear.transpose();
    // similitude factor mu with L H L^T = mu H
    const uint64_t mu = sim.at(0, e / 2);
    if (mu == 0 || sim != H.scaled({fqm, mu}))
        throw std::invalid_argument("linear part does not normalize the symplectic form");

    SpInput out;
    out.frob = g.frob % ctx.m();
    out.a_exp = 0;
    uint64_t alpha2; // alpha^2 = mu / sim(R)
    if (fqm->characteristic() == 2) {
        out.r_nonsquare = false;
        alpha2 = mu;
    } else {
        const uint64_t half = (fqm->size() - 1) / 2;
        out.r_nonsquare = fqm->pow(mu, half) != 1;
        alpha2 = out.r_nonsquare ? fqm->mul(mu, fqm->inv(fixed_nonsquare(fqm).idx)) : mu;
    }
    // smallest square root; the sign ambiguity is absorbed into the sp part
    uint64_t alpha = 0;
    for (uint64_t x = 1; x < fqm->size(); ++x) {
        if (fqm->mul(x, x) == alpha2) {
            alpha = x;
            break;
        }
    }
    if (alpha == 0) throw std::logic_error("similitude factor is not of the expected form");
    out.alpha = alpha;

    Mat R = Mat::identity(fqm, e);
    if (out.r_nonsquare) {
        const uint64_t a0 = fixed_nonsquare(fqm).idx;
        for (unsigned i = e / 2; i < e; ++i) R.at(i, i) = a0;
    }
    const uint64_t alpha_s = fqm->frobenius(alpha, ctx.fq(), out.frob);
    const Mat S = Mat::identity(fqm, e).scaled({fqm, alpha_s});
    const Mat A_s = S.inverse() * R.inverse() * g.linear; // sigma^s(A)
    // undo the entry-wise Frobenius
    out.sp = frobenius_entrywise(ctx, A_s, (ctx.m() - out.frob) % ctx.m());
    if (!is_symplectic(out.sp))
        throw std::invalid_argument("residual part is not symplectic");
    return out;
}

RankCertificate sp_certificate(const EmbeddingContext& ctx, const SpInput& input) {
    const Field* fqm = ctx.fqm();
    const unsigned e = ctx.n();
    const unsigned m = ctx.m();
    const unsigned d = ctx.d();
    if (e % 2 != 0 || e < 4) throw std::invalid_argument("the Sp construction needs even e >= 4");

    const Semilinear full = sp_compose(ctx, input);
    // D part: everything but the symplectic factor
    SpInput d_part = input;
    d_part.sp = Mat::identity(fqm, e);
    const Semilinear D = sp_compose(ctx, d_part);

    const Mat etaD = eta_semilinear(ctx, D);
    const Mat etaD_inv = etaD.inverse();

    // columns of eta(D)^{-1} in positions 1, 1+d/e, ..., 1+(e/2-1)d/e; block
    // diagonality puts the nonzero entry of f_i in position i
    std::vector<std::vector<uint64_t>> prescribed;
    std::vector<std::vector<uint64_t>> c_cols;
    for (unsigned i = 0; i < e / 2; ++i) {
        const auto col = etaD_inv.column(static_cast<size_t>(i) * m);
        std::vector<uint64_t> f_i(e, 0);
        for (unsigned blk = 0; blk < e; ++blk) {
            std::vector<uint64_t> b(col.begin() + static_cast<size_t>(blk) * m,
                                    col.begin() + static_cast<size_t>(blk + 1) * m);
            f_i[blk] = ctx.from_b_coords(b);
        }
        for (unsigned blk = 0; blk < e; ++blk)
            if (blk != i && f_i[blk] != 0)
                throw std::logic_error("eta(D)^{-1} is not block diagonal");
        prescribed.push_back(std::move(f_i));
        c_cols.push_back(col);
    }

    const Mat Dtilde = extend_symplectic_basis(fqm, e, prescribed);
    // the first e/2 designated columns of eta(Dtilde) reproduce the c_i
    const Mat etaDt = eta(ctx, Dtilde);
    for (unsigned i = 0; i < e / 2; ++i)
        if (etaDt.column(static_cast<size_t>(i) * m) != c_cols[i])
            throw std::logic_error("designated columns of eta(Dtilde) are wrong");

    const Mat B = input.sp.inverse() * Dtilde;
    if (!is_symplectic(B)) throw std::logic_error("companion is not symplectic");

    RankCertificate cert;
    cert.kind = "sp";
    cert.q = ctx.fq()->size();
    cert.e = e;
    cert.d = d;
    cert.sp_in = input;
    cert.companion_elt = B;
    cert.symplectic_basis = Dtilde;
    cert.bound = d - e / 2;
    const Mat product = eta_semilinear(ctx, full) * eta(ctx, B);
    cert.achieved_rank =
        static_cast<unsigned>((product - Mat::identity(ctx.fq(), d)).rank());
    cert.verified = cert.achieved_rank <= cert.bound;
    if (!cert.verified) throw std::logic_error("Sp certificate failed its rank bound");
    return cert;
}

bool verify_certificate(const EmbeddingContext& ctx, const RankCertificate& cert) {
    const unsigned d = ctx.d();
    const Mat I = Mat::identity(ctx.fq(), d);
    if (cert.kind == "sl") {
        if (cert.companion_elt.det() != ctx.fqm()->one()) return false;
        const Mat M = frobenius_block(ctx);
        const Mat product = eta(ctx, cert.companion_elt) * eta(ctx, cert.beta) * M.pow(cert.j % ctx.m());
        const unsigned rank = static_cast<unsigned>((product - I).rank());
        return rank == cert.achieved_rank && rank <= cert.bound && cert.bound < d - 1;
    }
    if (cert.kind == "sp") {
        if (!is_symplectic(cert.companion_elt)) return false;
        const Mat H = symplectic_form(ctx.fqm(), cert.e);
        if (cert.symplectic_basis.transpose() * H * cert.symplectic_basis != H) return false;
        const Semilinear full = sp_compose(ctx, cert.sp_in);
        const Mat product = eta_semilinear(ctx, full) * eta(ctx, cert.companion_elt);
        const unsigned rank = static_cast<unsigned>((product - I).rank());
        return rank == cert.achieved_rank && rank <= cert.bound && cert.bound < d - 1;
    }
    return false;
}

// --- seeded samplers -------------------------------------------------------------

Mat random_gl(Rng& rng, const Field* f, unsigned e) {
    while (true) {
        Mat m(f, e, e);
        for (unsigned i = 0; i < e; ++i)
            for (unsigned j = 0; j < e; ++j) m.at(i, j) = rng.below(f->size());
        if (m.is_invertible()) return m;
    }
}

Mat random_sp(Rng& rng, const Field* f, unsigned e) {
    // product of random symplectic transvections x -> x + lambda omega(x, v) v
    Mat acc = Mat::identity(f, e);
    const unsigned factors = 4 * e;
    for (unsigned t = 0; t < factors; ++t) {
        std::vector<uint64_t> v(e, 0);
        bool nonzero = false;
        for (unsigned i = 0; i < e; ++i) {
            v[i] = rng.below(f->size());
            nonzero |= v[i] != 0;
        }
        if (!nonzero) continue;
        const uint64_t lambda = 1 + rng.below(f->size() - 1);
        Mat tv(f, e, e);
        for (unsigned j = 0; j < e; ++j) {
            std::vector<uint64_t> ej(e, 0);
            ej[j] = 1;
            const uint64_t w = f->mul(lambda, symplectic_product(f, ej, v).idx);
            for (unsigned i = 0; i < e; ++i) {
                uint64_t val = f->mul(w, v[i]);
                if (i == j) val = f->add(val, 1);
                tv.at(i, j) = val;
            }
        }
        acc = acc * tv;
    }
    if (!is_symplectic(acc)) throw std::logic_error("transvection product is not symplectic");
    return acc;
}

SpInput random_sp_input(Rng& rng, const EmbeddingContext& ctx) {
    SpInput in;
    const Field* fqm = ctx.fqm();
    if (fqm->characteristic() != 2) {
        in.r_nonsquare = rng.below(2) == 1;
        in.a_exp = static_cast<unsigned>(rng.below(ctx.m()));
    }
    in.frob = static_cast<unsigned>(rng.below(ctx.m()));
    in.alpha = 1 + rng.below(fqm->size() - 1);
    in.sp = random_sp(rng, fqm, ctx.n());
    return in;
}

CertificateBatch sl_certificate_batch(const EmbeddingContext& ctx, size_t samples,
                                      uint64_t seed) {
    Rng rng(seed);
    CertificateBatch batch;
    batch.total = samples;
    for (size_t i = 0; i < samples; ++i) {
        const Mat beta = random_gl(rng, ctx.fqm(), ctx.n());
        const unsigned j = 1 + static_cast<unsigned>(rng.below(ctx.n()));
        RankCertificate cert = sl_certificate(ctx, beta, j);
        if (verify_certificate(ctx, cert)) ++batch.verified;
        batch.max_rank = std::max(batch.max_rank, cert.achieved_rank);
        batch.certificates.push_back(std::move(cert));
    }
    return batch;
}

CertificateBatch sp_certificate_batch(const EmbeddingContext& ctx, size_t samples,
                                      uint64_t seed) {
    Rng rng(seed);
    CertificateBatch batch;
    batch.total = samples;
    for (size_t i = 0; i < samples; ++i) {
        const SpInput in = random_sp_input(rng, ctx);
        RankCertificate cert = sp_certificate(ctx, in);
        if (verify_certificate(ctx, cert)) ++batch.verified;
        batch.max_rank = std::max(batch.max_rank, cert.achieved_rank);
        batch.certificates.push_back(std::move(cert));
    }
    return batch;
}

// --- sieves ----------------------------------------------------------------------

const char* sieve_outcome_name(SieveOutcome o) {
    switch (o) {
    case SieveOutcome::Excluded: return "excluded";
    case SieveOutcome::MonomialBranch: return "monomial-branch";
    case SieveOutcome::Unresolved: return "unresolved";
    case SieveOutcome::Survivor: return "survivor";
    case SieveOutcome::ExcludedByProp: return "excluded-by-prop5.2";
    }
    return "?";
}

SieveVerdict gammaL1_sieve(uint64_t q, unsigned k, unsigned ell) {
    {
        uint64_t p;
        unsigned a;
        factor_prime_power(q, p, a); // throws unless q is a prime power
    }
    SieveVerdict v;
    v.q = q;
    v.k = k;
    v.ell = ell;
    v.d = std::max(k, ell);
    v.bound = v.d;
    if (k == 0) {
        v.branch = "k=0";
        v.quantity = ell == 0 ? 0 : 1; // (q^ell - 1)/(q^ell - 1)
        v.outcome = SieveOutcome::MonomialBranch;
        v.note = "f(x) is a monomial";
        return v;
    }
    v.branch = ell < k ? "ell<k" : "k<ell";
    const unsigned g = std::gcd(k, ell); // gcd(k, 0) = k
    const unsigned long long hi = ipow(q, std::max(k, ell));
    const unsigned long long lo = ipow(q, std::min(k, ell));
    const unsigned long long den = ipow(q, g) - 1;
    v.quantity = (hi - lo) / den;
    if (v.quantity > v.bound) {
        v.outcome = SieveOutcome::Excluded;
        v.note = "no admissible i: Q | i and i <= d is impossible";
    } else {
        v.outcome = SieveOutcome::Unresolved;
        v.note = "divisibility alone does not exclude this pair";
    }
    return v;
}

SieveVerdict spread_constraints(uint64_t q, unsigned k, unsigned ell) {
    SieveVerdict v;
    v.q = q;
    v.k = k;
    v.ell = ell;
    v.d = std::max(k, ell);
    if (v.d == 0 || v.d % 2 != 0) throw std::invalid_argument("spread constraints need d = max(k, ell) even");
    if (k == ell) throw std::invalid_argument("k = ell is not an ell-normalized shape");
    const unsigned long long divisor = ipow(q, v.d / 2) - 1;
    v.quantity = divisor;
    v.bound = 0;
    if (k == 0) {
        v.branch = "k=0";
        v.outcome = SieveOutcome::MonomialBranch;
        v.note = "f(x) is a monomial";
        return v;
    }
    if (ell > k) {
        // d = ell: the q^k - 1 fixed vectors must fill whole spread elements
        v.branch = "k<ell";
        const unsigned long long target = ipow(q, k) - 1;
        if (target % divisor != 0) {
            v.outcome = SieveOutcome::Excluded;
            v.note = "(q^{d/2}-1) does not divide (q^k-1)";
        } else {
            v.outcome = SieveOutcome::ExcludedByProp;
            v.note = "k = d/2 forced; branch excluded by the GL(2) rank argument";
        }
        return v;
    }
    // d = k: orbit sizes q^ell - 1 and q^d - q^ell against the spread partition
    v.branch = "ell<k";
    if (ell == 0) {
        v.outcome = SieveOutcome::Unresolved;
        v.note = "index 0 is outside the ramification setup (prior classification)";
        return v;
    }
    const unsigned long long target = ipow(q, ell) - 1;
    if (target % divisor != 0) {
        v.outcome = SieveOutcome::Excluded;
        v.note = "(q^{d/2}-1) does not divide (q^ell-1)";
    } else if (ell == v.d / 2) {
        v.outcome = SieveOutcome::Survivor;
        v.note = "e=2, d=k, ell=k/2";
    } else {
        v.outcome = SieveOutcome::Excluded;
        v.note = "(q^{d/2}-1) divides (q^ell-1) only for ell = d/2";
    }
    return v;
}

} // namespace scatterlab
