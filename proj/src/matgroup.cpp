#include "scatterlab/matgroup.hpp"

#include <stdexcept>

namespace scatterlab {

Mat companion_matrix(const std::vector<FElem>& monic_poly) {
    if (monic_poly.size() < 2) throw std::invalid_argument("polynomial degree must be >= 1");
    const Field* f = monic_poly.front().field;
    const size_t m = monic_poly.size() - 1;
    if (monic_poly.back() != f->one()) throw std::invalid_argument("polynomial must be monic");
    Mat c(f, m, m);
    for (size_t i = 0; i + 1 < m; ++i) c.at(i + 1, i) = 1; // shift part
    for (size_t i = 0; i < m; ++i) c.at(i, m - 1) = f->neg(monic_poly[i].idx);
    return c;
}

EmbeddingContext::EmbeddingContext(const Field* fq, unsigned m, unsigned n)
    : fq_(fq), m_(m), n_(n) {
    if (m < 1 || n < 1) throw std::invalid_argument("context requires m, n >= 1");
    std::vector<unsigned> chain = fq->chain();
    if (m > 1) chain.push_back(m);
    fqm_ = Field::build(fq->characteristic(), chain).get();
    if (n > 1) chain.push_back(n);
    fbig_ = Field::build(fq->characteristic(), chain).get();

    gamma_ = fqm_->primitive_element();
    delta_ = n > 1 ? fbig_->generator() : fbig_->one();

    // nested coordinates of the powers of gamma give the change of basis
    // between the tower basis and B = {1, gamma, ..., gamma^{m-1}}
    gbasis_ = Mat(fq_, m, m);
    uint64_t pw = fqm_->one().idx;
    for (unsigned j = 0; j < m; ++j) {
        const auto coords = fqm_->coords_over(pw, fq_);
        for (unsigned i = 0; i < m; ++i) gbasis_.at(i, j) = coords[i];
        pw = fqm_->mul(pw, gamma_.idx);
    }
    gbasis_inv_ = gbasis_.inverse();

    companion_ = companion_matrix(min_poly(gamma_, fq_));

    frob_bar_ = Mat(fq_, m, m);
    for (unsigned j = 0; j < m; ++j) {
        const uint64_t gj = fqm_->pow(gamma_.idx, j);
        const auto col = b_coords(fqm_->frobenius(gj, fq_, 1));
        for (unsigned i = 0; i < m; ++i) frob_bar_.at(i, j) = col[i];
    }

    // C = {delta^i gamma^j} must be an F_q-basis of F_{q^{nm}}; the coordinate
    // map below is block triangular by construction, but verify once anyway
    Mat cmat(fq_, n * m, n * m);
    for (unsigned i = 0; i < n; ++i) {
        const uint64_t di = fbig_->pow(delta_.idx, i);
        for (unsigned j = 0; j < m; ++j) {
            const uint64_t gl = fqm_->pow(gamma_.idx, j); // lives in fqm, same index in fbig
            const uint64_t prod = fbig_->mul(di, gl);
            const auto coords = fbig_->coords_over(prod, fq_);
            for (unsigned r = 0; r < n * m; ++r) cmat.at(r, i * m + j) = coords[r];
        }
    }
    if (cmat.rank() != static_cast<size_t>(n) * m)
        throw std::logic_error("C is not an F_q-basis of F_{q^{nm}}");
}

std::vector<uint64_t> EmbeddingContext::b_coords(uint64_t a) const {
    const auto nested = fqm_->coords_over(a, fq_);
    auto sol = Mat::solve(gbasis_, nested);
    if (!sol) throw std::logic_error("B-coordinate solve failed");
    return *sol;
}

uint64_t EmbeddingContext::from_b_coords(const std::vector<uint64_t>& v) const {
    if (v.size() != m_) throw std::invalid_argument("B-coordinate size mismatch");
    uint64_t acc = 0;
    uint64_t pw = fqm_->one().idx;
    for (unsigned j = 0; j < m_; ++j) {
        if (v[j]) acc = fqm_->add(acc, fqm_->mul(v[j], pw));
        pw = fqm_->mul(pw, gamma_.idx);
    }
    return acc;
}

std::vector<uint64_t> EmbeddingContext::c_coords(uint64_t a) const {
    // blocks over F_{q^m} are the A-coordinates (power basis of delta);
    // each block is then rewritten over B
    const auto blocks = fbig_->coords_over(a, fqm_);
    std::vector<uint64_t> out(static_cast<size_t>(n_) * m_);
    for (unsigned i = 0; i < n_; ++i) {
        const auto bc = b_coords(blocks[i]);
        for (unsigned j = 0; j < m_; ++j) out[static_cast<size_t>(i) * m_ + j] = bc[j];
    }
    return out;
}

uint64_t EmbeddingContext::from_c_coords(const std::vector<uint64_t>& v) const {
    if (v.size() != static_cast<size_t>(n_) * m_)
        throw std::invalid_argument("C-coordinate size mismatch");
    std::vector<uint64_t> blocks(n_);
    for (unsigned i = 0; i < n_; ++i) {
        std::vector<uint64_t> bc(v.begin() + static_cast<size_t>(i) * m_,
                                 v.begin() + static_cast<size_t>(i + 1) * m_);
        blocks[i] = from_b_coords(bc);
    }
    return fbig_->from_coords_over(fqm_, blocks);
}

Mat phi(const EmbeddingContext& ctx, const FElem& a) {
    if (a.field != ctx.fqm()) throw std::invalid_argument("phi argument must lie in F_{q^m}");
    const unsigned m = ctx.m();
    Mat out(ctx.fq(), m, m);
    // columns (a)_B, C (a)_B, ..., C^{m-1} (a)_B
    std::vector<uint64_t> col = ctx.b_coords(a.idx);
    for (unsigned j = 0; j < m; ++j) {
        for (unsigned i = 0; i < m; ++i) out.at(i, j) = col[i];
        if (j + 1 < m) {
            std::vector<uint64_t> next(m, 0);
            for (unsigned i = 0; i < m; ++i)
                for (unsigned k = 0; k < m; ++k)
                    if (ctx.companion().at(i, k) && col[k])
                        next[i] = ctx.fq()->add(
                            next[i], ctx.fq()->mul(ctx.companion().at(i, k), col[k]));
            col = std::move(next);
        }
    }
    return out;
}

Mat eta(const EmbeddingContext& ctx, const Mat& T) {
    if (T.field() != ctx.fqm()) throw std::invalid_argument("eta argument must be over F_{q^m}");
    if (T.rows() != ctx.n() || T.cols() != ctx.n())
        throw std::invalid_argument("eta argument must be n x n");
    std::vector<std::vector<Mat>> grid(ctx.n(), std::vector<Mat>(ctx.n()));
    for (unsigned i = 0; i < ctx.n(); ++i)
        for (unsigned j = 0; j < ctx.n(); ++j) grid[i][j] = phi(ctx, T.elem(i, j));
    return Mat::from_blocks(grid);
}

Mat eta_inverse(const EmbeddingContext& ctx, const Mat& big) {
    const unsigned d = ctx.d();
    if (big.field() != ctx.fq() || big.rows() != d || big.cols() != d)
        throw std::invalid_argument("eta_inverse argument must be d x d over F_q");
    const unsigned m = ctx.m();
    Mat T(ctx.fqm(), ctx.n(), ctx.n());
    for (unsigned i = 0; i < ctx.n(); ++i) {
        for (unsigned j = 0; j < ctx.n(); ++j) {
            // first column of each block is (T_ij)_B
            std::vector<uint64_t> col(m);
            for (unsigned r = 0; r < m; ++r) col[r] = big.at(i * m + r, j * m);
            T.at(i, j) = ctx.from_b_coords(col);
        }
    }
    if (eta(ctx, T) != big) throw std::invalid_argument("matrix is not in the image of eta");
    return T;
}

Mat frobenius_block(const EmbeddingContext& ctx) {
    return Mat::block_diag(std::vector<Mat>(ctx.n(), ctx.frob_bar()));
}

bool check_commutation(const EmbeddingContext& ctx, const FElem& a) {
    const Mat M = frobenius_block(ctx);
    const Mat I = Mat::identity(ctx.fq(), ctx.m());
    std::vector<Mat> left_blocks(ctx.n(), I), right_blocks(ctx.n(), I);
    left_blocks[0] = phi(ctx, a);
    const uint64_t a_conj = ctx.fqm()->frobenius(a.idx, ctx.fq(), ctx.m() - 1);
    right_blocks[0] = phi(ctx, {ctx.fqm(), a_conj});
    return Mat::block_diag(left_blocks) * M == M * Mat::block_diag(right_blocks);
}

Semilinear semilinear_mul(const EmbeddingContext& ctx, const Semilinear& a,
                          const Semilinear& b) {
    Semilinear out;
    out.linear = a.linear * frobenius_entrywise(ctx, b.linear, a.frob);
    out.frob = (a.frob + b.frob) % ctx.m();
    return out;
}

Mat frobenius_entrywise(const EmbeddingContext& ctx, const Mat& T, unsigned s) {
    const Field* fqm = ctx.fqm();
    return T.map_entries([&](uint64_t v) { return fqm->frobenius(v, ctx.fq(), s); });
}

Mat eta_semilinear(const EmbeddingContext& ctx, const Semilinear& g) {
    return eta(ctx, g.linear) * frobenius_block(ctx).pow(g.frob % ctx.m());
}

// --- symplectic machinery ----------------------------------------------------

Mat symplectic_form(const Field* f, unsigned e) {
    if (e < 2 || e % 2 != 0) throw std::invalid_argument("symplectic form needs even e >= 2");
    Mat h(f, e, e);
    const uint64_t minus_one = f->neg(1);
    for (unsigned i = 0; i < e / 2; ++i) {
        h.at(i, e / 2 + i) = 1;
        h.at(e / 2 + i, i) = minus_one;
    }
    return h;
}

bool is_symplectic(const Mat& A) {
    if (A.rows() != A.cols() || A.rows() % 2 != 0) return false;
    const Mat h = symplectic_form(A.field(), static_cast<unsigned>(A.rows()));
    if (!A.is_invertible()) return false;
    return A * h * A.transpose() == h;
}

FElem symplectic_product(const Field* f, const std::vector<uint64_t>& x,
                         const std::vector<uint64_t>& y) {
    if (x.size() != y.size() || x.size() % 2 != 0)
        throw std::invalid_argument("symplectic product needs even-length vectors");
    const size_t half = x.size() / 2;
    uint64_t acc = 0;
    for (size_t i = 0; i < half; ++i) {
        acc = f->add(acc, f->mul(x[i], y[half + i]));
        acc = f->sub(acc, f->mul(x[half + i], y[i]));
    }
    return {f, acc};
}

Mat extend_symplectic_basis(const Field* f, unsigned e,
                            const std::vector<std::vector<uint64_t>>& prescribed) {
    if (e < 2 || e % 2 != 0) throw std::invalid_argument("e must be even and >= 2");
    const unsigned half = e / 2;
    if (prescribed.size() > half)
        throw std::invalid_argument("at most e/2 vectors can be prescribed");
    for (const auto& v : prescribed)
        if (v.size() != e) throw std::invalid_argument("prescribed vector of wrong length");
    {
        Mat p(f, e, prescribed.size());
        for (size_t j = 0; j < prescribed.size(); ++j) p.set_column(j, prescribed[j]);
        if (p.rank() != prescribed.size())
            throw std::invalid_argument("prescribed vectors are dependent");
    }
    for (size_t i = 0; i < prescribed.size(); ++i)
        for (size_t j = i + 1; j < prescribed.size(); ++j)
            if (!symplectic_product(f, prescribed[i], prescribed[j]).is_zero())
                throw std::invalid_argument("prescribed vectors must pair to zero");

    std::vector<std::vector<uint64_t>> us(prescribed), ws;

    // partner for u_i: omega(u_j, w) = delta_{ij} for all current u, and
    // omega(w_j, w) = 0 for finished partners; echelon particular solution
    auto find_partner = [&](size_t i) {
        const size_t rows = us.size() + ws.size();
        Mat A(f, rows, e);
        std::vector<uint64_t> rhs(rows, 0);
        for (size_t r = 0; r < us.size(); ++r) {
            // row = (u_r)^T H
            for (unsigned c = 0; c < e; ++c) {
                uint64_t v = c >= half ? us[r][c - half] : f->neg(us[r][c + half]);
                A.at(r, c) = v;
            }
            rhs[r] = r == i ? 1 : 0;
        }
        for (size_t r = 0; r < ws.size(); ++r) {
            for (unsigned c = 0; c < e; ++c) {
                uint64_t v = c >= half ? ws[r][c - half] : f->neg(ws[r][c + half]);
                A.at(us.size() + r, c) = v;
            }
        }
        auto sol = Mat::solve(A, rhs);
        if (!sol) throw std::logic_error("symplectic partner system is inconsistent");
        return *sol;
    };

    // fill missing u-slots greedily from standard basis vectors, projecting
    // each candidate off the completed hyperbolic pairs
    auto next_u = [&]() {
        for (unsigned cand = 0; cand < e; ++cand) {
            std::vector<uint64_t> v(e, 0);
            v[cand] = 1;
            for (size_t j = 0; j < ws.size(); ++j) {
                const uint64_t c1 = symplectic_product(f, us[j], v).idx; // omega(u_j, v)
                const uint64_t c2 = symplectic_product(f, ws[j], v).idx; // omega(w_j, v)
                // v += c2 u_j - c1 w_j removes the pairing with both
                for (unsigned t = 0; t < e; ++t) {
                    v[t] = f->add(v[t], f->mul(c2, us[j][t]));
                    v[t] = f->sub(v[t], f->mul(c1, ws[j][t]));
                }
            }
            // must also be independent of (and isotropic with) the current u's
            bool ok = true;
            for (const auto& u : us)
                if (!symplectic_product(f, u, v).is_zero()) { ok = false; break; }
            if (!ok) continue;
            Mat span(f, e, us.size() + ws.size() + 1);
            size_t col = 0;
            for (const auto& u : us) span.set_column(col++, u);
            for (const auto& w : ws) span.set_column(col++, w);
            span.set_column(col, v);
            if (span.rank() == us.size() + ws.size() + 1) return v;
        }
        throw std::logic_error("failed to extend isotropic set");
    };

    // pair the prescribed vectors first, then grow to e/2 pairs
    for (size_t i = 0; i < us.size(); ++i) ws.push_back(find_partner(i));
    while (us.size() < half) {
        us.push_back(next_u());
        ws.push_back(find_partner(us.size() - 1));
    }

    Mat basis(f, e, e);
    for (unsigned j = 0; j < half; ++j) basis.set_column(j, us[j]);
    for (unsigned j = 0; j < half; ++j) basis.set_column(half + j, ws[j]);
    // Gram matrix must be exactly H
    const Mat h = symplectic_form(f, e);
    if (basis.transpose() * h * basis != h)
        throw std::logic_error("symplectic extension produced a wrong Gram matrix");
    return basis;
}

Mat sl_complete(const Field* f, unsigned e, const std::vector<uint64_t>& c1,
                const std::vector<uint64_t>& c2, const FElem& det_target) {
    if (e <= 2) throw std::invalid_argument("column completion requires e > 2");
    if (det_target.field != f || det_target.is_zero())
        throw std::invalid_argument("determinant target must be a nonzero element of the field");
    if (c1.size() != e || c2.size() != e) throw std::invalid_argument("column length mismatch");
    Mat m(f, e, e);
    m.set_column(0, c1);
    m.set_column(1, c2);
    if (m.block(0, 0, e, 2).rank() != 2)
        throw std::invalid_argument("prescribed columns are dependent");
    // Steinitz: extend with standard basis vectors in index order
    unsigned filled = 2;
    for (unsigned cand = 0; cand < e && filled < e; ++cand) {
        std::vector<uint64_t> v(e, 0);
        v[cand] = 1;
        m.set_column(filled, v);
        if (m.block(0, 0, e, filled + 1).rank() == filled + 1) ++filled;
        else m.set_column(filled, std::vector<uint64_t>(e, 0));
    }
    if (filled != e) throw std::logic_error("Steinitz completion failed");
    // scale the last added column to hit the determinant target
    const FElem cur = m.det();
    const FElem scale = det_target / cur;
    auto last = m.column(e - 1);
    for (auto& v : last) v = f->mul(v, scale.idx);
    m.set_column(e - 1, last);
    if (m.det() != det_target) throw std::logic_error("determinant adjustment failed");
    return m;
}

} // namespace scatterlab
