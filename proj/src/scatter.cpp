#include "scatterlab/scatter.hpp"

#include <atomic>
#include <chrono>
#include <cstring>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "scatterlab/parallel.hpp"

namespace scatterlab {

namespace {

int64_t ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// Rank of an N x N scratch buffer over the base field, stopping as soon as
// N-1 pivots are found (the kernel test only needs "nullity >= 2?").
unsigned rank_capped(const Field* B, uint32_t* a, unsigned N) {
    unsigned r = 0;
    for (unsigned col = 0; col < N && r < N; ++col) {
        unsigned sel = r;
        while (sel < N && a[sel * N + col] == 0) ++sel;
        if (sel == N) continue;
        if (sel != r)
            for (unsigned j = col; j < N; ++j) std::swap(a[sel * N + j], a[r * N + j]);
        const uint64_t piv_inv = B->inv(a[r * N + col]);
        for (unsigned j = col; j < N; ++j)
            a[r * N + j] = static_cast<uint32_t>(B->mul(a[r * N + j], piv_inv));
        for (unsigned i = r + 1; i < N; ++i) {
            const uint32_t c = a[i * N + col];
            if (!c) continue;
            for (unsigned j = col; j < N; ++j)
                a[i * N + j] = static_cast<uint32_t>(B->sub(a[i * N + j], B->mul(c, a[r * N + j])));
        }
        ++r;
        if (r + 1 >= N) return r; // nullity <= 1 is already certain
    }
    return r;
}

// Precomputed data for the kernel-method loop: A_f and the N matrices
// W_t = (x -> b_t x^{q^ell}) over F_q, so that the matrix of f - m x^{q^ell}
// is A_f - sum_t m_t W_t where (m_t) are the F_q-coordinates of m.
struct KernelLoop {
    const Field* F;
    const Field* B;
    unsigned N;
    uint64_t q;
    std::vector<uint32_t> af;             // N*N
    std::vector<std::vector<uint32_t>> w; // N matrices, N*N each

    KernelLoop(const LinearizedPoly& f, unsigned ell) {
        F = f.field;
        B = f.base;
        N = f.n();
        q = B->size();
        Mat am = as_matrix(f);
        af.resize(N * N);
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j) af[i * N + j] = static_cast<uint32_t>(am.at(i, j));
        // u_j = (b_j)^{q^ell}; column j of W_t = coords(b_t * u_j)
        std::vector<uint64_t> u(N), b(N);
        for (unsigned j = 0; j < N; ++j) {
            std::vector<uint64_t> coords(j + 1, 0);
            coords[j] = 1;
            b[j] = F->from_coords_over(B, coords);
            u[j] = F->frobenius(b[j], B, ell);
        }
        w.assign(N, std::vector<uint32_t>(N * N));
        for (unsigned t = 0; t < N; ++t) {
            for (unsigned j = 0; j < N; ++j) {
                const uint64_t prod = F->mul(b[t], u[j]);
                const auto coords = F->coords_over(prod, B);
                for (unsigned i = 0; i < N; ++i) w[t][i * N + j] = static_cast<uint32_t>(coords[i]);
            }
        }
    }

    // Visit every m in [lo, hi) in ascending canonical order; visit(m, mat)
    // returns true to stop early. The matrix stack partial[t] holds
    // A_f - sum_{u >= t} m_u W_u, updated incrementally as the base-q counter
    // advances.
    void run(uint64_t lo, uint64_t hi, const std::function<bool(uint64_t, const uint32_t*)>& visit) const {
        if (lo >= hi) return;
        const size_t cells = static_cast<size_t>(N) * N;
        std::vector<std::vector<uint32_t>> partial(N + 1, std::vector<uint32_t>(cells));
        std::vector<uint32_t> digits(N, 0);
        {
            uint64_t m = lo;
            for (unsigned t = 0; t < N; ++t) {
                digits[t] = static_cast<uint32_t>(m % q);
                m /= q;
            }
        }
        partial[N] = af;
        for (unsigned t = N; t-- > 0;) {
            partial[t] = partial[t + 1];
            if (digits[t]) {
                const uint32_t* wt = w[t].data();
                uint32_t* dst = partial[t].data();
                for (size_t i = 0; i < cells; ++i)
                    dst[i] = static_cast<uint32_t>(
                        B->sub(dst[i], B->mul(digits[t], wt[i])));
            }
        }
        std::vector<uint32_t> scratch(cells);
        for (uint64_t m = lo;; ++m) {
            std::memcpy(scratch.data(), partial[0].data(), cells * sizeof(uint32_t));
            if (visit(m, scratch.data())) return;
            if (m + 1 >= hi) return;
            // advance the base-q counter and refresh the partial stack
            unsigned t = 0;
            while (digits[t] + 1 == q) {
                digits[t] = 0;
                ++t;
            }
            ++digits[t];
            uint32_t* dst = partial[t].data();
            const uint32_t* wt = w[t].data();
            for (size_t i = 0; i < cells; ++i)
                dst[i] = static_cast<uint32_t>(B->sub(dst[i], wt[i]));
            for (unsigned u = t; u-- > 0;) partial[u] = partial[u + 1];
        }
    }

    Mat matrix_for(uint64_t m) const {
        Mat out(B, N, N);
        const auto coords = F->coords_over(m, B);
        for (unsigned i = 0; i < N; ++i)
            for (unsigned j = 0; j < N; ++j) {
                uint64_t v = af[i * N + j];
                for (unsigned t = 0; t < N; ++t)
                    if (coords[t]) v = B->sub(v, B->mul(coords[t], w[t][i * N + j]));
                out.at(i, j) = v;
            }
        return out;
    }
};

ScatterReport base_report(const LinearizedPoly& f, unsigned ell, const char* method) {
    ScatterReport r;
    r.method = method;
    r.field_literal = f.field->literal();
    r.field_size = f.field->size();
    r.ell = ell;
    r.poly = f.coeffs;
    return r;
}

} // namespace

bool verify_witness(const LinearizedPoly& f, unsigned ell, const ScatterWitness& w) {
    const Field* F = f.field;
    if (w.y == 0 || w.z == 0 || w.y == w.z) return false;
    const FElem y{F, w.y}, z{F, w.z};
    const uint64_t yq = F->frobenius(w.y, f.base, ell);
    const uint64_t zq = F->frobenius(w.z, f.base, ell);
    if (evaluate(f, y).idx != F->mul(w.m, yq)) return false;
    if (evaluate(f, z).idx != F->mul(w.m, zq)) return false;
    // y/z must lie outside F_q
    const uint64_t ratio = F->mul(w.y, F->inv(w.z));
    return ratio >= f.base->size();
}

ScatterReport is_scattered_kernel(const LinearizedPoly& f, unsigned ell, unsigned jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    if (ell >= f.n()) throw std::invalid_argument("index ell out of range");
    ScatterReport rep = base_report(f, ell, "kernel");
    const KernelLoop loop(f, ell);
    const unsigned N = loop.N;

    std::atomic<uint64_t> first_fail{UINT64_MAX};
    parallel_ranges(f.field->size(), jobs, [&](unsigned, uint64_t lo, uint64_t hi) {
        std::vector<uint32_t> buf;
        loop.run(lo, hi, [&](uint64_t m, const uint32_t* mat) {
            if (m >= first_fail.load(std::memory_order_relaxed)) return true;
            buf.assign(mat, mat + static_cast<size_t>(N) * N);
            const unsigned rank = rank_capped(loop.B, buf.data(), N);
            if (N - rank >= 2) {
                // record the earliest failing m across all ranges
                uint64_t cur = first_fail.load();
                while (m < cur && !first_fail.compare_exchange_weak(cur, m)) {
                }
                return true;
            }
            return false;
        });
    });

    if (first_fail.load() == UINT64_MAX) {
        rep.scattered = true;
    } else {
        const uint64_t m = first_fail.load();
        ScatterWitness w;
        w.m = m;
        auto kernel = loop.matrix_for(m).nullspace();
        if (kernel.size() < 2) throw std::logic_error("kernel witness disappeared on recomputation");
        w.y = f.field->from_coords_over(f.base, kernel[0]);
        w.z = f.field->from_coords_over(f.base, kernel[1]);
        if (!verify_witness(f, ell, w))
            throw std::logic_error("kernel witness failed re-verification");
        rep.scattered = false;
        rep.witness = w;
    }
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

ScatterReport is_scattered_pairs(const LinearizedPoly& f, unsigned ell) {
    const auto t0 = std::chrono::steady_clock::now();
    if (ell >= f.n()) throw std::invalid_argument("index ell out of range");
    const Field* F = f.field;
    const uint64_t size = F->size();
    if (size > (1ull << 14))
        throw std::invalid_argument("pair oracle limited to fields of size <= 2^14");
    ScatterReport rep = base_report(f, ell, "pairs");

    // quotients f(x) / x^{q^ell} for all nonzero x
    std::vector<uint64_t> quo(size, 0);
    for (uint64_t x = 1; x < size; ++x) {
        const uint64_t fx = evaluate(f, {F, x}).idx;
        const uint64_t xq = F->frobenius(x, f.base, ell);
        quo[x] = F->mul(fx, F->inv(xq));
    }
    const uint64_t q = f.base->size();
    for (uint64_t y = 1; y < size; ++y) {
        for (uint64_t z = y + 1; z < size; ++z) {
            if (quo[y] != quo[z]) continue;
            const uint64_t ratio = F->mul(y, F->inv(z));
            if (ratio < q) continue; // y/z in F_q: implication holds
            ScatterWitness w;
            w.m = quo[y];
            w.y = y;
            w.z = z;
            rep.scattered = false;
            rep.witness = w;
            rep.elapsed_ms = ms_since(t0);
            return rep;
        }
    }
    rep.scattered = true;
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

namespace {

ProbeReport probe_impl(const LinearizedPoly& f, unsigned ell, unsigned m_max, unsigned jobs,
                       const FamilyPoly* family) {
    if (m_max < 1) throw std::invalid_argument("probe depth must be >= 1");
    ProbeReport out;
    const uint64_t p = f.field->characteristic();
    const unsigned n = f.n();
    std::vector<unsigned> chain = f.field->chain();
    const uint64_t bound = Field::max_field_size();
    for (unsigned mult = 1; mult <= m_max; ++mult) {
        // size check before building the extension
        unsigned __int128 sz = 1;
        bool fits = true;
        const uint64_t total_deg =
            static_cast<uint64_t>(f.base->degree()) * n * mult;
        for (uint64_t i = 0; i < total_deg; ++i) {
            sz *= p;
            if (sz > bound) {
                fits = false;
                break;
            }
        }
        if (!fits) {
            out.truncated = true;
            out.truncated_at = mult;
            break;
        }
        chain.back() = n * mult;
        const FieldPtr ext = build_field(p, chain);
        const LinearizedPoly g = mult == 1 ? f : embed_linpoly(f, ext.get());
        ProbeEntry entry;
        entry.m = mult;
        entry.report = is_scattered_kernel(g, ell, jobs);
        if (family) {
            const unsigned n_ext = g.n();
            bool cond = std::gcd(static_cast<unsigned>(family->s), n_ext) == 1;
            if (family->family == "lp" && cond) {
                const FElem delta_ext =
                    mult == 1 ? FElem{f.field, family->delta_idx}
                              : embed_tower({f.field, family->delta_idx}, f.field, ext.get());
                cond = norm_rel(delta_ext, g.base) != g.base->one();
            }
            entry.family_condition = cond;
        }
        if (!entry.report.scattered && !out.first_failure) out.first_failure = mult;
        out.entries.push_back(std::move(entry));
    }
    return out;
}

} // namespace

ProbeReport probe_exceptional(const LinearizedPoly& f, unsigned ell, unsigned m_max,
                              unsigned jobs) {
    return probe_impl(f, ell, m_max, jobs, nullptr);
}

ProbeReport probe_family(const FamilyPoly& f, unsigned m_max, unsigned jobs) {
    return probe_impl(f.poly, f.declared_index, m_max, jobs, &f);
}

UfCheck check_uf_scattered(const UfSubspace& u) {
    const Field* F = u.field;
    const Field* B = u.base;
    const unsigned n = F->degree_over_base();
    // spread elements are the F_q-shadows of the projective points (a : b):
    // representatives (1, b) for every b, plus (0, 1)
    std::vector<uint64_t> basis_elems(n);
    for (unsigned j = 0; j < n; ++j) {
        std::vector<uint64_t> coords(j + 1, 0);
        coords[j] = 1;
        basis_elems[j] = F->from_coords_over(B, coords);
    }
    UfCheck out;
    Mat joint(B, 2 * n, 2 * n);
    for (unsigned i = 0; i < 2 * n; ++i)
        for (unsigned j = 0; j < n; ++j) joint.at(i, j) = u.basis.at(i, j);
    auto test_point = [&](uint64_t a, uint64_t b) {
        // spread element basis: (lam a, lam b) for lam over the F_q-basis
        for (unsigned j = 0; j < n; ++j) {
            const uint64_t la = F->mul(basis_elems[j], a);
            const uint64_t lb = F->mul(basis_elems[j], b);
            const auto c1 = F->coords_over(la, B);
            const auto c2 = F->coords_over(lb, B);
            for (unsigned i = 0; i < n; ++i) {
                joint.at(i, n + j) = c1[i];
                joint.at(n + i, n + j) = c2[i];
            }
        }
        const unsigned inter = 2 * n - static_cast<unsigned>(joint.rank());
        if (inter > out.max_intersection_dim) out.max_intersection_dim = inter;
    };
    for (uint64_t b = 0; b < F->size(); ++b) test_point(1, b);
    test_point(0, 1);
    out.scattered = out.max_intersection_dim <= 1;
    return out;
}

} // namespace scatterlab
