#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatterlab/linpoly.hpp"

namespace scatterlab {

// Witness that f is not scattered of index ell. Both decision methods
// produce the same shape: m = f(y)/y^{q^ell} = f(z)/z^{q^ell} and y, z two
// F_q-independent vectors in the kernel of f - m x^{q^ell}.
struct ScatterWitness {
    uint64_t m = 0;
    uint64_t y = 0;
    uint64_t z = 0;
};

struct ScatterReport {
    bool scattered = false;
    std::optional<ScatterWitness> witness;
    std::string method; // "kernel" | "pairs"
    std::string field_literal;
    uint64_t field_size = 0;
    unsigned ell = 0;
    std::vector<uint64_t> poly; // coefficient echo
    int64_t elapsed_ms = 0;
};

// Kernel method: f is scattered of index ell iff kernel_dim(f - m x^{q^ell})
// <= 1 for every m in F_{q^n}. One n x n rank computation over F_q per m;
// m runs in canonical index order and the first failure is reported with two
// kernel basis vectors. The m-loop parallelizes over `jobs` contiguous index
// ranges with a deterministic min-merge, so any jobs count gives the same
// report.
ScatterReport is_scattered_kernel(const LinearizedPoly& f, unsigned ell, unsigned jobs = 1);

// Reference oracle: tests the defining implication directly on all pairs
// y, z in F_{q^n}^*. Quadratic; limited to fields of size <= 2^14.
ScatterReport is_scattered_pairs(const LinearizedPoly& f, unsigned ell);

// Re-check a witness by direct field arithmetic.
bool verify_witness(const LinearizedPoly& f, unsigned ell, const ScatterWitness& w);

struct ProbeEntry {
    unsigned m = 1; // extension multiplier
    ScatterReport report;
    // Family conditions re-evaluated in F_{q^{nm}} when the probed polynomial
    // came from a named family; absent otherwise.
    std::optional<bool> family_condition;
};

struct ProbeReport {
    std::vector<ProbeEntry> entries; // ordered by increasing m
    std::optional<unsigned> first_failure;
    bool truncated = false; // a probe exceeded the desk-scale bound
    unsigned truncated_at = 0;
};

// Embed f into F_{q^{nm}} for m = 1..m_max (same index ell) and run the
// kernel test at each level. Oversized extensions truncate the report rather
// than fail.
ProbeReport probe_exceptional(const LinearizedPoly& f, unsigned ell, unsigned m_max,
                              unsigned jobs = 1);

// Same, but re-derives the family conditions (gcd, norm) in every extension.
ProbeReport probe_family(const FamilyPoly& f, unsigned m_max, unsigned jobs = 1);

struct UfCheck {
    bool scattered = false;
    unsigned max_intersection_dim = 0;
};

// Geometric check: max over the Desarguesian spread of F_{q^n} x F_{q^n} of
// dim(U meet spread element); U is scattered iff the max is <= 1.
UfCheck check_uf_scattered(const UfSubspace& u);

} // namespace scatterlab
