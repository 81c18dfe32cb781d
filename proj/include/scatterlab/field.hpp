#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace scatterlab {

class Field;
using FieldPtr = std::shared_ptr<const Field>;
using digit_t = uint32_t;

// An element of a tower field, identified by its canonical index: the
// flattened coefficient vector over the prime field read as a base-p integer,
// lowest-degree digit least significant. The nested product basis is ordered
// so that every tower level occupies an index prefix; the canonical inclusion
// of a level into any level above it is therefore the identity on indices.
struct FElem {
    const Field* field = nullptr;
    uint64_t idx = 0;

    FElem() = default;
    FElem(const Field* f, uint64_t i) : field(f), idx(i) {}

    bool is_zero() const { return idx == 0; }
    bool operator==(const FElem& o) const { return field == o.field && idx == o.idx; }
    bool operator!=(const FElem& o) const { return !(*this == o); }

    FElem operator+(const FElem& o) const;
    FElem operator-(const FElem& o) const;
    FElem operator-() const;
    FElem operator*(const FElem& o) const;
    FElem operator/(const FElem& o) const;
    FElem inv() const;
    FElem pow(uint64_t e) const;

    // Reinterpret in a field higher up the same tower (index-preserving).
    FElem lift(const Field* top) const;
};

// One level of a finite field tower F_p < F_{p^a} < ... . Instances are
// created through the cached factory Field::build and live for the whole
// process, so raw const Field* handles stay valid everywhere.
//
// Moduli are chosen deterministically: at each level the monic irreducible
// polynomial over the previous level whose coefficient tuple (low degree
// first, coefficients compared by canonical index) has the smallest integer
// encoding. Arithmetic on element indices is dispatched by field size:
// direct modular arithmetic for prime fields, full lookup tables for very
// small extensions, discrete-log tables up to kLogTableLimit, and generic
// nested polynomial arithmetic beyond that.
class Field {
public:
    static constexpr uint64_t kDefaultMaxFieldSize = 1ull << 24;
    static constexpr uint64_t kMulTableLimit = 512;
    static constexpr uint64_t kLogTableLimit = 1ull << 20;

    // Cached factory. `chain` lists extension degrees starting from F_p;
    // degree-1 entries are dropped (F_p itself has an empty chain).
    static FieldPtr build(uint64_t p, const std::vector<unsigned>& chain);

    // Desk-scale bound on field size; the SCATTERLAB_MAX_FIELD environment
    // variable overrides the default.
    static uint64_t max_field_size();

    uint64_t characteristic() const { return p_; }
    uint64_t size() const { return size_; }
    unsigned degree() const { return deg_; }               // over F_p
    unsigned degree_over_base() const { return rel_deg_; } // over parent level
    const Field* base() const { return base_.get(); }
    bool is_prime_field() const { return base_ == nullptr; }
    const std::vector<unsigned>& chain() const { return chain_; }
    std::string literal() const; // "p^[d1,d2,...]", "p^[1]" for F_p

    // Monic modulus over the base level, coefficients a_0..a_{r} as base
    // indices (a_r = 1). Empty for the prime field.
    const std::vector<uint64_t>& modulus() const { return modulus_; }

    // Tower navigation. Level 0 is the prime field; the top level is this.
    unsigned tower_depth() const;
    const Field* level(unsigned i) const;
    bool has_level(const Field* lvl) const;
    unsigned degree_over(const Field* lvl) const;

    // Element membership in a lower level of this tower: because levels are
    // index prefixes, a top-level element lies in `lvl` iff idx < lvl->size().
    bool in_level(uint64_t idx, const Field* lvl) const;

    // --- index arithmetic -------------------------------------------------
    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const; // throws on zero
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t frobenius_p(uint64_t a) const; // a^p
    // a^{|lvl|^i} for a tower level lvl of this field.
    uint64_t frobenius(uint64_t a, const Field* lvl, uint64_t i) const;

    FElem zero() const { return {this, 0}; }
    FElem one() const { return {this, size_ > 1 ? 1u : 0u}; }
    FElem element(uint64_t idx) const;

    // Root of the top-level modulus (the nested-basis generator); 1 for F_p.
    FElem generator() const;
    // Deterministic primitive element: smallest canonical index of
    // multiplicative order |F|-1.
    FElem primitive_element() const { return {this, primitive_idx_}; }

    // --- coordinate views -------------------------------------------------
    void decode(uint64_t idx, digit_t* out) const; // deg() prime digits
    uint64_t encode(const digit_t* digits) const;
    // Coordinates over a tower level: degree_over(lvl) indices of lvl.
    std::vector<uint64_t> coords_over(uint64_t idx, const Field* lvl) const;
    uint64_t from_coords_over(const Field* lvl, const std::vector<uint64_t>& coords) const;

    ~Field();
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Field() = default;
    static FieldPtr prime_field(uint64_t p);
    static FieldPtr extend(FieldPtr base, unsigned degree);
    void init_tables();
    uint64_t mul_generic(uint64_t a, uint64_t b) const;
    void vec_mul(const digit_t* a, const digit_t* b, digit_t* out) const;
    uint64_t frobenius_p_generic(uint64_t a) const;

    enum class Kind { Prime, Table, Log, Generic };
    Kind kind_ = Kind::Prime;
    uint64_t p_ = 0;
    uint64_t size_ = 0;
    unsigned deg_ = 1;     // over prime field
    unsigned rel_deg_ = 1; // over base_
    FieldPtr base_;
    std::vector<unsigned> chain_;
    std::vector<uint64_t> modulus_;     // base indices, monic, length rel_deg_+1
    std::vector<digit_t> modulus_digits_; // rel_deg_ blocks of base()->degree() prime digits
    std::vector<uint32_t> mul_table_, add_table_, inv_table_, neg_table_;
    std::vector<uint32_t> exp_table_, log_table_;
    std::vector<uint64_t> powp_matrix_; // deg x deg over F_p, column-major
    uint64_t primitive_idx_ = 0;

    friend class FieldRegistry;
};

// --- spec-level operations -------------------------------------------------

// build_field(p, chain): validated tower construction (p prime, degrees >= 1,
// size within the desk-scale bound).
FieldPtr build_field(uint64_t p, const std::vector<unsigned>& chain);

// Relative norm / trace into a lower tower level; result carries the
// sub-level field.
FElem norm_rel(const FElem& a, const Field* sub);
FElem trace_rel(const FElem& a, const Field* sub);

// Minimal polynomial of `a` over the tower level `sub`: monic, coefficients
// returned low-degree-first as elements of sub.
std::vector<FElem> min_poly(const FElem& a, const Field* sub);

// Injective ring homomorphism between towers sharing a common prefix, built
// level by level; at each step the generator goes to the lexicographically
// smallest root of its minimal polynomial in the target. Cached per
// (from, into) pair.
FElem embed_tower(const FElem& a, const Field* from, const Field* into);

// Evaluate a polynomial given by low-degree-first coefficients.
FElem poly_eval(const std::vector<FElem>& coeffs, const FElem& x);

bool is_prime_u64(uint64_t n);
// Decompose a prime power q = p^a; throws if q is not a prime power.
void factor_prime_power(uint64_t q, uint64_t& p, unsigned& a);

} // namespace scatterlab
