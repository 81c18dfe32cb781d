#include "scatterlab/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace scatterlab {

namespace {

constexpr unsigned kMaxDegree = 30; // flattened degree bound at desk scale

uint64_t checked_pow_size(uint64_t p, uint64_t e, uint64_t limit) {
    unsigned __int128 v = 1;
    for (uint64_t i = 0; i < e; ++i) {
        v *= p;
        if (v > limit) return 0;
    }
    return static_cast<uint64_t>(v);
}

uint64_t mulmod_order(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((unsigned __int128)a * b % m);
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

void factor_prime_power(uint64_t q, uint64_t& p, unsigned& a) {
    if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    uint64_t n = q;
    uint64_t base = 0;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            base = d;
            break;
        }
    }
    if (base == 0) {
        p = q;
        a = 1;
        return;
    }
    a = 0;
    while (n > 1) {
        if (n % base != 0) throw std::invalid_argument("not a prime power: " + std::to_string(q));
        n /= base;
        ++a;
    }
    p = base;
}

// --- FElem operators ---------------------------------------------------------

namespace {
void require_same_field(const FElem& a, const FElem& b) {
    if (a.field != b.field)
        throw std::invalid_argument("field mismatch between operands");
}
} // namespace

FElem FElem::operator+(const FElem& o) const {
    require_same_field(*this, o);
    return {field, field->add(idx, o.idx)};
}
FElem FElem::operator-(const FElem& o) const {
    require_same_field(*this, o);
    return {field, field->sub(idx, o.idx)};
}
FElem FElem::operator-() const { return {field, field->neg(idx)}; }
FElem FElem::operator*(const FElem& o) const {
    require_same_field(*this, o);
    return {field, field->mul(idx, o.idx)};
}
FElem FElem::operator/(const FElem& o) const {
    require_same_field(*this, o);
    return {field, field->mul(idx, field->inv(o.idx))};
}
FElem FElem::inv() const { return {field, field->inv(idx)}; }
FElem FElem::pow(uint64_t e) const { return {field, field->pow(idx, e)}; }

FElem FElem::lift(const Field* top) const {
    if (top == field) return *this;
    if (!top->has_level(field) || !top->in_level(idx, field))
        throw std::invalid_argument("element does not lie in a level of the target tower");
    return {top, idx};
}

// --- registry ----------------------------------------------------------------

class FieldRegistry {
public:
    static FieldRegistry& instance() {
        static FieldRegistry r;
        return r;
    }

    FieldPtr get(uint64_t p, const std::vector<unsigned>& chain) {
        std::lock_guard<std::mutex> lock(mu_);
        return get_locked(p, chain);
    }

private:
    FieldPtr get_locked(uint64_t p, const std::vector<unsigned>& chain) {
        auto key = std::make_pair(p, chain);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        FieldPtr f;
        if (chain.empty()) {
            f = Field::prime_field(p);
        } else {
            auto base_chain = chain;
            unsigned top = base_chain.back();
            base_chain.pop_back();
            f = Field::extend(get_locked(p, base_chain), top);
        }
        cache_.emplace(std::move(key), f);
        return f;
    }

    std::mutex mu_;
    std::map<std::pair<uint64_t, std::vector<unsigned>>, FieldPtr> cache_;
};

uint64_t Field::max_field_size() {
    static const uint64_t bound = [] {
        if (const char* env = std::getenv("SCATTERLAB_MAX_FIELD")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v >= 2) return static_cast<uint64_t>(v);
        }
        return kDefaultMaxFieldSize;
    }();
    return bound;
}

FieldPtr Field::build(uint64_t p, const std::vector<unsigned>& chain) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("characteristic must be prime, got " + std::to_string(p));
    std::vector<unsigned> normalized;
    uint64_t total_deg = 1;
    for (unsigned d : chain) {
        if (d < 1) throw std::invalid_argument("extension degrees must be >= 1");
        if (d > 1) normalized.push_back(d);
        total_deg *= d;
    }
    if (total_deg > kMaxDegree || checked_pow_size(p, total_deg, max_field_size()) == 0)
        throw std::invalid_argument("field size exceeds the desk-scale bound");
    return FieldRegistry::instance().get(p, normalized);
}

FieldPtr build_field(uint64_t p, const std::vector<unsigned>& chain) {
    return Field::build(p, chain);
}

Field::~Field() = default;

FieldPtr Field::prime_field(uint64_t p) {
    auto f = FieldPtr(new Field());
    auto* m = const_cast<Field*>(f.get());
    m->kind_ = Kind::Prime;
    m->p_ = p;
    m->size_ = p;
    m->deg_ = 1;
    m->rel_deg_ = 1;
    m->init_tables();
    return f;
}

// --- generic vector arithmetic -------------------------------------------------

void Field::decode(uint64_t idx, digit_t* out) const {
    for (unsigned i = 0; i < deg_; ++i) {
        out[i] = static_cast<digit_t>(idx % p_);
        idx /= p_;
    }
}

uint64_t Field::encode(const digit_t* digits) const {
    uint64_t idx = 0;
    for (unsigned i = deg_; i-- > 0;) idx = idx * p_ + digits[i];
    return idx;
}

void Field::vec_mul(const digit_t* a, const digit_t* b, digit_t* out) const {
    if (is_prime_field()) {
        out[0] = static_cast<digit_t>((uint64_t)a[0] * b[0] % p_);
        return;
    }
    const Field* bs = base_.get();
    const unsigned bd = bs->deg_;
    const unsigned r = rel_deg_;
    digit_t acc[2 * kMaxDegree] = {0};
    digit_t prod[kMaxDegree];
    for (unsigned i = 0; i < r; ++i) {
        for (unsigned j = 0; j < r; ++j) {
            bs->vec_mul(a + i * bd, b + j * bd, prod);
            digit_t* dst = acc + (i + j) * bd;
            for (unsigned t = 0; t < bd; ++t) {
                digit_t s = dst[t] + prod[t];
                dst[t] = s >= p_ ? s - static_cast<digit_t>(p_) : s;
            }
        }
    }
    // fold degrees 2r-2 .. r through the monic modulus
    for (unsigned t = 2 * r - 2; t >= r; --t) {
        digit_t* lead = acc + t * bd;
        bool zero = true;
        for (unsigned u = 0; u < bd; ++u)
            if (lead[u]) { zero = false; break; }
        if (!zero) {
            for (unsigned i = 0; i < r; ++i) {
                const digit_t* mc = modulus_digits_.data() + i * bd;
                bool mzero = true;
                for (unsigned u = 0; u < bd; ++u)
                    if (mc[u]) { mzero = false; break; }
                if (mzero) continue;
                bs->vec_mul(lead, mc, prod);
                digit_t* dst = acc + (t - r + i) * bd;
                for (unsigned u = 0; u < bd; ++u) {
                    // dst -= prod (mod p)
                    digit_t s = dst[u] + static_cast<digit_t>(p_) - prod[u];
                    dst[u] = s >= p_ ? s - static_cast<digit_t>(p_) : s;
                }
            }
        }
        if (t == r) break;
    }
    std::memcpy(out, acc, sizeof(digit_t) * deg_);
}

uint64_t Field::mul_generic(uint64_t a, uint64_t b) const {
    digit_t va[kMaxDegree], vb[kMaxDegree], vo[kMaxDegree];
    decode(a, va);
    decode(b, vb);
    vec_mul(va, vb, vo);
    return encode(vo);
}

// --- dispatched index arithmetic ------------------------------------------------

uint64_t Field::add(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    switch (kind_) {
    case Kind::Prime: {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    case Kind::Table:
        return add_table_[a * size_ + b];
    default: {
        digit_t va[kMaxDegree], vb[kMaxDegree];
        decode(a, va);
        decode(b, vb);
        for (unsigned i = 0; i < deg_; ++i) {
            digit_t s = va[i] + vb[i];
            va[i] = s >= p_ ? s - static_cast<digit_t>(p_) : s;
        }
        return encode(va);
    }
    }
}

uint64_t Field::neg(uint64_t a) const {
    if (p_ == 2) return a;
    switch (kind_) {
    case Kind::Prime:
        return a == 0 ? 0 : p_ - a;
    case Kind::Table:
        return neg_table_[a];
    default: {
        digit_t va[kMaxDegree];
        decode(a, va);
        for (unsigned i = 0; i < deg_; ++i)
            if (va[i]) va[i] = static_cast<digit_t>(p_) - va[i];
        return encode(va);
    }
    }
}

uint64_t Field::sub(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    if (kind_ == Kind::Prime) {
        return a >= b ? a - b : a + p_ - b;
    }
    return add(a, neg(b));
}

uint64_t Field::mul(uint64_t a, uint64_t b) const {
    switch (kind_) {
    case Kind::Prime:
        return a * b % p_;
    case Kind::Table:
        return mul_table_[a * size_ + b];
    case Kind::Log:
        if (a == 0 || b == 0) return 0;
        return exp_table_[(static_cast<uint64_t>(log_table_[a]) + log_table_[b]) % (size_ - 1)];
    default:
        return mul_generic(a, b);
    }
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) throw std::domain_error("inversion of zero");
    switch (kind_) {
    case Kind::Prime:
        return pow(a, p_ - 2);
    case Kind::Table:
        return inv_table_[a];
    case Kind::Log:
        return exp_table_[(size_ - 1 - log_table_[a]) % (size_ - 1)];
    default:
        return pow(a, size_ - 2);
    }
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    if (kind_ == Kind::Log && a != 0) {
        uint64_t le = mulmod_order(log_table_[a], e % (size_ - 1), size_ - 1);
        return exp_table_[le];
    }
    uint64_t result = size_ > 1 ? 1 : 0;
    uint64_t base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

uint64_t Field::frobenius_p_generic(uint64_t a) const {
    // apply the precomputed F_p-linear p-power matrix
    digit_t va[kMaxDegree];
    decode(a, va);
    uint64_t out[kMaxDegree] = {0};
    for (unsigned j = 0; j < deg_; ++j) {
        if (!va[j]) continue;
        const uint64_t c = va[j];
        const uint64_t* col = powp_matrix_.data() + j * deg_;
        for (unsigned i = 0; i < deg_; ++i) out[i] += c * col[i];
    }
    digit_t digits[kMaxDegree];
    for (unsigned i = 0; i < deg_; ++i) digits[i] = static_cast<digit_t>(out[i] % p_);
    return encode(digits);
}

uint64_t Field::frobenius_p(uint64_t a) const {
    switch (kind_) {
    case Kind::Prime:
        return a; // a^p = a in F_p
    case Kind::Log:
        if (a == 0) return 0;
        return exp_table_[mulmod_order(log_table_[a], p_ % (size_ - 1), size_ - 1)];
    default:
        return frobenius_p_generic(a);
    }
}

uint64_t Field::frobenius(uint64_t a, const Field* lvl, uint64_t i) const {
    if (!has_level(lvl)) throw std::invalid_argument("not a level of this tower");
    if (kind_ == Kind::Log) {
        if (a == 0) return 0;
        // exponent |lvl|^i mod (size-1)
        uint64_t e = 1;
        const uint64_t m = size_ - 1;
        uint64_t b = lvl->size_ % m;
        uint64_t k = i;
        while (k) {
            if (k & 1) e = mulmod_order(e, b, m);
            b = mulmod_order(b, b, m);
            k >>= 1;
        }
        return exp_table_[mulmod_order(log_table_[a], e, m)];
    }
    uint64_t r = a;
    const uint64_t steps = (static_cast<uint64_t>(lvl->deg_) % deg_) * (i % deg_) % deg_;
    for (uint64_t s = 0; s < steps; ++s) r = frobenius_p(r); // Frobenius order = deg_
    return r;
}

FElem Field::element(uint64_t idx) const {
    if (idx >= size_) throw std::out_of_range("element index out of range");
    return {this, idx};
}

FElem Field::generator() const {
    if (is_prime_field()) return one();
    // nested-basis generator: digit at position base->degree() set to 1
    return {this, checked_pow_size(p_, base_->deg_, size_)};
}

// --- tower navigation ----------------------------------------------------------

unsigned Field::tower_depth() const {
    unsigned d = 1;
    for (const Field* f = base_.get(); f; f = f->base_.get()) ++d;
    return d;
}

const Field* Field::level(unsigned i) const {
    const unsigned depth = tower_depth();
    if (i >= depth) throw std::out_of_range("tower level out of range");
    const Field* f = this;
    for (unsigned s = depth - 1; s > i; --s) f = f->base_.get();
    return f;
}

bool Field::has_level(const Field* lvl) const {
    for (const Field* f = this; f; f = f->base_.get())
        if (f == lvl) return true;
    return false;
}

unsigned Field::degree_over(const Field* lvl) const {
    if (!has_level(lvl)) throw std::invalid_argument("not a level of this tower");
    return deg_ / lvl->deg_;
}

bool Field::in_level(uint64_t idx, const Field* lvl) const {
    if (!has_level(lvl)) throw std::invalid_argument("not a level of this tower");
    return idx < lvl->size_;
}

std::vector<uint64_t> Field::coords_over(uint64_t idx, const Field* lvl) const {
    const unsigned r = degree_over(lvl);
    std::vector<uint64_t> out(r);
    const uint64_t block = lvl->size_;
    for (unsigned i = 0; i < r; ++i) {
        out[i] = idx % block;
        idx /= block;
    }
    return out;
}

uint64_t Field::from_coords_over(const Field* lvl, const std::vector<uint64_t>& coords) const {
    const unsigned r = degree_over(lvl);
    if (coords.size() > r) throw std::invalid_argument("too many coordinates");
    uint64_t idx = 0;
    for (unsigned i = static_cast<unsigned>(coords.size()); i-- > 0;) {
        if (coords[i] >= lvl->size_) throw std::out_of_range("coordinate out of range");
        idx = idx * lvl->size_ + coords[i];
    }
    return idx;
}

std::string Field::literal() const {
    std::ostringstream os;
    os << p_ << "^[";
    if (chain_.empty()) {
        os << "1";
    } else {
        for (size_t i = 0; i < chain_.size(); ++i) {
            if (i) os << ",";
            os << chain_[i];
        }
    }
    os << "]";
    return os.str();
}

// --- construction of extension levels -------------------------------------------

namespace {

// Minimal polynomial arithmetic over a completed field, used only for the
// irreducibility search below. Coefficients are element indices.
struct PolyMod {
    const Field* f;
    std::vector<uint64_t> mod; // monic, length deg+1

    unsigned deg() const { return static_cast<unsigned>(mod.size()) - 1; }

    std::vector<uint64_t> mul(const std::vector<uint64_t>& a,
                              const std::vector<uint64_t>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<uint64_t> c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j)
                if (b[j]) c[i + j] = f->add(c[i + j], f->mul(a[i], b[j]));
        }
        reduce(c);
        return c;
    }

    void reduce(std::vector<uint64_t>& c) const {
        const unsigned d = deg();
        for (size_t t = c.size(); t-- > d;) {
            if (!c[t]) continue;
            const uint64_t lead = c[t];
            c[t] = 0;
            for (unsigned i = 0; i < d; ++i)
                if (mod[i]) c[t - d + i] = f->sub(c[t - d + i], f->mul(lead, mod[i]));
        }
        c.resize(d);
        trim(c);
    }

    static void trim(std::vector<uint64_t>& c) {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    // x^{q_exp} mod this modulus, q_exp given as (base, exponent)
    std::vector<uint64_t> x_power_q(uint64_t q, uint64_t e) const {
        std::vector<uint64_t> result{0, 1}; // x
        if (deg() == 1) {
            // x == constant mod (x - c); still well defined
            reduce(result);
        }
        // repeated squaring on the exponent q^e
        // exponent fits desk scale: q^e <= field size of the new level
        unsigned __int128 exp = 1;
        for (uint64_t i = 0; i < e; ++i) exp *= q;
        std::vector<uint64_t> acc{1};
        std::vector<uint64_t> base = result;
        while (exp) {
            if (exp & 1) acc = mul(acc, base);
            base = mul(base, base);
            exp >>= 1;
        }
        return acc;
    }

    std::vector<uint64_t> gcd(std::vector<uint64_t> a, std::vector<uint64_t> b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            // a mod b
            while (a.size() >= b.size() && !a.empty()) {
                const uint64_t c = f->mul(a.back(), f->inv(b.back()));
                const size_t shift = a.size() - b.size();
                for (size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = f->sub(a[shift + i], f->mul(c, b[i]));
                trim(a);
            }
            std::swap(a, b);
        }
        return a;
    }
};

bool is_irreducible(const Field* base, const std::vector<uint64_t>& monic) {
    const unsigned d = static_cast<unsigned>(monic.size()) - 1;
    if (d == 1) return true;
    PolyMod pm{base, monic};
    // no roots / full splitting test: x^{q^d} == x mod f, and for each prime
    // r | d, gcd(x^{q^{d/r}} - x, f) = 1
    auto xqd = pm.x_power_q(base->size(), d);
    std::vector<uint64_t> x{0, 1};
    PolyMod::trim(xqd);
    if (xqd != x) return false;
    for (uint64_t r : prime_factors(d)) {
        auto xe = pm.x_power_q(base->size(), d / r);
        // xe - x
        if (xe.size() < 2) xe.resize(2, 0);
        xe[1] = base->sub(xe[1], 1);
        auto g = pm.gcd(xe, monic);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

FieldPtr Field::extend(FieldPtr base, unsigned degree) {
    const uint64_t p = base->characteristic();
    const uint64_t total_deg = static_cast<uint64_t>(base->degree()) * degree;
    const uint64_t size = checked_pow_size(p, total_deg, Field::max_field_size());
    if (size == 0 || total_deg > kMaxDegree)
        throw std::invalid_argument("field size exceeds the desk-scale bound");

    // lexicographically smallest monic irreducible modulus: enumerate
    // coefficient tuples by their integer encoding, low-degree digit least
    // significant
    std::vector<uint64_t> monic(degree + 1, 0);
    monic[degree] = 1;
    bool found = false;
    const uint64_t q = base->size();
    uint64_t limit = 1;
    for (unsigned i = 0; i < degree; ++i) limit *= q; // q^degree candidate tuples
    for (uint64_t code = 0; code < limit; ++code) {
        uint64_t c = code;
        for (unsigned i = 0; i < degree; ++i) {
            monic[i] = c % q;
            c /= q;
        }
        if (is_irreducible(base.get(), monic)) {
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("irreducibility search failed"); // unreachable for valid input

    auto f = FieldPtr(new Field());
    auto* m = const_cast<Field*>(f.get());
    m->p_ = p;
    m->size_ = size;
    m->deg_ = static_cast<unsigned>(total_deg);
    m->rel_deg_ = degree;
    m->base_ = base;
    m->chain_ = base->chain_;
    m->chain_.push_back(degree);
    m->modulus_ = monic;
    m->modulus_digits_.assign(static_cast<size_t>(degree) * base->degree(), 0);
    for (unsigned i = 0; i < degree; ++i)
        base->decode(monic[i], m->modulus_digits_.data() + static_cast<size_t>(i) * base->degree());
    if (size <= kMulTableLimit)
        m->kind_ = Kind::Table;
    else if (size <= kLogTableLimit)
        m->kind_ = Kind::Log;
    else
        m->kind_ = Kind::Generic;
    m->init_tables();
    return f;
}

void Field::init_tables() {
    // p-power matrix first (Table/Generic kinds need it; builds on generic mul)
    if (kind_ != Kind::Prime && kind_ != Kind::Log) {
        powp_matrix_.assign(static_cast<size_t>(deg_) * deg_, 0);
        for (unsigned j = 0; j < deg_; ++j) {
            digit_t digits[kMaxDegree] = {0};
            digits[j] = 1;
            uint64_t bj = encode(digits);
            // bj^p by repeated generic multiplication
            uint64_t r = 1, b = bj, e = p_;
            while (e) {
                if (e & 1) r = mul_generic(r, b);
                b = mul_generic(b, b);
                e >>= 1;
            }
            decode(r, digits);
            for (unsigned i = 0; i < deg_; ++i) powp_matrix_[j * deg_ + i] = digits[i];
        }
    }

    // deterministic primitive element: smallest index of full order
    const uint64_t order = size_ - 1;
    if (order <= 1) {
        primitive_idx_ = size_ > 1 ? 1 : 0;
    } else {
        auto mul_fn = [this](uint64_t a, uint64_t b) {
            return kind_ == Kind::Prime ? a * b % p_ : mul_generic(a, b);
        };
        auto pow_fn = [&](uint64_t a, uint64_t e) {
            uint64_t r = 1, b = a;
            while (e) {
                if (e & 1) r = mul_fn(r, b);
                b = mul_fn(b, b);
                e >>= 1;
            }
            return r;
        };
        const auto factors = prime_factors(order);
        for (uint64_t cand = 2;; ++cand) {
            if (cand >= size_) throw std::logic_error("no primitive element found");
            bool ok = true;
            for (uint64_t r : factors) {
                if (pow_fn(cand, order / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                primitive_idx_ = cand;
                break;
            }
        }
    }

    if (kind_ == Kind::Log || kind_ == Kind::Table) {
        exp_table_.resize(size_ - 1);
        log_table_.assign(size_, 0);
        uint64_t acc = 1;
        for (uint64_t i = 0; i + 1 < size_; ++i) {
            exp_table_[i] = static_cast<uint32_t>(acc);
            log_table_[acc] = static_cast<uint32_t>(i);
            acc = mul_generic(acc, primitive_idx_);
        }
        if (acc != 1) throw std::logic_error("primitive element order mismatch");
    }

    if (kind_ == Kind::Table) {
        mul_table_.assign(size_ * size_, 0);
        add_table_.assign(size_ * size_, 0);
        inv_table_.assign(size_, 0);
        neg_table_.assign(size_, 0);
        for (uint64_t a = 0; a < size_; ++a) {
            for (uint64_t b = 0; b < size_; ++b) {
                // use log tables built above for mul, generic digits for add
                uint64_t prod = (a && b)
                    ? exp_table_[(static_cast<uint64_t>(log_table_[a]) + log_table_[b]) % (size_ - 1)]
                    : 0;
                mul_table_[a * size_ + b] = static_cast<uint32_t>(prod);
                digit_t va[kMaxDegree], vb[kMaxDegree];
                decode(a, va);
                decode(b, vb);
                for (unsigned i = 0; i < deg_; ++i) {
                    digit_t s = va[i] + vb[i];
                    va[i] = s >= p_ ? s - static_cast<digit_t>(p_) : s;
                }
                add_table_[a * size_ + b] = static_cast<uint32_t>(encode(va));
            }
        }
        for (uint64_t a = 1; a < size_; ++a) {
            inv_table_[a] = exp_table_[(size_ - 1 - log_table_[a]) % (size_ - 1)];
            digit_t va[kMaxDegree];
            decode(a, va);
            for (unsigned i = 0; i < deg_; ++i)
                if (va[i]) va[i] = static_cast<digit_t>(p_) - va[i];
            neg_table_[a] = static_cast<uint32_t>(encode(va));
        }
        // keep exp/log for pow/frobenius shortcuts
    }
}

// --- norms, traces, minimal polynomials ------------------------------------------

FElem norm_rel(const FElem& a, const Field* sub) {
    const Field* top = a.field;
    const unsigned e = top->degree_over(sub);
    uint64_t acc = top->size() > 1 ? 1 : 0;
    uint64_t conj = a.idx;
    for (unsigned i = 0; i < e; ++i) {
        acc = top->mul(acc, conj);
        conj = top->frobenius(conj, sub, 1);
    }
    if (!top->in_level(acc, sub)) throw std::logic_error("norm not in subfield");
    return {sub, acc};
}

FElem trace_rel(const FElem& a, const Field* sub) {
    const Field* top = a.field;
    const unsigned e = top->degree_over(sub);
    uint64_t acc = 0;
    uint64_t conj = a.idx;
    for (unsigned i = 0; i < e; ++i) {
        acc = top->add(acc, conj);
        conj = top->frobenius(conj, sub, 1);
    }
    if (!top->in_level(acc, sub)) throw std::logic_error("trace not in subfield");
    return {sub, acc};
}

std::vector<FElem> min_poly(const FElem& a, const Field* sub) {
    const Field* top = a.field;
    if (!top->has_level(sub)) throw std::invalid_argument("not a level of this tower");
    // orbit of a under x -> x^{|sub|}
    std::vector<uint64_t> orbit{a.idx};
    uint64_t c = top->frobenius(a.idx, sub, 1);
    while (c != a.idx) {
        orbit.push_back(c);
        c = top->frobenius(c, sub, 1);
    }
    // product of (x - c_i) over the top field
    std::vector<uint64_t> poly{1};
    for (uint64_t root : orbit) {
        std::vector<uint64_t> next(poly.size() + 1, 0);
        const uint64_t neg_root = top->neg(root);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = top->add(next[i + 1], poly[i]);
            next[i] = top->add(next[i], top->mul(poly[i], neg_root));
        }
        poly = std::move(next);
    }
    std::vector<FElem> out;
    out.reserve(poly.size());
    for (uint64_t ci : poly) {
        if (!top->in_level(ci, sub)) throw std::logic_error("minimal polynomial coefficient not in subfield");
        out.push_back({sub, ci});
    }
    return out;
}

FElem poly_eval(const std::vector<FElem>& coeffs, const FElem& x) {
    const Field* f = x.field;
    uint64_t acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = f->mul(acc, x.idx);
        uint64_t ci = coeffs[i].idx;
        if (coeffs[i].field != f) ci = coeffs[i].lift(f).idx; // throws when incompatible
        acc = f->add(acc, ci);
    }
    return {f, acc};
}

// --- embeddings between towers ----------------------------------------------------

namespace {

// F_p-linear embedding matrix between towers, cached per (from, into).
struct EmbeddingMap {
    const Field* from;
    const Field* into;
    std::vector<uint64_t> images; // image of each from-nested-basis element

    uint64_t apply(uint64_t idx) const {
        digit_t digits[kMaxDegree];
        from->decode(idx, digits);
        uint64_t acc = 0;
        for (unsigned j = 0; j < from->degree(); ++j) {
            if (!digits[j]) continue;
            // scalar multiples by prime elements: repeated addition is fine
            // (p is small whenever deg > 1; for prime fields images are ints)
            uint64_t term = images[j];
            uint64_t scaled = 0;
            uint64_t c = digits[j];
            // double-and-add in the additive group
            uint64_t base = term;
            while (c) {
                if (c & 1) scaled = into->add(scaled, base);
                base = into->add(base, base);
                c >>= 1;
            }
            acc = into->add(acc, scaled);
        }
        return acc;
    }
};

const Field* deepest_common_level(const Field* a, const Field* b) {
    const Field* best = nullptr;
    for (const Field* f = a; f; f = f->base()) {
        if (b->has_level(f)) {
            best = f;
            break; // ancestors ordered deepest-first
        }
    }
    return best;
}

uint64_t find_root_min(const Field* into, const std::vector<uint64_t>& poly_into,
                       uint64_t subfield_size) {
    // roots lie in the subfield of `into` with subfield_size elements.
    // That subfield is the kernel of x -> x^{subfield_size} - x, an F_p-linear
    // map on into; enumerate the kernel and evaluate.
    const unsigned D = into->degree();
    uint64_t p = into->characteristic();
    unsigned sub_deg = 0;
    {
        uint64_t s = subfield_size;
        while (s > 1) {
            s /= p;
            ++sub_deg;
        }
    }
    // matrix of Frobenius^{sub_deg} - I over F_p
    std::vector<uint64_t> cols(static_cast<size_t>(D) * D, 0);
    for (unsigned j = 0; j < D; ++j) {
        digit_t digits[kMaxDegree] = {0};
        digits[j] = 1;
        uint64_t b = into->encode(digits);
        for (unsigned s = 0; s < sub_deg; ++s) b = into->frobenius_p(b);
        into->decode(b, digits);
        for (unsigned i = 0; i < D; ++i)
            cols[j * D + i] = (digits[i] + p - (i == j ? 1 : 0)) % p;
    }
    // kernel basis by Gaussian elimination over F_p (rows = equations)
    std::vector<std::vector<uint64_t>> rows(D, std::vector<uint64_t>(D));
    for (unsigned i = 0; i < D; ++i)
        for (unsigned j = 0; j < D; ++j) rows[i][j] = cols[j * D + i];
    std::vector<int> pivot_col(D, -1);
    unsigned rank = 0;
    auto inv_p = [&](uint64_t a) {
        uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (unsigned col = 0; col < D && rank < D; ++col) {
        unsigned sel = rank;
        while (sel < D && rows[sel][col] == 0) ++sel;
        if (sel == D) continue;
        std::swap(rows[rank], rows[sel]);
        const uint64_t piv = inv_p(rows[rank][col]);
        for (unsigned j = 0; j < D; ++j) rows[rank][j] = rows[rank][j] * piv % p;
        for (unsigned i = 0; i < D; ++i) {
            if (i != rank && rows[i][col]) {
                const uint64_t c = rows[i][col];
                for (unsigned j = 0; j < D; ++j)
                    rows[i][j] = (rows[i][j] + (p - c) * rows[rank][j]) % p;
            }
        }
        pivot_col[rank++] = static_cast<int>(col);
    }
    std::vector<bool> is_pivot(D, false);
    for (unsigned i = 0; i < rank; ++i) is_pivot[static_cast<unsigned>(pivot_col[i])] = true;
    std::vector<uint64_t> kernel_basis;
    for (unsigned free_col = 0; free_col < D; ++free_col) {
        if (is_pivot[free_col]) continue;
        digit_t digits[kMaxDegree] = {0};
        digits[free_col] = 1;
        for (unsigned i = 0; i < rank; ++i) {
            const uint64_t v = rows[i][free_col];
            if (v) digits[static_cast<unsigned>(pivot_col[i])] =
                static_cast<digit_t>((p - v) % p);
        }
        kernel_basis.push_back(into->encode(digits));
    }
    // enumerate kernel combinations, evaluating the polynomial at each
    uint64_t best = UINT64_MAX;
    const size_t r = kernel_basis.size();
    uint64_t count = 1;
    for (size_t i = 0; i < r; ++i) count *= p;
    std::vector<uint64_t> combo(r, 0);
    uint64_t current = 0;
    for (uint64_t step = 0;; ++step) {
        // evaluate
        uint64_t acc = 0;
        for (size_t i = poly_into.size(); i-- > 0;) {
            acc = into->mul(acc, current);
            acc = into->add(acc, poly_into[i]);
        }
        if (acc == 0 && current < best) best = current;
        if (step + 1 >= count) break;
        // increment the combination (base-p counter over kernel basis)
        size_t pos = 0;
        while (true) {
            current = into->add(current, kernel_basis[pos]);
            combo[pos]++;
            if (combo[pos] < p) break;
            // subtract p copies: current already wrapped p times, fix up
            combo[pos] = 0;
            pos++;
        }
    }
    if (best == UINT64_MAX) throw std::logic_error("no root of minimal polynomial in target field");
    return best;
}

EmbeddingMap build_embedding(const Field* from, const Field* into) {
    if (from == into || into->has_level(from)) {
        // canonical inclusion: identity on indices
        EmbeddingMap m{from, into, {}};
        m.images.resize(from->degree());
        for (unsigned j = 0; j < from->degree(); ++j) {
            digit_t digits[kMaxDegree] = {0};
            digits[j] = 1;
            m.images[j] = from->encode(digits); // same index in `into`
        }
        return m;
    }
    const Field* common = deepest_common_level(from, into);
    if (!common || into->degree() % from->degree() != 0)
        throw std::invalid_argument("no subfield relation between " + from->literal() +
                                    " and " + into->literal());
    // recursively embed the base of `from`
    const Field* fb = from->base();
    EmbeddingMap base_map = build_embedding(fb, into);
    // push the modulus of `from` through the base embedding and find the
    // lexicographically smallest root for the generator image
    std::vector<uint64_t> poly_into(from->modulus().size());
    for (size_t i = 0; i < poly_into.size(); ++i) poly_into[i] = base_map.apply(from->modulus()[i]);
    const uint64_t root = find_root_min(into, poly_into, from->size());
    // images of from's nested basis: base-basis image * root^block
    EmbeddingMap m{from, into, {}};
    m.images.resize(from->degree());
    uint64_t root_pow = into->size() > 1 ? 1 : 0;
    const unsigned bd = fb->degree();
    for (unsigned blk = 0; blk < from->degree_over_base(); ++blk) {
        for (unsigned j = 0; j < bd; ++j)
            m.images[static_cast<size_t>(blk) * bd + j] = into->mul(base_map.images[j], root_pow);
        root_pow = into->mul(root_pow, root);
    }
    return m;
}

const EmbeddingMap& cached_embedding(const Field* from, const Field* into) {
    static std::mutex mu;
    static std::map<std::pair<const Field*, const Field*>, EmbeddingMap> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(from, into);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_embedding(from, into)).first;
    return it->second;
}

} // namespace

FElem embed_tower(const FElem& a, const Field* from, const Field* into) {
    if (a.field != from) throw std::invalid_argument("element does not belong to the source field");
    if (from == into) return a;
    const auto& m = cached_embedding(from, into);
    return {into, m.apply(a.idx)};
}

} // namespace scatterlab
