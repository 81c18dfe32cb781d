#include "scatterlab/serial.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace scatterlab {

FieldPtr parse_field_literal(const std::string& s) {
    const auto caret = s.find('^');
    if (caret == std::string::npos) {
        // bare prime power, e.g. "9" -> 3^[2]
        uint64_t q = 0;
        try {
            size_t pos = 0;
            q = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad field literal: " + s);
        }
        uint64_t p;
        unsigned a;
        factor_prime_power(q, p, a);
        return build_field(p, {a});
    }
    uint64_t p = 0;
    try {
        size_t pos = 0;
        p = std::stoull(s.substr(0, caret), &pos);
        if (pos != caret) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad field literal: " + s);
    }
    const std::string rest = s.substr(caret + 1);
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
        throw std::invalid_argument("bad field literal (expected p^[d1,d2,...]): " + s);
    std::vector<unsigned> chain;
    std::stringstream ss(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("bad field literal: " + s);
        chain.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (chain.empty()) throw std::invalid_argument("bad field literal (empty chain): " + s);
    return build_field(p, chain);
}

std::string field_literal(const Field* f) { return f->literal(); }

json elem_to_json(const Field* f, uint64_t idx) {
    std::vector<digit_t> digits(f->degree());
    f->decode(idx, digits.data());
    json arr = json::array();
    for (digit_t d : digits) arr.push_back(d);
    return arr;
}

uint64_t elem_from_json(const Field* f, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("element must be a coefficient tuple");
    if (j.size() > f->degree()) throw std::invalid_argument("element tuple too long");
    std::vector<digit_t> digits(f->degree(), 0);
    for (size_t i = 0; i < j.size(); ++i) {
        const uint64_t v = j[i].get<uint64_t>();
        if (v >= f->characteristic())
            throw std::invalid_argument("coefficient out of range of the prime field");
        digits[i] = static_cast<digit_t>(v);
    }
    return f->encode(digits.data());
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(elem_to_json(m.field(), m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const Field* f, const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nested array");
    const size_t rows = j.size();
    const size_t cols = j[0].size();
    Mat m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (size_t c = 0; c < cols; ++c) m.at(i, c) = elem_from_json(f, j[i][c]);
    }
    return m;
}

json poly_to_json(const LinearizedPoly& f) {
    json arr = json::array();
    for (uint64_t c : f.coeffs) arr.push_back(elem_to_json(f.field, c));
    return arr;
}

ParsedPoly parse_poly_literal(const Field* fqn, const std::string& s) {
    ParsedPoly out;
    auto parse_kv = [&](const std::string& body) {
        std::map<std::string, std::string> kv;
        // split on commas that are not inside brackets
        int depth = 0;
        std::string cur;
        std::vector<std::string> parts;
        for (char c : body) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) parts.push_back(cur);
        for (const auto& part : parts) {
            const auto eq = part.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("bad family parameter: " + part);
            kv[part.substr(0, eq)] = part.substr(eq + 1);
        }
        return kv;
    };

    if (s.rfind("pseudoregulus:", 0) == 0) {
        auto kv = parse_kv(s.substr(14));
        if (!kv.count("s")) throw std::invalid_argument("pseudoregulus needs s=<int>");
        FamilyPoly fam = pseudoregulus(fqn, static_cast<unsigned>(std::stoul(kv["s"])));
        out.poly = fam.poly;
        out.family = fam;
        return out;
    }
    if (s.rfind("lp:", 0) == 0) {
        auto kv = parse_kv(s.substr(3));
        if (!kv.count("s") || !kv.count("delta"))
            throw std::invalid_argument("lp needs s=<int>,delta=[...]");
        const uint64_t delta = elem_from_json(fqn, json::parse(kv["delta"]));
        bool rescale = kv.count("monic") && kv["monic"] == "true";
        FamilyPoly fam = lp_binomial(fqn, static_cast<unsigned>(std::stoul(kv["s"])),
                                     {fqn, delta}, rescale);
        out.poly = fam.poly;
        out.family = fam;
        return out;
    }
    std::string body = s;
    if (body.rfind("coeffs=", 0) == 0) body = body.substr(7);
    json arr;
    try {
        arr = json::parse(body);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("bad polynomial literal: " + std::string(e.what()));
    }
    if (!arr.is_array()) throw std::invalid_argument("polynomial literal must be an array");
    std::vector<uint64_t> coeffs;
    for (const auto& c : arr) coeffs.push_back(elem_from_json(fqn, c));
    out.poly = make_linpoly_idx(fqn, coeffs);
    return out;
}

json scatter_report_to_json(const ScatterReport& r) {
    const FieldPtr f = parse_field_literal(r.field_literal);
    json j;
    j["test"] = "scattered";
    j["field"] = r.field_literal;
    j["ell"] = r.ell;
    json poly = json::array();
    for (uint64_t c : r.poly) poly.push_back(elem_to_json(f.get(), c));
    j["poly"] = poly;
    j["verdict"] = r.scattered;
    if (r.witness) {
        json w;
        w["m"] = elem_to_json(f.get(), r.witness->m);
        w["y"] = elem_to_json(f.get(), r.witness->y);
        w["z"] = elem_to_json(f.get(), r.witness->z);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["method"] = r.method;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

json probe_report_to_json(const ProbeReport& r) {
    json j;
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je;
        je["m"] = e.m;
        je["report"] = scatter_report_to_json(e.report);
        if (e.family_condition) je["family_condition"] = *e.family_condition;
        entries.push_back(std::move(je));
    }
    j["test"] = "probe";
    j["entries"] = entries;
    j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
    j["truncated"] = r.truncated;
    if (r.truncated) j["truncated_at"] = r.truncated_at;
    return j;
}

json certificate_to_json(const RankCertificate& c) {
    json j;
    j["kind"] = c.kind;
    j["params"] = {{"q", c.q}, {"e", c.e}, {"d", c.d}};
    if (c.kind == "sl") {
        j["input"] = {{"beta", mat_to_json(c.beta)}, {"j", c.j}};
        j["companion"] = {{"alpha", mat_to_json(c.companion_elt)}};
    } else {
        j["input"] = {{"r_nonsquare", c.sp_in.r_nonsquare},
                      {"a_exp", c.sp_in.a_exp},
                      {"frob", c.sp_in.frob},
                      {"alpha", elem_to_json(c.sp_in.sp.field(), c.sp_in.alpha)},
                      {"sp", mat_to_json(c.sp_in.sp)}};
        j["companion"] = {{"B", mat_to_json(c.companion_elt)}};
    }
    j["rank"] = c.achieved_rank;
    j["bound"] = c.bound;
    j["verified"] = c.verified;
    return j;
}

json sieve_verdict_to_json(const SieveVerdict& v) {
    json j;
    j["q"] = v.q;
    j["k"] = v.k;
    j["ell"] = v.ell;
    j["d"] = v.d;
    j["branch"] = v.branch;
    j["quantity"] = v.quantity;
    j["bound"] = v.bound;
    j["verdict"] = sieve_outcome_name(v.outcome);
    j["note"] = v.note;
    return j;
}

json hering_case_to_json(const HeringCase& c) {
    json j;
    j["tag"] = hering_tag_name(c.tag);
    if (c.tag != HeringTag::Sporadic) {
        j["e"] = c.e;
        j["q_de"] = c.q_de;
    }
    j["q_d"] = c.q_d;
    return j;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace scatterlab
