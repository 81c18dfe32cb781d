#include "scatterlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "scatterlab/parallel.hpp"
#include "scatterlab/serial.hpp"

namespace scatterlab {

const char* kCliVersion = "0.1.0";

namespace {

struct Emit {
    std::string out_path;
    std::string format = "json"; // json | csv
    std::ostream* out;
};

// stdout carries the envelope; --out receives the bare result payload with no
// volatile fields, so repeated runs compare byte-identical.
int emit(const Emit& e, const std::string& command, const json& config, const json& result,
         const std::string& csv, int64_t elapsed_ms, int exit_code) {
    json envelope;
    envelope["tool"] = "scatterlab";
    envelope["version"] = kCliVersion;
    envelope["command"] = command;
    envelope["config"] = config;
    envelope["result"] = result;
    envelope["elapsed_ms"] = elapsed_ms;
    if (!e.out_path.empty()) {
        std::ofstream f(e.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + e.out_path);
        if (e.format == "csv") f << csv;
        else f << result.dump(2) << "\n";
    }
    if (e.format == "csv" && e.out_path.empty()) {
        *e.out << csv;
    } else {
        *e.out << envelope.dump(2) << "\n";
    }
    return exit_code;
}

std::vector<unsigned> parse_ell_spec(const std::string& spec, unsigned n) {
    std::vector<unsigned> out;
    auto add = [&](unsigned v) {
        if (v >= n) throw std::invalid_argument("ell value " + std::to_string(v) +
                                                " out of range for n = " + std::to_string(n));
        out.push_back(v);
    };
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const unsigned lo = static_cast<unsigned>(std::stoul(spec.substr(0, dots)));
        const unsigned hi = static_cast<unsigned>(std::stoul(spec.substr(dots + 2)));
        for (unsigned v = lo; v <= hi; ++v) add(v);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) add(static_cast<unsigned>(std::stoul(item)));
    if (out.empty()) throw std::invalid_argument("empty ell spec");
    return out;
}

std::vector<unsigned> parse_d_spec(const std::string& spec) {
    std::vector<unsigned> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const unsigned lo = static_cast<unsigned>(std::stoul(spec.substr(0, dots)));
        const unsigned hi = static_cast<unsigned>(std::stoul(spec.substr(dots + 2)));
        for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<unsigned>(std::stoul(item)));
    if (out.empty()) throw std::invalid_argument("empty d spec");
    return out;
}

// --- search enumeration ---------------------------------------------------------

struct Candidate {
    unsigned ell;
    unsigned k;
    uint64_t code;
};

struct SearchSpace {
    const Field* field;
    unsigned ell;
    unsigned k;
    std::vector<unsigned> free_pos; // ascending; position 0 may be nonzero-only
    bool pos0_nonzero;
    uint64_t count;

    std::vector<uint64_t> decode(uint64_t code) const {
        std::vector<uint64_t> coeffs(k + 1, 0);
        coeffs[k] = 1;
        const uint64_t size = field->size();
        for (unsigned pos : free_pos) {
            if (pos == 0 && pos0_nonzero) {
                coeffs[0] = 1 + code % (size - 1);
                code /= (size - 1);
            } else {
                coeffs[pos] = code % size;
                code /= size;
            }
        }
        return coeffs;
    }
};

// All monic ell-normalized coefficient patterns with q-degree exactly k.
std::optional<SearchSpace> search_space(const Field* field, unsigned ell, unsigned k) {
    SearchSpace s;
    s.field = field;
    s.ell = ell;
    s.k = k;
    if (k == ell) return std::nullopt; // monic leading coefficient would violate (iii)
    if (k == 0 && ell == 0) return std::nullopt;
    s.pos0_nonzero = ell > 0;
    for (unsigned pos = 0; pos < k; ++pos) {
        if (pos == ell) continue;            // (iii): a_ell = 0
        if (pos == 0 && ell == 0) continue;  // covered by (iii)
        s.free_pos.push_back(pos);
    }
    s.count = 1;
    for (unsigned pos : s.free_pos)
        s.count *= (pos == 0 && s.pos0_nonzero) ? field->size() - 1 : field->size();
    return s;
}

int cmd_search(const Emit& emit_cfg, const std::string& field_lit,
               const std::string& ell_spec, int kmax_opt, const std::string& method,
               unsigned jobs, uint64_t cap, uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const FieldPtr field = parse_field_literal(field_lit);
    const unsigned n = field->degree_over_base();
    if (field->is_prime_field())
        throw std::invalid_argument("search needs an extension field F_{q^n}");
    const unsigned kmax = kmax_opt < 0 ? n - 1 : static_cast<unsigned>(kmax_opt);
    if (kmax >= n) throw std::invalid_argument("kmax must be below n");
    const auto ells = parse_ell_spec(ell_spec, n);

    std::vector<SearchSpace> spaces;
    std::vector<Candidate> cands;
    for (unsigned ell : ells) {
        for (unsigned k = 0; k <= kmax; ++k) {
            auto sp = search_space(field.get(), ell, k);
            if (!sp) continue;
            if (cands.size() + sp->count > cap)
                throw std::invalid_argument(
                    "candidate count exceeds cap; restrict kmax or raise --cap");
            for (uint64_t c = 0; c < sp->count; ++c)
                cands.push_back({ell, k, c});
            spaces.push_back(*sp);
        }
    }

    std::vector<uint8_t> verdicts(cands.size(), 0);
    auto space_for = [&](unsigned ell, unsigned k) -> const SearchSpace& {
        for (const auto& s : spaces)
            if (s.ell == ell && s.k == k) return s;
        throw std::logic_error("missing search space");
    };
    parallel_ranges(cands.size(), jobs, [&](unsigned, uint64_t lo, uint64_t hi) {
        for (uint64_t i = lo; i < hi; ++i) {
            const auto& c = cands[i];
            const auto coeffs = space_for(c.ell, c.k).decode(c.code);
            const LinearizedPoly f = make_linpoly_idx(field.get(), coeffs);
            const ScatterReport rep = method == "pairs" ? is_scattered_pairs(f, c.ell)
                                                        : is_scattered_kernel(f, c.ell, 1);
            verdicts[i] = rep.scattered ? 1 : 0;
        }
    });

    json scattered = json::array();
    size_t n_scattered = 0;
    for (size_t i = 0; i < cands.size(); ++i) {
        if (!verdicts[i]) continue;
        ++n_scattered;
        const auto coeffs = space_for(cands[i].ell, cands[i].k).decode(cands[i].code);
        json entry;
        entry["ell"] = cands[i].ell;
        entry["k"] = cands[i].k;
        json poly = json::array();
        for (uint64_t c : coeffs) poly.push_back(elem_to_json(field.get(), c));
        entry["poly"] = poly;
        scattered.push_back(std::move(entry));
    }

    json result;
    result["search"] = {{"field", field->literal()},
                        {"ells", ells},
                        {"kmax", kmax},
                        {"method", method},
                        {"seed", seed}};
    result["counts"] = {{"tested", cands.size()},
                        {"scattered", n_scattered},
                        {"not_scattered", cands.size() - n_scattered}};
    result["scattered"] = scattered;
    result["determinism_hash"] = hex64(fnv1a(result.dump()));

    std::ostringstream csv;
    csv << "ell,k,poly,verdict\n";
    for (size_t i = 0; i < cands.size(); ++i) {
        const auto coeffs = space_for(cands[i].ell, cands[i].k).decode(cands[i].code);
        json poly = json::array();
        for (uint64_t c : coeffs) poly.push_back(elem_to_json(field.get(), c));
        csv << cands[i].ell << "," << cands[i].k << ",\"" << poly.dump() << "\","
            << (verdicts[i] ? "scattered" : "not-scattered") << "\n";
    }

    json config = result["search"];
    config["jobs"] = jobs;
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return emit(emit_cfg, "search", config, result, csv.str(), elapsed, 0);
}

// --- sieve ------------------------------------------------------------------------

int cmd_sieve(const Emit& emit_cfg, uint64_t q, const std::string& d_spec, bool odd_only,
              bool even_only, const std::string& kind) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SieveVerdict> rows;
    size_t unresolved = 0, survivors = 0, excluded = 0, monomial = 0, by_prop = 0;
    for (unsigned d : parse_d_spec(d_spec)) {
        if (d == 0) throw std::invalid_argument("d must be >= 1");
        if (odd_only && d % 2 == 0) continue;
        if (even_only && d % 2 == 1) continue;
        std::string use = kind;
        if (use == "auto") use = d % 2 == 1 ? "gammaL1" : "spread";
        // (k, ell) grid of ell-normalized shapes with max(k, ell) = d:
        // k != ell (the monic leading coefficient forbids k = ell) and
        // ell >= 1 (the index-0 classification is prior art; the arithmetic
        // of both sieves is vacuous there)
        for (unsigned ell = 1; ell <= d; ++ell) {
            for (unsigned k = 0; k <= d; ++k) {
                if (std::max(k, ell) != d || k == ell) continue;
                SieveVerdict v = use == "spread" ? spread_constraints(q, k, ell)
                                                 : gammaL1_sieve(q, k, ell);
                switch (v.outcome) {
                case SieveOutcome::Excluded: ++excluded; break;
                case SieveOutcome::MonomialBranch: ++monomial; break;
                case SieveOutcome::Unresolved: ++unresolved; break;
                case SieveOutcome::Survivor: ++survivors; break;
                case SieveOutcome::ExcludedByProp: ++by_prop; break;
                }
                rows.push_back(std::move(v));
            }
        }
    }
    json jrows = json::array();
    std::ostringstream csv;
    csv << "q,d,k,ell,branch,quantity,bound,verdict\n";
    for (const auto& v : rows) {
        jrows.push_back(sieve_verdict_to_json(v));
        csv << v.q << "," << v.d << "," << v.k << "," << v.ell << "," << v.branch << ","
            << v.quantity << "," << v.bound << "," << sieve_outcome_name(v.outcome) << "\n";
    }
    json result;
    result["rows"] = jrows;
    result["counts"] = {{"excluded", excluded},
                        {"monomial_branch", monomial},
                        {"unresolved", unresolved},
                        {"survivor", survivors},
                        {"excluded_by_prop", by_prop}};
    json config = {{"q", q}, {"d", d_spec}, {"odd_only", odd_only},
                   {"even_only", even_only}, {"kind", kind}};
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return emit(emit_cfg, "sieve", config, result, csv.str(), elapsed,
                unresolved > 0 ? 1 : 0);
}

// --- embed ------------------------------------------------------------------------

int cmd_embed(const Emit& emit_cfg, uint64_t q, unsigned m, unsigned n,
              const std::string& show, const std::string& elem_json) {
    const auto t0 = std::chrono::steady_clock::now();
    uint64_t p;
    unsigned a;
    factor_prime_power(q, p, a);
    const FieldPtr fq = build_field(p, {a});
    const EmbeddingContext ctx(fq.get(), m, n);
    json result;
    if (show == "M" || show == "all") result["M"] = mat_to_json(frobenius_block(ctx));
    if (show == "Mbar" || show == "all") result["Mbar"] = mat_to_json(ctx.frob_bar());
    if (show == "C" || show == "all") result["C"] = mat_to_json(ctx.companion());
    if (show == "phi") {
        if (elem_json.empty()) throw std::invalid_argument("phi needs --elem [coords]");
        const uint64_t e = elem_from_json(ctx.fqm(), json::parse(elem_json));
        result["phi"] = mat_to_json(phi(ctx, {ctx.fqm(), e}));
    }
    if (show == "commutation" || show == "all") {
        bool all_ok = true;
        for (uint64_t x = 1; x < ctx.fqm()->size(); ++x)
            all_ok = all_ok && check_commutation(ctx, {ctx.fqm(), x});
        result["commutation"] = all_ok;
    }
    if (result.empty()) throw std::invalid_argument("unknown --show value: " + show);
    json config = {{"q", q}, {"m", m}, {"n", n}, {"show", show}};
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return emit(emit_cfg, "embed", config, result, result.dump(2) + "\n", elapsed, 0);
}

// --- certify ----------------------------------------------------------------------

int cmd_certify(const Emit& emit_cfg, const std::string& mode, uint64_t q, unsigned e,
                unsigned d, size_t samples, uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    uint64_t p;
    unsigned a;
    factor_prime_power(q, p, a);
    json result;
    int code = 0;
    if (mode == "cases") {
        json arr = json::array();
        for (const auto& c : hering_cases(q, d)) arr.push_back(hering_case_to_json(c));
        result["cases"] = arr;
    } else {
        if (d == 0 || e == 0 || d % e != 0)
            throw std::invalid_argument("certify needs e | d");
        const FieldPtr fq = build_field(p, {a});
        const EmbeddingContext ctx(fq.get(), d / e, e);
        const CertificateBatch batch = mode == "sl"
                                           ? sl_certificate_batch(ctx, samples, seed)
                                           : sp_certificate_batch(ctx, samples, seed);
        json certs = json::array();
        for (const auto& c : batch.certificates) certs.push_back(certificate_to_json(c));
        result["kind"] = mode;
        result["params"] = {{"q", q}, {"e", e}, {"d", d}};
        result["samples"] = batch.total;
        result["verified"] = batch.verified;
        result["max_rank"] = batch.max_rank;
        result["bound"] = mode == "sl" ? d - 2 : d - e / 2;
        result["certificates"] = certs;
        code = batch.verified == batch.total ? 0 : 1;
    }
    json config = {{"mode", mode}, {"q", q}, {"e", e}, {"d", d},
                   {"samples", samples}, {"seed", seed}};
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return emit(emit_cfg, "certify", config, result, result.dump(2) + "\n", elapsed, code);
}

// --- families ----------------------------------------------------------------------

int cmd_families(const Emit& emit_cfg, const std::string& field_lit, bool verify,
                 unsigned jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    const FieldPtr field = parse_field_literal(field_lit);
    if (field->is_prime_field())
        throw std::invalid_argument("families need an extension field F_{q^n}");
    const unsigned n = field->degree_over_base();
    json fams = json::array();
    for (unsigned s = 1; s < n; ++s) {
        FamilyPoly f = pseudoregulus(field.get(), s);
        json e;
        e["type"] = "pseudoregulus";
        e["s"] = s;
        e["gcd_ok"] = f.gcd_ok;
        e["poly"] = poly_to_json(f.poly);
        if (verify && f.gcd_ok)
            e["scattered"] = is_scattered_kernel(f.poly, f.declared_index, jobs).scattered;
        fams.push_back(std::move(e));
    }
    for (unsigned s = 1; 2 * s < n; ++s) {
        size_t norm_ok_count = 0;
        uint64_t example_delta = 0;
        for (uint64_t dlt = 1; dlt < field->size(); ++dlt) {
            FamilyPoly f = lp_binomial(field.get(), s, {field.get(), dlt});
            if (f.norm_ok) {
                ++norm_ok_count;
                if (!example_delta) example_delta = dlt;
            }
        }
        json e;
        e["type"] = "lp";
        e["s"] = s;
        e["gcd_ok"] = std::gcd(s, n) == 1;
        e["delta_with_norm_ok"] = norm_ok_count;
        if (example_delta) {
            e["example_delta"] = elem_to_json(field.get(), example_delta);
            if (verify && std::gcd(s, n) == 1) {
                FamilyPoly f = lp_binomial(field.get(), s, {field.get(), example_delta});
                e["example_scattered"] =
                    is_scattered_kernel(f.poly, f.declared_index, jobs).scattered;
            }
        }
        fams.push_back(std::move(e));
    }
    json result;
    result["field"] = field->literal();
    result["families"] = fams;
    json config = {{"field", field->literal()}, {"verify", verify}};
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return emit(emit_cfg, "families", config, result, result.dump(2) + "\n", elapsed, 0);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"scatterlab: scattered linearized polynomials, embeddings, certificates"};
    app.require_subcommand(1);

    std::string field_lit, poly_lit, method = "kernel", out_path, format = "json";
    std::string ell_spec = "0", show = "M", elem_json, d_spec, sieve_kind = "auto";
    std::string certify_mode;
    unsigned jobs = 1, mm = 1, nn = 1, e_param = 0, d_param = 0, mmax = 1;
    int kmax = -1;
    uint64_t q_param = 2, seed = 1, cap = 1ull << 20;
    bool odd_only = false, even_only = false, verify = false;
    int ell_single = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the bare result payload to this file");
        cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--jobs", jobs, "worker count (deterministic merge)");
        cmd->add_option("--seed", seed, "seed for randomized batches");
    };

    auto* t = app.add_subcommand("test", "scatteredness of one polynomial");
    t->add_option("--field", field_lit, "field literal p^[d1,...]")->required();
    t->add_option("--ell", ell_single, "index ell")->required();
    t->add_option("--poly", poly_lit, "coeffs=[[...],...] or family literal")->required();
    t->add_option("--method", method, "kernel|pairs|both")
        ->check(CLI::IsMember({"kernel", "pairs", "both"}));
    add_common(t);

    auto* s = app.add_subcommand("search", "exhaustive scan of ell-normalized polynomials");
    s->add_option("--field", field_lit)->required();
    s->add_option("--ell", ell_spec, "single value, list (0,1) or range (0..3)")->required();
    s->add_option("--kmax", kmax, "max q-degree (default n-1)");
    s->add_option("--method", method)->check(CLI::IsMember({"kernel", "pairs"}));
    s->add_option("--cap", cap, "candidate count cap");
    add_common(s);

    auto* pr = app.add_subcommand("probe", "scatteredness over extensions F_{q^{nm}}");
    pr->add_option("--field", field_lit)->required();
    pr->add_option("--ell", ell_single)->required();
    pr->add_option("--poly", poly_lit)->required();
    pr->add_option("--mmax", mmax, "largest extension multiplier")->required();
    add_common(pr);

    auto* em = app.add_subcommand("embed", "inspect the GL(n,q^m) -> GL(nm,q) embedding");
    em->add_option("--q", q_param, "base field size (prime power)")->required();
    em->add_option("--m", mm)->required();
    em->add_option("--n", nn)->required();
    em->add_option("--show", show, "M|Mbar|C|phi|commutation|all");
    em->add_option("--elem", elem_json, "element coords for --show phi");
    add_common(em);

    size_t samples = 200;
    auto* ce = app.add_subcommand("certify", "rank certificates / Hering cases");
    ce->add_option("mode", certify_mode, "sl|sp|cases")
        ->required()
        ->check(CLI::IsMember({"sl", "sp", "cases"}));
    ce->add_option("--q", q_param)->required();
    ce->add_option("--e", e_param);
    ce->add_option("--d", d_param)->required();
    ce->add_option("--samples", samples, "batch size");
    add_common(ce);

    auto* sv = app.add_subcommand("sieve", "GammaL(1) / spread arithmetic sieves");
    sv->add_option("--q", q_param)->required();
    sv->add_option("--d", d_spec, "single value, list or range (3..11)")->required();
    sv->add_flag("--odd-only", odd_only);
    sv->add_flag("--even-only", even_only);
    sv->add_option("--kind", sieve_kind, "gammaL1|spread|auto")
        ->check(CLI::IsMember({"gammaL1", "spread", "auto"}));
    add_common(sv);

    auto* fa = app.add_subcommand("families", "known exceptional families over a field");
    fa->add_option("--field", field_lit)->required();
    fa->add_flag("--verify", verify, "run the kernel test on family instances");
    add_common(fa);

    std::vector<std::string> prargs(args.rbegin(), args.rend());
    try {
        app.parse(prargs);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Emit emit_cfg{out_path, format, &out};
    try {
        if (t->parsed()) {
            const auto t0 = std::chrono::steady_clock::now();
            const FieldPtr field = parse_field_literal(field_lit);
            const ParsedPoly pp = parse_poly_literal(field.get(), poly_lit);
            if (ell_single < 0 || static_cast<unsigned>(ell_single) >= field->degree_over_base())
                throw std::invalid_argument("ell out of range");
            const unsigned ell = static_cast<unsigned>(ell_single);
            json result;
            bool scattered;
            if (method == "both") {
                const auto k = is_scattered_kernel(pp.poly, ell, jobs);
                const auto p2 = is_scattered_pairs(pp.poly, ell);
                if (k.scattered != p2.scattered)
                    throw std::logic_error("kernel and pair methods disagree");
                result["kernel"] = scatter_report_to_json(k);
                result["pairs"] = scatter_report_to_json(p2);
                scattered = k.scattered;
            } else {
                const auto rep = method == "pairs" ? is_scattered_pairs(pp.poly, ell)
                                                   : is_scattered_kernel(pp.poly, ell, jobs);
                result = scatter_report_to_json(rep);
                scattered = rep.scattered;
            }
            json config = {{"field", field->literal()}, {"ell", ell},
                           {"poly", poly_lit},          {"method", method},
                           {"jobs", jobs}};
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
            return emit(emit_cfg, "test", config, result, result.dump(2) + "\n", elapsed,
                        scattered ? 0 : 1);
        }
        if (s->parsed())
            return cmd_search(emit_cfg, field_lit, ell_spec, kmax, method, jobs, cap, seed);
        if (pr->parsed()) {
            const auto t0 = std::chrono::steady_clock::now();
            const FieldPtr field = parse_field_literal(field_lit);
            const ParsedPoly pp = parse_poly_literal(field.get(), poly_lit);
            const unsigned ell = static_cast<unsigned>(ell_single);
            const ProbeReport rep = pp.family && pp.family->declared_index == ell
                                        ? probe_family(*pp.family, mmax, jobs)
                                        : probe_exceptional(pp.poly, ell, mmax, jobs);
            json result = probe_report_to_json(rep);
            json config = {{"field", field->literal()}, {"ell", ell},
                           {"poly", poly_lit},          {"mmax", mmax},
                           {"jobs", jobs}};
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
            return emit(emit_cfg, "probe", config, result, result.dump(2) + "\n", elapsed,
                        rep.first_failure ? 1 : 0);
        }
        if (em->parsed()) return cmd_embed(emit_cfg, q_param, mm, nn, show, elem_json);
        if (ce->parsed())
            return cmd_certify(emit_cfg, certify_mode, q_param, e_param, d_param,
                               samples, seed);
        if (sv->parsed())
            return cmd_sieve(emit_cfg, q_param, d_spec, odd_only, even_only, sieve_kind);
        if (fa->parsed()) return cmd_families(emit_cfg, field_lit, verify, jobs);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

} // namespace scatterlab
