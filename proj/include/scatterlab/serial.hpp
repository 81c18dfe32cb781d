#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "scatterlab/certify.hpp"
#include "scatterlab/linpoly.hpp"
#include "scatterlab/matrix.hpp"
#include "scatterlab/scatter.hpp"

namespace scatterlab {

using json = nlohmann::json;

// Field literal: "p^[d1,d2,...]"; a bare prime power ("9") is also accepted
// and factored. Canonical form writes the prime field as "p^[1]".
FieldPtr parse_field_literal(const std::string& s);
std::string field_literal(const Field* f);

// Elements serialize as prime-field coefficient tuples, low degree first.
json elem_to_json(const Field* f, uint64_t idx);
uint64_t elem_from_json(const Field* f, const json& j);

json mat_to_json(const Mat& m);
Mat mat_from_json(const Field* f, const json& j);

json poly_to_json(const LinearizedPoly& f);

// Polynomial literal used on the command line: either
//   coeffs=[[...],[...],...]   (or the bare JSON array)
// or a named family: pseudoregulus:s=1 / lp:s=1,delta=[...].
// Family metadata is returned so probes can re-evaluate conditions.
struct ParsedPoly {
    LinearizedPoly poly;
    std::optional<FamilyPoly> family;
};
ParsedPoly parse_poly_literal(const Field* fqn, const std::string& s);

json scatter_report_to_json(const ScatterReport& r);
json probe_report_to_json(const ProbeReport& r);
json certificate_to_json(const RankCertificate& c);
json sieve_verdict_to_json(const SieveVerdict& v);
json hering_case_to_json(const HeringCase& c);

// FNV-1a over a string; the determinism hash of batch reports.
uint64_t fnv1a(const std::string& s);
std::string hex64(uint64_t v);

} // namespace scatterlab
