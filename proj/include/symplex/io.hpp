#pragma once

#include <string>

#include "json.hpp"
#include "symplex/factorization.hpp"
#include "symplex/geometry.hpp"
#include "symplex/identity_lab.hpp"

namespace symplex::io {

using Json = nlohmann::json;

// Every parser throws ParseError on malformed documents and lets domain
// errors (NotInRing, NotMember, ...) through unchanged. Keys are emitted in
// sorted order, so dump() is byte-stable.

Json to_json(const BaseRing& base);
BaseRing base_from_json(const Json& j);

/// {"kind": "free_mixed", "polynomial": m, "laurent": n, "names": [...]}
/// {"kind": "affine", "rank": r, "generators": [[...]], "search_bound": b, "names": [...]}
/// {"kind": "c_divisible", "base": {...}, "c": c, "level": k}
Json to_json(const MonoidSpec& m);
MonoidPtr monoid_from_json(const Json& j);

/// {"base": ..., "monoid": ...}
Json to_json(const Ring& ring);
Ring ring_from_json(const Json& j);

/// {"base", "monoid", "terms": [[["num/den", ...], "coeff"], ...]}
Json to_json(const RingElement& a);
/// Accepts the object form, or a string parsed in `ring` when one is given.
RingElement element_from_json(const Json& j, const Ring* ring = nullptr);

/// {"n": n, "ring": ..., "entries": [[element, ...], ...]}
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const IndexSet& s);
IndexSet index_set_from_json(const Json& j, std::size_t n);

Json to_json(const Token& t);
Token token_from_json(const Json& j, const Ring& ring, std::size_t n);
/// {"n": n, "ring": ..., "t": element (optional), "tokens": [...]}
Json to_json(const GenWord& w);
GenWord word_from_json(const Json& j);

Json to_json(const FactorizationResult& r);
FactorizationResult factorization_from_json(const Json& j);
Json to_json(const BruhatResult& r);

Json to_json(const LemmaReport& r);
LemmaReport lemma_report_from_json(const Json& j);
Json to_json(const SuiteReport& r);
SuiteReport suite_report_from_json(const Json& j);

/// {"rank": r, "rays": [[...]]}
Json to_json(const RationalCone& c);
RationalCone cone_from_json(const Json& j);
/// {"monoid", "apex", "base", "t", "generation_bound"}
Json to_json(const PolarizedTriple& p);
PolarizedTriple polarized_from_json(const Json& j);
Json to_json(const PolarizedReport& r);
Json to_json(const PyramidSplit& s);

/// Two-space indent plus a trailing newline.
std::string dump(const Json& j);
/// Throws ParseError on invalid JSON text.
Json parse(const std::string& text);

}  // namespace symplex::io
