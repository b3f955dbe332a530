#include "symplex/io.hpp"

#include "symplex/error.hpp"

namespace symplex::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("key '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key);
}

std::string rational_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

mpq_class parse_rational(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) bad("expected a rational string, got " + j.dump());
  try {
    mpq_class q(j.get<std::string>());
    if (q.get_den() == 0) bad("zero denominator in " + j.dump());
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    bad("not a rational: " + j.dump());
  }
}

Json zvec_json(const lattice::ZVec& v) {
  Json out = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) out.push_back(x.get_si());
    else out.push_back(x.get_str());
  }
  return out;
}

IntVector int_vector(const Json& j) {
  if (!j.is_array()) bad("expected an integer array, got " + j.dump());
  IntVector out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad("expected an integer, got " + x.dump());
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

lattice::ZVec zvec(const Json& j) {
  lattice::ZVec out;
  for (auto x : int_vector(j)) out.emplace_back(static_cast<long>(x));
  return out;
}

Json exponent_json(const ExponentVector& e) {
  Json out = Json::array();
  for (std::size_t k = 0; k < e.rank(); ++k) out.push_back(rational_string(e.coord(k)));
  return out;
}

ExponentVector exponent_from(const Json& j, const MonoidSpec& m) {
  if (!j.is_array() || j.size() != m.rank()) bad("exponent of rank " + std::to_string(m.rank()) + " expected");
  std::vector<mpq_class> coords;
  for (const auto& x : j) coords.push_back(parse_rational(x));
  return ExponentVector::from_rationals(coords, m.denominator());
}

Json axiom_json(const AxiomResult& a) {
  return Json{{"passed", a.passed}, {"detail", a.detail}, {"witnesses", a.witnesses}};
}

}  // namespace

Json to_json(const BaseRing& base) { return base.to_string(); }

BaseRing base_from_json(const Json& j) {
  if (!j.is_string()) bad("base ring must be a string");
  return BaseRing::parse(j.get<std::string>());
}

Json to_json(const MonoidSpec& m) {
  switch (m.kind()) {
    case MonoidSpec::Kind::FreeMixed:
      return Json{{"kind", "free_mixed"},
                  {"polynomial", m.polynomial_vars()},
                  {"laurent", m.laurent_vars()},
                  {"names", m.names()}};
    case MonoidSpec::Kind::Affine:
      return Json{{"kind", "affine"},
                  {"rank", m.rank()},
                  {"generators", m.integer_generators()},
                  {"search_bound", m.search_bound()},
                  {"names", m.names()}};
    case MonoidSpec::Kind::CDivisibleTruncation:
      return Json{{"kind", "c_divisible"}, {"base", to_json(*m.base())}, {"c", m.c()}, {"level", m.level()}};
  }
  bad("unknown monoid kind");
}

MonoidPtr monoid_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  const auto names = get_or<std::vector<std::string>>(j, "names", {});
  if (kind == "free_mixed") {
    return MonoidSpec::free_mixed(get<std::size_t>(j, "polynomial"), get_or<std::size_t>(j, "laurent", 0), names);
  }
  if (kind == "affine") {
    std::vector<IntVector> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(int_vector(g));
    const auto bound = get_or<std::size_t>(j, "search_bound", MonoidSpec::kDefaultSearchBound);
    if (j.contains("rank")) return MonoidSpec::affine_with_rank(get<std::size_t>(j, "rank"), gens, bound, names);
    return MonoidSpec::affine(gens, bound, names);
  }
  if (kind == "c_divisible") {
    return MonoidSpec::c_divisible(monoid_from_json(field(j, "base")), get<std::int64_t>(j, "c"),
                                   get<unsigned>(j, "level"));
  }
  bad("unknown monoid kind '" + kind + "'");
}

Json to_json(const Ring& ring) { return Json{{"base", to_json(ring.base())}, {"monoid", to_json(ring.monoid())}}; }

Ring ring_from_json(const Json& j) {
  const BaseRing base = base_from_json(field(j, "base"));
  MonoidPtr m = j.contains("monoid") ? monoid_from_json(j["monoid"]) : MonoidSpec::free_mixed(0, 0);
  return Ring(base, std::move(m));
}

Json to_json(const RingElement& a) {
  Json terms = Json::array();
  for (const auto& t : a.terms()) terms.push_back(Json::array({exponent_json(t.exponent), t.coeff.get_str()}));
  Json out = to_json(a.ring());
  out["terms"] = std::move(terms);
  return out;
}

RingElement element_from_json(const Json& j, const Ring* ring) {
  if (j.is_string() || j.is_number_integer()) {
    if (ring == nullptr) bad("a bare element needs a ring");
    return j.is_string() ? ring->parse(j.get<std::string>()) : ring->constant(j.get<long>());
  }
  const Ring own = ring_from_json(j);
  if (ring != nullptr && !(own == *ring)) throw Error(ErrorCode::MixedRing, "element ring differs from the container ring");
  const Ring& r = ring != nullptr ? *ring : own;
  std::vector<std::pair<ExponentVector, mpq_class>> terms;
  const Json& arr = field(j, "terms");
  if (!arr.is_array()) bad("terms must be an array");
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 2) bad("a term is [exponent, coefficient]");
    terms.emplace_back(exponent_from(t[0], r.monoid()), parse_rational(t[1]));
  }
  return r.from_terms(std::move(terms));
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.rows() / 2}, {"ring", to_json(m.ring())}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
  const Ring ring = ring_from_json(field(j, "ring"));
  const Json& rows = field(j, "entries");
  if (!rows.is_array() || rows.empty()) bad("entries must be a non-empty array of rows");
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (j.contains("n") && (2 * get<std::size_t>(j, "n") != rows.size() || cols != rows.size())) {
    bad("entries do not form a 2n x 2n matrix");
  }
  Matrix m(ring, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols) bad("ragged entries");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, element_from_json(rows[r][c], &ring));
  }
  return m;
}

Json to_json(const IndexSet& s) { return s.members(); }

IndexSet index_set_from_json(const Json& j, std::size_t n) {
  std::vector<std::size_t> members;
  for (auto x : int_vector(j)) {
    if (x < 1) throw Error(ErrorCode::BadIndices, "index below 1");
    members.push_back(static_cast<std::size_t>(x));
  }
  return IndexSet(n, std::move(members));
}

Json to_json(const Token& t) {
  Json out{{"inverted", t.inverted}};
  switch (t.op) {
    case Token::Op::SE:
      out.update({{"op", "se"}, {"i", t.i}, {"j", t.j}, {"lambda", to_json(*t.value)}});
      break;
    case Token::Op::SEDiag:
      out.update({{"op", "se_diag"}, {"i", t.i}, {"lambda", to_json(*t.value)}});
      break;
    case Token::Op::SW:
      out.update({{"op", "sw"}, {"i", t.i}, {"j", t.j}, {"u", to_json(*t.value)}});
      break;
    case Token::Op::DeltaConj:
      out.update({{"op", "delta_conj"}, {"I", to_json(*t.index_set)}, {"direction", t.direction}});
      break;
  }
  return out;
}

Token token_from_json(const Json& j, const Ring& ring, std::size_t n) {
  const auto op = get<std::string>(j, "op");
  Token t;
  if (op == "se") t = Token::se(get<std::size_t>(j, "i"), get<std::size_t>(j, "j"), element_from_json(field(j, "lambda"), &ring));
  else if (op == "se_diag") t = Token::se_diag(get<std::size_t>(j, "i"), element_from_json(field(j, "lambda"), &ring));
  else if (op == "sw") t = Token::sw(get<std::size_t>(j, "i"), get<std::size_t>(j, "j"), element_from_json(field(j, "u"), &ring));
  else if (op == "delta_conj") t = Token::delta_conj(index_set_from_json(field(j, "I"), n), get_or<int>(j, "direction", 1));
  else bad("unknown token op '" + op + "'");
  t.inverted = get_or<bool>(j, "inverted", false);
  return t;
}

Json to_json(const GenWord& w) {
  Json tokens = Json::array();
  for (const auto& t : w.tokens) tokens.push_back(to_json(t));
  Json out{{"n", w.n}, {"ring", to_json(w.ring)}, {"tokens", std::move(tokens)}};
  if (w.t) out["t"] = to_json(*w.t);
  return out;
}

GenWord word_from_json(const Json& j) {
  GenWord w(get<std::size_t>(j, "n"), ring_from_json(field(j, "ring")));
  if (j.contains("t")) w.t = element_from_json(j["t"], &w.ring);
  const Json& tokens = field(j, "tokens");
  if (!tokens.is_array()) bad("tokens must be an array");
  for (const auto& t : tokens) {
    w.tokens.push_back(token_from_json(t, w.ring, w.n));
    validate_token(w.tokens.back(), w.n, w.ring);
  }
  return w;
}

Json to_json(const FactorizationResult& r) {
  return Json{{"word", to_json(r.word)},
              {"residual", to_json(r.residual.matrix())},
              {"complete", r.complete()},
              {"stats", {{"token_count", r.stats.token_count}, {"pivot_steps", r.stats.pivot_steps}}}};
}

FactorizationResult factorization_from_json(const Json& j) {
  const Json& stats = field(j, "stats");
  return FactorizationResult{word_from_json(field(j, "word")), SympMatrix(matrix_from_json(field(j, "residual"))),
                             FactorStats{get<std::size_t>(stats, "token_count"), get<std::size_t>(stats, "pivot_steps")}};
}

Json to_json(const BruhatResult& r) {
  return Json{{"beta1", to_json(r.beta1)}, {"beta2", to_json(r.beta2.matrix())}, {"beta3", to_json(r.beta3)}};
}

Json to_json(const LemmaReport& r) {
  return Json{{"lemma_id", r.lemma_id},
              {"mode", r.mode == LemmaReport::Mode::Symbolic ? "symbolic" : "randomized"},
              {"instances_run", r.instances_run},
              {"failures", r.failures},
              {"notes", r.notes},
              {"passed", r.passed()}};
}

LemmaReport lemma_report_from_json(const Json& j) {
  LemmaReport r;
  r.lemma_id = get<std::string>(j, "lemma_id");
  const auto mode = get<std::string>(j, "mode");
  if (mode != "symbolic" && mode != "randomized") bad("unknown mode '" + mode + "'");
  r.mode = mode == "symbolic" ? LemmaReport::Mode::Symbolic : LemmaReport::Mode::Randomized;
  r.instances_run = get<std::size_t>(j, "instances_run");
  r.failures = get<std::vector<std::string>>(j, "failures");
  r.notes = get<std::map<std::string, std::string>>(j, "notes");
  return r;
}

Json to_json(const SuiteReport& r) {
  Json lemmas = Json::object();
  for (const auto& [id, rep] : r.lemmas) lemmas[id] = to_json(rep);
  return Json{{"seed", r.seed}, {"lemmas", std::move(lemmas)}, {"all_passed", r.all_passed()}};
}

SuiteReport suite_report_from_json(const Json& j) {
  SuiteReport r;
  r.seed = get<std::uint64_t>(j, "seed");
  const Json& lemmas = field(j, "lemmas");
  if (!lemmas.is_object()) bad("lemmas must be an object");
  for (const auto& [id, rep] : lemmas.items()) r.lemmas.emplace(id, lemma_report_from_json(rep));
  return r;
}

Json to_json(const RationalCone& c) {
  Json rays = Json::array();
  for (const auto& r : c.rays()) rays.push_back(zvec_json(r));
  return Json{{"rank", c.rank()}, {"rays", std::move(rays)}};
}

RationalCone cone_from_json(const Json& j) {
  std::vector<IntVector> rays;
  const Json& arr = field(j, "rays");
  if (!arr.is_array()) bad("rays must be an array");
  for (const auto& r : arr) rays.push_back(int_vector(r));
  return RationalCone(get<std::size_t>(j, "rank"), rays);
}

Json to_json(const PolarizedTriple& p) {
  return Json{{"monoid", to_json(*p.monoid)},
              {"apex", zvec_json(p.apex)},
              {"base", to_json(p.base)},
              {"t", exponent_json(p.t_exponent)},
              {"generation_bound", p.generation_bound}};
}

PolarizedTriple polarized_from_json(const Json& j) {
  PolarizedTriple p;
  p.monoid = monoid_from_json(field(j, "monoid"));
  p.apex = zvec(field(j, "apex"));
  p.base = cone_from_json(field(j, "base"));
  p.t_exponent = exponent_from(field(j, "t"), *p.monoid);
  p.generation_bound = get_or<std::size_t>(j, "generation_bound", 8);
  return p;
}

Json to_json(const PolarizedReport& r) {
  return Json{{"axiom1", axiom_json(r.axiom1)},
              {"axiom2", axiom_json(r.axiom2)},
              {"axiom3", axiom_json(r.axiom3)},
              {"bound", r.bound},
              {"all_passed", r.all_passed()}};
}

Json to_json(const PyramidSplit& s) {
  Json shared = Json::array();
  for (const auto& r : s.shared) shared.push_back(zvec_json(r));
  return Json{{"apex", zvec_json(s.apex)},
              {"pyramid", to_json(s.pyramid)},
              {"rest", to_json(s.rest)},
              {"shared", std::move(shared)},
              {"simplicial", s.simplicial}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(e.what());
  }
}

}  // namespace symplex::io
