#include "symplex/cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "symplex/error.hpp"
#include "symplex/io.hpp"
#include "symplex/random_word.hpp"

namespace symplex::cli {

namespace {

using io::Json;

struct Options {
  std::string input;
  std::string out_path;
  std::uint64_t seed = 0;
  std::vector<std::string> lemmas;
  std::size_t bound = 8;
  bool bound_given = false;
  std::string ring = "Q";
  std::size_t n = 2;
  std::size_t length = 0;
  std::int64_t local = 0;
  bool verify_steps = false;
  bool example = false;
};

struct Context {
  const Options& opts;
  std::istream& in;
  std::ostream& out;
  std::shared_ptr<spdlog::logger> log;

  Json read() const {
    std::stringstream buffer;
    if (opts.input.empty() || opts.input == "-") {
      buffer << in.rdbuf();
    } else {
      std::ifstream file(opts.input);
      if (!file) throw Error(ErrorCode::ParseError, "cannot open '" + opts.input + "'");
      buffer << file.rdbuf();
    }
    return io::parse(buffer.str());
  }

  void write(const Json& j) const {
    const std::string text = io::dump(j);
    if (opts.out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + opts.out_path + "'");
    file << text;
    log->info("wrote {}", opts.out_path);
  }
};

spdlog::level::level_enum log_level() {
  const char* env = std::getenv("SYMPLEX_LOG");
  const std::string v = env != nullptr ? env : "error";
  if (v == "debug") return spdlog::level::debug;
  if (v == "info") return spdlog::level::info;
  return spdlog::level::err;
}

int run_mult(const Context& ctx) {
  const Json doc = ctx.read();
  if (doc.contains("tokens")) {
    ctx.write(io::to_json(word_eval(io::word_from_json(doc)).matrix()));
    return 0;
  }
  const Json& a = doc.at("a");
  const Json& b = doc.at("b");
  if (a.contains("entries")) {
    const Matrix x = io::matrix_from_json(a);
    const Matrix y = io::matrix_from_json(b);
    if (x.cols() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "inner sizes differ");
    ctx.write(io::to_json(x * y));
  } else {
    const RingElement x = io::element_from_json(a);
    const RingElement y = io::element_from_json(b, &x.ring());
    ctx.write(io::to_json(poly_mul(x, y)));
  }
  return 0;
}

int run_sp_check(const Context& ctx) {
  const SympMatrix m(io::matrix_from_json(ctx.read()));
  const bool ok = sp_check(m);
  ctx.write(Json{{"symplectic", ok}});
  return ok ? 0 : 1;
}

int run_factor(const Context& ctx) {
  const SympMatrix alpha(io::matrix_from_json(ctx.read()));
  const FactorOptions fo{ctx.opts.verify_steps};
  const auto result = ctx.opts.local > 0            ? local_ring_factor(alpha, ctx.opts.local, fo)
                      : alpha.ring().is_field()     ? factor_over_field(alpha, fo)
                                                    : factor_over_euclidean(alpha, fo);
  ctx.log->info("factored into {} tokens, {} pivot steps", result.stats.token_count, result.stats.pivot_steps);
  ctx.write(io::to_json(result));
  return result.complete() ? 0 : 1;
}

int run_conj_delta(const Context& ctx) {
  const Json doc = ctx.read();
  const SympMatrix alpha(io::matrix_from_json(doc.at("matrix")));
  const IndexSet s = io::index_set_from_json(doc.at("I"), alpha.n());
  const RingElement t = io::element_from_json(doc.at("t"), &alpha.ring());
  const int direction = doc.value("direction", 1);
  ctx.write(io::to_json(delta_conjugate(s, alpha, t, direction, true).matrix()));
  return 0;
}

int run_verify(const Context& ctx) {
  std::vector<std::string> selection = ctx.opts.lemmas;
  if (selection.empty() || (selection.size() == 1 && selection[0] == "all")) selection = lemma_ids();
  const SuiteReport report = run_suite(selection, ctx.opts.seed);
  for (const auto& [id, rep] : report.lemmas) {
    ctx.log->info("{}: {} instances, {} failures", id, rep.instances_run, rep.failures.size());
  }
  ctx.write(io::to_json(report));
  return report.all_passed() ? 0 : 1;
}

int run_monoid_info(const Context& ctx) {
  const MonoidPtr m = io::monoid_from_json(ctx.read());
  const RationalCone cone = cone_of(*m);
  auto strings = [](const auto& values) {
    Json row = Json::array();
    for (const auto& x : values) row.push_back(x.get_str());
    return row;
  };
  Json gens = Json::array();
  for (const auto& g : m->generators()) {
    std::vector<mpq_class> coords;
    for (std::size_t k = 0; k < g.rank(); ++k) coords.push_back(g.coord(k));
    gens.push_back(strings(coords));
  }
  Json facets = Json::array();
  for (const auto& f : cone.facets()) facets.push_back(strings(f));
  Json extreme = Json::array();
  for (const auto& r : cone.extreme_rays()) extreme.push_back(strings(r));
  Json info{{"monoid", io::to_json(*m)},
            {"describe", m->describe()},
            {"rank", m->rank()},
            {"positive", m->is_positive()},
            {"generators", std::move(gens)},
            {"cone", {{"dim", cone.dim()}, {"pointed", cone.pointed()}, {"extreme_rays", std::move(extreme)},
                      {"facets", std::move(facets)}}},
            {"bound", ctx.opts.bound}};
  const SelectedMonoid interior = interior_monoid(m, ctx.opts.bound);
  info["interior"] = {{"monoid", io::to_json(*interior.monoid)}, {"bounded_approximation", interior.bounded_approximation}};
  if (m->kind() == MonoidSpec::Kind::CDivisibleTruncation) {
    const auto d = is_c_divisible(*m, m->c(), ctx.opts.bound);
    info["c_divisibility"] = {{"holds_on_sample", d.holds_on_sample},
                              {"checked", d.checked},
                              {"truncation_frontier", d.truncation_frontier.size()},
                              {"failures", d.failures.size()}};
  }
  ctx.write(info);
  return 0;
}

int run_polarized(const Context& ctx) {
  PolarizedTriple triple = ctx.opts.example ? shipped_polarized_example() : io::polarized_from_json(ctx.read());
  if (ctx.opts.bound_given) triple.generation_bound = ctx.opts.bound;
  const PolarizedReport report = validate_polarized(triple);
  ctx.write(Json{{"triple", io::to_json(triple)}, {"report", io::to_json(report)}});
  return report.all_passed() ? 0 : 1;
}

int run_pyramid(const Context& ctx) {
  ctx.write(io::to_json(pyramid_split(io::cone_from_json(ctx.read()))));
  return 0;
}

int run_random_word(const Context& ctx) {
  const Ring ring(BaseRing::parse(ctx.opts.ring), MonoidSpec::free_mixed(0, 0));
  ctx.write(io::to_json(random_word(ctx.opts.n, ctx.opts.length, ring, ctx.opts.seed)));
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto log = std::make_shared<spdlog::logger>("symplex", sink);
  log->set_level(log_level());
  log->set_pattern("[%l] %v");

  Options opts;
  CLI::App app{"Exact symplectic group computations over monoid algebras", "symplex"};
  app.require_subcommand(1, 1);

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("input", opts.input, "input JSON file (default stdin)");
    sub->add_option("--out", opts.out_path, "write the result here instead of stdout");
  };
  auto* mult = app.add_subcommand("mult", "multiply two ring elements or matrices");
  auto* spc = app.add_subcommand("sp-check", "test a matrix for membership in Sp");
  auto* fac = app.add_subcommand("factor", "factor a symplectic matrix into elementary generators");
  auto* cdl = app.add_subcommand("conj-delta", "conjugate a matrix by delta_I");
  auto* ver = app.add_subcommand("verify", "run the identity checks");
  auto* mon = app.add_subcommand("monoid-info", "describe a monoid and its cone");
  auto* pol = app.add_subcommand("polarized-check", "check the polarized triple axioms");
  auto* pyr = app.add_subcommand("pyramid-split", "split a cone into a pyramid and the rest");
  auto* rnd = app.add_subcommand("random-word", "emit a seeded random generator word");
  for (auto* sub : {mult, spc, fac, cdl, mon, pol, pyr}) add_io(sub);

  fac->add_option("--local", opts.local, "factor over Z_(p) for this prime")->check(CLI::PositiveNumber);
  fac->add_flag("--verify-steps", opts.verify_steps, "re-check the form after every row operation");
  ver->add_option("--lemma", opts.lemmas, "lemma id (repeatable, default all)");
  ver->add_option("--seed", opts.seed, "seed");
  ver->add_option("--out", opts.out_path, "write the report here instead of stdout");
  for (auto* sub : {mon, pol}) {
    sub->add_option("--bound", opts.bound, "enumeration bound")->check(CLI::PositiveNumber);
  }
  pol->add_flag("--example", opts.example, "use the built-in example triple");
  rnd->add_option("--n", opts.n, "half size")->required()->check(CLI::PositiveNumber);
  rnd->add_option("--length", opts.length, "number of tokens")->required();
  rnd->add_option("--ring", opts.ring, "Z, Q or Fp:p");
  rnd->add_option("--seed", opts.seed, "seed");
  rnd->add_option("--out", opts.out_path, "write the word here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) {
      err << app.help();
      return 2;
    }
    return 0;
  }

  opts.bound_given = pol->count("--bound") > 0;
  const Context ctx{opts, in, out, log};
  try {
    if (mult->parsed()) return run_mult(ctx);
    if (spc->parsed()) return run_sp_check(ctx);
    if (fac->parsed()) return run_factor(ctx);
    if (cdl->parsed()) return run_conj_delta(ctx);
    if (ver->parsed()) return run_verify(ctx);
    if (mon->parsed()) return run_monoid_info(ctx);
    if (pol->parsed()) return run_polarized(ctx);
    if (pyr->parsed()) return run_pyramid(ctx);
    return run_random_word(ctx);
  } catch (const Error& e) {
    log->error("{}", e.what());
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    log->error("malformed input: {}", e.what());
    return 2;
  }
}

}  // namespace symplex::cli
