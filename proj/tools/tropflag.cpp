#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tropflag/folding.hpp"
#include "tropflag/lambda_indep.hpp"
#include "tropflag/suite.hpp"

using namespace tropflag;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string type = "A1";
  std::string lambda;
  std::string semifield = "tropical";
  bool semifield_given = false;
  std::string rep_path;
  std::uint64_t seed = 0;
  int grid = 2;
  int samples = 20;
  std::string in, out;

  // param
  std::string v = "e", w = "e", word, h;
  // act
  std::string gens;
  // gamma
  std::string lambdap, cocycle;
  // fold
  std::string delta;
};

RepPtr load_rep(const RunConfig& cfg) {
  if (!cfg.rep_path.empty()) return RepresentationData::load(cfg.rep_path);
  CartanDatum c = CartanDatum::from_type(cfg.type);
  Weight l = cfg.lambda.empty() ? Weight(c.rank(), 1) : parse_weight(cfg.lambda, c.rank());
  return cached_rep(c, l);
}

json read_json(const std::string& path) {
  if (path.empty()) fail(ErrorCode::UsageError, "--in is required");
  std::ifstream f(path);
  if (!f) fail(ErrorCode::UsageError, "cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) fail(ErrorCode::UsageError, "cannot write " + cfg.out);
  f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// A point is either a bare vector or an object holding one under "vector".
const json& vector_part(const json& j) { return j.contains("vector") ? j.at("vector") : j; }

SemifieldTag point_tag(const RunConfig& cfg, const json& j) {
  const json& v = vector_part(j);
  if (!cfg.semifield_given && v.contains("tag")) return parse_tag(v.at("tag").get<std::string>());
  return parse_tag(cfg.semifield);
}

template <Semifield K>
json h_json(const std::vector<K>& h) {
  json a = json::array();
  for (const auto& x : h) a.push_back(x.str());
  return a;
}

template <Semifield K>
json classified_json(const Census& c, const Classified<K>& cl) {
  const WeylGroup& W = c.rep()->weyl();
  const CellDescriptor& d = c.piece(cl.piece);
  return {{"piece", cl.piece}, {"v", W.name(d.v)}, {"w", W.name(d.w)}, {"word", format_word(d.word)}, {"h", h_json(cl.h)}};
}

int cmd_buildrep(const RunConfig& cfg) {
  emit(cfg, load_rep(cfg)->to_json());
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  if (cfg.in.empty()) fail(ErrorCode::UsageError, "--in is required");
  auto rep = RepresentationData::load(cfg.in);
  emit(cfg, {{"valid", true}, {"dim", rep->dim()}, {"cartan", rep->cartan().to_json()}, {"lambda", rep->lambda()}});
  return 0;
}

int cmd_census(const RunConfig& cfg) {
  emit(cfg, Census::build(load_rep(cfg)).to_json());
  return 0;
}

int cmd_param(const RunConfig& cfg) {
  auto rep = load_rep(cfg);
  const WeylGroup& W = rep->weyl();
  WeylElt v = W.parse(cfg.v), w = W.parse(cfg.w);
  auto word = cfg.word.empty() ? W.word(w) : parse_word(cfg.word);
  if (W.from_word(word) != w) fail(ErrorCode::UsageError, "--word is not a word for " + cfg.w);
  auto d = make_descriptor(rep, v, w, word);
  dispatch_tag(parse_tag(cfg.semifield), [&]<Semifield K>(K) {
    std::vector<K> h;
    for (const auto& s : split(cfg.h, ',')) h.push_back(K::parse(s));
    emit(cfg, theta(d, h).to_json());
  });
  return 0;
}

int cmd_classify(const RunConfig& cfg) {
  auto rep = load_rep(cfg);
  json in = read_json(cfg.in);
  auto c = Census::build(rep);
  dispatch_tag(point_tag(cfg, in), [&]<Semifield K>(K) {
    auto x = VkVector<K>::from_json(rep, vector_part(in));
    emit(cfg, classified_json(c, classify(c, x)));
  });
  return 0;
}

int cmd_act(const RunConfig& cfg) {
  auto rep = load_rep(cfg);
  json in = read_json(cfg.in);
  auto c = Census::build(rep);
  dispatch_tag(point_tag(cfg, in), [&]<Semifield K>(K) {
    auto x = VkVector<K>::from_json(rep, vector_part(in));
    auto word = parse_generator_word<K>(cfg.gens, rep->rank());
    auto y = apply_word(word, x);
    json j = classified_json(c, act(c, word, x));
    j["vector"] = y.to_json();
    emit(cfg, j);
  });
  return 0;
}

int cmd_gamma(const RunConfig& cfg) {
  CartanDatum c = cfg.rep_path.empty() ? CartanDatum::from_type(cfg.type) : load_rep(cfg)->cartan();
  Weight l = cfg.lambda.empty() ? Weight(c.rank(), 1) : parse_weight(cfg.lambda, c.rank());
  Weight lp = cfg.lambdap.empty() ? l : parse_weight(cfg.lambdap, c.rank());
  auto g = GammaData::build(cached_rep(c, l + lp), cached_rep(c, l), cached_rep(c, lp));
  json j = g.to_json();
  int code = 0;
  if (!cfg.cocycle.empty()) {
    std::vector<Weight> weights;
    for (const auto& s : split(cfg.cocycle, c.rank() == 1 && cfg.cocycle.find(';') == std::string::npos ? ',' : ';'))
      weights.push_back(parse_weight(s, c.rank()));
    auto r = run_property("lambda_independence", [&] {
      return props::lambda_independence(c, weights, cfg.grid, cfg.samples, cfg.seed);
    });
    j["cocycle"] = r.to_json();
    if (!r.passed) code = 1;
  }
  emit(cfg, j);
  return code;
}

int cmd_fold(const RunConfig& cfg) {
  auto rep = load_rep(cfg);
  auto delta = DiagramAutomorphism::parse(rep->cartan(), cfg.delta);
  auto c = Census::build(rep);
  auto fc = FoldedCensus::build(c, delta, cfg.grid);
  json j = fc.to_json();
  j["fixed_points"] = {{"rule", "parameters constant on orbit blocks"},
                       {"status", "checked on the tropical grid"},
                       {"radius", cfg.grid}};
  emit(cfg, j);
  return 0;
}

int cmd_relations(const RunConfig& cfg) {
  auto rep = load_rep(cfg);
  Rng rng(cfg.seed);
  auto report = check_relations(rep, parse_tag(cfg.semifield), cfg.samples, rng);
  emit(cfg, report.to_json());
  return report.all_passed() ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  auto rep = load_rep(cfg);
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.radius = cfg.grid;
  opt.samples = cfg.samples;
  auto report = verify(rep, opt);
  emit(cfg, report.to_json());
  if (auto* f = report.first_failure()) {
    std::cerr << "verify: " << f->name << " failed: " << f->detail << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag manifolds over semifields"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--type", cfg.type, "Cartan type: A1, A2, A1xA1, ...");
  app.add_option("--lambda", cfg.lambda, "highest weight, comma separated");
  auto* sf = app.add_option("--semifield", cfg.semifield, "posrat | tropical | ratfun");
  app.add_option("--rep", cfg.rep_path, "representation data file instead of the built-in construction");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--grid", cfg.grid, "tropical grid radius");
  app.add_option("--samples", cfg.samples, "random samples per check");
  app.add_option("--in", cfg.in, "input JSON");
  app.add_option("--out", cfg.out, "output file (default stdout)");

  std::map<CLI::App*, int (*)(const RunConfig&)> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const RunConfig&)) {
    auto* s = app.add_subcommand(name, help);
    handlers[s] = fn;
    return s;
  };
  sub("build-rep", "build representation data and print it", cmd_buildrep);
  sub("validate", "load a representation data file and re-check it", cmd_validate);
  sub("census", "list the pieces", cmd_census);
  auto* param = sub("param", "evaluate the parametrization of a piece", cmd_param);
  param->add_option("--v", cfg.v, "lower Weyl element");
  param->add_option("--w", cfg.w, "upper Weyl element");
  param->add_option("--word", cfg.word, "reduced word of w, 1-based, comma separated");
  param->add_option("--h", cfg.h, "coordinates, comma separated");
  sub("classify", "find the piece and coordinates of a point", cmd_classify);
  auto* act = sub("act", "apply a generator word and re-classify", cmd_act);
  act->add_option("--word", cfg.gens, "generator word such as \"f1^3 e2^1 t1^2\"")->required();
  auto* gamma = sub("gamma", "build Gamma for lambda + lambda'", cmd_gamma);
  gamma->add_option("--lambdap", cfg.lambdap, "second weight");
  gamma->add_option("--check-cocycle", cfg.cocycle, "weights for the gamma checks, separated by ';'");
  auto* fold = sub("fold", "census of fixed points of a diagram automorphism", cmd_fold);
  fold->add_option("--delta", cfg.delta, "automorphism such as \"1:2,2:1\"")->required();
  sub("relations", "check the generator relations", cmd_relations);
  sub("verify", "run the property suite", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  cfg.semifield_given = sf->count() > 0;
  try {
    for (auto& [s, fn] : handlers)
      if (s->parsed()) return fn(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return 3;
}
