#include "tropflag/suite.hpp"

#include <chrono>
#include <set>

#include "tropflag/folding.hpp"
#include "tropflag/lambda_indep.hpp"
#include "tropflag/linalg.hpp"
#include "tropflag/sampling.hpp"
#include "tropflag/vk.hpp"

namespace tropflag {

nlohmann::json PropertyResult::to_json() const {
  nlohmann::json j{{"name", name}, {"passed", passed}, {"detail", detail}};
  if (!passed) j["error"] = error;
  return j;
}

bool SuiteReport::all_passed() const { return first_failure() == nullptr; }

const PropertyResult* SuiteReport::first_failure() const {
  for (const auto& r : results)
    if (!r.passed) return &r;
  return nullptr;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& r : results) props.push_back(r.to_json());
  nlohmann::json j{{"passed", all_passed()}, {"properties", props}};
  if (auto* f = first_failure()) j["first_failure"] = f->name;
  return j;
}

PropertyResult run_property(std::string name, const std::function<std::string()>& body) {
  PropertyResult r;
  r.name = std::move(name);
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.detail = body();
    r.passed = true;
  } catch (const Error& e) {
    r.error = std::string(to_string(e.code()));
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

using Trop = TropicalInt;

template <class F>
void for_grid(int n, int r, F&& f) {
  std::vector<Trop> h(n, Trop(static_cast<long>(-r)));
  std::vector<int> x(n, -r);
  while (true) {
    for (int k = 0; k < n; ++k) h[k] = Trop(static_cast<long>(x[k]));
    f(h);
    int k = 0;
    while (k < n && x[k] == r) x[k++] = -r;
    if (k == n) return;
    ++x[k];
  }
}

template <Semifield K>
std::vector<K> random_h(Rng& rng, int d) {
  std::vector<K> h;
  for (int j = 0; j < d; ++j) h.push_back(random_element<K>(rng));
  return h;
}

template <Semifield K>
bool same_point(const VkVector<K>& a, const VkVector<K>& b) {
  return pk_equal(projectivize(a), projectivize(b));
}

std::string where(const Census& c, int p) {
  const WeylGroup& W = c.rep()->weyl();
  return W.name(c.piece(p).v) + " <= " + W.name(c.piece(p).w);
}

template <Semifield K>
void axioms(Rng& rng, int samples) {
  for (int t = 0; t < samples; ++t) {
    K a = random_element<K>(rng), b = random_element<K>(rng), c = random_element<K>(rng);
    bool ok = a + b == b + a && (a + b) + c == a + (b + c) && a * b == b * a && (a * b) * c == a * (b * c) &&
              a * (b + c) == a * b + a * c && a * K::one() == a && (a / b) * b == a;
    Ext<K> x = random_ext<K>(rng), y = random_ext<K>(rng);
    ok = ok && Ext<K>() + x == x && (Ext<K>() * x).is_absent() && x + y == y + x && Ext<K>::parse(x.str()) == x;
    if (!ok)
      fail(ErrorCode::InvariantViolation, std::string(tag_name(K::kTag)) + " axioms fail at " + a.str() + ", " +
                                              b.str() + ", " + c.str());
  }
}

QVec op(const RepresentationData& r, bool e, int i, const QVec& v) { return e ? r.apply_e(i, 1, v) : r.apply_f(i, 1, v); }

QVec minus(QVec a, const QVec& b) {
  axpy(a, -1, b);
  return a;
}

template <Semifield K>
void roundtrip_point(const Census& c, int p, const std::vector<K>& h, const VkVector<K>& x) {
  auto cl = classify(c, x);
  if (cl.piece != p || cl.h != h) fail(ErrorCode::InvariantViolation, "classify does not invert theta on " + where(c, p));
}

}  // namespace

namespace props {

std::string semifield_axioms(std::uint64_t seed, int samples) {
  Rng rng(seed);
  axioms<Trop>(rng, samples);
  axioms<PosRational>(rng, samples);
  axioms<PosRatFun>(rng, samples);
  return std::to_string(samples) + " triples per semifield";
}

std::string rep_identities(const RepresentationData& r) {
  const int N = r.dim(), n = r.rank();
  if (mpz_class(N) != weyl_dimension(r.cartan(), r.lambda()))
    fail(ErrorCode::DimensionMismatch, "dimension differs from the Weyl dimension formula");
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= r.nmax(i) + 1; ++k)
      for (int b = 0; b < N; ++b)
        for (bool e : {false, true})
          for (const auto& x : e ? r.e_col(i, k, b) : r.f_col(i, k, b))
            if (x.value < 0) fail(ErrorCode::PositivityViolation, "negative structure constant");
  for (int b = 0; b < N; ++b) {
    QVec u = r.unit(b);
    for (int i = 0; i < n; ++i) {
      QVec h = minus(op(r, true, i, op(r, false, i, u)), op(r, false, i, op(r, true, i, u)));
      axpy(h, -r.pairing(i, b), u);
      if (!is_zero(h)) fail(ErrorCode::InvariantViolation, "[e_i, f_i] is not diagonal with the weight pairing");
      for (bool e : {false, true}) {
        QVec p = u;
        mpq_class fact = 1;
        for (int k = 1; k <= r.nmax(i) + 1; ++k) {
          p = op(r, e, i, p);
          fact *= k;
          QVec d = e ? r.apply_e(i, k, u) : r.apply_f(i, k, u);
          for (auto& x : d) x *= fact;
          if (d != p) fail(ErrorCode::InvariantViolation, "divided power differs from the scaled power");
        }
      }
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (!is_zero(minus(op(r, true, i, op(r, false, j, u)), op(r, false, j, op(r, true, i, u)))))
          fail(ErrorCode::InvariantViolation, "[e_i, f_j] is nonzero for i != j");
        for (bool e : {false, true}) {
          if (r.cartan()(i, j) == 0) {
            if (!is_zero(minus(op(r, e, i, op(r, e, j, u)), op(r, e, j, op(r, e, i, u)))))
              fail(ErrorCode::InvariantViolation, "commuting generators do not commute");
          } else if (r.cartan()(i, j) == -1) {
            QVec s = op(r, e, i, op(r, e, i, op(r, e, j, u)));
            axpy(s, -2, op(r, e, i, op(r, e, j, op(r, e, i, u))));
            axpy(s, 1, op(r, e, j, op(r, e, i, op(r, e, i, u))));
            if (!is_zero(s)) fail(ErrorCode::InvariantViolation, "Serre relation fails");
          }
        }
      }
    }
  }
  return "dim " + std::to_string(N);
}

std::string relations(const RepPtr& rep, int samples, std::uint64_t seed) {
  Rng rng(seed);
  int checks = 0;
  for (SemifieldTag tag : {SemifieldTag::PosRational, SemifieldTag::TropicalInt, SemifieldTag::PosRatFun}) {
    auto report = check_relations(rep, tag, samples, rng);
    for (const auto& res : report.results) {
      if (!res.validated) fail(ErrorCode::RelationFailure, res.name + " is not an identity over the rationals");
      if (!res.passed)
        fail(ErrorCode::RelationFailure, res.name + " fails over " + std::string(tag_name(tag)) + ": " + res.witness);
      checks += res.checks;
    }
  }
  return std::to_string(checks) + " checks";
}

std::string census_invariants(const Census& c) {
  const RepPtr& r = c.rep();
  const WeylGroup& W = r->weyl();
  std::set<IdSet> supports;
  int expected = 0;
  for (WeylElt w = 0; w < W.size(); ++w)
    for (WeylElt v = 0; v < W.size(); ++v) expected += W.bruhat_leq(v, w);
  if (c.size() != expected) fail(ErrorCode::InvariantViolation, "census does not have one piece per Bruhat pair");
  for (int p = 0; p < c.size(); ++p) {
    const auto& d = c.piece(p);
    supports.insert(d.support);
    if (d.dim() != W.length(d.w) - W.length(d.v)) fail(ErrorCode::InvariantViolation, "dimension of " + where(c, p));
    if (!std::binary_search(d.support.begin(), d.support.end(), r->bw(d.w)))
      fail(ErrorCode::InvariantViolation, "b_w outside the support of " + where(c, p));
    if (!support_within(d.support, r->beta_w(d.w)))
      fail(ErrorCode::InvariantViolation, "support of " + where(c, p) + " leaves beta^w");
    if (r->has_phi()) {
      IdSet bound;
      for (int b : r->beta_w(W.mul(d.v, W.longest()))) bound.push_back(r->phi(b));
      std::sort(bound.begin(), bound.end());
      if (!support_within(d.support, bound))
        fail(ErrorCode::InvariantViolation, "support of " + where(c, p) + " leaves phi(beta^{v w_I})");
    }
    for (const auto& word : W.reduced_words(d.w))
      if (support_set(r, d.v, d.w, word) != d.support)
        fail(ErrorCode::ReducedWordDependence, "support of " + where(c, p) + " depends on the reduced word");
  }
  if (static_cast<int>(supports.size()) != c.size()) fail(ErrorCode::DuplicateSupport, "two pieces share a support");
  return std::to_string(c.size()) + " pieces";
}

std::string roundtrip(const Census& c, int radius, int samples, std::uint64_t seed) {
  Rng rng(seed);
  long points = 0;
  for (int p = 0; p < c.size(); ++p) {
    const auto& d = c.piece(p);
    for_grid(d.dim(), radius, [&](const std::vector<Trop>& h) {
      roundtrip_point(c, p, h, theta(d, h).scaled(random_element<Trop>(rng)));
      ++points;
    });
    for (int t = 0; t < samples; ++t) {
      auto h = random_h<PosRatFun>(rng, d.dim());
      roundtrip_point(c, p, h, theta(d, h).scaled(random_element<PosRatFun>(rng)));
      ++points;
    }
  }
  return std::to_string(points) + " points";
}

std::string oracle(const Census& c, int samples, std::uint64_t seed) {
  Rng rng(seed);
  for (int p = 0; p < c.size(); ++p) {
    const auto& d = c.piece(p);
    for (int t = 0; t < samples; ++t) {
      check_oracle(d, random_h<Trop>(rng, d.dim()));
      check_oracle(d, random_h<PosRational>(rng, d.dim()));
      check_oracle(d, random_h<PosRatFun>(rng, d.dim()));
    }
  }
  return std::to_string(c.size() * samples * 3) + " evaluations";
}

std::string tropicalization(const Census& c, int points, std::uint64_t seed) {
  Rng rng(seed);
  auto val = [](const PosRatFun& a) { return valuation(a); };
  for (int t = 0; t < points; ++t) {
    int p = static_cast<int>(uniform_int(rng, 0, c.size() - 1));
    const auto& d = c.piece(p);
    auto h = random_h<PosRatFun>(rng, d.dim());
    std::vector<Trop> rh;
    for (const auto& x : h) rh.push_back(valuation(x));
    if (!(v_r<Trop>(theta(d, h), val) == theta(d, rh)))
      fail(ErrorCode::InvariantViolation, "valuation does not commute with theta on " + where(c, p));
    if (!pk_equal(projectivize(v_r<Trop>(omega(d, h).vector(), val)), omega(d, rh)))
      fail(ErrorCode::InvariantViolation, "valuation does not commute with omega on " + where(c, p));
  }
  return std::to_string(points) + " points";
}

std::string phi_on_pieces(const Census& c, int radius) {
  const WeylGroup& W = c.rep()->weyl();
  long points = 0;
  for (int p = 0; p < c.size(); ++p) {
    const auto& d = c.piece(p);
    int partner = c.find(W.mul(d.w, W.longest()), W.mul(d.v, W.longest()));
    if (partner < 0) fail(ErrorCode::NotInCell, "no partner piece for " + where(c, p));
    std::set<std::string> images;
    for_grid(d.dim(), radius, [&](const std::vector<Trop>& h) {
      auto x = theta(d, h);
      auto img = phi_on_cells(c, x);
      if (img.piece != partner) fail(ErrorCode::NotInCell, "phi sends " + where(c, p) + " elsewhere");
      if (!(phi_K(phi_K(x)) == x)) fail(ErrorCode::InvariantViolation, "phi is not an involution");
      std::string key;
      for (const auto& y : img.h) key += y.str() + ",";
      images.insert(key);
      ++points;
    });
    std::size_t expect = 1;
    for (int j = 0; j < d.dim(); ++j) expect *= 2 * radius + 1;
    if (images.size() != expect) fail(ErrorCode::InvariantViolation, "phi is not injective on " + where(c, p));
  }
  return std::to_string(points) + " points";
}

std::string lambda_independence(const CartanDatum& cartan, const std::vector<Weight>& lambdas, int radius, int words,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Census> cs;
  for (const auto& l : lambdas) cs.push_back(Census::build(cached_rep(cartan, l)));
  const int L = static_cast<int>(lambdas.size());
  long checks = 0;

  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      auto sum_rep = cached_rep(cartan, lambdas[a] + lambdas[b]);
      auto g = GammaData::build(sum_rep, cs[a].rep(), cs[b].rep());
      auto sum = Census::build(sum_rep);
      for (int p = 0; p < sum.size(); ++p) {
        const auto& d = sum.piece(p);
        int pa = cs[a].find(d.v, d.w), pb = cs[b].find(d.v, d.w);
        for_grid(d.dim(), radius, [&](const std::vector<Trop>& h) {
          auto x = theta(d, h);
          auto [l, r] = factor_rank_one(gamma_K(g, x));
          auto ca = classify(cs[a], l);
          auto cb = classify(cs[b], r);
          if (ca.piece != pa || ca.h != h || cb.piece != pb || cb.h != h)
            fail(ErrorCode::InvariantViolation, "H does not preserve coordinates on " + where(sum, p));
          ++checks;
        });
        for (int t = 0; t < 3; ++t) {
          auto h = random_h<PosRatFun>(rng, d.dim());
          if (!same_point(H_map(g, theta(d, h)), theta(cs[a].piece(pa), h)))
            fail(ErrorCode::InvariantViolation, "H does not preserve rational-function coordinates on " + where(sum, p));
          ++checks;
        }
      }
      // gamma through the parametrization agrees with gamma through Gamma
      for (int p = 0; p < cs[a].size(); ++p)
        for_grid(cs[a].piece(p).dim(), radius, [&](const std::vector<Trop>& h) {
          auto x = theta(cs[a].piece(p), h);
          if (!same_point(gamma_bijection(cs[a], cs[b], x), gamma_via_H(g, sum, cs[a], x)))
            fail(ErrorCode::InvariantViolation, "gamma routes disagree on " + where(cs[a], p));
          ++checks;
        });
      if (a == 0 && b == L - 1)
        for (int t = 0; t < words; ++t) {
          int p = static_cast<int>(uniform_int(rng, 0, cs[a].size() - 1));
          auto x = theta(cs[a].piece(p), random_h<Trop>(rng, cs[a].piece(p).dim()));
          auto word = random_generator_word<Trop>(rng, cartan.rank(), static_cast<int>(uniform_int(rng, 1, 4)));
          if (!same_point(gamma_via_H(g, sum, cs[a], apply_word(word, x)), apply_word(word, gamma_via_H(g, sum, cs[a], x))))
            fail(ErrorCode::InvariantViolation, "gamma does not commute with " + format_generator_word(word));
          ++checks;
        }
    }

  for (int a = 0; a < L; ++a)
    for (int p = 0; p < cs[a].size(); ++p)
      for_grid(cs[a].piece(p).dim(), radius, [&](const std::vector<Trop>& h) {
        auto x = theta(cs[a].piece(p), h);
        if (!same_point(gamma_bijection(cs[a], cs[a], x), x))
          fail(ErrorCode::InvariantViolation, "gamma_{lambda,lambda} is not the identity");
        for (int b = 0; b < L; ++b) {
          auto y = gamma_bijection(cs[a], cs[b], x);
          if (!same_point(gamma_bijection(cs[b], cs[a], y), x))
            fail(ErrorCode::InvariantViolation, "gamma is not invertible");
          for (int c = 0; c < L; ++c)
            if (!same_point(gamma_bijection(cs[b], cs[c], y), gamma_bijection(cs[a], cs[c], x)))
              fail(ErrorCode::InvariantViolation, "gamma breaks the cocycle law");
          ++checks;
        }
      });
  return std::to_string(checks) + " checks";
}

std::string fold_to_a1(int a, int radius, int samples, std::uint64_t seed) {
  CartanDatum c2 = CartanDatum::from_type("A1xA1"), c1 = CartanDatum::from_type("A1");
  auto big = cached_rep(c2, {a, a});
  auto small = cached_rep(c1, {a});
  Census cb = Census::build(big), cs = Census::build(small);
  DiagramAutomorphism swap(c2, {1, 0});
  auto fc = FoldedCensus::build(cb, swap, radius);
  FixedSubgroup Wd(big->weyl_ptr(), swap);
  if (fc.size() != cs.size()) fail(ErrorCode::DimensionMismatch, "folded census size differs from the A1 census");

  auto id_of = [&](int m) { return small->weight_spaces().at({m}).front(); };
  Rng rng(seed);
  long checks = 0;
  for (int p = 0; p < fc.size(); ++p) {
    const auto& fp = fc.pieces()[p];
    WeylElt v = small->weyl().from_word(std::vector<int>(Wd.adapted_blocks(fp.desc.v).size(), 0));
    WeylElt w = small->weyl().from_word(std::vector<int>(Wd.adapted_blocks(fp.desc.w).size(), 0));
    int q = cs.find(v, w);
    if (q < 0 || cs.piece(q).dim() != fp.delta_dim())
      fail(ErrorCode::DimensionMismatch, "folded piece has no A1 counterpart of the same dimension");
    auto compare = [&]<Semifield K>(const std::vector<K>& g) {
      auto x = fc.theta(p, g);
      auto y = theta(cs.piece(q), g);
      for (int b = 0; b < big->dim(); ++b) {
        const Weight& mu = big->weight(b);
        if (!(x[b] == y[id_of(mu[0])] * y[id_of(mu[1])]))
          fail(ErrorCode::FixedPointMismatch, "folded parametrization differs from A1 at basis element " + std::to_string(b));
      }
      auto cl = fc.classify(x);
      if (cl.piece != p || cl.h != g) fail(ErrorCode::FixedPointMismatch, "folded classify does not invert theta");
      ++checks;
    };
    for_grid(fp.delta_dim(), radius, [&](const std::vector<Trop>& g) { compare(g); });
    for (int t = 0; t < samples; ++t) {
      compare(random_h<PosRational>(rng, fp.delta_dim()));
      compare(random_h<PosRatFun>(rng, fp.delta_dim()));
    }
  }
  return std::to_string(fc.size()) + " folded pieces, " + std::to_string(checks) + " points";
}

std::string stability(const Census& c, int words, std::uint64_t seed) {
  Rng rng(seed);
  const int n = c.rep()->rank();
  auto run = [&]<Semifield K>(K) {
    for (int t = 0; t < words; ++t) {
      int p = static_cast<int>(uniform_int(rng, 0, c.size() - 1));
      auto x = theta(c.piece(p), random_h<K>(rng, c.piece(p).dim()));
      auto word = random_generator_word<K>(rng, n, static_cast<int>(uniform_int(rng, 1, 6)));
      auto cl = act(c, word, x);
      if (!pk_equal(omega(c.piece(cl.piece), cl.h), projectivize(apply_word(word, x))))
        fail(ErrorCode::InvariantViolation, "re-classified point differs after " + format_generator_word(word));
    }
  };
  run(Trop());
  run(PosRational::one());
  return std::to_string(2 * words) + " words";
}

}  // namespace props

SuiteReport verify(const RepPtr& rep, const VerifyOptions& opt) {
  if (!is_very_dominant(rep->lambda()))
    fail(ErrorCode::LambdaNotVeryDominant, format_weight(rep->lambda()) + " has a coordinate below 1");
  SuiteReport report;
  auto add = [&](std::string name, const std::function<std::string()>& body) {
    report.results.push_back(run_property(std::move(name), body));
  };
  add("semifield_axioms", [&] { return props::semifield_axioms(opt.seed, 200); });
  add("representation_identities", [&] { return props::rep_identities(*rep); });
  add("relations", [&] { return props::relations(rep, opt.samples, opt.seed); });
  std::optional<Census> census;
  add("census", [&] {
    census = Census::build(rep);
    return props::census_invariants(*census);
  });
  if (census) {
    add("parametrization_roundtrip", [&] { return props::roundtrip(*census, opt.radius, 5, opt.seed); });
    add("oracle_equivalence", [&] { return props::oracle(*census, 3, opt.seed); });
    add("tropicalization", [&] { return props::tropicalization(*census, 100, opt.seed); });
    if (rep->has_phi()) add("phi_on_pieces", [&] { return props::phi_on_pieces(*census, opt.radius); });
    add("lambda_independence",
        [&] { return props::lambda_independence(rep->cartan(), {rep->lambda()}, opt.radius, 20, opt.seed); });
    add("stability", [&] { return props::stability(*census, opt.words, opt.seed); });
  }
  const Weight& l = rep->lambda();
  if (rep->cartan() == CartanDatum::from_type("A1xA1") && l[0] == l[1])
    add("folding", [&] { return props::fold_to_a1(l[0], opt.radius, 5, opt.seed); });
  return report;
}

}  // namespace tropflag
