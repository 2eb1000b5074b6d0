#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "tropflag/folding.hpp"
#include "tropflag/sampling.hpp"

using namespace tropflag;

namespace {

using Trop = TropicalInt;

RepPtr rep(const char* type, const char* lambda) {
  auto c = CartanDatum::from_type(type);
  return cached_rep(c, parse_weight(lambda, c.rank()));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

DiagramAutomorphism swap12(const RepPtr& r) { return DiagramAutomorphism(r->cartan(), {1, 0}); }

// Basis id of the one-dimensional weight space of mu.
int by_weight(const RepresentationData& r, const Weight& mu) {
  const auto& ids = r.weight_spaces().at(mu);
  REQUIRE(ids.size() == 1);
  return ids.front();
}

}  // namespace

TEST_CASE("basis permutation of the swap on A1xA1") {
  auto r = rep("A1xA1", "2,2");
  auto perm = delta_on_basis(*r, swap12(r));
  for (int b = 0; b < r->dim(); ++b) {
    Weight mu = r->weight(b);
    CHECK(r->weight(perm[b]) == Weight{mu[1], mu[0]});
  }
  CHECK(perm[r->xi_plus()] == r->xi_plus());
  CHECK(delta_on_basis(*r, DiagramAutomorphism::identity(r->cartan()))[4] == 4);

  CHECK(code_of([&] { delta_on_basis(*rep("A1xA1", "1,2"), swap12(rep("A1xA1", "1,2"))); }) == ErrorCode::LambdaNotFixed);
}

TEST_CASE("delta relabels the generators") {
  auto rs = rep("A1xA1", "2,2");
  auto d = swap12(rs);
  auto perm = delta_on_basis(*rs, d);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    auto x = random_vector<PosRational>(rng, rs);
    int i = static_cast<int>(rng() % 2);
    auto a = random_element<PosRational>(rng);
    CHECK(delta_on_vectors(perm, apply_f(i, a, x)) == apply_f(d(i), a, delta_on_vectors(perm, x)));
    CHECK(delta_on_vectors(perm, apply_e(i, a, x)) == apply_e(d(i), a, delta_on_vectors(perm, x)));
  }
}

TEST_CASE("folded census of A1xA1 under the swap") {
  auto r = rep("A1xA1", "2,2");
  auto c = Census::build(r);
  auto fc = FoldedCensus::build(c, swap12(r));
  REQUIRE(fc.size() == 3);
  std::vector<int> dims;
  for (const auto& p : fc.pieces()) dims.push_back(p.delta_dim());
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{0, 0, 1});

  const WeylGroup& W = r->weyl();
  WeylElt s12 = W.from_word({0, 1});
  int p = fc.find(W.identity(), s12);
  REQUIRE(p >= 0);
  CHECK(fc.pieces()[p].slot_orbits == std::vector<std::vector<int>>{{0, 1}});
  CHECK(fc.find(W.from_word({0}), W.from_word({0})) < 0);

  // fixed iff constant on the block
  CHECK(is_fixed(fc.perm(), theta(fc.pieces()[p].desc, std::vector<Trop>{Trop(4L), Trop(4L)})));
  CHECK_FALSE(is_fixed(fc.perm(), theta(fc.pieces()[p].desc, std::vector<Trop>{Trop(4L), Trop(3L)})));
  auto cl = fc.classify(fc.theta(p, std::vector<Trop>{Trop(-7L)}));
  CHECK(cl.piece == p);
  CHECK(cl.h == std::vector<Trop>{Trop(-7L)});
  CHECK(code_of([&] { fc.classify(theta(fc.pieces()[p].desc, std::vector<Trop>{Trop(1L), Trop(2L)})); }) ==
        ErrorCode::FixedPointMismatch);

  auto j = fc.to_json();
  CHECK(j["pieces"].size() == 3);
  CHECK(j["delta"] == std::vector<int>{2, 1});
}

TEST_CASE("folded piece matches A1 with doubled weight") {
  auto r = rep("A1xA1", "2,2");
  auto a1 = rep("A1", "2");
  auto c = Census::build(r);
  auto fc = FoldedCensus::build(c, swap12(r));
  auto ca = Census::build(a1);
  const WeylGroup& W = r->weyl();
  int p = fc.find(W.identity(), W.from_word({0, 1}));
  int q = ca.find(a1->weyl().identity(), a1->weyl().from_word({0}));
  REQUIRE(q >= 0);

  auto compare = [&]<Semifield K>(const K& a) {
    auto big = fc.theta(p, std::vector<K>{a});
    auto small = theta(ca.piece(q), std::vector<K>{a});
    for (int b = 0; b < r->dim(); ++b) {
      Weight mu = r->weight(b);
      auto x = small[by_weight(*a1, {mu[0]})] * small[by_weight(*a1, {mu[1]})];
      CHECK(big[b] == x);
    }
  };
  for (long a = -3; a <= 3; ++a) compare(Trop(a));
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    compare(random_element<PosRational>(rng));
    compare(random_element<PosRatFun>(rng));
  }

  // the folded census has the shape of the A1 census
  std::vector<int> fd, ad;
  for (const auto& x : fc.pieces()) fd.push_back(x.delta_dim());
  for (const auto& x : ca.pieces()) ad.push_back(x.desc.dim());
  std::sort(fd.begin(), fd.end());
  std::sort(ad.begin(), ad.end());
  CHECK(fd == ad);
}

TEST_CASE("identity automorphism folds nothing") {
  for (auto r : {rep("A1xA1", "1,2"), rep("A2", "1,1")}) {
    auto c = Census::build(r);
    auto fc = FoldedCensus::build(c, DiagramAutomorphism::identity(r->cartan()), 1);
    CHECK(fc.size() == c.size());
    for (const auto& p : fc.pieces()) {
      CHECK(p.delta_dim() == p.desc.dim());
      CHECK(p.desc.support == c.piece(p.unfolded).support);
    }
  }
}
