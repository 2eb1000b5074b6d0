#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "tropflag/cells.hpp"
#include "tropflag/error.hpp"

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

VkVector<Trop> trop(const RepPtr& r, std::vector<std::optional<long>> c) {
  VkVector<Trop> v(r);
  for (int b = 0; b < v.dim(); ++b)
    if (c[b]) v.at(b) = Trop(*c[b]);
  return v;
}

std::vector<Trop> th(std::initializer_list<long> xs) {
  std::vector<Trop> h;
  for (long x : xs) h.emplace_back(x);
  return h;
}

// All points of {-r..r}^d.
std::vector<std::vector<Trop>> grid(int d, long r) {
  std::vector<std::vector<Trop>> out{{}};
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<Trop>> next;
    for (const auto& p : out)
      for (long x = -r; x <= r; ++x) {
        auto q = p;
        q.emplace_back(x);
        next.push_back(q);
      }
    out = next;
  }
  return out;
}

template <Semifield K>
std::vector<K> random_h(Rng& rng, int d) {
  std::vector<K> h;
  for (int j = 0; j < d; ++j) h.push_back(random_element<K>(rng));
  return h;
}

}  // namespace

TEST_CASE("theta on A1") {
  auto r = rep("A1", "2");
  const WeylGroup& W = r->weyl();
  WeylElt s1 = W.parse("s1");
  auto d = make_descriptor(r, W.identity(), s1, {0});
  CHECK(theta(d, th({3})) == trop(r, {0, 3, 6}));
  CHECK(theta_oracle(d, th({3})) == trop(r, {0, 3, 6}));
  auto dd = make_descriptor(r, s1, s1, {0});
  CHECK(dd.dim() == 0);
  CHECK(theta(dd, std::vector<Trop>{}) == VkVector<Trop>::basis_vector(r, 2));
  CHECK(r->bw(s1) == 2);
  auto e = make_descriptor(r, W.identity(), W.identity(), {});
  CHECK(theta(e, std::vector<Trop>{}) == VkVector<Trop>::basis_vector(r, r->xi_plus()));
  CHECK(theta_oracle(e, std::vector<Trop>{}) == VkVector<Trop>::basis_vector(r, r->xi_plus()));
  CHECK(support_set(r, W.identity(), W.identity(), {}) == IdSet{0});
  CHECK(support_set(r, W.identity(), s1, {0}) == IdSet{0, 1, 2});
  CHECK(support_set(r, s1, s1, {0}) == IdSet{2});
  CHECK(code_of([&] { theta(d, th({1, 2})); }) == ErrorCode::UsageError);
  CHECK(code_of([&] { make_descriptor(r, s1, W.identity(), {}); }) == ErrorCode::NotBruhatBelow);
}

TEST_CASE("theta agrees with the chi-expansion") {
  Rng rng(41);
  for (auto r : {rep("A1", "1"), rep("A1", "2"), rep("A1", "3"), rep("A2", "1,1"), rep("A2", "2,1"), rep("A1xA1", "1,2")}) {
    auto c = Census::build(r);
    for (const auto& info : c.pieces()) {
      const auto& d = info.desc;
      for (int t = 0; t < 3; ++t) {
        check_oracle(d, random_h<Trop>(rng, d.dim()));
        check_oracle(d, random_h<PosRational>(rng, d.dim()));
        check_oracle(d, random_h<PosRatFun>(rng, d.dim()));
      }
    }
  }
}

TEST_CASE("census sizes and invariants") {
  auto a2 = rep("A2", "1,1");
  auto c = Census::build(a2);
  const WeylGroup& W = a2->weyl();
  CHECK(c.size() == 19);
  CHECK(Census::build(rep("A1", "2")).size() == 3);
  CHECK(Census::build(rep("A1xA1", "2,2")).size() == 9);
  CHECK(Census::build(rep("A2", "2,1")).size() == 19);
  CHECK(c.piece(c.find(W.identity(), W.longest())).dim() == 3);
  std::set<IdSet> supports;
  for (const auto& info : c.pieces()) {
    const auto& d = info.desc;
    supports.insert(d.support);
    CHECK(d.dim() == W.length(d.w) - W.length(d.v));
    CHECK(std::binary_search(d.support.begin(), d.support.end(), a2->bw(d.w)));
    REQUIRE(info.bound);
    CHECK(support_within(d.support, *info.bound));
    for (const auto& word : W.reduced_words(d.w)) CHECK(support_set(a2, d.v, d.w, word) == d.support);
    // phi(beta_{w w_I, v w_I}) = beta_{v,w}
    IdSet img;
    for (int b : beta_vw(a2, W.mul(d.w, W.longest()), W.mul(d.v, W.longest()))) img.push_back(a2->phi(b));
    std::sort(img.begin(), img.end());
    CHECK(img == d.support);
  }
  CHECK(supports.size() == 19);
  CHECK(beta_vw(a2, W.identity(), W.longest()).size() == 8);
  CHECK(code_of([] { Census::build(rep("A2", "1,0")); }) == ErrorCode::LambdaNotVeryDominant);
  auto j = c.to_json();
  CHECK(j["pieces"].size() == 19);
  CHECK(j["pieces"][0]["v"] == "e");
}

TEST_CASE("inverse parametrization") {
  auto r = rep("A1", "2");
  const WeylGroup& W = r->weyl();
  auto d = make_descriptor(r, W.identity(), W.parse("s1"), {0});
  CHECK(invert_theta(d, trop(r, {0, 3, 6})) == th({3}));
  CHECK(invert_theta(d, trop(r, {4, 7, 10})) == th({3}));
  CHECK(code_of([&] { invert_theta(d, trop(r, {0, 3, std::nullopt})); }) == ErrorCode::NotInCell);
  CHECK(code_of([&] { invert_theta(d, trop(r, {0, 3, 5})); }) == ErrorCode::PeelFailure);

  Rng rng(43);
  for (auto m : {rep("A2", "1,1"), rep("A2", "2,1"), rep("A1xA1", "1,1")}) {
    auto c = Census::build(m);
    for (int p = 0; p < c.size(); ++p) {
      const auto& pd = c.piece(p);
      for (const auto& h : grid(pd.dim(), 2)) {
        auto x = theta(pd, h).scaled(Trop(5));
        auto cl = classify(c, x);
        CHECK(cl.piece == p);
        CHECK(cl.h == h);
      }
      for (int t = 0; t < 5; ++t) {
        auto h = random_h<PosRatFun>(rng, pd.dim());
        auto cl = classify(c, theta(pd, h).scaled(random_element<PosRatFun>(rng)));
        CHECK(cl.piece == p);
        CHECK(cl.h == h);
        auto hq = random_h<PosRational>(rng, pd.dim());
        CHECK(classify(c, theta(pd, hq)).h == hq);
      }
    }
  }
  auto a2 = rep("A2", "1,1");
  auto c = Census::build(a2);
  const WeylGroup& W2 = a2->weyl();
  auto cl = classify(c, VkVector<Trop>::basis_vector(a2, a2->xi_plus()));
  CHECK(c.piece(cl.piece).v == W2.identity());
  CHECK(c.piece(cl.piece).w == W2.identity());
  cl = classify(c, VkVector<Trop>::basis_vector(a2, a2->xi_minus()));
  CHECK(c.piece(cl.piece).v == W2.longest());
  CHECK(c.piece(cl.piece).w == W2.longest());
  CHECK(code_of([&] { classify(c, VkVector<Trop>(a2)); }) == ErrorCode::ZeroVector);
  CHECK(code_of([&] { classify(c, trop(a2, {0, std::nullopt, std::nullopt, 0, std::nullopt, std::nullopt, std::nullopt, std::nullopt})); }) ==
        ErrorCode::UnknownSupport);
}

TEST_CASE("tropicalization square") {
  Rng rng(47);
  auto val = [](const PosRatFun& a) { return valuation(a); };
  auto c = Census::build(rep("A2", "1,1"));
  for (int t = 0; t < 100; ++t) {
    const auto& d = c.piece(static_cast<int>(uniform_int(rng, 0, c.size() - 1)));
    auto h = random_h<PosRatFun>(rng, d.dim());
    std::vector<Trop> rh;
    for (const auto& x : h) rh.push_back(valuation(x));
    CHECK(v_r<Trop>(theta(d, h), val) == theta(d, rh));
    CHECK(pk_equal(projectivize(v_r<Trop>(omega(d, h).vector(), val)), omega(d, rh)));
  }
}

TEST_CASE("generator action on pieces") {
  auto r = rep("A1", "2");
  auto c = Census::build(r);
  const WeylGroup& W = r->weyl();
  auto low = VkVector<Trop>::basis_vector(r, r->bw(W.parse("s1")));
  auto same = act(c, GeneratorWord<Trop>{}, low);
  CHECK(c.piece(same.piece).v == W.parse("s1"));
  auto stay = act(c, parse_generator_word<Trop>("f1^4", 1), low);
  CHECK(c.piece(stay.piece).v == W.parse("s1"));
  // 1^2 sends f^{(2)} xi+ to (4, 2, 0), the point h = -2 of (e, s1)
  auto up = act(c, parse_generator_word<Trop>("e1^2", 1), low);
  CHECK(c.piece(up.piece).v == W.identity());
  CHECK(c.piece(up.piece).w == W.parse("s1"));
  CHECK(up.h == th({-2}));

  auto a2 = rep("A2", "1,1");
  auto c2 = Census::build(a2);
  Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    int p = static_cast<int>(uniform_int(rng, 0, c2.size() - 1));
    auto x = theta(c2.piece(p), random_h<Trop>(rng, c2.piece(p).dim()));
    auto word = random_generator_word<Trop>(rng, 2, static_cast<int>(uniform_int(rng, 1, 6)));
    auto cl = act(c2, word, x);
    CHECK(pk_equal(omega(c2.piece(cl.piece), cl.h), projectivize(apply_word(word, x))));
  }
}

TEST_CASE("phi on pieces") {
  auto a2 = rep("A2", "1,1");
  auto c = Census::build(a2);
  const WeylGroup& W = a2->weyl();
  auto top = phi_on_cells(c, VkVector<Trop>::basis_vector(a2, a2->xi_plus()));
  CHECK(c.piece(top.piece).v == W.longest());
  for (int p = 0; p < c.size(); ++p) {
    const auto& d = c.piece(p);
    int partner = c.find(W.mul(d.w, W.longest()), W.mul(d.v, W.longest()));
    CHECK(c.piece(partner).dim() == d.dim());
    for (const auto& h : grid(d.dim(), 1)) {
      auto x = theta(d, h);
      auto img = phi_on_cells(c, x);
      CHECK(img.piece == partner);
      CHECK(phi_K(phi_K(x)) == x);
    }
  }
}
