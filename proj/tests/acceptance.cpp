// Runs the ten acceptance criteria and prints one line per criterion.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tropflag/suite.hpp"

using namespace tropflag;

namespace {

RepPtr rep(const char* type, const Weight& lambda) { return cached_rep(CartanDatum::from_type(type), lambda); }

void expect(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvariantViolation, what);
}

struct Criterion {
  std::string name;
  double limit;
  std::function<std::string()> body;
};

}  // namespace

int main() {
  const std::uint64_t seed = 0;
  std::vector<Criterion> criteria{
      {"C1 representation build", 10,
       [] {
         auto a1 = rep("A1", {2}), a2 = rep("A2", {1, 1}), a21 = rep("A2", {2, 1});
         expect(a1->dim() == 3 && a2->dim() == 8 && a21->dim() == 15, "dimensions 3, 8, 15");
         for (const auto& r : {a1, a2, a21}) props::rep_identities(*r);
         return std::string("dims 3, 8, 15");
       }},
      {"C2 relation suite", 30,
       [&] {
         return props::relations(rep("A1", {2}), 20, seed) + " on A1, " +
                props::relations(rep("A2", {1, 1}), 20, seed + 1) + " on A2";
       }},
      {"C3 census of A2 (1,1)", 30,
       [] {
         auto c = Census::build(rep("A2", {1, 1}));
         expect(c.size() == 19, "19 pieces");
         return props::census_invariants(c);
       }},
      {"C4 parametrization round trip", 60,
       [&] { return props::roundtrip(Census::build(rep("A2", {1, 1})), 2, 5, seed); }},
      {"C5 oracle equivalence", 60,
       [&] {
         int pieces = 0;
         for (const auto& r : {rep("A1", {1}), rep("A1", {2}), rep("A1", {3}), rep("A2", {1, 1}), rep("A2", {2, 1})}) {
           auto c = Census::build(r);
           props::oracle(c, 3, seed);
           pieces += c.size();
         }
         return std::to_string(pieces) + " pieces, 3 inputs per semifield";
       }},
      {"C6 tropicalization", 30, [&] { return props::tropicalization(Census::build(rep("A2", {1, 1})), 100, seed); }},
      {"C7 phi on pieces", 30, [] { return props::phi_on_pieces(Census::build(rep("A2", {1, 1})), 2); }},
      {"C8 lambda independence", 60,
       [&] {
         return props::lambda_independence(CartanDatum::from_type("A1"), {{1}, {2}, {3}}, 2, 20, seed) + " on A1, " +
                props::lambda_independence(CartanDatum::from_type("A2"), {{1, 1}}, 2, 20, seed) + " on A2";
       }},
      {"C9 folding A1xA1 to A1", 10, [&] { return props::fold_to_a1(2, 2, 5, seed); }},
      {"C10 stability under generator words", 30,
       [&] { return props::stability(Census::build(rep("A2", {1, 1})), 200, seed); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto r = run_property(c.name, c.body);
    bool ok = r.passed && r.seconds < c.limit;
    if (r.passed && !ok) r.detail += " (over the " + std::to_string(static_cast<int>(c.limit)) + " s limit)";
    std::printf("%s %-38s %7.2f s  %s\n", ok ? "PASS" : "FAIL", c.name.c_str(), r.seconds, r.detail.c_str());
    failed += !ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
