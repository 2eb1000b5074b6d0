#include "tropflag/folding.hpp"

#include <map>

#include "tropflag/linalg.hpp"

namespace tropflag {

std::vector<int> delta_on_basis(const RepresentationData& rep, const DiagramAutomorphism& delta) {
  if (delta.perm().size() != static_cast<std::size_t>(rep.rank()))
    fail(ErrorCode::InvalidAutomorphism, "automorphism has the wrong rank");
  if (delta.apply(rep.lambda()) != rep.lambda())
    fail(ErrorCode::LambdaNotFixed, format_weight(rep.lambda()) + " is not fixed by the automorphism");
  const int N = rep.dim();
  std::vector<int> perm(N, -1);
  std::vector<bool> hit(N, false);
  for (int b = 0; b < N; ++b) {
    QVec acc(N);
    for (const auto& term : rep.expansion(b)) {
      QVec v = rep.unit(rep.xi_plus());
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) v = rep.apply_f(delta(*it), 1, v);
      axpy(acc, term.coeff, v);
    }
    int target = -1;
    for (int c = 0; c < N; ++c) {
      if (acc[c] == 0) continue;
      if (target >= 0 || acc[c] != 1) fail(ErrorCode::NotAPermutation, "image of basis element " + std::to_string(b) + " is not a basis element");
      target = c;
    }
    if (target < 0 || hit[target]) fail(ErrorCode::NotAPermutation, "automorphism does not permute the basis");
    hit[target] = true;
    perm[b] = target;
  }
  // delta o x_i^{(n)} = x_{delta(i)}^{(n)} o delta
  for (int i = 0; i < rep.rank(); ++i)
    for (int n = 1; n <= rep.nmax(i); ++n)
      for (int b = 0; b < N; ++b)
        for (bool e : {false, true}) {
          const OpColumn& src = e ? rep.e_col(i, n, b) : rep.f_col(i, n, b);
          const OpColumn& dst = e ? rep.e_col(delta(i), n, perm[b]) : rep.f_col(delta(i), n, perm[b]);
          std::map<int, std::int64_t> lhs, rhs;
          for (const auto& x : src) lhs[perm[x.target]] += x.value;
          for (const auto& x : dst) rhs[x.target] += x.value;
          if (lhs != rhs) fail(ErrorCode::IntertwinerFailure, "automorphism does not intertwine the action");
        }
  return perm;
}

int FoldedCensus::find(WeylElt v, WeylElt w) const {
  for (int p = 0; p < size(); ++p)
    if (pieces_[p].desc.v == v && pieces_[p].desc.w == w) return p;
  return -1;
}

namespace {

// Calls f on every point of {-r..r}^n.
template <class F>
void for_grid(int n, int r, F&& f) {
  std::vector<int> x(n, -r);
  while (true) {
    f(x);
    int k = 0;
    while (k < n && x[k] == r) x[k++] = -r;
    if (k == n) return;
    ++x[k];
  }
}

}  // namespace

FoldedCensus FoldedCensus::build(const Census& census, const DiagramAutomorphism& delta, int radius) {
  const RepPtr& rep = census.rep();
  FoldedCensus fc;
  fc.census_ = &census;
  fc.delta_ = delta;
  fc.perm_ = delta_on_basis(*rep, delta);
  FixedSubgroup Wd(rep->weyl_ptr(), delta);
  const WeylGroup& W = rep->weyl();

  for (WeylElt w : Wd.elements()) {
    std::vector<int> word = Wd.adapted_word(w);
    std::vector<int> blocks = Wd.adapted_blocks(w);
    for (WeylElt v : Wd.elements()) {
      if (!W.bruhat_leq(v, w)) continue;
      FoldedPiece fp;
      fp.desc = make_descriptor(rep, v, w, word);
      fp.unfolded = census.find(v, w);
      if (fp.unfolded < 0 || census.piece(fp.unfolded).support != fp.desc.support)
        fail(ErrorCode::SupportInstability, "adapted word gives a different support for " + W.name(v) + " <= " + W.name(w));

      std::vector<int> slot(word.size(), -1);
      for (int j = 0; j < fp.desc.dim(); ++j) slot[fp.desc.pse.primes[j]] = j;
      std::size_t pos = 0;
      for (int g : blocks) {
        std::size_t len = delta.orbits()[g].size();
        int primed = 0;
        std::vector<int> orbit;
        for (std::size_t k = pos; k < pos + len; ++k)
          if (!fp.desc.pse.q[k]) {
            ++primed;
            orbit.push_back(slot[k]);
          }
        if (primed != 0 && primed != static_cast<int>(len))
          fail(ErrorCode::FixedPointMismatch, "orbit block mixes primed and double-primed positions in " + W.name(v) +
                                                  " <= " + W.name(w));
        if (primed > 0) fp.slot_orbits.push_back(std::move(orbit));
        pos += len;
      }
      if (fp.delta_dim() != Wd.delta_length(w) - Wd.delta_length(v))
        fail(ErrorCode::InvariantViolation, "folded dimension differs from the folded length difference");

      for_grid(fp.desc.dim(), radius, [&](const std::vector<int>& x) {
        std::vector<TropicalInt> h;
        for (int c : x) h.emplace_back(c);
        bool symmetric = true;
        for (const auto& orbit : fp.slot_orbits)
          for (int j : orbit) symmetric = symmetric && x[j] == x[orbit.front()];
        if (is_fixed(fc.perm_, tropflag::theta(fp.desc, h)) != symmetric)
          fail(ErrorCode::FixedPointMismatch, "fixed points of " + W.name(v) + " <= " + W.name(w) +
                                                  " are not the block-constant parameters");
      });
      fc.pieces_.push_back(std::move(fp));
    }
  }
  return fc;
}

nlohmann::json FoldedCensus::to_json() const {
  const RepresentationData& rep = *census_->rep();
  const WeylGroup& W = rep.weyl();
  std::vector<int> perm;
  for (int i : delta_->perm()) perm.push_back(i + 1);
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& fp : pieces_) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& o : fp.slot_orbits) orbits.push_back(o);
    pieces.push_back({{"v", W.name(fp.desc.v)},
                      {"w", W.name(fp.desc.w)},
                      {"word", format_word(fp.desc.word)},
                      {"support", fp.desc.support},
                      {"dim", fp.desc.dim()},
                      {"delta_dim", fp.delta_dim()},
                      {"slot_orbits", orbits},
                      {"unfolded", fp.unfolded}});
  }
  return {{"cartan", rep.cartan().to_json()}, {"lambda", rep.lambda()}, {"delta", perm},
          {"basis_perm", perm_}, {"pieces", pieces}};
}

}  // namespace tropflag
