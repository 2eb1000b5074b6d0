#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "tropflag/cells.hpp"
#include "tropflag/rootdata.hpp"
#include "tropflag/vk.hpp"

namespace tropflag {

// The permutation of beta induced by the linear map fixing xi+ and
// intertwining f_i with f_{delta(i)}. Throws LambdaNotFixed, NotAPermutation.
std::vector<int> delta_on_basis(const RepresentationData& rep, const DiagramAutomorphism& delta);

template <Semifield K>
VkVector<K> delta_on_vectors(const std::vector<int>& perm, const VkVector<K>& xi) {
  return permute(xi, perm);
}

template <Semifield K>
PkPoint<K> delta_on_points(const std::vector<int>& perm, const PkPoint<K>& p) {
  return projectivize(permute(p.vector(), perm));
}

template <Semifield K>
bool is_fixed(const std::vector<int>& perm, const VkVector<K>& xi) {
  return pk_equal(projectivize(permute(xi, perm)), projectivize(xi));
}

struct FoldedPiece {
  CellDescriptor desc;  // built on a delta-adapted reduced word
  int unfolded = -1;    // index in the unfolded census
  // prime slots (indices into h) grouped by orbit block
  std::vector<std::vector<int>> slot_orbits;
  int delta_dim() const { return static_cast<int>(slot_orbits.size()); }
};

class FoldedCensus {
 public:
  // Restricts the census to pairs in W^delta and checks on the tropical grid
  // {-radius..radius} that a point is delta-fixed exactly when h is constant
  // on orbit blocks. Throws FixedPointMismatch.
  static FoldedCensus build(const Census& census, const DiagramAutomorphism& delta, int radius = 2);

  const Census& census() const { return *census_; }
  const DiagramAutomorphism& delta() const { return *delta_; }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<FoldedPiece>& pieces() const { return pieces_; }
  int size() const { return static_cast<int>(pieces_.size()); }
  int find(WeylElt v, WeylElt w) const;

  // Spreads one value per orbit block over the prime slots.
  template <Semifield K>
  std::vector<K> unfold(int p, const std::vector<K>& g) const {
    const FoldedPiece& fp = pieces_[p];
    if (static_cast<int>(g.size()) != fp.delta_dim()) fail(ErrorCode::UsageError, "wrong number of folded coordinates");
    std::vector<K> h(fp.desc.dim(), K::one());
    for (int o = 0; o < fp.delta_dim(); ++o)
      for (int j : fp.slot_orbits[o]) h[j] = g[o];
    return h;
  }

  template <Semifield K>
  VkVector<K> theta(int p, const std::vector<K>& g) const {
    return tropflag::theta(pieces_[p].desc, unfold(p, g));
  }

  // Folded piece and coordinates of a delta-fixed point.
  template <Semifield K>
  Classified<K> classify(const VkVector<K>& xi) const {
    if (!is_fixed(perm_, xi)) fail(ErrorCode::FixedPointMismatch, "point is not delta-fixed");
    int p = census_->find_support(xi.support());
    if (p < 0) fail(ErrorCode::UnknownSupport, "support matches no piece");
    int f = find(census_->piece(p).v, census_->piece(p).w);
    if (f < 0) fail(ErrorCode::FixedPointMismatch, "fixed point in a piece outside W^delta");
    auto h = invert_theta(pieces_[f].desc, xi);
    std::vector<K> g;
    for (const auto& orbit : pieces_[f].slot_orbits) {
      for (int j : orbit)
        if (!(h[j] == h[orbit.front()])) fail(ErrorCode::FixedPointMismatch, "coordinates not constant on an orbit");
      g.push_back(h[orbit.front()]);
    }
    return {f, g};
  }

  nlohmann::json to_json() const;

 private:
  const Census* census_ = nullptr;
  std::optional<DiagramAutomorphism> delta_;
  std::vector<int> perm_;
  std::vector<FoldedPiece> pieces_;
};

}  // namespace tropflag
