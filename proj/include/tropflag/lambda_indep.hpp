#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "tropflag/cells.hpp"
#include "tropflag/repdata.hpp"
#include "tropflag/vk.hpp"

namespace tropflag {

// Formal K^!-combinations of pairs (b1, b1') in beta x beta'.
template <Semifield K>
class TensorVector {
 public:
  TensorVector(RepPtr left, RepPtr right)
      : left_(std::move(left)), right_(std::move(right)), c_(static_cast<std::size_t>(left_->dim()) * right_->dim()) {}

  const RepPtr& left() const { return left_; }
  const RepPtr& right() const { return right_; }
  int index(int b1, int b2) const { return b1 * right_->dim() + b2; }
  std::pair<int, int> pair(int s) const { return {s / right_->dim(), s % right_->dim()}; }
  int size() const { return static_cast<int>(c_.size()); }
  const Ext<K>& operator[](int s) const { return c_[s]; }
  Ext<K>& at(int s) { return c_[s]; }
  const Ext<K>& operator()(int b1, int b2) const { return c_[index(b1, b2)]; }
  Ext<K>& at(int b1, int b2) { return c_[index(b1, b2)]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x.present()) return false;
    return true;
  }
  TensorVector scaled(const K& k) const {
    TensorVector out = *this;
    for (auto& x : out.c_)
      if (x.present()) x = x.value() * k;
    return out;
  }
  friend bool operator==(const TensorVector& a, const TensorVector& b) { return a.c_ == b.c_; }

  nlohmann::json to_json() const {
    nlohmann::json coeffs = nlohmann::json::object();
    for (int s = 0; s < size(); ++s)
      if (c_[s].present()) {
        auto [b1, b2] = pair(s);
        coeffs[std::to_string(b1) + "," + std::to_string(b2)] = c_[s].value().str();
      }
    return {{"tag", std::string(tag_name(K::kTag))}, {"coeffs", coeffs}};
  }

 private:
  RepPtr left_, right_;
  std::vector<Ext<K>> c_;
};

// Natural matrix of the intertwiner V(lambda + lambda') -> V(lambda) (x) V(lambda')
// sending the highest weight vector to the tensor of highest weight vectors.
class GammaData {
 public:
  static GammaData build(const RepPtr& sum, const RepPtr& left, const RepPtr& right);

  const RepPtr& sum() const { return sum_; }
  const RepPtr& left() const { return left_; }
  const RepPtr& right() const { return right_; }
  // Row of b: entries (s, e_{b,s}) with s the tensor index, e > 0.
  const std::vector<std::pair<int, mpz_class>>& row(int b) const { return rows_[b]; }

  nlohmann::json to_json() const;

 private:
  RepPtr sum_, left_, right_;
  std::vector<std::vector<std::pair<int, mpz_class>>> rows_;
};

template <Semifield K>
TensorVector<K> E_K(const VkVector<K>& x, const VkVector<K>& y) {
  TensorVector<K> u(x.rep_ptr(), y.rep_ptr());
  for (int b1 : x.support())
    for (int b2 : y.support()) u.at(b1, b2) = x[b1].value() * y[b2].value();
  return u;
}

template <Semifield K>
TensorVector<K> gamma_K(const GammaData& g, const VkVector<K>& x) {
  TensorVector<K> u(g.left(), g.right());
  for (int b : x.support())
    for (const auto& [s, e] : g.row(b)) u.at(s) += Ext<K>(x[b].value() * K::from_natural(e.get_ui()));
  return u;
}

// u = x (x) y with the least support pair as pivot; throws NotDecomposable.
template <Semifield K>
std::pair<VkVector<K>, VkVector<K>> factor_rank_one(const TensorVector<K>& u) {
  int pivot = -1;
  for (int s = 0; s < u.size() && pivot < 0; ++s)
    if (u[s].present()) pivot = s;
  if (pivot < 0) fail(ErrorCode::ZeroVector, "cannot factor the zero tensor");
  auto [b0, c0] = u.pair(pivot);
  VkVector<K> x(u.left()), y(u.right());
  for (int b = 0; b < x.dim(); ++b) x.at(b) = u(b, c0);
  for (int c = 0; c < y.dim(); ++c) y.at(c) = u(b0, c) / u(b0, c0);
  for (int b = 0; b < x.dim(); ++b)
    for (int c = 0; c < y.dim(); ++c)
      if (!(u(b, c) == x[b] * y[c]))
        fail(ErrorCode::NotDecomposable, "entry (" + std::to_string(b) + "," + std::to_string(c) + ") breaks rank one");
  return {x, y};
}

// H and H': the two factors of Gamma(x).
template <Semifield K>
VkVector<K> H_map(const GammaData& g, const VkVector<K>& x) {
  return factor_rank_one(gamma_K(g, x)).first;
}

template <Semifield K>
VkVector<K> H_prime(const GammaData& g, const VkVector<K>& x) {
  return factor_rank_one(gamma_K(g, x)).second;
}

// Classify in the first census, re-parametrize the same (v, w, h) in the second.
template <Semifield K>
VkVector<K> gamma_bijection(const Census& from, const Census& to, const VkVector<K>& x) {
  auto cl = classify(from, x);
  const CellDescriptor& d = from.piece(cl.piece);
  int p = to.find(d.v, d.w);
  if (p < 0) fail(ErrorCode::UnknownSupport, "target census lacks the piece");
  return theta(to.piece(p), cl.h);
}

// The same map through Gamma: lift x to lambda + lambda' by the parametrization
// and take the second factor.
template <Semifield K>
VkVector<K> gamma_via_H(const GammaData& g, const Census& sum, const Census& from, const VkVector<K>& x) {
  auto cl = classify(from, x);
  const CellDescriptor& d = from.piece(cl.piece);
  return H_prime(g, theta(sum.piece(sum.find(d.v, d.w)), cl.h));
}

}  // namespace tropflag
