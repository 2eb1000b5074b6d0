#include "tropflag/linalg.hpp"

namespace tropflag {

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

void axpy(QVec& y, const mpq_class& a, const QVec& x) {
  if (a == 0) return;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) y[k] += a * x[k];
}

std::optional<QVec> solve_square(std::vector<QVec> a, QVec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      mpq_class c = a[r][col] / a[col][col];
      axpy(a[r], -c, a[col]);
      b[r] -= c * b[col];
    }
  }
  QVec x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = b[k] / a[k][k];
  return x;
}

std::pair<QVec, QVec> LinearSpan::reduce(const QVec& v) const {
  QVec r = v;
  r.resize(ambient_, mpq_class(0));
  QVec combo(rows_.size(), mpq_class(0));
  for (const auto& row : rows_) {
    if (r[row.pivot] == 0) continue;
    mpq_class c = r[row.pivot] / row.vec[row.pivot];
    axpy(r, -c, row.vec);
    for (std::size_t k = 0; k < row.combo.size(); ++k)
      if (row.combo[k] != 0) combo[k] += c * row.combo[k];
  }
  return {std::move(r), std::move(combo)};
}

bool LinearSpan::insert(const QVec& v) {
  auto [r, combo] = reduce(v);
  std::size_t p = 0;
  while (p < r.size() && r[p] == 0) ++p;
  if (p == r.size()) return false;
  // r = v - sum combo[k] * u_k, so r in terms of inserted vectors is
  // e_new - combo.
  QVec rc(rows_.size() + 1, mpq_class(0));
  for (std::size_t k = 0; k < combo.size(); ++k) rc[k] = -combo[k];
  rc.back() = 1;
  for (auto& row : rows_) row.combo.resize(rows_.size() + 1, mpq_class(0));
  rows_.push_back(Row{std::move(r), std::move(rc), p});
  return true;
}

bool LinearSpan::contains(const QVec& v) const { return is_zero(reduce(v).first); }

std::optional<QVec> LinearSpan::coordinates(const QVec& v) const {
  auto [r, combo] = reduce(v);
  if (!is_zero(r)) return std::nullopt;
  return combo;
}

}  // namespace tropflag
