#include "tropflag/lambda_indep.hpp"

#include "tropflag/linalg.hpp"

namespace tropflag {

namespace {

// Leibniz action of f_i^{(n)} or e_i^{(n)} on the rational tensor module.
QVec tensor_op(const RepresentationData& a, const RepresentationData& b, bool e, int i, int n, const QVec& u) {
  QVec out(u.size());
  const int db = b.dim();
  for (std::size_t s = 0; s < u.size(); ++s) {
    if (u[s] == 0) continue;
    int b1 = static_cast<int>(s) / db, b2 = static_cast<int>(s) % db;
    for (int k = 0; k <= n; ++k) {
      const OpColumn& c1 = e ? a.e_col(i, k, b1) : a.f_col(i, k, b1);
      const OpColumn& c2 = e ? b.e_col(i, n - k, b2) : b.f_col(i, n - k, b2);
      for (const auto& x : c1)
        for (const auto& y : c2) out[static_cast<std::size_t>(x.target) * db + y.target] += u[s] * x.value * y.value;
    }
  }
  return out;
}

}  // namespace

GammaData GammaData::build(const RepPtr& sum, const RepPtr& left, const RepPtr& right) {
  if (!(sum->cartan() == left->cartan()) || !(sum->cartan() == right->cartan()))
    fail(ErrorCode::DimensionMismatch, "Gamma needs a common Cartan datum");
  if (sum->lambda() != left->lambda() + right->lambda())
    fail(ErrorCode::DimensionMismatch, "highest weight " + format_weight(sum->lambda()) + " is not " +
                                           format_weight(left->lambda()) + " + " + format_weight(right->lambda()));
  GammaData g;
  g.sum_ = sum;
  g.left_ = left;
  g.right_ = right;
  const std::size_t T = static_cast<std::size_t>(left->dim()) * right->dim();
  QVec top(T);
  top[static_cast<std::size_t>(left->xi_plus()) * right->dim() + right->xi_plus()] = 1;

  std::vector<QVec> image(sum->dim());
  for (int b = 0; b < sum->dim(); ++b) {
    QVec acc(T);
    for (const auto& term : sum->expansion(b)) {
      QVec v = top;
      for (auto it = term.word.rbegin(); it != term.word.rend(); ++it) v = tensor_op(*left, *right, false, *it, 1, v);
      axpy(acc, term.coeff, v);
    }
    image[b] = std::move(acc);
  }

  // Gamma o x^{(n)} = Delta(x^{(n)}) o Gamma for x = e_i, f_i
  for (int i = 0; i < sum->rank(); ++i)
    for (int n = 1; n <= sum->nmax(i); ++n)
      for (int b = 0; b < sum->dim(); ++b)
        for (bool e : {false, true}) {
          QVec lhs(T);
          QVec src = e ? sum->apply_e(i, n, sum->unit(b)) : sum->apply_f(i, n, sum->unit(b));
          for (int c = 0; c < sum->dim(); ++c)
            if (src[c] != 0) axpy(lhs, src[c], image[c]);
          if (lhs != tensor_op(*left, *right, e, i, n, image[b]))
            fail(ErrorCode::IntertwinerFailure, std::string(e ? "e" : "f") + std::to_string(i + 1) + "^(" + std::to_string(n) +
                                                    ") does not commute with Gamma on basis element " + std::to_string(b));
        }

  g.rows_.resize(sum->dim());
  for (int b = 0; b < sum->dim(); ++b) {
    for (std::size_t s = 0; s < T; ++s) {
      const mpq_class& x = image[b][s];
      if (x == 0) continue;
      if (x < 0 || x.get_den() != 1)
        fail(ErrorCode::PositivityViolation, "Gamma entry " + x.get_str() + " at basis element " + std::to_string(b));
      g.rows_[b].emplace_back(static_cast<int>(s), x.get_num());
    }
    if (g.rows_[b].empty()) fail(ErrorCode::IntertwinerFailure, "Gamma kills basis element " + std::to_string(b));
  }
  return g;
}

nlohmann::json GammaData::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  const int db = right_->dim();
  for (int b = 0; b < sum_->dim(); ++b)
    for (const auto& [s, e] : rows_[b]) rows.push_back({b, s / db, s % db, e.get_str()});
  return {{"format", "gamma-v1"},
          {"cartan", sum_->cartan().to_json()},
          {"lambda", left_->lambda()},
          {"lambdap", right_->lambda()},
          {"entries", rows}};
}

}  // namespace tropflag
