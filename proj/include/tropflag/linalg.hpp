#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace tropflag {

using QVec = std::vector<mpq_class>;

bool is_zero(const QVec& v);
void axpy(QVec& y, const mpq_class& a, const QVec& x);  // y += a x

// Solution of the square system a x = b, or nullopt when a is singular.
std::optional<QVec> solve_square(std::vector<QVec> a, QVec b);

// Incrementally built span of exact rational vectors. Inserted independent
// vectors are numbered in insertion order; coordinates() expresses a vector
// in terms of them.
class LinearSpan {
 public:
  explicit LinearSpan(std::size_t ambient) : ambient_(ambient) {}

  // Adds v if it is independent of the current span; returns whether it was.
  bool insert(const QVec& v);
  bool contains(const QVec& v) const;
  std::optional<QVec> coordinates(const QVec& v) const;

  std::size_t size() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }

 private:
  struct Row {
    QVec vec;
    QVec combo;  // vec = sum combo[k] * (k-th inserted vector)
    std::size_t pivot;
  };
  // Returns the residual and the combination subtracted so far.
  std::pair<QVec, QVec> reduce(const QVec& v) const;

  std::size_t ambient_;
  std::vector<Row> rows_;
};

}  // namespace tropflag
