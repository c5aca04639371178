#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dsc/errors.hpp"
#include "dsc/semiring.hpp"

namespace dsc {

// Finitely supported map basis-index -> coefficient over a fixed basis size.
// Invariant: no stored coefficient equals zero.
template <Semiring S>
class SparseVec {
public:
  using Value = typename S::Value;
  using Map = std::map<std::size_t, Value>;

  explicit SparseVec(std::size_t basis_size = 0) : basis_size_(basis_size) {}

  static SparseVec basis_vector(std::size_t basis_size, std::size_t index) {
    SparseVec v(basis_size);
    v.set(index, S::one());
    return v;
  }

  template <class Range>
  static SparseVec indicator(std::size_t basis_size, const Range& support) {
    SparseVec v(basis_size);
    for (std::size_t i : support) v.set(i, S::one());
    return v;
  }

  std::size_t basis_size() const { return basis_size_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  const Map& coeffs() const { return coeffs_; }

  Value at(std::size_t i) const {
    check_index(i);
    auto it = coeffs_.find(i);
    return it == coeffs_.end() ? S::zero() : it->second;
  }

  void set(std::size_t i, Value v) {
    check_index(i);
    if (v == S::zero())
      coeffs_.erase(i);
    else
      coeffs_[i] = std::move(v);
  }

  void add_to(std::size_t i, const Value& v) { set(i, S::add(at(i), v)); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    out.reserve(coeffs_.size());
    for (const auto& [i, v] : coeffs_) out.push_back(i);
    return out;
  }

  bool operator==(const SparseVec&) const = default;

private:
  void check_index(std::size_t i) const {
    if (i >= basis_size_)
      throw BasisMismatch("index " + std::to_string(i) + " outside basis of size " +
                          std::to_string(basis_size_));
  }

  std::size_t basis_size_;
  Map coeffs_;
};

// Finitely supported map over ordered basis pairs.
template <Semiring S>
class SparseBiVec {
public:
  using Value = typename S::Value;
  using Key = std::pair<std::size_t, std::size_t>;
  using Map = std::map<Key, Value>;

  explicit SparseBiVec(std::size_t basis_size = 0) : basis_size_(basis_size) {}

  template <class Range>
  static SparseBiVec indicator(std::size_t basis_size, const Range& support) {
    SparseBiVec v(basis_size);
    for (const auto& [x, y] : support) v.set(x, y, S::one());
    return v;
  }

  std::size_t basis_size() const { return basis_size_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  const Map& coeffs() const { return coeffs_; }

  Value at(std::size_t x, std::size_t y) const {
    check_index(x);
    check_index(y);
    auto it = coeffs_.find({x, y});
    return it == coeffs_.end() ? S::zero() : it->second;
  }

  void set(std::size_t x, std::size_t y, Value v) {
    check_index(x);
    check_index(y);
    if (v == S::zero())
      coeffs_.erase({x, y});
    else
      coeffs_[{x, y}] = std::move(v);
  }

  bool operator==(const SparseBiVec&) const = default;

private:
  void check_index(std::size_t i) const {
    if (i >= basis_size_)
      throw BasisMismatch("index " + std::to_string(i) + " outside basis of size " +
                          std::to_string(basis_size_));
  }

  std::size_t basis_size_;
  Map coeffs_;
};

namespace detail {

template <class A, class B>
void require_same_basis(const A& a, const B& b) {
  if (a.basis_size() != b.basis_size())
    throw BasisMismatch("basis sizes differ: " + std::to_string(a.basis_size()) + " vs " +
                        std::to_string(b.basis_size()));
}

}  // namespace detail

template <Semiring S>
SparseVec<S> vec_add(const SparseVec<S>& a, const SparseVec<S>& b) {
  detail::require_same_basis(a, b);
  SparseVec<S> out = a;
  for (const auto& [i, v] : b.coeffs()) out.add_to(i, v);
  return out;
}

template <Semiring S>
SparseVec<S> scale(const typename S::Value& c, const SparseVec<S>& a) {
  SparseVec<S> out(a.basis_size());
  for (const auto& [i, v] : a.coeffs()) out.set(i, S::mul(c, v));
  return out;
}

// Coordinatewise product: the multiplication induced by the basis.
template <Semiring S>
SparseVec<S> frobenius_mult(const SparseVec<S>& a, const SparseVec<S>& b) {
  detail::require_same_basis(a, b);
  const SparseVec<S>& small = a.support_size() <= b.support_size() ? a : b;
  const SparseVec<S>& large = a.support_size() <= b.support_size() ? b : a;
  SparseVec<S> out(a.basis_size());
  for (const auto& [i, v] : small.coeffs()) {
    auto it = large.coeffs().find(i);
    if (it != large.coeffs().end()) out.set(i, S::mul(v, it->second));
  }
  return out;
}

// Sum of all coefficients.
template <Semiring S>
typename S::Value counit(const SparseVec<S>& a) {
  typename S::Value acc = S::zero();
  for (const auto& [i, v] : a.coeffs()) acc = S::add(acc, v);
  return acc;
}

// sum_x star(a_x) * b_x.
template <Semiring S>
typename S::Value inner_product(const SparseVec<S>& a, const SparseVec<S>& b) {
  detail::require_same_basis(a, b);
  typename S::Value acc = S::zero();
  for (const auto& [i, v] : a.coeffs()) {
    auto it = b.coeffs().find(i);
    if (it != b.coeffs().end()) acc = S::add(acc, S::mul(S::star(v), it->second));
  }
  return acc;
}

template <Semiring S>
SparseBiVec<S> tensor(const SparseVec<S>& a, const SparseVec<S>& b) {
  detail::require_same_basis(a, b);
  SparseBiVec<S> out(a.basis_size());
  for (const auto& [x, va] : a.coeffs())
    for (const auto& [y, vb] : b.coeffs()) out.set(x, y, S::mul(va, vb));
  return out;
}

// Coordinatewise product on pairs.
template <Semiring S>
SparseBiVec<S> bi_mult(const SparseBiVec<S>& a, const SparseBiVec<S>& b) {
  detail::require_same_basis(a, b);
  const SparseBiVec<S>& small = a.support_size() <= b.support_size() ? a : b;
  const SparseBiVec<S>& large = a.support_size() <= b.support_size() ? b : a;
  SparseBiVec<S> out(a.basis_size());
  for (const auto& [k, v] : small.coeffs()) {
    auto it = large.coeffs().find(k);
    if (it != large.coeffs().end()) out.set(k.first, k.second, S::mul(v, it->second));
  }
  return out;
}

// Collapses a pair vector to a vector: each entry (x, y) pays its coefficient
// to both x and y, so result_z = sum_y a_(z,y) + sum_x a_(x,z).
template <Semiring S>
SparseVec<S> plus_map(const SparseBiVec<S>& a) {
  SparseVec<S> out(a.basis_size());
  for (const auto& [k, v] : a.coeffs()) {
    out.add_to(k.first, v);
    out.add_to(k.second, v);
  }
  return out;
}

// P_psi: multiply coordinatewise by psi.
template <Semiring S>
SparseVec<S> apply_pointwise(const SparseVec<S>& psi, const SparseVec<S>& a) {
  return frobenius_mult(psi, a);
}

// P_psi is an orthogonal projector exactly when every coefficient is fixed by
// star and multiplicatively idempotent.
template <Semiring S>
bool is_projector(const SparseVec<S>& psi) {
  for (const auto& [i, v] : psi.coeffs())
    if (!is_self_conjugate_idempotent<S>(v)) return false;
  return true;
}

}  // namespace dsc
