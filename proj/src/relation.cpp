#include "navq/relation.hpp"

#include <bit>

namespace navq {

Relation::Relation(int n) : n_(n), w_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * ((n + 63) / 64), 0) {}

Relation Relation::identity(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

Relation Relation::full(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.set(i, j);
  return r;
}

Relation Relation::diversity(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r.set(i, j);
  return r;
}

bool Relation::empty() const {
  for (auto x : bits_)
    if (x) return false;
  return true;
}

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (auto x : bits_) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

bool Relation::subset_of(const Relation& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

bool Relation::row_empty(int a) const {
  for (int k = 0; k < w_; ++k)
    if (bits_[a * w_ + k]) return false;
  return true;
}

Relation Relation::compose(const Relation& o) const {
  Relation r(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (get(a, b))
        for (int k = 0; k < w_; ++k) r.bits_[a * w_ + k] |= o.bits_[b * w_ + k];
  return r;
}

Relation Relation::converse() const {
  Relation r(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (get(a, b)) r.set(b, a);
  return r;
}

Relation Relation::closure() const {
  Relation r = *this;
  for (;;) {
    Relation next = r.unite(r.compose(r));
    if (next == r) return r;
    r = std::move(next);
  }
}

Relation Relation::unite(const Relation& o) const {
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

Relation Relation::intersect(const Relation& o) const {
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
  return r;
}

Relation Relation::minus(const Relation& o) const {
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~o.bits_[i];
  return r;
}

Relation Relation::domain_diag() const {
  Relation r(n_);
  for (int a = 0; a < n_; ++a)
    if (!row_empty(a)) r.set(a, a);
  return r;
}

Relation Relation::range_diag() const {
  std::vector<std::uint64_t> any(w_, 0);
  for (int a = 0; a < n_; ++a)
    for (int k = 0; k < w_; ++k) any[k] |= bits_[a * w_ + k];
  Relation r(n_);
  for (int b = 0; b < n_; ++b)
    if ((any[b >> 6] >> (b & 63)) & 1) r.set(b, b);
  return r;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (get(a, b)) out.emplace_back(a, b);
  return out;
}

}  // namespace navq
