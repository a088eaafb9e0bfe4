#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace navq {

// Binary relation over nodes 0..n-1 stored as bit rows.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n);

  static Relation identity(int n);
  static Relation full(int n);
  static Relation diversity(int n);

  int n() const { return n_; }
  bool get(int a, int b) const { return (bits_[a * w_ + (b >> 6)] >> (b & 63)) & 1; }
  void set(int a, int b) { bits_[a * w_ + (b >> 6)] |= std::uint64_t{1} << (b & 63); }

  bool empty() const;
  std::size_t count() const;
  bool operator==(const Relation& o) const { return n_ == o.n_ && bits_ == o.bits_; }
  bool operator!=(const Relation& o) const { return !(*this == o); }
  bool subset_of(const Relation& o) const;

  Relation compose(const Relation& o) const;
  Relation converse() const;
  Relation closure() const;  // transitive, iterated squaring to fixpoint
  Relation unite(const Relation& o) const;
  Relation intersect(const Relation& o) const;
  Relation minus(const Relation& o) const;
  Relation domain_diag() const;  // {(m,m) | (m,_) in R}
  Relation range_diag() const;   // {(n,n) | (_,n) in R}

  bool row_empty(int a) const;
  std::vector<std::pair<int, int>> pairs() const;

 private:
  int n_ = 0;
  int w_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace navq
