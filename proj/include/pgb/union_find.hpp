#pragma once

#include <cstddef>
#include <vector>

namespace pgb {

/// Disjoint-set forest with union by rank. Path compression happens only
/// inside unite(), so find() and connected() are const and safe to call from
/// multiple readers while writers are excluded externally; lookups stay
/// O(log n) by the rank bound.
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }

  int add() {
    const int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    rank_.push_back(0);
    ++component_count_;
    return id;
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  /// Merges the two sets; returns false if already joined. Compresses the
  /// paths of both arguments.
  bool unite(int a, int b) {
    const int ra = find_and_compress(a);
    const int rb = find_and_compress(b);
    if (ra == rb) return false;
    if (rank_[ra] < rank_[rb]) {
      parent_[ra] = rb;
    } else if (rank_[ra] > rank_[rb]) {
      parent_[rb] = ra;
    } else {
      parent_[rb] = ra;
      ++rank_[ra];
    }
    --component_count_;
    return true;
  }

  bool connected(int a, int b) const { return find(a) == find(b); }

  std::size_t size() const { return parent_.size(); }
  std::size_t component_count() const { return component_count_; }

 private:
  int find_and_compress(int x) {
    const int root = find(x);
    while (parent_[x] != root) {
      const int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  std::vector<int> parent_;
  std::vector<int> rank_;
  std::size_t component_count_ = 0;
};

}  // namespace pgb
