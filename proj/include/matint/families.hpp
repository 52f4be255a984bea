// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Concrete matroid families: uniform, partition, graphic and linear over a
// prime field.

#ifndef MATINT_FAMILIES_HPP_
#define MATINT_FAMILIES_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matint/errors.hpp"
#include "matint/matroid.hpp"

namespace matint {

namespace detail {

// Union-find over [0, size) that resets in O(1) through generation stamps,
// so one thread-local instance can serve every query on a thread.
class StampedUnionFind {
 public:
  void reset(std::size_t size) {
    if (parent_.size() < size) {
      parent_.resize(size);
      weight_.resize(size);
      stamp_.resize(size, 0);
    }
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
  }

  std::int32_t find(std::int32_t v) {
    touch(v);
    std::int32_t root = v;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[v] != root) {
      std::int32_t next = parent_[v];
      parent_[v] = root;
      v = next;
    }
    return root;
  }

  // Returns false when a and b were already connected.
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (weight_[a] < weight_[b]) std::swap(a, b);
    parent_[b] = a;
    weight_[a] += weight_[b];
    return true;
  }

 private:
  void touch(std::int32_t v) {
    if (stamp_[v] != generation_) {
      stamp_[v] = generation_;
      parent_[v] = v;
      weight_[v] = 1;
    }
  }

  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> weight_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

inline StampedUnionFind& scratch_union_find() {
  thread_local StampedUnionFind uf;
  return uf;
}

}  // namespace detail

// U(n, k): a set is independent iff it has at most k elements.
class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(std::int64_t n, std::int64_t k) : Matroid(n), k_(k) {
    if (n < 0 || k < 0) throw InputError("uniform matroid: n and k must be >= 0");
  }
  MatroidKind kind() const override { return MatroidKind::kUniform; }
  std::int64_t k() const { return k_; }

  std::int64_t rank(std::span<const ElementId> s) const override {
    return std::min<std::int64_t>(static_cast<std::int64_t>(s.size()), k_);
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(k_);
  }

  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(k_,
                                      static_cast<std::int64_t>(base.size()));
  }

 private:
  class Acc final : public Accumulator {
   public:
    explicit Acc(std::int64_t k) : k_(k) {}
    bool try_add(ElementId) override {
      if (size_ >= k_) return false;
      ++size_;
      return true;
    }
    std::int64_t size() const override { return size_; }

   private:
    std::int64_t k_;
    std::int64_t size_ = 0;
  };

  class Prepared final : public PreparedBase {
   public:
    Prepared(std::int64_t k, std::int64_t base_size)
        : k_(k), base_size_(base_size) {}
    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      return std::min<std::int64_t>(
          base_size_ - static_cast<std::int64_t>(removed.size()) +
              static_cast<std::int64_t>(added.size()),
          k_);
    }
    std::int64_t base_size() const override { return base_size_; }

   private:
    std::int64_t k_;
    std::int64_t base_size_;
  };

  std::int64_t k_;
};

// Partition matroid: the ground set is split into blocks and a set is
// independent iff it holds at most capacities[b] elements of each block b.
// The blocks must partition {0, ..., n-1}.
class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<std::vector<ElementId>> blocks,
                   std::vector<std::int64_t> capacities)
      : Matroid(count_elements(blocks)),
        blocks_(std::move(blocks)),
        capacities_(std::move(capacities)) {
    if (blocks_.size() != capacities_.size()) {
      throw InputError("partition matroid: blocks/capacities size mismatch");
    }
    block_of_.assign(static_cast<std::size_t>(ground_size()), -1);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (capacities_[b] < 0) {
        throw InputError("partition matroid: negative capacity");
      }
      for (ElementId e : blocks_[b]) {
        if (e < 0 || e >= ground_size()) {
          throw InputError("partition matroid: element " + std::to_string(e) +
                           " out of range");
        }
        if (block_of_[e] != -1) {
          throw InputError("partition matroid: element " + std::to_string(e) +
                           " appears in two blocks");
        }
        block_of_[e] = static_cast<std::int32_t>(b);
      }
    }
  }

  MatroidKind kind() const override { return MatroidKind::kPartition; }
  const std::vector<std::vector<ElementId>>& blocks() const { return blocks_; }
  const std::vector<std::int64_t>& capacities() const { return capacities_; }
  std::int32_t block_of(ElementId e) const { return block_of_[e]; }

  std::int64_t rank(std::span<const ElementId> s) const override {
    auto& delta = scratch();
    std::int64_t r = 0;
    for (ElementId e : s) {
      const std::int32_t b = block_of_[e];
      if (delta.count[b]++ < capacities_[b]) ++r;
      delta.touch(b);
    }
    delta.clear();
    return r;
  }

  bool is_independent(std::span<const ElementId> s) const override {
    return rank(s) == static_cast<std::int64_t>(s.size());
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(*this);
  }

  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(*this, base);
  }

 private:
  struct Scratch {
    std::vector<std::int64_t> count;
    std::vector<char> marked;
    std::vector<std::int32_t> touched;
    void touch(std::int32_t b) {
      if (!marked[b]) {
        marked[b] = 1;
        touched.push_back(b);
      }
    }
    void clear() {
      for (std::int32_t b : touched) {
        count[b] = 0;
        marked[b] = 0;
      }
      touched.clear();
    }
  };

  Scratch& scratch() const {
    thread_local Scratch s;
    if (s.count.size() < blocks_.size()) {
      s.count.resize(blocks_.size(), 0);
      s.marked.resize(blocks_.size(), 0);
    }
    return s;
  }

  class Acc final : public Accumulator {
   public:
    explicit Acc(const PartitionMatroid& m)
        : m_(m), count_(m.blocks_.size(), 0) {}
    bool try_add(ElementId e) override {
      const std::int32_t b = m_.block_of_[e];
      if (count_[b] >= m_.capacities_[b]) return false;
      ++count_[b];
      ++size_;
      return true;
    }
    std::int64_t size() const override { return size_; }

   private:
    const PartitionMatroid& m_;
    std::vector<std::int64_t> count_;
    std::int64_t size_ = 0;
  };

  class Prepared final : public PreparedBase {
   public:
    Prepared(const PartitionMatroid& m, std::span<const ElementId> base)
        : m_(m),
          count_(m.blocks_.size(), 0),
          base_size_(static_cast<std::int64_t>(base.size())) {
      for (ElementId e : base) ++count_[m.block_of_[e]];
      for (std::size_t b = 0; b < count_.size(); ++b) {
        base_rank_ += std::min(count_[b], m.capacities_[b]);
      }
    }

    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      auto& delta = m_.scratch();
      auto bump = [&](ElementId e, int by) {
        const std::int32_t b = m_.block_of_[e];
        delta.touch(b);
        delta.count[b] += by;
      };
      for (ElementId e : removed) bump(e, -1);
      for (ElementId e : added) bump(e, +1);
      std::int64_t r = base_rank_;
      for (std::int32_t b : delta.touched) {
        const std::int64_t cap = m_.capacities_[b];
        r += std::min(count_[b] + delta.count[b], cap) -
             std::min(count_[b], cap);
      }
      delta.clear();
      return r;
    }
    std::int64_t base_size() const override { return base_size_; }

   private:
    const PartitionMatroid& m_;
    std::vector<std::int64_t> count_;
    std::int64_t base_size_;
    std::int64_t base_rank_ = 0;
  };

  static std::int64_t count_elements(
      const std::vector<std::vector<ElementId>>& blocks) {
    std::int64_t n = 0;
    for (const auto& b : blocks) n += static_cast<std::int64_t>(b.size());
    return n;
  }

  std::vector<std::vector<ElementId>> blocks_;
  std::vector<std::int64_t> capacities_;
  std::vector<std::int32_t> block_of_;
};

// Graphic (cycle) matroid: element i is edge i of a multigraph; a set of
// edges is independent iff it is a forest. Self-loops are dependent.
class GraphicMatroid final : public Matroid {
 public:
  using Edge = std::pair<std::int32_t, std::int32_t>;

  GraphicMatroid(std::int32_t num_vertices, std::vector<Edge> edges)
      : Matroid(static_cast<std::int64_t>(edges.size())),
        num_vertices_(num_vertices),
        edges_(std::move(edges)) {
    if (num_vertices_ < 0) throw InputError("graphic matroid: negative vertex count");
    for (const auto& [u, v] : edges_) {
      if (u < 0 || v < 0 || u >= num_vertices_ || v >= num_vertices_) {
        throw InputError("graphic matroid: edge endpoint out of range");
      }
    }
  }

  MatroidKind kind() const override { return MatroidKind::kGraphic; }
  std::int32_t num_vertices() const { return num_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::int64_t rank(std::span<const ElementId> s) const override {
    auto& uf = detail::scratch_union_find();
    uf.reset(static_cast<std::size_t>(num_vertices_));
    std::int64_t r = 0;
    for (ElementId e : s) {
      if (uf.unite(edges_[e].first, edges_[e].second)) ++r;
    }
    return r;
  }

  bool is_independent(std::span<const ElementId> s) const override {
    auto& uf = detail::scratch_union_find();
    uf.reset(static_cast<std::size_t>(num_vertices_));
    for (ElementId e : s) {
      if (!uf.unite(edges_[e].first, edges_[e].second)) return false;
    }
    return true;
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(*this);
  }

  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(*this, base);
  }

 private:
  class Acc final : public Accumulator {
   public:
    explicit Acc(const GraphicMatroid& m) : m_(m) {
      uf_.reset(static_cast<std::size_t>(m.num_vertices_));
    }
    bool try_add(ElementId e) override {
      if (!uf_.unite(m_.edges_[e].first, m_.edges_[e].second)) return false;
      ++size_;
      return true;
    }
    std::int64_t size() const override { return size_; }

   private:
    const GraphicMatroid& m_;
    detail::StampedUnionFind uf_;
    std::int64_t size_ = 0;
  };

  // Contracts the base into vertex classes. Adding edges is then a
  // union-find pass over class labels. When the base is a forest it is also
  // rooted with Euler-tour times, so removing one base edge just splits off
  // the subtree below it.
  class Prepared final : public PreparedBase {
   public:
    Prepared(const GraphicMatroid& m, std::span<const ElementId> base)
        : m_(m),
          base_(base.begin(), base.end()),
          label_(static_cast<std::size_t>(m.num_vertices_)) {
      const auto nv = static_cast<std::size_t>(m.num_vertices_);
      detail::StampedUnionFind uf;
      uf.reset(nv);
      for (ElementId e : base) {
        if (uf.unite(m.edges_[e].first, m.edges_[e].second)) ++base_rank_;
      }
      for (std::size_t v = 0; v < nv; ++v) {
        label_[v] = uf.find(static_cast<std::int32_t>(v));
      }
      forest_ = base_rank_ == static_cast<std::int64_t>(base.size());
      if (forest_) build_euler_tour();
    }

    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      if (removed.empty()) {
        return base_rank_ + contracted_rank(added, -1);
      }
      if (removed.size() == 1 && forest_) {
        const std::int32_t child = child_of_edge_[removed[0]];
        if (child >= 0) {
          return base_rank_ - 1 + contracted_rank(added, child);
        }
      }
      return detail::GenericPrepared(m_, base_).rank(removed, added);
    }
    std::int64_t base_size() const override {
      return static_cast<std::int64_t>(base_.size());
    }

   private:
    // Rank of `added` in the graph with the base contracted. If split >= 0,
    // the subtree rooted at vertex `split` forms its own class.
    std::int64_t contracted_rank(std::span<const ElementId> added,
                                 std::int32_t split) const {
      const std::int32_t nv = m_.num_vertices_;
      auto& uf = detail::scratch_union_find();
      uf.reset(static_cast<std::size_t>(nv) + 1);
      auto cls = [&](std::int32_t v) {
        if (split >= 0 && tin_[split] <= tin_[v] && tout_[v] <= tout_[split]) {
          return nv;
        }
        return label_[v];
      };
      std::int64_t r = 0;
      for (ElementId e : added) {
        if (uf.unite(cls(m_.edges_[e].first), cls(m_.edges_[e].second))) ++r;
      }
      return r;
    }

    void build_euler_tour() {
      const auto nv = static_cast<std::size_t>(m_.num_vertices_);
      std::vector<std::int32_t> start(nv + 1, 0);
      for (ElementId e : base_) {
        ++start[m_.edges_[e].first + 1];
        ++start[m_.edges_[e].second + 1];
      }
      for (std::size_t v = 0; v < nv; ++v) start[v + 1] += start[v];
      std::vector<std::pair<std::int32_t, ElementId>> adj(
          static_cast<std::size_t>(start[nv]));
      std::vector<std::int32_t> fill(start.begin(), start.end() - 1);
      for (ElementId e : base_) {
        const auto [u, v] = m_.edges_[e];
        adj[fill[u]++] = {v, e};
        adj[fill[v]++] = {u, e};
      }
      tin_.assign(nv, -1);
      tout_.assign(nv, -1);
      child_of_edge_.assign(static_cast<std::size_t>(m_.ground_size()), -1);
      std::int32_t clock = 0;
      std::vector<std::pair<std::int32_t, std::int32_t>> stack;  // (v, cursor)
      for (std::size_t root = 0; root < nv; ++root) {
        if (tin_[root] >= 0) continue;
        tin_[root] = clock++;
        stack.push_back({static_cast<std::int32_t>(root), start[root]});
        while (!stack.empty()) {
          auto& [v, cursor] = stack.back();
          if (cursor == start[v + 1]) {
            tout_[v] = clock++;
            stack.pop_back();
            continue;
          }
          const auto [w, e] = adj[cursor++];
          if (tin_[w] >= 0) continue;
          tin_[w] = clock++;
          child_of_edge_[e] = w;
          stack.push_back({w, start[w]});
        }
      }
    }

    const GraphicMatroid& m_;
    std::vector<ElementId> base_;
    std::vector<std::int32_t> label_;
    std::int64_t base_rank_ = 0;
    bool forest_ = false;
    std::vector<std::int32_t> tin_, tout_, child_of_edge_;
  };

  std::int32_t num_vertices_;
  std::vector<Edge> edges_;
};

namespace detail {

// Row echelon form over GF(p), built by fraction-free elimination: a vector
// is reduced against a row with pivot c as v <- v * row[c] - row * v[c].
// Rows are kept in insertion order; each row is zero at the pivots of all
// earlier rows, so a single pass in that order fully reduces a vector.
//
// Rows may carry `width - dim` trailing bookkeeping columns that take part
// in the arithmetic but never hold a pivot.
class ModEchelon {
 public:
  ModEchelon(std::uint64_t p, std::size_t dim)
      : ModEchelon(p, dim, dim) {}
  ModEchelon(std::uint64_t p, std::size_t dim, std::size_t width)
      : p_(p), dim_(dim), width_(width) {}

  void clear() {
    rows_.clear();
    pivots_.clear();
  }
  std::int64_t rank() const { return static_cast<std::int64_t>(pivots_.size()); }

  void reduce(std::vector<std::uint64_t>& v) const {
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const std::size_t c = pivots_[k];
      const std::uint64_t b = v[c];
      if (b == 0) continue;
      const std::uint64_t* row = &rows_[k * width_];
      const std::uint64_t a = row[c];
      for (std::size_t i = 0; i < width_; ++i) {
        v[i] = (v[i] * a % p_ + p_ - row[i] * b % p_) % p_;
      }
    }
  }

  // Reduces v in place; keeps it as a new row if it is nonzero.
  bool insert(std::vector<std::uint64_t>& v) {
    reduce(v);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] != 0) {
        rows_.insert(rows_.end(), v.begin(), v.end());
        pivots_.push_back(i);
        return true;
      }
    }
    return false;
  }

 private:
  std::uint64_t p_;
  std::size_t dim_;
  std::size_t width_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::size_t> pivots_;
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace detail

// Linear matroid over GF(p): element i is column i of a dim x n matrix and a
// set is independent iff its columns are linearly independent.
class LinearMatroid final : public Matroid {
 public:
  LinearMatroid(std::int64_t p, const std::vector<std::vector<std::int64_t>>& columns)
      : Matroid(static_cast<std::int64_t>(columns.size())), p_(p) {
    if (p >= (std::int64_t{1} << 31) || !detail::is_prime(p)) {
      throw InputError("linear matroid: p must be a prime below 2^31");
    }
    dim_ = columns.empty() ? 0 : columns.front().size();
    entries_.reserve(columns.size() * dim_);
    for (const auto& col : columns) {
      if (col.size() != dim_) {
        throw InputError("linear matroid: columns have different dimensions");
      }
      for (std::int64_t x : col) {
        entries_.push_back(static_cast<std::uint64_t>(((x % p) + p) % p));
      }
    }
  }

  MatroidKind kind() const override { return MatroidKind::kLinear; }
  std::int64_t prime() const { return p_; }
  std::size_t dimension() const { return dim_; }
  std::vector<std::int64_t> column(ElementId e) const {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(e * dim_),
            entries_.begin() + static_cast<std::ptrdiff_t>((e + 1) * dim_)};
  }

  std::int64_t rank(std::span<const ElementId> s) const override {
    detail::ModEchelon ech(static_cast<std::uint64_t>(p_), dim_);
    std::vector<std::uint64_t> v(dim_);
    for (ElementId e : s) {
      load(e, v);
      ech.insert(v);
    }
    return ech.rank();
  }

  bool is_independent(std::span<const ElementId> s) const override {
    if (s.size() > dim_) return false;
    detail::ModEchelon ech(static_cast<std::uint64_t>(p_), dim_);
    std::vector<std::uint64_t> v(dim_);
    for (ElementId e : s) {
      load(e, v);
      if (!ech.insert(v)) return false;
    }
    return true;
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(*this);
  }

  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(*this, base);
  }

 private:
  void load(ElementId e, std::vector<std::uint64_t>& v) const {
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>(e * dim_), dim_,
                v.begin());
  }

  class Acc final : public Accumulator {
   public:
    explicit Acc(const LinearMatroid& m)
        : m_(m), ech_(static_cast<std::uint64_t>(m.p_), m.dim_), v_(m.dim_) {}
    bool try_add(ElementId e) override {
      m_.load(e, v_);
      return ech_.insert(v_);
    }
    std::int64_t size() const override { return ech_.rank(); }

   private:
    const LinearMatroid& m_;
    detail::ModEchelon ech_;
    std::vector<std::uint64_t> v_;
  };

  // Additions are reduced against the base's echelon form. When the base is
  // independent each row also records which base columns it combines, so a
  // single exchange base - x + y is decided by whether y, written in the
  // base, uses x. Other removals re-evaluate the set.
  class Prepared final : public PreparedBase {
   public:
    Prepared(const LinearMatroid& m, std::span<const ElementId> base)
        : m_(m),
          base_(base.begin(), base.end()),
          ech_(static_cast<std::uint64_t>(m.p_), m.dim_,
               m.dim_ + base.size()) {
      std::vector<std::uint64_t> v(m.dim_ + base.size());
      for (std::size_t i = 0; i < base.size(); ++i) {
        std::fill(v.begin(), v.end(), 0);
        std::copy_n(m.entries_.begin() +
                        static_cast<std::ptrdiff_t>(base[i] * m.dim_),
                    m.dim_, v.begin());
        v[m.dim_ + i] = 1;
        ech_.insert(v);
      }
      independent_ = ech_.rank() == static_cast<std::int64_t>(base.size());
    }

    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      const std::size_t width = m_.dim_ + base_.size();
      if (removed.size() == 1 && added.size() == 1 && independent_) {
        const auto pos = static_cast<std::size_t>(
            std::find(base_.begin(), base_.end(), removed[0]) - base_.begin());
        if (pos < base_.size()) {
          std::vector<std::uint64_t> v(width, 0);
          m_.load(added[0], v);
          ech_.reduce(v);
          const bool in_span =
              std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m_.dim_),
                          [](std::uint64_t x) { return x == 0; });
          const auto size = static_cast<std::int64_t>(base_.size());
          return (!in_span || v[m_.dim_ + pos] != 0) ? size : size - 1;
        }
      }
      if (!removed.empty()) {
        return detail::GenericPrepared(m_, base_).rank(removed, added);
      }
      detail::ModEchelon extra(static_cast<std::uint64_t>(m_.p_), m_.dim_,
                               width);
      std::vector<std::uint64_t> v(width);
      for (ElementId e : added) {
        std::fill(v.begin(), v.end(), 0);
        m_.load(e, v);
        ech_.reduce(v);
        extra.insert(v);
      }
      return ech_.rank() + extra.rank();
    }
    std::int64_t base_size() const override {
      return static_cast<std::int64_t>(base_.size());
    }

   private:
    const LinearMatroid& m_;
    std::vector<ElementId> base_;
    detail::ModEchelon ech_;
    bool independent_ = false;
  };

  std::int64_t p_;
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> entries_;
};

inline MatroidHandle make_uniform(std::int64_t n, std::int64_t k) {
  return std::make_shared<UniformMatroid>(n, k);
}

inline MatroidHandle make_partition(std::vector<std::vector<ElementId>> blocks,
                                    std::vector<std::int64_t> capacities) {
  return std::make_shared<PartitionMatroid>(std::move(blocks),
                                            std::move(capacities));
}

inline MatroidHandle make_graphic(std::int32_t num_vertices,
                                  std::vector<GraphicMatroid::Edge> edges) {
  return std::make_shared<GraphicMatroid>(num_vertices, std::move(edges));
}

inline MatroidHandle make_linear(
    std::int64_t p, const std::vector<std::vector<std::int64_t>>& columns) {
  return std::make_shared<LinearMatroid>(p, columns);
}

}  // namespace matint

#endif  // MATINT_FAMILIES_HPP_
