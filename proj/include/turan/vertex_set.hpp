#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace turan {

using Vertex = std::uint32_t;

/// Subset of [0, n) stored as a fixed-width bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet full(std::size_t universe);
  template <typename Range>
  static VertexSet from(std::size_t universe, const Range& members) {
    VertexSet s(universe);
    for (auto v : members) s.insert(static_cast<Vertex>(v));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u) != 0;
  }
  void insert(Vertex v) { words_.at(v >> 6) |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_.at(v >> 6) &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t size() const noexcept;
  bool empty() const noexcept;

  /// Smallest member >= from, or universe() when there is none.
  Vertex next(Vertex from) const noexcept;
  Vertex first() const noexcept { return next(0); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  /// Members in ascending order.
  std::vector<Vertex> members() const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  /// Set difference.
  VertexSet& operator-=(const VertexSet& other);

  bool intersects(const VertexSet& other) const noexcept;
  std::size_t intersection_size(const VertexSet& other) const noexcept;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
inline VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
inline VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

}  // namespace turan
