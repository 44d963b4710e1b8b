#include "turan/vertex_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace turan {

namespace {

void require_same_universe(const VertexSet& a, const VertexSet& b) {
  if (a.universe() != b.universe()) throw std::invalid_argument("VertexSet universes differ");
}

}  // namespace

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  if (const std::size_t tail = universe % 64; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

std::size_t VertexSet::size() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Vertex VertexSet::next(Vertex from) const noexcept {
  if (from >= universe_) return static_cast<Vertex>(universe_);
  std::size_t w = from >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    if (++w == words_.size()) return static_cast<Vertex>(universe_);
    bits = words_[w];
  }
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::size_t VertexSet::intersection_size(const VertexSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  return total;
}

}  // namespace turan
