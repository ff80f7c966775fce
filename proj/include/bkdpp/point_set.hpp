#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace bkdpp {

/// Largest ground set a PointSet can address.
inline constexpr int kMaxGroundSize = 64;

/// Subset of the ground set {1..N}. Points are 1-based at the interface and
/// stored as bit (point - 1).
class PointSet {
 public:
  constexpr PointSet() = default;

  static constexpr PointSet from_bits(std::uint64_t bits) {
    PointSet s;
    s.bits_ = bits;
    return s;
  }
  /// Throws PointOutOfRange for indices outside 1..kMaxGroundSize.
  static PointSet of(const std::vector<int>& points);
  /// The whole ground set {1..n}.
  static constexpr PointSet full(int n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  /// 1-based membership test.
  constexpr bool contains(int point) const noexcept {
    return point >= 1 && point <= kMaxGroundSize && ((bits_ >> (point - 1)) & 1U) != 0;
  }
  constexpr bool subset_of(PointSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint(PointSet other) const noexcept { return (bits_ & other.bits_) == 0; }
  /// Largest point present, 0 for the empty set.
  constexpr int max_point() const noexcept { return 64 - std::countl_zero(bits_); }

  constexpr PointSet operator|(PointSet o) const noexcept { return from_bits(bits_ | o.bits_); }
  constexpr PointSet operator&(PointSet o) const noexcept { return from_bits(bits_ & o.bits_); }
  constexpr PointSet minus(PointSet o) const noexcept { return from_bits(bits_ & ~o.bits_); }
  constexpr PointSet with(int point) const noexcept { return from_bits(bits_ | (std::uint64_t{1} << (point - 1))); }
  constexpr PointSet without(int point) const noexcept {
    return from_bits(bits_ & ~(std::uint64_t{1} << (point - 1)));
  }
  /// Complement within {1..n}.
  constexpr PointSet complement(int n) const noexcept { return full(n).minus(*this); }

  constexpr auto operator<=>(const PointSet&) const = default;

  /// Sorted 1-based indices.
  std::vector<int> points() const;
  /// Sorted 0-based indices.
  std::vector<int> indices() const;
  /// "{1,3,4}"
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

/// Calls f(PointSet) for every k-subset of {1..n} in increasing bitmask order.
template <typename F>
void for_each_subset_of_size(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(PointSet{});
    return;
  }
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = n >= 64 ? 0 : (std::uint64_t{1} << n);
  while (limit == 0 || s < limit) {
    f(PointSet::from_bits(s));
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    if (r == 0) break;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

/// Calls f(PointSet) for every subset of {1..n} in increasing bitmask order.
template <typename F>
void for_each_subset(int n, F&& f) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) f(PointSet::from_bits(s));
}

}  // namespace bkdpp
