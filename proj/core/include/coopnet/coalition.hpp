// Copyright 2026 The coopnet Authors
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

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace coopnet {

// Players are dense indices in [0, n).
using PlayerId = int;

// The hard cap for representations that materialize one value per coalition
// (2^N table entries). Sparse representations accept up to 64 players.
inline constexpr int kMaxTablePlayers = 24;
inline constexpr int kMaxPlayers = 64;

// A set of players, encoded as a bitmask. Equality is set equality.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}
  Coalition(std::initializer_list<PlayerId> members) {
    for (PlayerId i : members) bits_ |= bit(i);
  }

  static constexpr Coalition empty() { return Coalition(0); }
  static constexpr Coalition full(int n) {
    return Coalition(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(PlayerId i) const { return (bits_ >> i) & 1; }
  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr Coalition with(PlayerId i) const { return Coalition(bits_ | bit(i)); }
  constexpr Coalition without(PlayerId i) const { return Coalition(bits_ & ~bit(i)); }
  constexpr bool subset_of(Coalition other) const {
    return (bits_ & other.bits_) == bits_;
  }
  constexpr bool intersects(Coalition other) const {
    return (bits_ & other.bits_) != 0;
  }

  friend constexpr Coalition operator|(Coalition a, Coalition b) {
    return Coalition(a.bits_ | b.bits_);
  }
  friend constexpr Coalition operator&(Coalition a, Coalition b) {
    return Coalition(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr Coalition operator-(Coalition a, Coalition b) {
    return Coalition(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(Coalition a, Coalition b) = default;
  friend constexpr bool operator<(Coalition a, Coalition b) {
    return a.bits_ < b.bits_;
  }

  std::vector<PlayerId> members() const {
    std::vector<PlayerId> out;
    out.reserve(size());
    for (std::uint64_t m = bits_; m != 0; m &= m - 1)
      out.push_back(std::countr_zero(m));
    return out;
  }

 private:
  static constexpr std::uint64_t bit(PlayerId i) { return std::uint64_t{1} << i; }
  std::uint64_t bits_ = 0;
};

// Visits every subset of `set` (the empty set included), lowest mask first.
template <typename Fn>
void for_each_subset(Coalition set, Fn&& fn) {
  const std::uint64_t bits = set.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(Coalition(sub));
    if (sub == bits) break;
    sub = (sub - bits) & bits;  // next submask in increasing order
  }
}

}  // namespace coopnet
