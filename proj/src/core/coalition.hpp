#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace shapval {

// Immutable sorted set of player indices.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(std::vector<int32_t> members);  // sorts; rejects negatives and duplicates
  Coalition(std::initializer_list<int32_t> members);

  static Coalition full(int32_t players);
  static Coalition from_mask(uint64_t mask);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int32_t player) const;

  Coalition with(int32_t player) const;     // pre: player absent
  Coalition without(int32_t player) const;  // pre: player present

  const std::vector<int32_t>& members() const { return members_; }
  uint64_t mask() const;  // pre: all members < 64

  bool operator==(const Coalition&) const = default;

 private:
  std::vector<int32_t> members_;
};

}  // namespace shapval
