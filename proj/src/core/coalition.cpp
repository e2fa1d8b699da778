#include "coalition.hpp"

#include <algorithm>

#include "error.hpp"

namespace shapval {

Coalition::Coalition(std::vector<int32_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (size_t i = 0; i < members_.size(); ++i) {
    require(members_[i] >= 0, ErrorCode::InvalidArgument, "coalition member is negative");
    require(i == 0 || members_[i] != members_[i - 1], ErrorCode::InvalidArgument,
            "coalition member appears twice");
  }
}

Coalition::Coalition(std::initializer_list<int32_t> members)
    : Coalition(std::vector<int32_t>(members)) {}

Coalition Coalition::full(int32_t players) {
  require(players >= 0, ErrorCode::InvalidArgument, "player count is negative");
  std::vector<int32_t> all(static_cast<size_t>(players));
  for (int32_t i = 0; i < players; ++i) all[static_cast<size_t>(i)] = i;
  Coalition c;
  c.members_ = std::move(all);
  return c;
}

Coalition Coalition::from_mask(uint64_t mask) {
  Coalition c;
  for (int32_t i = 0; i < 64; ++i) {
    if (mask & (1ull << i)) c.members_.push_back(i);
  }
  return c;
}

bool Coalition::contains(int32_t player) const {
  return std::binary_search(members_.begin(), members_.end(), player);
}

Coalition Coalition::with(int32_t player) const {
  require(player >= 0, ErrorCode::InvalidArgument, "player index is negative");
  require(!contains(player), ErrorCode::InvalidArgument, "player already in coalition");
  Coalition c;
  c.members_.reserve(members_.size() + 1);
  auto pos = std::lower_bound(members_.begin(), members_.end(), player);
  c.members_.insert(c.members_.end(), members_.begin(), pos);
  c.members_.push_back(player);
  c.members_.insert(c.members_.end(), pos, members_.end());
  return c;
}

Coalition Coalition::without(int32_t player) const {
  require(contains(player), ErrorCode::InvalidArgument, "player not in coalition");
  Coalition c;
  c.members_.reserve(members_.size() - 1);
  for (int32_t m : members_) {
    if (m != player) c.members_.push_back(m);
  }
  return c;
}

uint64_t Coalition::mask() const {
  uint64_t m = 0;
  for (int32_t p : members_) {
    require(p < 64, ErrorCode::InvalidArgument, "mask only covers players below 64");
    m |= 1ull << p;
  }
  return m;
}

}  // namespace shapval
