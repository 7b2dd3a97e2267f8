#include "pierguard/kd_index.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace pierguard {

void KdIndex::insert(NodeId id, const Vec3& p) {
  if (id >= slot_.size()) slot_.resize(static_cast<std::size_t>(id) + 1, kNull);
  if (slot_[id] != kNull) remove(id);

  const auto idx = static_cast<std::int32_t>(entries_.size());
  entries_.push_back({p, id});
  slot_[id] = idx;
  ++live_;

  int depth = 0;
  if (root_ == kNull) {
    root_ = idx;
  } else {
    std::int32_t n = root_;
    while (true) {
      ++depth;
      Entry& e = entries_[static_cast<std::size_t>(n)];
      std::int32_t& child = p[e.axis] < e.p[e.axis] ? e.left : e.right;
      if (child == kNull) {
        entries_[static_cast<std::size_t>(idx)].axis = static_cast<std::uint8_t>((e.axis + 1) % 3);
        child = idx;
        break;
      }
      n = child;
    }
  }
  max_depth_ = std::max(max_depth_, depth);

  const auto balanced = 2 * std::bit_width(entries_.size()) + 8;
  if (static_cast<std::size_t>(max_depth_) > 2 * balanced || entries_.size() > 2 * size_at_rebuild_ + 64) {
    rebuild();
  }
}

void KdIndex::remove(NodeId id) {
  if (id >= slot_.size() || slot_[id] == kNull) return;
  entries_[static_cast<std::size_t>(slot_[id])].removed = true;
  slot_[id] = kNull;
  --live_;
  ++removed_;
  if (removed_ > live_ + 64) rebuild();
}

void KdIndex::clear() {
  entries_.clear();
  slot_.clear();
  root_ = kNull;
  live_ = removed_ = size_at_rebuild_ = 0;
  max_depth_ = 0;
}

bool KdIndex::contains(NodeId id) const { return id < slot_.size() && slot_[id] != kNull; }

void KdIndex::rebuild() {
  std::vector<Entry> live;
  live.reserve(live_);
  for (const Entry& e : entries_) {
    if (!e.removed) live.push_back({e.p, e.id});
  }
  entries_ = std::move(live);
  std::fill(slot_.begin(), slot_.end(), kNull);
  std::vector<std::int32_t> order(entries_.size());
  std::iota(order.begin(), order.end(), 0);
  max_depth_ = 0;
  root_ = entries_.empty() ? kNull : build(order, 0, order.size(), 0);
  // build() permutes by index; entries keep their positions, so remap slots.
  for (std::size_t i = 0; i < entries_.size(); ++i) slot_[entries_[i].id] = static_cast<std::int32_t>(i);
  removed_ = 0;
  size_at_rebuild_ = entries_.size();
}

std::int32_t KdIndex::build(std::vector<std::int32_t>& order, std::size_t lo, std::size_t hi, int depth) {
  if (lo >= hi) return kNull;
  max_depth_ = std::max(max_depth_, depth);
  const int axis = depth % 3;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(mid),
                   order.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::int32_t a, std::int32_t b) {
                     return entries_[static_cast<std::size_t>(a)].p[axis] < entries_[static_cast<std::size_t>(b)].p[axis];
                   });
  // Points equal to the split value may sit on either side after nth_element;
  // move them right so that the "< goes left" invariant holds.
  const std::int32_t pivot = order[mid];
  const double split = entries_[static_cast<std::size_t>(pivot)].p[axis];
  auto first_equal = std::partition(order.begin() + static_cast<std::ptrdiff_t>(lo),
                                    order.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::int32_t a) {
                                      return entries_[static_cast<std::size_t>(a)].p[axis] < split;
                                    });
  auto pivot_pos = std::find(first_equal, order.begin() + static_cast<std::ptrdiff_t>(hi), pivot);
  std::iter_swap(first_equal, pivot_pos);
  const auto m = static_cast<std::size_t>(first_equal - order.begin());

  Entry& e = entries_[static_cast<std::size_t>(pivot)];
  e.axis = static_cast<std::uint8_t>(axis);
  e.left = build(order, lo, m, depth + 1);
  e.right = build(order, m + 1, hi, depth + 1);
  return pivot;
}

std::optional<NodeId> KdIndex::nearest(const Vec3& q) const {
  if (live_ == 0) return std::nullopt;
  double best_d2 = std::numeric_limits<double>::infinity();
  NodeId best_id = kNoNode;
  nearestRec(root_, q, best_d2, best_id);
  return best_id;
}

void KdIndex::nearestRec(std::int32_t n, const Vec3& q, double& best_d2, NodeId& best_id) const {
  while (n != kNull) {
    const Entry& e = entries_[static_cast<std::size_t>(n)];
    if (!e.removed) {
      const double d2 = squaredDistance(e.p, q);
      if (d2 < best_d2 || (d2 == best_d2 && e.id < best_id)) {
        best_d2 = d2;
        best_id = e.id;
      }
    }
    const double diff = q[e.axis] - e.p[e.axis];
    const std::int32_t near_side = diff < 0.0 ? e.left : e.right;
    const std::int32_t far_side = diff < 0.0 ? e.right : e.left;
    nearestRec(near_side, q, best_d2, best_id);
    // Equal distance still has to be explored for the id tie-break.
    if (diff * diff > best_d2) return;
    n = far_side;
  }
}

std::vector<NodeId> KdIndex::within(const Vec3& q, double radius) const {
  std::vector<NodeId> out;
  if (root_ != kNull && radius >= 0.0) withinRec(root_, q, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdIndex::withinRec(std::int32_t n, const Vec3& q, double r2, std::vector<NodeId>& out) const {
  while (n != kNull) {
    const Entry& e = entries_[static_cast<std::size_t>(n)];
    if (!e.removed && squaredDistance(e.p, q) <= r2) out.push_back(e.id);
    const double diff = q[e.axis] - e.p[e.axis];
    const std::int32_t near_side = diff < 0.0 ? e.left : e.right;
    const std::int32_t far_side = diff < 0.0 ? e.right : e.left;
    if (diff * diff <= r2) withinRec(far_side, q, r2, out);
    n = near_side;
  }
}

std::vector<NodeId> KdIndex::ids() const {
  std::vector<NodeId> out;
  out.reserve(live_);
  for (const Entry& e : entries_) {
    if (!e.removed) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pierguard
