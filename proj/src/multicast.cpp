#include "cnet/multicast.hpp"

#include <algorithm>
#include <numeric>

#include "cnet/errors.hpp"

namespace cnet {

MonotonicityCheck is_monotonic(const std::vector<MulticastRequest>& requests) {
  for (std::size_t i = 0; i < requests.size(); ++i)
    for (std::size_t j = i + 1; j < requests.size(); ++j) {
      const auto& a = requests[i];
      const auto& b = requests[j];
      if (a.dsts.empty() || b.dsts.empty()) continue;
      auto [a_lo, a_hi] = std::minmax_element(a.dsts.begin(), a.dsts.end());
      auto [b_lo, b_hi] = std::minmax_element(b.dsts.begin(), b.dsts.end());
      bool ok = (a.src < b.src && *a_hi < *b_lo) || (a.src > b.src && *b_hi < *a_lo);
      if (!ok) return {false, static_cast<int>(i), static_cast<int>(j)};
    }
  return {};
}

std::vector<MulticastRequest> running_sum_ranges(const std::vector<MulticastRequest>& requests,
                                                 int ports) {
  long total = 0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    if (r.dsts.empty()) throw InvalidParameterError("request " + r.id + " asks for no outputs");
    if (r.src < 0 || r.src >= ports)
      throw InvalidParameterError("request " + r.id + " source out of range");
    for (int d : r.dsts)
      if (d < 0 || d >= ports)
        throw InvalidParameterError("request " + r.id + " output out of range");
    if (i > 0 && requests[i - 1].src >= r.src)
      throw InvalidParameterError("requests must come in strictly increasing source order");
    total += static_cast<long>(r.dsts.size());
  }
  if (total > ports)
    throw CapacityError("requested " + std::to_string(total) + " copies on a " +
                        std::to_string(ports) + "-port network");

  std::vector<MulticastRequest> out;
  int base = 0;
  for (const auto& r : requests) {
    MulticastRequest m;
    m.id = r.id;
    m.src = r.src;
    for (std::size_t c = 0; c < r.dsts.size(); ++c) m.dsts.push_back(base + static_cast<int>(c));
    base += static_cast<int>(r.dsts.size());
    out.push_back(std::move(m));
  }
  return out;
}

BitString rank_to_central(int rank, int n) {
  if (n < 1) throw InvalidParameterError("rank_to_central: n must be >= 1");
  if (rank < 0 || rank >= (1 << n))
    throw InvalidParameterError("rank " + std::to_string(rank) + " out of range for n=" +
                                std::to_string(n));
  return BitString(static_cast<std::uint32_t>(rank), n).suffix(n - 1).reversed();
}

std::vector<std::pair<int, AddressInterval>> split_interval(const AddressInterval& interval,
                                                            int stage, int n) {
  if (n < 1 || interval.lo.size() != n || interval.hi.size() != n)
    throw InvalidParameterError("interval addresses must be n-bit words");
  if (stage < n || stage > 2 * n - 1)
    throw InvalidParameterError("interval splitting runs from stage n to stage 2n-1");
  int b = stage - n;  // 0-based address bit consumed at this stage
  for (int j = 0; j < b; ++j)
    if (interval.lo.bit(j) != interval.hi.bit(j))
      throw MalformedIntervalError("interval bounds disagree above stage " +
                                   std::to_string(stage));
  int lo_bit = interval.lo.bit(b);
  int hi_bit = interval.hi.bit(b);
  if (lo_bit == 1 && hi_bit == 0)
    throw MalformedIntervalError("interval minimum above maximum at stage " +
                                 std::to_string(stage));
  if (lo_bit == hi_bit) return {{lo_bit, interval}};

  BitString ones_tail = interval.lo.prefix(b).append(0);
  BitString zeros_tail = interval.hi.prefix(b).append(1);
  while (ones_tail.size() < n) ones_tail = ones_tail.append(1);
  while (zeros_tail.size() < n) zeros_tail = zeros_tail.append(0);
  return {{0, {interval.lo, ones_tail}}, {1, {zeros_tail, interval.hi}}};
}

std::vector<int> CopyTree::leaf_ports() const {
  std::vector<int> ports;
  for (const auto& node : nodes)
    for (const auto& b : node.branches)
      if (b.child < 0) ports.push_back(b.leaf_port);
  std::sort(ports.begin(), ports.end());
  return ports;
}

CopyTree build_copy_tree(const BitString& central, const AddressInterval& interval, int n) {
  if (central.size() != n - 1)
    throw InvalidParameterError("central module label must have n-1 bits");
  if (interval.lo > interval.hi)
    throw MalformedIntervalError("interval minimum above maximum");

  CopyTree tree;
  tree.central = central;
  tree.nodes.push_back({benes_label(n, central, BitString()), interval, {}});
  // Nodes are expanded in creation order; children always sit after parents.
  for (std::size_t idx = 0; idx < tree.nodes.size(); ++idx) {
    int stage = tree.nodes[idx].element.stage;
    auto splits = split_interval(tree.nodes[idx].interval, stage, n);
    for (const auto& [link, sub] : splits) {
      CopyBranch branch;
      branch.link = link;
      if (stage == 2 * n - 1) {
        branch.leaf_port =
            static_cast<int>(tree.nodes[idx].element.suffix.bits().append(link).value());
      } else {
        const NodeLabel& cur = tree.nodes[idx].element;
        NodeLabel child = benes_label(stage + 1, cur.prefix.bits().drop_last(),
                                      cur.suffix.bits().append(link));
        branch.child = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({child, sub, {}});
      }
      tree.nodes[idx].branches.push_back(branch);
    }
  }
  return tree;
}

Route CopyRealization::combined_route() const {
  Route r;
  r.id = id;
  r.src = src;
  for (std::uint32_t p = interval.lo.value(); p <= interval.hi.value(); ++p)
    r.dsts.push_back(static_cast<int>(p));
  r.hops = baseline_hops;
  for (const auto& node : tree.nodes)
    for (const auto& b : node.branches) r.hops.push_back({node.element, b.link});
  for (int i = 0; i < tag.size(); ++i) r.link_sequence.push_back(tag.bit(i));
  return r;
}

std::vector<CopyRealization> copy_assign(const std::vector<MulticastRequest>& requests, int n) {
  if (n < 1) throw InvalidParameterError("copy_assign: n must be >= 1");
  int ports = 1 << n;
  if (static_cast<int>(requests.size()) > ports)
    throw CapacityError("more requests than network ports");
  auto mono = is_monotonic(requests);
  if (!mono.ok)
    throw MonotonicityError("requests " + std::to_string(mono.first) + " and " +
                            std::to_string(mono.second) + " violate the monotonic order");

  std::vector<CopyRealization> out;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    if (r.dsts.empty()) throw InvalidParameterError("request " + r.id + " asks for no outputs");
    if (i > 0 && requests[i - 1].src >= r.src)
      throw MonotonicityError("sources must be strictly increasing");
    std::vector<int> sorted = r.dsts;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= ports)
      throw InvalidParameterError("request " + r.id + " output out of range");
    for (std::size_t c = 1; c < sorted.size(); ++c)
      if (sorted[c] != sorted[c - 1] + 1)
        throw InvalidParameterError("request " + r.id +
                                    " outputs are not a consecutive interval");

    CopyRealization c;
    c.id = r.id;
    c.src = r.src;
    c.rank = static_cast<int>(i);
    c.rank_bits = BitString(static_cast<std::uint32_t>(i), n);
    c.tag = rank_to_central(c.rank, n);
    c.interval = {BitString(static_cast<std::uint32_t>(sorted.front()), n),
                  BitString(static_cast<std::uint32_t>(sorted.back()), n)};

    BitString s(static_cast<std::uint32_t>(r.src), n);
    for (int j = 1; j <= n - 1; ++j)
      c.baseline_hops.push_back(
          {benes_label(j, c.tag.prefix(j - 1), s.prefix(n - j)), c.tag.bit(j - 1)});
    c.tree = build_copy_tree(c.tag, c.interval, n);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TagTableRow> routing_tag_table(const std::vector<CopyRealization>& realizations) {
  std::vector<TagTableRow> rows;
  for (const auto& c : realizations) {
    TagTableRow row;
    row.src = c.src;
    row.range = {static_cast<int>(c.interval.lo.value()), static_cast<int>(c.interval.hi.value())};
    row.rank = c.rank;
    row.rank_bits = c.rank_bits;
    row.tag = c.tag;
    row.interval_min = c.interval.lo;
    row.interval_max = c.interval.hi;
    rows.push_back(row);
  }
  return rows;
}

MulticastRealization multicast_route(const std::vector<MulticastRequest>& raw,
                                     const NetworkTopology& cascade) {
  if (cascade.kind != NetworkKind::Cascade)
    throw InvalidKindError("multicast_route expects a cascade, got " + to_string(cascade.kind));
  int n = cascade.params.n;
  int ports = 1 << n;
  bool fuse = cascade.params.fuse;

  MulticastRealization real;
  real.ranges = running_sum_ranges(raw, ports);
  real.copy = copy_assign(real.ranges, n);

  // The copy stage turns each raw destination set, in ascending order, into
  // the consecutive interval addresses; the remaining work is a permutation.
  real.permutation.assign(static_cast<std::size_t>(ports), -1);
  std::vector<ConnectionRequest> benes_requests;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::vector<int> finals = raw[i].dsts;
    std::sort(finals.begin(), finals.end());
    int base = static_cast<int>(real.copy[i].interval.lo.value());
    for (std::size_t c = 0; c < finals.size(); ++c)
      real.permutation[static_cast<std::size_t>(base) + c] = finals[c];
  }
  std::vector<std::string> copy_owner(static_cast<std::size_t>(ports));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    int lo = static_cast<int>(real.copy[i].interval.lo.value());
    int hi = static_cast<int>(real.copy[i].interval.hi.value());
    for (int p = lo; p <= hi; ++p) copy_owner[static_cast<std::size_t>(p)] = raw[i].id;
  }
  for (int p = 0; p < ports; ++p)
    if (real.permutation[static_cast<std::size_t>(p)] >= 0)
      benes_requests.push_back({copy_owner[static_cast<std::size_t>(p)] + "#" +
                                    std::to_string(p),
                                p, real.permutation[static_cast<std::size_t>(p)]});

  real.benes_assignment = looping_assign(n, benes_requests);
  std::vector<Route> local = benes_routes(n, benes_requests, real.benes_assignment);

  int offset = fuse ? 2 * n - 2 : 2 * n - 1;
  auto relabel = [offset](const NodeLabel& l) {
    NodeLabel out = l;
    out.stage += offset;
    return out;
  };
  // First hop link of each copy's point-to-point route, indexed by
  // intermediate port; steers the fused stage.
  std::vector<int> first_link(static_cast<std::size_t>(ports), -1);
  for (std::size_t i = 0; i < local.size(); ++i)
    first_link[static_cast<std::size_t>(local[i].src)] = local[i].hops.front().link;

  // Replication trees, cut back at the fused stage when the cascade fuses the
  // copy output stage into the point-to-point input stage.
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const CopyRealization& c = real.copy[i];
    Route tree;
    tree.id = raw[i].id;
    tree.src = c.src;
    tree.hops = c.baseline_hops;
    for (const auto& node : c.tree.nodes) {
      if (fuse && node.element.stage == 2 * n - 1) {
        for (const auto& b : node.branches)
          tree.hops.push_back(
              {node.element, first_link[static_cast<std::size_t>(b.leaf_port)]});
      } else {
        for (const auto& b : node.branches) tree.hops.push_back({node.element, b.link});
      }
    }
    real.routes.push_back(std::move(tree));
  }

  // Per-copy continuations through the point-to-point half.
  for (const Route& l : local) {
    int p = l.src;
    Route copy;
    copy.id = l.id;
    copy.parent = copy_owner[static_cast<std::size_t>(p)];
    copy.dsts = l.dsts;
    if (fuse) {
      NodeLabel fused =
          benes_label(2 * n - 1, BitString(),
                      BitString(static_cast<std::uint32_t>(p >> 1), n - 1));
      copy.continuation_of = {{fused, first_link[static_cast<std::size_t>(p)]}};
      for (std::size_t h = 1; h < l.hops.size(); ++h)
        copy.hops.push_back({relabel(l.hops[h].element), l.hops[h].link});
      if (copy.hops.empty()) continue;  // n = 1: the fused stage is the whole path
    } else {
      NodeLabel boundary =
          benes_label(2 * n - 1, BitString(),
                      BitString(static_cast<std::uint32_t>(p >> 1), n - 1));
      copy.continuation_of = {{boundary, p & 1}};
      for (const auto& h : l.hops) copy.hops.push_back({relabel(h.element), h.link});
    }
    real.routes.push_back(std::move(copy));
  }
  return real;
}

}  // namespace cnet
