#include "cnet/routing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cnet/errors.hpp"

namespace cnet {

namespace {

void check_ports(int count, const std::vector<ConnectionRequest>& requests) {
  std::set<int> srcs, dsts;
  for (const auto& r : requests) {
    if (r.src < 0 || r.src >= count || r.dst < 0 || r.dst >= count)
      throw InvalidParameterError("request " + r.id + " port out of range");
    if (!srcs.insert(r.src).second)
      throw InvalidPermutationError("duplicate source port " + std::to_string(r.src));
    if (!dsts.insert(r.dst).second)
      throw InvalidPermutationError("duplicate destination port " + std::to_string(r.dst));
  }
}

// True when both source and destination sequences are strictly increasing in
// request order.
bool is_monotone_p2p(const std::vector<ConnectionRequest>& requests) {
  for (std::size_t i = 1; i < requests.size(); ++i)
    if (requests[i].src <= requests[i - 1].src || requests[i].dst <= requests[i - 1].dst)
      return false;
  return true;
}

struct LoopReq {
  int src;
  int dst;
  std::size_t orig;
};

// One level of the looping algorithm on a 2^bits-port subnetwork: 2-color the
// pairing graph whose edges join requests sharing a first-stage switch or a
// last-stage switch, then recurse into the two half-size subnetworks.
void looping_level(std::vector<LoopReq> reqs, int bits, std::vector<BitString>& central) {
  if (bits <= 1 || reqs.empty()) return;

  std::size_t count = reqs.size();
  std::map<int, std::vector<std::size_t>> by_in, by_out;
  for (std::size_t i = 0; i < count; ++i) {
    by_in[reqs[i].src >> 1].push_back(i);
    by_out[reqs[i].dst >> 1].push_back(i);
  }

  std::vector<std::vector<std::size_t>> adj(count);
  for (const auto& [sw, members] : by_in)
    if (members.size() == 2) {
      adj[members[0]].push_back(members[1]);
      adj[members[1]].push_back(members[0]);
    }
  for (const auto& [sw, members] : by_out)
    if (members.size() == 2) {
      adj[members[0]].push_back(members[1]);
      adj[members[1]].push_back(members[0]);
    }

  std::vector<int> color(count, -1);
  std::vector<int> component(count, -1);
  int comp_count = 0;
  for (std::size_t seed = 0; seed < count; ++seed) {
    if (component[seed] >= 0) continue;
    std::vector<std::size_t> members, stack{seed};
    component[seed] = comp_count;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t w : adj[v])
        if (component[w] < 0) {
          component[w] = comp_count;
          stack.push_back(w);
        }
    }
    ++comp_count;

    // Chains open up for partial permutations; start those at their
    // lowest-numbered endpoint, cycles at their lowest-numbered request.
    std::sort(members.begin(), members.end());
    std::size_t start = members.front();
    for (std::size_t v : members)
      if (adj[v].size() < 2) {
        start = v;
        break;
      }
    color[start] = 0;
    std::vector<std::size_t> frontier{start};
    while (!frontier.empty()) {
      std::size_t v = frontier.back();
      frontier.pop_back();
      for (std::size_t w : adj[v]) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          frontier.push_back(w);
        } else if (color[w] == color[v]) {
          throw InvalidPermutationError("pairing graph is not 2-colorable");
        }
      }
    }
  }

  std::vector<LoopReq> upper, lower;
  for (std::size_t i = 0; i < count; ++i) {
    central[reqs[i].orig] = central[reqs[i].orig].append(color[i]);
    LoopReq sub{reqs[i].src >> 1, reqs[i].dst >> 1, reqs[i].orig};
    (color[i] == 0 ? upper : lower).push_back(sub);
  }
  looping_level(std::move(upper), bits - 1, central);
  looping_level(std::move(lower), bits - 1, central);
}

}  // namespace

Route benes_path(int n, int src, int dst, const BitString& central) {
  if (n < 1) throw InvalidParameterError("benes_path: n must be >= 1");
  int ports = 1 << n;
  if (src < 0 || src >= ports || dst < 0 || dst >= ports)
    throw InvalidParameterError("benes_path: port out of range");
  if (central.size() != n - 1)
    throw InvalidParameterError("benes_path: central module label must have " +
                                std::to_string(n - 1) + " bits");

  BitString s(static_cast<std::uint32_t>(src), n);
  BitString d(static_cast<std::uint32_t>(dst), n);

  Route r;
  r.src = src;
  r.dsts = {dst};
  for (int i = 1; i <= n - 1; ++i)
    r.hops.push_back({benes_label(i, central.prefix(i - 1), s.prefix(n - i)),
                      central.bit(i - 1)});
  for (int i = n; i <= 2 * n - 1; ++i) {
    int j = 2 * n - i;
    r.hops.push_back({benes_label(i, central.prefix(j - 1), d.prefix(n - j)), d.bit(n - j)});
  }
  for (int i = 0; i < n - 1; ++i) r.link_sequence.push_back(central.bit(i));
  for (int i = 0; i < n; ++i) r.link_sequence.push_back(d.bit(i));
  return r;
}

std::vector<std::pair<std::string, BitString>> looping_assign(
    int n, const std::vector<ConnectionRequest>& requests) {
  if (n < 1) throw InvalidParameterError("looping_assign: n must be >= 1");
  check_ports(1 << n, requests);

  std::vector<BitString> central(requests.size());
  std::vector<LoopReq> reqs;
  for (std::size_t i = 0; i < requests.size(); ++i)
    reqs.push_back({requests[i].src, requests[i].dst, i});
  looping_level(std::move(reqs), n, central);

  std::vector<std::pair<std::string, BitString>> out;
  for (std::size_t i = 0; i < requests.size(); ++i) out.emplace_back(requests[i].id, central[i]);
  return out;
}

std::vector<Route> benes_routes(
    int n, const std::vector<ConnectionRequest>& requests,
    const std::vector<std::pair<std::string, BitString>>& assignment) {
  if (assignment.size() != requests.size())
    throw InvalidParameterError("assignment does not cover the request set");
  std::vector<Route> routes;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    Route r = benes_path(n, requests[i].src, requests[i].dst, assignment[i].second);
    r.id = requests[i].id;
    routes.push_back(std::move(r));
  }
  return routes;
}

Route clos_path(const ClosParams& p, int src, int dst, int central) {
  if (p.n < 1 || p.k < 1 || p.m < 1) throw InvalidParameterError("clos_path: bad parameters");
  int ports = p.n * p.k;
  if (src < 0 || src >= ports || dst < 0 || dst >= ports)
    throw InvalidParameterError("clos_path: port out of range");
  if (central < 0 || central >= p.m)
    throw InvalidParameterError("clos_path: central module out of range");

  int s1 = src / p.n;
  int d1 = dst / p.n;
  int d2 = dst % p.n;

  Route r;
  r.src = src;
  r.dsts = {dst};
  r.hops.push_back({NodeLabel{1, LabelPart::phi(), LabelPart::of_index(s1)}, central});
  r.hops.push_back({NodeLabel{2, LabelPart::of_index(central), LabelPart::phi()}, d1});
  r.hops.push_back({NodeLabel{3, LabelPart::phi(), LabelPart::of_index(d1)}, d2});
  r.link_sequence = {central, d1, d2};
  return r;
}

std::vector<std::pair<std::string, int>> clos_rank_assign(
    const ClosParams& p, const std::vector<ConnectionRequest>& requests) {
  check_ports(p.n * p.k, requests);
  if (!is_monotone_p2p(requests))
    throw MonotonicityError("clos_rank_assign requires a monotone request set");
  std::map<int, int> in_load, out_load;
  for (const auto& r : requests) {
    if (++in_load[r.src / p.n] > p.m || ++out_load[r.dst / p.n] > p.m)
      throw CapacityError("a module carries more requests than central modules");
  }
  std::vector<std::pair<std::string, int>> out;
  for (std::size_t i = 0; i < requests.size(); ++i)
    out.emplace_back(requests[i].id, static_cast<int>(i) % p.m);
  return out;
}

std::vector<std::pair<std::string, int>> clos_assign_general(
    const ClosParams& p, const std::vector<ConnectionRequest>& requests) {
  if (p.m < p.n)
    throw CapacityError("rearrangeable nonblocking needs m >= n (m=" + std::to_string(p.m) +
                        ", n=" + std::to_string(p.n) + ")");
  check_ports(p.n * p.k, requests);
  if (is_monotone_p2p(requests)) return clos_rank_assign(p, requests);

  // Greedy proper edge coloring of the module bipartite multigraph, with the
  // standard alternating-chain recoloring when the greedy color sets clash.
  std::vector<int> color(requests.size(), -1);
  // at[side][module][color] -> request index using that color, or -1.
  std::vector<std::vector<int>> at_in(static_cast<std::size_t>(p.k),
                                      std::vector<int>(static_cast<std::size_t>(p.m), -1));
  std::vector<std::vector<int>> at_out(static_cast<std::size_t>(p.k),
                                       std::vector<int>(static_cast<std::size_t>(p.m), -1));

  auto lowest_free = [&](const std::vector<int>& used) {
    for (int c = 0; c < p.m; ++c)
      if (used[static_cast<std::size_t>(c)] < 0) return c;
    return -1;
  };

  for (std::size_t i = 0; i < requests.size(); ++i) {
    int u = requests[i].src / p.n;
    int v = requests[i].dst / p.n;
    auto& fu = at_in[static_cast<std::size_t>(u)];
    auto& fv = at_out[static_cast<std::size_t>(v)];

    int common = -1;
    for (int c = 0; c < p.m; ++c)
      if (fu[static_cast<std::size_t>(c)] < 0 && fv[static_cast<std::size_t>(c)] < 0) {
        common = c;
        break;
      }
    if (common < 0) {
      int alpha = lowest_free(fu);
      int beta = lowest_free(fv);
      // Flip the alternating (alpha, beta) chain starting at v; it cannot
      // reach u, which then frees alpha at both endpoints. Collect against
      // the original colors first, then flip.
      std::vector<int> chain;
      int node = v;
      int want = alpha;
      bool on_out = true;
      while (true) {
        int e = on_out ? at_out[static_cast<std::size_t>(node)][static_cast<std::size_t>(want)]
                       : at_in[static_cast<std::size_t>(node)][static_cast<std::size_t>(want)];
        if (e < 0) break;
        chain.push_back(e);
        node = on_out ? requests[static_cast<std::size_t>(e)].src / p.n
                      : requests[static_cast<std::size_t>(e)].dst / p.n;
        on_out = !on_out;
        want = want == alpha ? beta : alpha;
      }
      for (int e : chain) {
        int eu = requests[static_cast<std::size_t>(e)].src / p.n;
        int ev = requests[static_cast<std::size_t>(e)].dst / p.n;
        int old = color[static_cast<std::size_t>(e)];
        int next = old == alpha ? beta : alpha;
        at_in[static_cast<std::size_t>(eu)][static_cast<std::size_t>(old)] = -1;
        at_out[static_cast<std::size_t>(ev)][static_cast<std::size_t>(old)] = -1;
        color[static_cast<std::size_t>(e)] = next;
      }
      for (int e : chain) {
        int eu = requests[static_cast<std::size_t>(e)].src / p.n;
        int ev = requests[static_cast<std::size_t>(e)].dst / p.n;
        int c = color[static_cast<std::size_t>(e)];
        at_in[static_cast<std::size_t>(eu)][static_cast<std::size_t>(c)] = e;
        at_out[static_cast<std::size_t>(ev)][static_cast<std::size_t>(c)] = e;
      }
      common = alpha;
    }
    color[i] = common;
    fu[static_cast<std::size_t>(common)] = static_cast<int>(i);
    fv[static_cast<std::size_t>(common)] = static_cast<int>(i);
  }

  std::vector<std::pair<std::string, int>> out;
  for (std::size_t i = 0; i < requests.size(); ++i) out.emplace_back(requests[i].id, color[i]);
  return out;
}

std::vector<Route> clos_routes(const ClosParams& p,
                               const std::vector<ConnectionRequest>& requests,
                               const std::vector<std::pair<std::string, int>>& assignment) {
  if (assignment.size() != requests.size())
    throw InvalidParameterError("assignment does not cover the request set");
  std::vector<Route> routes;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    Route r = clos_path(p, requests[i].src, requests[i].dst, assignment[i].second);
    r.id = requests[i].id;
    routes.push_back(std::move(r));
  }
  return routes;
}

}  // namespace cnet
