#include "cnet/verify.hpp"

#include <algorithm>
#include <cstdlib>

#include "cnet/multicast.hpp"

namespace cnet {

OccupancyLedger occupancy(const NetworkTopology& topology, const std::vector<Route>& routes) {
  OccupancyLedger ledger;
  for (const Route& r : routes)
    for (const RouteHop& h : r.hops) {
      const Element* e = topology.find(h.element);
      if (!e)
        throw InvalidRouteError("route " + r.id + " visits unknown element " +
                                h.element.display());
      if (h.link < 0 || h.link >= e->fan_out())
        throw InvalidRouteError("route " + r.id + " uses missing link " +
                                std::to_string(h.link) + " at " + h.element.display());
      ledger.element_signals[h.element].insert(r.id);
      ledger.link_signals[{h.element, h.link}].insert(r.id);
      ++ledger.hop_count;
    }
  return ledger;
}

std::vector<Violation> check_link_disjoint(const NetworkTopology& topology,
                                           const std::vector<Route>& routes) {
  OccupancyLedger ledger = occupancy(topology, routes);
  std::vector<Violation> out;
  for (const auto& [key, signals] : ledger.link_signals)
    if (signals.size() > 1)
      out.push_back({Violation::Kind::LinkCollision, key.first, key.second,
                     {signals.begin(), signals.end()}});
  return out;
}

std::vector<Violation> check_crosstalk_free(const ConjugateTopology& conj,
                                            const std::vector<Route>& conj_routes) {
  OccupancyLedger ledger = occupancy(conj.net, conj_routes);
  std::vector<Violation> out;
  for (const auto& [label, signals] : ledger.element_signals)
    if (signals.size() > 1)
      out.push_back(
          {Violation::Kind::NodeCollision, label, -1, {signals.begin(), signals.end()}});
  return out;
}

void validate_route(const NetworkTopology& topology, const Route& route) {
  std::map<NodeLabel, std::vector<int>> taken;
  for (const RouteHop& h : route.hops) taken[h.element].push_back(h.link);

  if (route.src >= 0) {
    if (route.src >= topology.n_in) throw InvalidRouteError("route source out of range");
    const NodeLabel& entry = topology.inputs[static_cast<std::size_t>(route.src)].element;
    if (taken.find(entry) == taken.end())
      throw InvalidRouteError("route " + route.id + " misses its entry element " +
                              entry.display());
  }
  std::vector<int> exits;
  for (const RouteHop& h : route.hops) {
    LinkTarget t = topology.trace_link(h.element, h.link);
    if (t.is_port()) {
      exits.push_back(t.port);
    } else if (taken.find(t.element) == taken.end()) {
      throw InvalidRouteError("route " + route.id + " dead-ends at " + t.element.display());
    }
  }
  std::sort(exits.begin(), exits.end());
  std::vector<int> want = route.dsts;
  std::sort(want.begin(), want.end());
  if (!route.dsts.empty() && exits != want)
    throw InvalidRouteError("route " + route.id + " exits do not match its destinations");
}

std::vector<int> random_permutation(std::uint64_t& state, int count) {
  // splitmix64 steps; enough entropy for test sampling and fully portable.
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  std::vector<int> perm(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = count - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[next() % static_cast<std::uint64_t>(i + 1)]);
  return perm;
}

namespace {

std::vector<ConnectionRequest> permutation_requests(const std::vector<int>& perm) {
  std::vector<ConnectionRequest> reqs;
  for (std::size_t s = 0; s < perm.size(); ++s)
    reqs.push_back({std::to_string(s), static_cast<int>(s), perm[s]});
  return reqs;
}

}  // namespace

SweepSummary sweep_benes_permutations(int ports, std::optional<long long> samples,
                                      std::uint64_t seed) {
  int n = log2_exact(ports);
  NetworkTopology base = build_benes(ports);
  ConjugateTopology conj = conjugate_of(base);

  SweepSummary summary;
  auto run_case = [&](const std::vector<int>& perm) {
    auto reqs = permutation_requests(perm);
    auto assignment = looping_assign(n, reqs);
    auto routes = benes_routes(n, reqs, assignment);
    summary.link_violations += static_cast<long long>(check_link_disjoint(base, routes).size());
    auto mapped = map_routes(conj, routes);
    summary.node_violations +=
        static_cast<long long>(check_crosstalk_free(conj, mapped).size());
    ++summary.tested;
  };

  if (!samples) {
    if (ports > 8)
      throw InvalidParameterError("exhaustive permutation sweeps are limited to 8 ports");
    std::vector<int> perm(static_cast<std::size_t>(ports));
    for (int i = 0; i < ports; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
      run_case(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::uint64_t state = seed;
    for (long long s = 0; s < *samples; ++s) run_case(random_permutation(state, ports));
  }
  return summary;
}

SweepSummary sweep_clos_permutations(int n, int k, int m, std::optional<long long> samples,
                                     std::uint64_t seed) {
  NetworkTopology base = build_clos(n, k, m);
  ConjugateTopology conj = conjugate_of(base);
  ClosParams params{n, k, m};
  int ports = n * k;

  SweepSummary summary;
  auto run_case = [&](const std::vector<int>& perm) {
    auto reqs = permutation_requests(perm);
    auto assignment = clos_assign_general(params, reqs);
    auto routes = clos_routes(params, reqs, assignment);
    summary.link_violations += static_cast<long long>(check_link_disjoint(base, routes).size());
    auto mapped = map_routes(conj, routes);
    summary.node_violations +=
        static_cast<long long>(check_crosstalk_free(conj, mapped).size());
    ++summary.tested;
  };

  if (!samples) {
    if (ports > 9)
      throw InvalidParameterError("exhaustive permutation sweeps are limited to 9 ports");
    std::vector<int> perm(static_cast<std::size_t>(ports));
    for (int i = 0; i < ports; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
      run_case(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::uint64_t state = seed;
    for (long long s = 0; s < *samples; ++s) run_case(random_permutation(state, ports));
  }
  return summary;
}

bool rank_spacing_witness(int rank_i, int rank_j, int stage) {
  if (rank_i == rank_j) return true;
  if (((rank_i ^ rank_j) & ((1 << stage) - 1)) != 0) return true;  // low bits differ
  return std::abs(rank_j - rank_i) >= (1 << stage);
}

bool source_spacing_witness(int src_i, int src_j, int n, int stage) {
  if ((src_i >> stage) != (src_j >> stage)) return true;  // leading n-stage bits differ
  (void)n;
  return std::abs(src_j - src_i) <= (1 << stage) - 1;
}

namespace {

// Rank-spacing inequality over a monotone set: requests i < j sit at least
// j - i sources apart.
long long rank_inequality_failures(const std::vector<MulticastRequest>& set) {
  long long bad = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (static_cast<int>(j - i) > set[j].src - set[i].src) ++bad;
  return bad;
}

}  // namespace

SweepSummary sweep_monotonic_multicast(int ports, std::optional<long long> samples,
                                       std::uint64_t seed) {
  int n = log2_exact(ports);
  NetworkTopology base = build_copy_network(ports);
  ConjugateTopology conj = conjugate_of(base);

  SweepSummary summary;
  auto run_case = [&](const std::vector<MulticastRequest>& set) {
    summary.rank_violations += rank_inequality_failures(set);
    auto realizations = copy_assign(set, n);
    std::vector<Route> routes;
    for (const auto& c : realizations) routes.push_back(c.combined_route());
    summary.link_violations += static_cast<long long>(check_link_disjoint(base, routes).size());
    auto mapped = map_routes(conj, routes);
    summary.node_violations +=
        static_cast<long long>(check_crosstalk_free(conj, mapped).size());
    ++summary.tested;
  };

  // Request sets are defined by (sources, copy counts); the running sum turns
  // the counts into the consecutive monotone intervals.
  auto make_set = [&](const std::vector<std::pair<int, int>>& spec) {
    std::vector<MulticastRequest> set;
    int base_addr = 0;
    for (auto [src, copies] : spec) {
      MulticastRequest r;
      r.id = "r" + std::to_string(set.size());
      r.src = src;
      for (int c = 0; c < copies; ++c) r.dsts.push_back(base_addr + c);
      base_addr += copies;
      set.push_back(std::move(r));
    }
    return set;
  };

  if (!samples) {
    if (ports > 8)
      throw InvalidParameterError("exhaustive multicast sweeps are limited to 8 ports");
    std::vector<std::pair<int, int>> spec;
    auto enumerate = [&](auto&& self, int next_src, int used) -> void {
      for (int src = next_src; src < ports; ++src)
        for (int copies = 1; copies + used <= ports; ++copies) {
          spec.emplace_back(src, copies);
          run_case(make_set(spec));
          self(self, src + 1, used + copies);
          spec.pop_back();
        }
    };
    enumerate(enumerate, 0, 0);
  } else {
    std::uint64_t state = seed;
    auto next = [&state]() {
      state += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    for (long long s = 0; s < *samples; ++s) {
      int count = 1 + static_cast<int>(next() % static_cast<std::uint64_t>(ports));
      std::vector<int> sources = random_permutation(state, ports);
      sources.resize(static_cast<std::size_t>(count));
      std::sort(sources.begin(), sources.end());
      std::vector<std::pair<int, int>> spec;
      int budget = ports;
      for (int i = 0; i < count; ++i) {
        int cap = budget - (count - 1 - i);
        int copies = 1 + static_cast<int>(next() % static_cast<std::uint64_t>(cap));
        spec.emplace_back(sources[static_cast<std::size_t>(i)], copies);
        budget -= copies;
      }
      run_case(make_set(spec));
    }
  }
  return summary;
}

}  // namespace cnet
