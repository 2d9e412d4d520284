// Acceptance suite: each criterion prints one pass/fail line; the process
// exits nonzero if any checked criterion fails. Run a single criterion with
// --criterion <k>.

#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnet/conjugate.hpp"
#include "cnet/multicast.hpp"
#include "cnet/routing.hpp"
#include "cnet/topology.hpp"
#include "cnet/verify.hpp"

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<void(std::ostringstream&)> run;  // throws or appends failures
};

void require(std::ostringstream& fail, bool ok, const std::string& what) {
  if (!ok) fail << "\n    failed: " << what;
}

cnet::NodeLabel bl(int stage, const std::string& prefix, const std::string& suffix) {
  return cnet::benes_label(stage, cnet::BitString(prefix), cnet::BitString(suffix));
}

std::string seq_string(const std::vector<int>& seq) {
  std::string s;
  for (int b : seq) s += static_cast<char>('0' + b);
  return s;
}

// 1. Golden path: input 001 to output 100 through central module 10 on the
//    8-port network, in the base network and in its conjugate.
void criterion_golden_path(std::ostringstream& fail) {
  cnet::Route route = cnet::benes_path(3, 1, 4, cnet::BitString("10"));
  route.id = "B";
  std::vector<cnet::RouteHop> base_expected{
      {bl(1, "", "00"), 1}, {bl(2, "1", "0"), 0}, {bl(3, "10", ""), 1},
      {bl(4, "1", "1"), 0}, {bl(5, "", "10"), 0},
  };
  require(fail, route.hops == base_expected, "base node sequence");
  require(fail, seq_string(route.link_sequence) == "10100", "base link sequence 10100");

  cnet::NetworkTopology base = cnet::build_benes(8);
  cnet::ConjugateTopology conj = cnet::conjugate_of(base);
  cnet::Route mapped = cnet::map_route(conj, route);
  std::vector<cnet::RouteHop> conj_expected{
      {conj.splitter_label(1), 1}, {bl(1, "1", "00"), 0}, {bl(2, "10", "0"), 1},
      {bl(3, "10", "1"), 0},       {bl(4, "1", "10"), 0}, {conj.combiner_label(4), 0},
  };
  require(fail, mapped.hops == conj_expected, "conjugate node sequence");
  require(fail, mapped.link_sequence == route.link_sequence, "conjugate link sequence");
  cnet::validate_route(base, route);
  cnet::validate_route(conj.net, mapped);
}

// 2. Every 8-port permutation routes link-disjoint and maps node-disjoint;
//    seeded samples extend the check to 64 and 256 ports.
void criterion_permutations(std::ostringstream& fail) {
  cnet::SweepSummary full = cnet::sweep_benes_permutations(8, std::nullopt, 0);
  require(fail, full.tested == 40320, "tested 40320 permutations");
  require(fail, full.link_violations == 0, "link-disjoint at 8 ports");
  require(fail, full.node_violations == 0, "crosstalk-free at 8 ports");

  for (int ports : {64, 256}) {
    cnet::SweepSummary sampled = cnet::sweep_benes_permutations(ports, 1000, 2024);
    require(fail, sampled.tested == 1000,
            "tested 1000 samples at " + std::to_string(ports) + " ports");
    require(fail, sampled.link_violations == 0,
            "link-disjoint at " + std::to_string(ports) + " ports");
    require(fail, sampled.node_violations == 0,
            "crosstalk-free at " + std::to_string(ports) + " ports");
  }
}

// 3. Clos route assignment: every permutation at (2,2,2), 500 seeded
//    permutations at (3,3,3) and (4,4,4); proper colorings, link-disjoint,
//    crosstalk-free.
void criterion_clos(std::ostringstream& fail) {
  cnet::SweepSummary small = cnet::sweep_clos_permutations(2, 2, 2, std::nullopt, 0);
  require(fail, small.tested == 24, "tested all 24 permutations at (2,2,2)");
  require(fail, small.link_violations == 0, "link-disjoint at (2,2,2)");
  require(fail, small.node_violations == 0, "crosstalk-free at (2,2,2)");

  for (int size : {3, 4}) {
    cnet::SweepSummary sampled = cnet::sweep_clos_permutations(size, size, size, 500, 7);
    std::string name = "(" + std::to_string(size) + "," + std::to_string(size) + "," +
                       std::to_string(size) + ")";
    require(fail, sampled.tested == 500, "tested 500 samples at " + name);
    require(fail, sampled.link_violations == 0, "link-disjoint at " + name);
    require(fail, sampled.node_violations == 0, "crosstalk-free at " + name);
  }
}

// 4. Every monotone consecutive-interval multicast set at 8 ports: rank
//    inequality, link-disjoint trees, crosstalk-free conjugate.
void criterion_multicast_exhaustive(std::ostringstream& fail) {
  cnet::SweepSummary s = cnet::sweep_monotonic_multicast(8, std::nullopt, 0);
  require(fail, s.tested == 12869, "enumerated 12869 request sets");  // C(16,8) - 1
  require(fail, s.rank_violations == 0, "rank spacing inequality");
  require(fail, s.link_violations == 0, "trees link-disjoint");
  require(fail, s.node_violations == 0, "conjugate crosstalk-free");
}

// 5. Routing-tag table for the worked re-ranged request set.
void criterion_tag_table(std::ostringstream& fail) {
  std::vector<cnet::MulticastRequest> ranged{
      {"a", 0, {0, 1}}, {"b", 1, {2, 3, 4}}, {"c", 3, {5, 6, 7}}};
  auto rows = cnet::routing_tag_table(cnet::copy_assign(ranged, 3));
  require(fail, rows.size() == 3, "three table rows");
  if (rows.size() != 3) return;

  const int expected_src[] = {0, 1, 3};
  const int expected_rank[] = {0, 1, 2};
  const char* expected_bits[] = {"000", "001", "010"};
  const char* expected_tag[] = {"00", "10", "01"};
  const char* expected_min[] = {"000", "010", "101"};
  const char* expected_max[] = {"001", "100", "111"};
  for (int i = 0; i < 3; ++i) {
    require(fail, rows[i].src == expected_src[i], "row " + std::to_string(i) + " source");
    require(fail, rows[i].rank == expected_rank[i], "row " + std::to_string(i) + " rank");
    require(fail, rows[i].rank_bits.to_string() == expected_bits[i],
            "row " + std::to_string(i) + " rank bits");
    require(fail, rows[i].tag.to_string() == expected_tag[i],
            "row " + std::to_string(i) + " routing tag");
    require(fail, rows[i].interval_min.to_string() == expected_min[i],
            "row " + std::to_string(i) + " interval min");
    require(fail, rows[i].interval_max.to_string() == expected_max[i],
            "row " + std::to_string(i) + " interval max");
  }
}

// 6. End-to-end worked multicast set on the fused 9-stage cascade: the
//    intermediate permutation matches, and the conjugate cascade is
//    crosstalk-free.
void criterion_cascade(std::ostringstream& fail) {
  cnet::NetworkTopology cascade = cnet::build_multicast_cascade(8, true);
  require(fail, cascade.stage_count() == 9, "fused cascade has 9 stages");

  std::vector<cnet::MulticastRequest> raw{
      {"a", 0, {2, 4}}, {"b", 1, {0, 1, 7}}, {"c", 3, {3, 5, 6}}};
  cnet::MulticastRealization real = cnet::multicast_route(raw, cascade);
  require(fail, real.permutation == std::vector<int>({2, 4, 0, 1, 7, 3, 5, 6}),
          "intermediate permutation");
  require(fail, cnet::check_link_disjoint(cascade, real.routes).empty(),
          "cascade routes link-disjoint");

  cnet::ConjugateTopology conj = cnet::conjugate_of(cascade);
  auto mapped = cnet::map_routes(conj, real.routes);
  require(fail, cnet::check_crosstalk_free(conj, mapped).empty(),
          "conjugate cascade crosstalk-free");
}

// 7. Element counts: 3N for the square conjugate Clos, (2n-1)N for the
//    conjugate Benes.
void criterion_counts(std::ostringstream& fail) {
  for (auto [n, k] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
    cnet::ElementCounts c = cnet::element_counts(cnet::conjugate_of(cnet::build_clos(n, k, n)));
    int ports = n * k;
    require(fail, c.node_count == 3L * ports,
            "clos(" + std::to_string(n) + "," + std::to_string(k) + ") total 3N");
    require(fail, c.merged == 2L * n * k,
            "clos(" + std::to_string(n) + "," + std::to_string(k) + ") merged 2nk");
  }
  for (int ports : {4, 8, 16}) {
    cnet::ElementCounts c = cnet::element_counts(cnet::conjugate_of(cnet::build_benes(ports)));
    int n = cnet::log2_exact(ports);
    require(fail, c.node_count == static_cast<long>(2 * n - 1) * ports,
            "benes " + std::to_string(ports) + " total (2n-1)N");
  }
}

// 8. Interval splitting reaches exactly the interval: all 36 intervals at
//    8 ports, 1000 seeded intervals at 256 ports.
void criterion_interval_leaves(std::ostringstream& fail) {
  int checked = 0;
  for (int lo = 0; lo < 8; ++lo)
    for (int hi = lo; hi < 8; ++hi) {
      cnet::CopyTree tree =
          cnet::build_copy_tree(cnet::BitString("10"),
                                {cnet::BitString(static_cast<std::uint32_t>(lo), 3),
                                 cnet::BitString(static_cast<std::uint32_t>(hi), 3)},
                                3);
      std::vector<int> expected;
      for (int p = lo; p <= hi; ++p) expected.push_back(p);
      require(fail, tree.leaf_ports() == expected,
              "interval [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
      ++checked;
    }
  require(fail, checked == 36, "all 36 intervals at n=3");

  std::uint64_t state = 4096;
  auto next = [&state]() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  for (int trial = 0; trial < 1000; ++trial) {
    int lo = static_cast<int>(next() % 256);
    int hi = lo + static_cast<int>(next() % static_cast<std::uint64_t>(256 - lo));
    int central = static_cast<int>(next() % 128);
    cnet::CopyTree tree =
        cnet::build_copy_tree(cnet::BitString(static_cast<std::uint32_t>(central), 7),
                              {cnet::BitString(static_cast<std::uint32_t>(lo), 8),
                               cnet::BitString(static_cast<std::uint32_t>(hi), 8)},
                              8);
    std::vector<int> expected;
    for (int p = lo; p <= hi; ++p) expected.push_back(p);
    require(fail, tree.leaf_ports() == expected,
            "seeded interval [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria{
      {1, "golden 8-port connection in base and conjugate form", criterion_golden_path},
      {2, "all 8-port permutations link-disjoint and crosstalk-free (plus 64/256 samples)",
       criterion_permutations},
      {3, "Clos permutations colored, link-disjoint and crosstalk-free", criterion_clos},
      {4, "all monotone 8-port multicast sets nonblocking and crosstalk-free",
       criterion_multicast_exhaustive},
      {5, "routing-tag table reproduction", criterion_tag_table},
      {6, "worked multicast set realized on the fused 9-stage cascade", criterion_cascade},
      {7, "conjugate element counts match the closed forms", criterion_counts},
      {8, "interval-splitting trees reach exactly their address intervals",
       criterion_interval_leaves},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    std::ostringstream fail;
    try {
      c.run(fail);
    } catch (const std::exception& e) {
      fail << "\n    exception: " << e.what();
    }
    std::string detail = fail.str();
    if (detail.empty()) {
      std::cout << "[PASS] criterion " << c.number << ": " << c.title << "\n";
    } else {
      std::cout << "[FAIL] criterion " << c.number << ": " << c.title << detail << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
