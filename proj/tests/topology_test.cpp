#include "cnet/topology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

namespace cnet {
namespace {

NodeLabel bl(int stage, const std::string& prefix, const std::string& suffix) {
  return benes_label(stage, BitString(prefix), BitString(suffix));
}

TEST(BuildBenes, EightPortShape) {
  NetworkTopology t = build_benes(8);
  ASSERT_EQ(t.stage_count(), 5);
  for (const auto& stage : t.stages) EXPECT_EQ(stage.size(), 4u);
  // Middle-stage central modules, top-down.
  std::vector<NodeLabel> middle;
  for (const auto& e : t.stages[2]) middle.push_back(e.label);
  EXPECT_EQ(middle, (std::vector<NodeLabel>{bl(3, "00", ""), bl(3, "01", ""), bl(3, "10", ""),
                                            bl(3, "11", "")}));
  t.validate();
}

TEST(BuildBenes, DegenerateTwoPortNetwork) {
  NetworkTopology t = build_benes(2);
  ASSERT_EQ(t.stage_count(), 1);
  ASSERT_EQ(t.stages[0].size(), 1u);
  EXPECT_EQ(t.stages[0][0].label, bl(1, "", ""));
  t.validate();
}

TEST(BuildBenes, FourPortShape) {
  NetworkTopology t = build_benes(4);
  ASSERT_EQ(t.stage_count(), 3);
  for (const auto& stage : t.stages) EXPECT_EQ(stage.size(), 2u);
  t.validate();
}

TEST(BuildBenes, RejectsNonPowersOfTwo) {
  EXPECT_THROW(build_benes(6), InvalidParameterError);
  EXPECT_THROW(build_benes(0), InvalidParameterError);
  EXPECT_THROW(build_benes(1), InvalidParameterError);
}

TEST(TraceLink, EightPortExamples) {
  NetworkTopology t = build_benes(8);
  LinkTarget a = t.trace_link(bl(2, "1", "0"), 0);
  ASSERT_FALSE(a.is_port());
  EXPECT_EQ(a.element, bl(3, "10", ""));

  LinkTarget b = t.trace_link(bl(5, "", "10"), 0);
  ASSERT_TRUE(b.is_port());
  EXPECT_EQ(b.port, 4);  // 100
}

TEST(TraceLink, TwoPortExit) {
  NetworkTopology t = build_benes(2);
  LinkTarget out = t.trace_link(bl(1, "", ""), 1);
  ASSERT_TRUE(out.is_port());
  EXPECT_EQ(out.port, 1);
}

TEST(TraceLink, UnknownElementOrLink) {
  NetworkTopology t = build_benes(4);
  EXPECT_THROW(t.trace_link(bl(1, "", "11"), 0), LookupError);
  EXPECT_THROW(t.trace_link(bl(1, "", "0"), 2), LookupError);
}

// The attachment rules, restated independently: in the baseline half the link
// bit extends the subnetwork numbering and the node numbering loses its last
// bit; mirrored in the reverse half.
TEST(BuildBenes, AttachmentRulesHoldEverywhere) {
  for (int ports : {2, 4, 8, 16}) {
    NetworkTopology t = build_benes(ports);
    int n = t.params.n;
    for (int stage = 1; stage < 2 * n - 1; ++stage)
      for (const auto& e : t.stages[static_cast<std::size_t>(stage - 1)])
        for (int c = 0; c < 2; ++c) {
          NodeLabel expected;
          if (stage < n)
            expected = benes_label(stage + 1, e.label.prefix.bits().append(c),
                                   e.label.suffix.bits().drop_last());
          else
            expected = benes_label(stage + 1, e.label.prefix.bits().drop_last(),
                                   e.label.suffix.bits().append(c));
          LinkTarget got = t.trace_link(e.label, c);
          ASSERT_FALSE(got.is_port());
          EXPECT_EQ(got.element, expected);
        }
    // Last stage exits to the port spelled by suffix plus link bit.
    for (const auto& e : t.stages.back())
      for (int c = 0; c < 2; ++c) {
        LinkTarget got = t.trace_link(e.label, c);
        ASSERT_TRUE(got.is_port());
        EXPECT_EQ(got.port, static_cast<int>(e.label.suffix.bits().append(c).value()));
      }
  }
}

TEST(BuildBenes, LabelMultisetsAreSymmetricAcrossTheMiddle) {
  for (int ports : {4, 8, 16}) {
    NetworkTopology t = build_benes(ports);
    int n = t.params.n;
    for (int i = 1; i <= n; ++i) {
      std::multiset<std::pair<LabelPart, LabelPart>> lhs, rhs;
      for (const auto& e : t.stages[static_cast<std::size_t>(i - 1)])
        lhs.insert({e.label.prefix, e.label.suffix});
      for (const auto& e : t.stages[static_cast<std::size_t>(2 * n - i - 1)])
        rhs.insert({e.label.prefix, e.label.suffix});
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(BuildBenes, LinkTracingIsTotal) {
  for (int ports : {2, 4, 8, 16}) {
    NetworkTopology t = build_benes(ports);
    EXPECT_NO_THROW(t.validate());
  }
}

TEST(BuildClos, SmallSymmetricNetwork) {
  NetworkTopology t = build_clos(2, 2, 2);
  ASSERT_EQ(t.stage_count(), 3);
  EXPECT_EQ(t.stages[0].size(), 2u);
  EXPECT_EQ(t.stages[1].size(), 2u);
  EXPECT_EQ(t.stages[2].size(), 2u);
  for (const auto& e : t.stages[1]) {
    EXPECT_EQ(e.fan_in, 2);
    EXPECT_EQ(e.fan_out(), 2);
  }
  t.validate();
}

TEST(BuildClos, DegenerateSingleWire) {
  NetworkTopology t = build_clos(1, 1, 1);
  ASSERT_EQ(t.stage_count(), 3);
  for (const auto& stage : t.stages) {
    ASSERT_EQ(stage.size(), 1u);
    EXPECT_EQ(stage[0].fan_in, 1);
    EXPECT_EQ(stage[0].fan_out(), 1);
  }
  t.validate();
}

TEST(BuildClos, WideCentralStage) {
  NetworkTopology t = build_clos(2, 4, 4);
  EXPECT_EQ(t.n_in, 8);
  ASSERT_EQ(t.stage_count(), 3);
  EXPECT_EQ(t.stages[0].size(), 4u);
  EXPECT_EQ(t.stages[1].size(), 4u);
  for (const auto& e : t.stages[1]) {
    EXPECT_EQ(e.fan_in, 4);
    EXPECT_EQ(e.fan_out(), 4);
  }
  t.validate();
}

TEST(BuildClos, InputPortsLandOnTheRightModule) {
  NetworkTopology t = build_clos(3, 2, 2);
  EXPECT_EQ(t.inputs[0].element.suffix.index(), 0);
  EXPECT_EQ(t.inputs[2].element.suffix.index(), 0);
  EXPECT_EQ(t.inputs[3].element.suffix.index(), 1);
  EXPECT_EQ(t.inputs[5].element.suffix.index(), 1);
}

TEST(BuildClos, RejectsZeroParameters) {
  EXPECT_THROW(build_clos(0, 2, 2), InvalidParameterError);
  EXPECT_THROW(build_clos(2, 0, 2), InvalidParameterError);
  EXPECT_THROW(build_clos(2, 2, 0), InvalidParameterError);
}

TEST(BuildCopyNetwork, SharesTheBenesShapeWithCopyCapability) {
  NetworkTopology t = build_copy_network(8);
  NetworkTopology b = build_benes(8);
  ASSERT_EQ(t.stage_count(), b.stage_count());
  for (int s = 0; s < t.stage_count(); ++s) {
    ASSERT_EQ(t.stages[static_cast<std::size_t>(s)].size(),
              b.stages[static_cast<std::size_t>(s)].size());
    for (std::size_t e = 0; e < t.stages[static_cast<std::size_t>(s)].size(); ++e) {
      EXPECT_EQ(t.stages[static_cast<std::size_t>(s)][e].label,
                b.stages[static_cast<std::size_t>(s)][e].label);
      EXPECT_EQ(t.stages[static_cast<std::size_t>(s)][e].cap, Capability::CopyCapable);
      EXPECT_EQ(t.stages[static_cast<std::size_t>(s)][e].cls, ElementClass::Switch);
    }
  }
  t.validate();

  NetworkTopology small = build_copy_network(2);
  ASSERT_EQ(small.stage_count(), 1);
  EXPECT_EQ(small.stages[0][0].cap, Capability::CopyCapable);
}

TEST(BuildCascade, StageCounts) {
  EXPECT_EQ(build_multicast_cascade(8, true).stage_count(), 9);
  EXPECT_EQ(build_multicast_cascade(8, false).stage_count(), 10);
  EXPECT_EQ(build_multicast_cascade(2, true).stage_count(), 1);
  EXPECT_EQ(build_multicast_cascade(2, false).stage_count(), 2);
}

TEST(BuildCascade, ValidatesAndKeepsCopyCapabilityUpToTheFusedStage) {
  for (bool fuse : {true, false}) {
    for (int ports : {2, 4, 8}) {
      NetworkTopology t = build_multicast_cascade(ports, fuse);
      t.validate();
      int n = t.params.n;
      int copy_stages = 2 * n - 1;  // fused: the boundary stage itself still copies
      for (int s = 0; s < t.stage_count(); ++s)
        for (const auto& e : t.stages[static_cast<std::size_t>(s)])
          EXPECT_EQ(e.cap, s < copy_stages ? Capability::CopyCapable
                                           : Capability::PointToPoint)
              << "stage " << s + 1 << " fuse=" << fuse;
    }
  }
}

TEST(BuildCascade, UnfusedBoundaryWiresPortwise) {
  NetworkTopology t = build_multicast_cascade(8, false);
  // Copy-half output node (phi, b) reaches the point-to-point node (phi, b)
  // on both links: the redundancy the fused form removes.
  LinkTarget l0 = t.trace_link(bl(5, "", "10"), 0);
  LinkTarget l1 = t.trace_link(bl(5, "", "10"), 1);
  ASSERT_FALSE(l0.is_port());
  ASSERT_FALSE(l1.is_port());
  EXPECT_EQ(l0.element, bl(6, "", "10"));
  EXPECT_EQ(l1.element, bl(6, "", "10"));
}

TEST(BuildCascade, FusedStageRoutesIntoTheSecondHalf) {
  NetworkTopology t = build_multicast_cascade(8, true);
  ASSERT_EQ(t.stage_count(), 9);
  LinkTarget l1 = t.trace_link(bl(5, "", "10"), 1);
  ASSERT_FALSE(l1.is_port());
  EXPECT_EQ(l1.element, bl(6, "1", "1"));
}

}  // namespace
}  // namespace cnet
