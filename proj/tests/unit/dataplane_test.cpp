/* Copyright 2026 The holoslice Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>

#include <gtest/gtest.h>

#include "dataplane/switch_state.hpp"

namespace holoslice::dataplane {
namespace {

constexpr SliceTag kA{0x88B5};
constexpr SliceTag kB{0x88B6};

ExternSpec transcoder(double cost = 10.0, double ratio = 0.4) {
  return ExternSpec{"transcoder", ratio, from_millis(0.2), cost};
}

Packet packet(SliceTag tag, const NodeId& dst, std::uint32_t size) {
  Packet p;
  p.tag = tag;
  p.stream_id = "s";
  p.dst = dst;
  p.size = size;
  return p;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

TEST(SliceTagFormat, RoundTrips) {
  EXPECT_EQ(to_string(kA), "0x88b5");
  EXPECT_EQ(parse_slice_tag("0x88B5"), kA);
  EXPECT_EQ(parse_slice_tag("34998"), kB);
  EXPECT_THROW(parse_slice_tag("0x1ffff"), Error);
  EXPECT_THROW(parse_slice_tag("tag"), Error);
}

TEST(InstallEntry, ForwardEntryOnEmptySwitch) {
  SwitchState s("S10", 100, from_millis(0.01));
  s.install_entry(TableEntry{MatchKey{kA, "host1"}, Forward{"S8"}});
  EXPECT_EQ(s.tables().size(), 1u);
  ASSERT_NE(s.lookup(kA, "host1"), nullptr);
  EXPECT_EQ(s.lookup(kA, "host1")->action, Action(Forward{"S8"}));
  EXPECT_EQ(s.lookup(kB, "host1"), nullptr);
}

TEST(InstallEntry, DuplicateMatchRejected) {
  SwitchState s("S10", 100, from_millis(0.01));
  s.install_entry(TableEntry{MatchKey{kA, "host1"}, Forward{"S8"}});
  EXPECT_EQ(code_of([&] {
              s.install_entry(TableEntry{MatchKey{kA, "host1"}, Forward{"S7"}});
            }),
            ErrorCode::kDuplicateEntry);
  EXPECT_EQ(s.lookup(kA, "host1")->action, Action(Forward{"S8"}));
}

TEST(InstallEntry, UnknownExternRejected) {
  SwitchState s("S10", 100, from_millis(0.01));
  EXPECT_EQ(code_of([&] {
              s.install_entry(TableEntry{
                  MatchKey{kA, "host1"},
                  TranscodeThenForward{ExternRef{"transcoder#0"}, "S8"}});
            }),
            ErrorCode::kUnknownExtern);
  EXPECT_TRUE(s.tables().empty());
}

TEST(InstallExtern, ChargesCostTimesRate) {
  SwitchState s("S10", 100, from_millis(0.01));
  s.install_extern(transcoder(10.0), 1.0);
  EXPECT_DOUBLE_EQ(s.cpu_used(), 10.0);
  SwitchState t("S10", 100, from_millis(0.01));
  t.install_extern(transcoder(0.5), 40.0);
  EXPECT_DOUBLE_EQ(t.cpu_used(), 20.0);
}

TEST(InstallExtern, InsufficientCpu) {
  SwitchState s("S10", 100, from_millis(0.01));
  s.install_extern(transcoder(95.0), 1.0);
  EXPECT_FALSE(s.can_host(transcoder(10.0), 1.0));
  EXPECT_EQ(code_of([&] { s.install_extern(transcoder(10.0), 1.0); }),
            ErrorCode::kInsufficientCpu);
  EXPECT_DOUBLE_EQ(s.cpu_used(), 95.0);
  EXPECT_EQ(s.externs().size(), 1u);
}

TEST(InstallExtern, InvalidSpecRejected) {
  SwitchState s("S10", 100, from_millis(0.01));
  EXPECT_THROW(s.install_extern(transcoder(1.0, 0.0), 1.0), Error);
  EXPECT_THROW(s.install_extern(transcoder(1.0, 1.5), 1.0), Error);
  EXPECT_THROW(s.install_extern(transcoder(-1.0), 1.0), Error);
}

TEST(RemoveExtern, RefusedWhileReferencedThenFreesCpu) {
  SwitchState s("S10", 100, from_millis(0.01));
  auto ref = s.install_extern(transcoder(10.0), 1.0);
  s.install_entry(TableEntry{MatchKey{kA, "host1"}, TranscodeThenForward{ref, "S8"}});
  EXPECT_EQ(code_of([&] { s.remove_extern(ref); }), ErrorCode::kInvalidArgument);
  EXPECT_TRUE(s.remove_entry(MatchKey{kA, "host1"}));
  EXPECT_FALSE(s.remove_entry(MatchKey{kA, "host1"}));
  EXPECT_TRUE(s.remove_extern(ref));
  EXPECT_FALSE(s.remove_extern(ref));
  EXPECT_DOUBLE_EQ(s.cpu_used(), 0.0);
}

TEST(Process, ForwardKeepsSizeAddsPipelineDelay) {
  SwitchState s("S10", 100, from_millis(0.01));
  s.install_entry(TableEntry{MatchKey{kA, "host1"}, Forward{"S8"}});
  auto out = s.process(packet(kA, "host1", 1500));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].packet.size, 1500u);
  EXPECT_EQ(out[0].next_hop, "S8");
  EXPECT_EQ(out[0].extra_delay, from_millis(0.01));
  EXPECT_EQ(out[0].entry_tag, kA);
  EXPECT_FALSE(out[0].transcoded);
}

TEST(Process, TranscodeScalesSize) {
  SwitchState s("S10", 100, from_millis(0.01));
  auto ref = s.install_extern(transcoder(), 1.0);
  s.install_entry(TableEntry{MatchKey{kA, "host1"}, TranscodeThenForward{ref, "S8"}});
  auto out = s.process(packet(kA, "host1", 1500));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].packet.size, 600u);
  EXPECT_EQ(out[0].extra_delay, from_millis(0.01) + from_millis(0.2));
  EXPECT_TRUE(out[0].transcoded);
  EXPECT_EQ(s.process(packet(kA, "host1", 1001))[0].packet.size, 401u);
}

TEST(Process, RatioOneIsDelayOnly) {
  SwitchState s("S10", 100, from_millis(0.01));
  auto ref = s.install_extern(transcoder(1.0, 1.0), 1.0);
  s.install_entry(TableEntry{MatchKey{kA, "h"}, TranscodeThenForward{ref, "S8"}});
  auto out = s.process(packet(kA, "h", 1499));
  EXPECT_EQ(out[0].packet.size, 1499u);
  EXPECT_EQ(out[0].extra_delay, from_millis(0.21));
}

TEST(Process, ForeignTagDropped) {
  SwitchState s("S10", 100, from_millis(0.01));
  s.install_entry(TableEntry{MatchKey{kB, "host1"}, Forward{"S8"}});
  EXPECT_TRUE(s.process(packet(kA, "host1", 1500)).empty());
  s.install_entry(TableEntry{MatchKey{kA, "host2"}, Drop{}});
  EXPECT_TRUE(s.process(packet(kA, "host2", 1500)).empty());
}

TEST(ScaledSize, CeilingAndMonotone) {
  EXPECT_EQ(scaled_size(1500, 0.4), 600u);
  EXPECT_EQ(scaled_size(1, 0.01), 1u);
  EXPECT_EQ(scaled_size(3, 0.5), 2u);
  std::mt19937 rng(3);
  for (int i = 0; i < 5000; ++i) {
    const std::uint32_t size = 1 + rng() % 9000;
    const std::uint32_t num = 1 + rng() % 20;
    const std::uint32_t den = num + rng() % 20;
    const double ratio = static_cast<double>(num) / den;
    const std::uint64_t want =
        std::max<std::uint64_t>(1, (std::uint64_t{size} * num + den - 1) / den);
    EXPECT_EQ(scaled_size(size, ratio), want) << size << "*" << num << "/" << den;
    EXPECT_LE(scaled_size(size, ratio), size);
  }
  EXPECT_EQ(scaled_size(777, 1.0), 777u);
}

TEST(CpuInvariant, RandomInstallsNeverOverCommit) {
  std::mt19937 rng(5);
  SwitchState s("S1", 50, Duration{0});
  std::vector<ExternRef> refs;
  for (int i = 0; i < 2000; ++i) {
    if (rng() % 3 == 0 && !refs.empty()) {
      const std::size_t k = rng() % refs.size();
      s.remove_extern(refs[k]);
      refs.erase(refs.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      try {
        refs.push_back(s.install_extern(transcoder(1.0 + rng() % 10), 1.0));
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kInsufficientCpu);
      }
    }
    EXPECT_LE(s.cpu_used(), s.cpu_capacity() + 1e-9);
  }
}

}  // namespace
}  // namespace holoslice::dataplane
