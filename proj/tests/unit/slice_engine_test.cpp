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

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "control/catalog.hpp"
#include "control/slice_engine.hpp"
#include "control/slice_json.hpp"

namespace holoslice::control {
namespace {

const std::vector<NodeId> kHosts{"host1", "host2", "host3", "host4", "host5"};
constexpr Bandwidth kConcertBps = 2'160'000;

std::shared_ptr<const net::Topology> eval_topo() {
  static auto topo = std::make_shared<const net::Topology>(
      net::load_topology_file(std::string(HOLOSLICE_DATA_DIR) + "/eval.topo"));
  return topo;
}

struct Rig {
  Network network{eval_topo()};
  std::unique_ptr<Adapter> adapter;
  std::unique_ptr<SliceEngine> engine;

  explicit Rig(EngineConfig config = {},
               BackendKind backend = BackendKind::kController) {
    adapter = make_adapter(backend, network);
    engine = std::make_unique<SliceEngine>(network, *adapter,
                                           IncCatalog::defaults(), config);
  }
};

SliceRequest concert(bool inc, PlacementKind kind = PlacementKind::kNearSource) {
  SliceRequest r;
  r.bandwidth = kConcertBps;
  r.latency_bound = std::chrono::milliseconds(50);
  r.attendees = kHosts;
  r.max_attendees = 5;
  r.source = "streamsrv";
  r.inc_enabled = inc;
  if (inc) r.inc_function = "transcoder";
  r.placement.kind = kind;
  return r;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

// Installed state of every switch; allocation counters are left out.
std::map<NodeId, std::string> installed(const Network& network) {
  std::map<NodeId, std::string> out;
  for (const auto& [id, sw] : network.switches()) {
    std::string s = std::to_string(sw.cpu_used()) + "|";
    for (const auto& [key, entry] : sw.tables()) {
      s += to_string(key.tag) + ":" + key.dst + ";";
    }
    for (const auto& [ref, ext] : sw.externs()) s += ref.id + ";";
    out[id] = s;
  }
  return out;
}

std::vector<std::string> step_names(const SliceRecord& r) {
  std::vector<std::string> out;
  for (const auto& s : r.creation_steps) out.push_back(s.name);
  return out;
}

std::vector<NodeId> placement_nodes(const SliceRecord& r) {
  std::vector<NodeId> out;
  for (const auto& p : r.placements) out.push_back(p.node);
  return out;
}

TEST(Catalog, DefaultsAndLookup) {
  auto c = IncCatalog::defaults();
  const auto& t = select_program(c, "transcoder");
  EXPECT_EQ(t.spec.ratio, 0.4);
  EXPECT_EQ(t.spec.per_packet_delay, from_millis(0.2));
  EXPECT_EQ(code_of([&] { select_program(c, ""); }), ErrorCode::kUnknownProgram);
  EXPECT_EQ(code_of([&] { c.add(IncCatalogEntry{"transcoder", t.spec}); }),
            ErrorCode::kDuplicateProgram);
}

TEST(Catalog, LoadsFiles) {
  auto c = IncCatalog::from_file(std::string(HOLOSLICE_DATA_DIR) + "/catalog.json");
  EXPECT_EQ(c.entries().size(), 1u);
  EXPECT_EQ(c.select("transcoder").spec.cpu_cost, 0.5);
  EXPECT_EQ(code_of([] {
              IncCatalog::from_json(R"({"entries": [{"name":"t","ratio":0.5},
                                                    {"name":"t","ratio":0.6}]})");
            }),
            ErrorCode::kDuplicateProgram);
  EXPECT_EQ(code_of([] { IncCatalog::from_json("{[}"); }), ErrorCode::kParse);
}

TEST(Validate, RejectsBadRequests) {
  auto topo = eval_topo();
  auto r = concert(false);
  r.attendees.clear();
  EXPECT_EQ(code_of([&] { r.validate(*topo); }), ErrorCode::kInvalidArgument);
  r = concert(false);
  r.max_attendees = 4;
  EXPECT_EQ(code_of([&] { r.validate(*topo); }), ErrorCode::kInvalidArgument);
  r = concert(false);
  r.bandwidth = 0;
  EXPECT_EQ(code_of([&] { r.validate(*topo); }), ErrorCode::kInvalidArgument);
  r = concert(false);
  r.attendees.push_back("host9");
  r.max_attendees = 6;
  EXPECT_EQ(code_of([&] { r.validate(*topo); }), ErrorCode::kUnknownNode);
  r = concert(true);
  r.relay = "edge2";
  EXPECT_EQ(code_of([&] { r.validate(*topo); }), ErrorCode::kInvalidArgument);
}

TEST(Create, NonIncHasThreeSteps) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(false));
  EXPECT_EQ(step_names(rec),
            (std::vector<std::string>{"validate_request", "collect_stats", "embed"}));
  EXPECT_TRUE(rec.placements.empty());
  EXPECT_EQ(rec.state, SliceState::kActive);
  EXPECT_EQ(rec.tag, kFirstSliceTag);
}

TEST(Create, IncNearSourcePlacesAtS10) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(true));
  EXPECT_EQ(step_names(rec),
            (std::vector<std::string>{"validate_request", "collect_stats", "embed",
                                      "select_program", "place_inc"}));
  EXPECT_EQ(placement_nodes(rec), (std::vector<NodeId>{"S10"}));
  EXPECT_EQ(rec.program, "transcoder");
  EXPECT_EQ(rec.placements[0].serves.size(), 5u);
  // Five streams at 180 packets/s each, 0.5 units per packet/s.
  EXPECT_DOUBLE_EQ(rec.placements[0].cpu_charge, 450.0);
  EXPECT_DOUBLE_EQ(rig.network.switch_state("S10").cpu_used(), 450.0);
}

TEST(Create, IncNearAudience) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(true, PlacementKind::kNearAudience));
  auto nodes = placement_nodes(rec);
  EXPECT_EQ(std::set<NodeId>(nodes.begin(), nodes.end()),
            (std::set<NodeId>{"S11", "S1", "S2"}));
  EXPECT_EQ(nodes.size(), 3u);
}

TEST(Embed, CanonicalRoutes) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(false));
  const auto& p = rec.embedding.paths;
  EXPECT_EQ(net::to_string(p.at("host1")), "streamsrv-S10-S8-S11-host1");
  EXPECT_EQ(net::to_string(p.at("host2")), "streamsrv-S10-S8-S11-host2");
  EXPECT_EQ(net::to_string(p.at("host3")), "streamsrv-S10-S7-S4-S2-host3");
  EXPECT_EQ(net::to_string(p.at("host4")), "streamsrv-S10-S7-S4-S2-host4");
  EXPECT_EQ(net::to_string(p.at("host5")), "streamsrv-S10-S8-S5-S1-host5");
  // Shared prefix reserved once.
  auto ledger = rig.engine->ledger();
  EXPECT_EQ(ledger.at(Channel{"streamsrv", "S10"}), kConcertBps);
  EXPECT_EQ(ledger.at(Channel{"S10", "S8"}), kConcertBps);
}

TEST(Embed, RelayAndRouteHint) {
  Rig rig;
  auto r = concert(false);
  r.relay = "edge1";
  auto plain = embed(r, *eval_topo(), rig.adapter->collect());
  // Two minimum-hop routes reach S3 from S5; the smallest next hop wins.
  EXPECT_EQ(net::to_string(*plain.relay_path), "streamsrv-S10-S8-S5-S1-S3-edge1");
  r.route_hints["edge1"] =
      net::PathSpec{{"streamsrv", "S10", "S8", "S5", "S6", "S3", "edge1"}};
  auto pinned = embed(r, *eval_topo(), rig.adapter->collect());
  EXPECT_EQ(net::to_string(*pinned.relay_path), "streamsrv-S10-S8-S5-S6-S3-edge1");
  EXPECT_EQ(net::to_string(pinned.paths.at("host1")), "edge1-S3-S6-S9-S11-host1");
  EXPECT_EQ(net::to_string(pinned.paths.at("host5")), "edge1-S3-S1-host5");
}

TEST(Embed, ExactResidualIsFeasible) {
  Rig rig;
  auto r = concert(false);
  r.attendees = {"host1"};
  r.max_attendees = 1;
  r.bandwidth = 12'000'000;
  r.latency_bound = Duration{0};
  rig.engine->create_slice(r);
  EXPECT_EQ(rig.engine->ledger().at(Channel{"streamsrv", "S10"}), 12'000'000u);
  auto snap = rig.engine->collect_stats();
  EXPECT_EQ(snap.link_stats.at(Channel{"streamsrv", "S10"}).reserved, 12'000'000u);
}

TEST(Embed, SecondEightMbpsSliceRejected) {
  Rig rig;
  auto r = concert(false);
  r.attendees = {"host1"};
  r.max_attendees = 1;
  r.bandwidth = 8'000'000;
  rig.engine->create_slice(r);
  EXPECT_EQ(code_of([&] { rig.engine->create_slice(r); }), ErrorCode::kInfeasible);
  r.bandwidth = 13'000'000;
  Rig fresh;
  EXPECT_EQ(code_of([&] { fresh.engine->create_slice(r); }), ErrorCode::kInfeasible);
}

TEST(Create, LatencyBoundEnforced) {
  Rig rig;
  auto r = concert(false);
  r.latency_bound = from_millis(1);
  EXPECT_EQ(code_of([&] { rig.engine->create_slice(r); }), ErrorCode::kInfeasible);
  EXPECT_TRUE(rig.engine->list_slices().empty());
}

TEST(Create, UnknownProgram) {
  Rig rig;
  auto r = concert(true);
  r.inc_function = "upscaler";
  EXPECT_EQ(code_of([&] { rig.engine->create_slice(r); }), ErrorCode::kUnknownProgram);
  // A missing or empty name is a malformed request, not a catalog miss.
  r.inc_function = "";
  EXPECT_EQ(code_of([&] { rig.engine->create_slice(r); }), ErrorCode::kInvalidArgument);
  r.inc_function.reset();
  EXPECT_EQ(code_of([&] { rig.engine->create_slice(r); }), ErrorCode::kInvalidArgument);
}

TEST(Placement, ExplicitChecks) {
  Rig rig;
  auto r = concert(true, PlacementKind::kExplicit);
  r.placement.nodes = {"S8", "S7"};
  auto rec = rig.engine->create_slice(r);
  EXPECT_EQ(placement_nodes(rec), (std::vector<NodeId>{"S8", "S7"}));
  for (auto nodes : std::vector<std::vector<NodeId>>{
           {"S3"}, {"host1"}, {"S10", "S8"}, {}}) {
    Rig other;
    r.placement.nodes = nodes;
    EXPECT_EQ(code_of([&] { other.engine->create_slice(r); }),
              ErrorCode::kInvalidArgument);
  }
}

TEST(Placement, InsufficientCpuEverywhere) {
  Rig rig;
  auto snap = rig.adapter->collect();
  for (auto& [node, s] : snap.switch_stats) s.cpu_used = s.cpu_capacity;
  auto r = concert(true);
  auto emb = embed(r, *eval_topo(), snap);
  const auto& spec = IncCatalog::defaults().select("transcoder").spec;
  for (auto kind : {PlacementKind::kNearSource, PlacementKind::kNearAudience,
                    PlacementKind::kGreedyMinLoad}) {
    EXPECT_EQ(code_of([&] {
                place_inc({kind, {}}, emb.paths, snap.switch_stats, spec, 180.0,
                          *eval_topo());
              }),
              ErrorCode::kNoFeasiblePlacement);
  }
}

TEST(Placement, NearSourceFallsBackPastFullSwitch) {
  // With S10 full there is no other switch common to all five paths.
  Rig rig;
  auto snap = rig.adapter->collect();
  snap.switch_stats.at("S10").cpu_used = 1000;
  auto emb = embed(concert(true), *eval_topo(), snap);
  const auto& spec = IncCatalog::defaults().select("transcoder").spec;
  EXPECT_EQ(code_of([&] {
              place_inc({PlacementKind::kNearSource, {}}, emb.paths,
                        snap.switch_stats, spec, 180.0, *eval_topo());
            }),
            ErrorCode::kNoFeasiblePlacement);
  // NearAudience walks back toward the source when the last switch is full.
  snap = rig.adapter->collect();
  snap.switch_stats.at("S11").cpu_used = 1000;
  auto nodes = place_inc({PlacementKind::kNearAudience, {}}, emb.paths,
                         snap.switch_stats, spec, 180.0, *eval_topo());
  EXPECT_EQ(std::set<NodeId>(nodes.begin(), nodes.end()),
            (std::set<NodeId>{"S8", "S1", "S2"}));
}

// Independent static byte accounting: each path is walked on its own; a
// channel carries full size until the path passes the transcoding switch.
double oracle_bytes(const std::map<NodeId, std::vector<NodeId>>& paths,
                    const NodeId& at, double ratio) {
  double total = 0;
  for (const auto& [dst, hops] : paths) {
    const bool has = std::find(hops.begin(), hops.end(), at) != hops.end();
    bool passed = false;
    for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
      if (has && hops[i] == at) passed = true;
      total += passed ? ratio : 1.0;
    }
  }
  return total;
}

TEST(Placement, GreedyMinLoadMatchesStaticOracle) {
  const std::map<NodeId, std::vector<NodeId>> paths{
      {"host1", {"streamsrv", "S10", "S8", "S11", "host1"}},
      {"host2", {"streamsrv", "S10", "S8", "S11", "host2"}},
      {"host3", {"streamsrv", "S10", "S7", "S4", "S2", "host3"}},
      {"host4", {"streamsrv", "S10", "S7", "S4", "S2", "host4"}},
      {"host5", {"streamsrv", "S10", "S8", "S5", "S1", "host5"}}};
  NodeId best;
  double best_bytes = 1e18;
  for (const char* c : {"S1", "S10", "S11", "S2", "S4", "S5", "S7", "S8"}) {
    const double b = oracle_bytes(paths, c, 0.4);
    if (b < best_bytes) {
      best_bytes = b;
      best = c;
    }
  }
  ASSERT_EQ(best, "S10");
  Rig rig;
  auto rec = rig.engine->create_slice(concert(true, PlacementKind::kGreedyMinLoad));
  EXPECT_EQ(placement_nodes(rec), (std::vector<NodeId>{best}));
  std::map<NodeId, NodeId> at;
  for (const auto& h : kHosts) at[h] = "S10";
  EXPECT_DOUBLE_EQ(static_link_load(rec.embedding.paths, at, 0.4), best_bytes);
}

TEST(Lifecycle, DeleteRestoresState) {
  Rig rig;
  const auto before = rig.engine->collect_stats();
  const auto switches_before = installed(rig.network);
  auto rec = rig.engine->create_slice(concert(true));
  EXPECT_FALSE(rig.engine->collect_stats().same_state(before));
  auto gone = rig.engine->delete_slice(rec.id);
  EXPECT_EQ(gone.state, SliceState::kDecommissioned);
  EXPECT_TRUE(rig.engine->collect_stats().same_state(before));
  EXPECT_TRUE(rig.engine->ledger().empty());
  EXPECT_EQ(installed(rig.network), switches_before);
  EXPECT_EQ(code_of([&] { rig.engine->delete_slice(rec.id); }),
            ErrorCode::kSliceNotActive);
  EXPECT_EQ(code_of([&] { rig.engine->delete_slice(999); }),
            ErrorCode::kUnknownSlice);
  EXPECT_EQ(rig.engine->get_slice(rec.id)->state, SliceState::kDecommissioned);
}

TEST(Lifecycle, UpdateLowerBandwidthShrinks) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(true));
  SliceUpdate u;
  u.bandwidth = 1'000'000;
  auto updated = rig.engine->update_slice(rec.id, u);
  EXPECT_EQ(updated.revision, rec.revision + 1);
  EXPECT_EQ(updated.tag, rec.tag);
  for (const auto& [c, bps] : updated.embedding.reservations) EXPECT_EQ(bps, 1'000'000u);
  EXPECT_EQ(rig.engine->ledger().at(Channel{"S10", "S8"}), 1'000'000u);
  EXPECT_LT(rig.network.switch_state("S10").cpu_used(), 450.0);
}

TEST(Lifecycle, UpdateAttendees) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(true, PlacementKind::kNearAudience));
  SliceUpdate u;
  u.attendees = std::vector<NodeId>{"host1", "host3"};
  auto updated = rig.engine->update_slice(rec.id, u);
  EXPECT_EQ(updated.embedding.paths.size(), 2u);
  auto nodes = placement_nodes(updated);
  EXPECT_EQ(std::set<NodeId>(nodes.begin(), nodes.end()),
            (std::set<NodeId>{"S11", "S2"}));
  EXPECT_EQ(rig.network.switch_state("S1").cpu_used(), 0.0);
}

TEST(Lifecycle, InfeasibleUpdateLeavesEverythingUnchanged) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(true));
  const auto snap = rig.engine->collect_stats();
  const auto switches = rig.network.switches();
  SliceUpdate u;
  u.bandwidth = 20'000'000;
  EXPECT_EQ(code_of([&] { rig.engine->update_slice(rec.id, u); }),
            ErrorCode::kInfeasible);
  EXPECT_TRUE(rig.engine->collect_stats().same_state(snap));
  EXPECT_EQ(rig.network.switches(), switches);
  EXPECT_EQ(*rig.engine->get_slice(rec.id), rec);
}

TEST(Lifecycle, UnavailableBackendFailsCleanly) {
  Rig rig;
  auto rec = rig.engine->create_slice(concert(false));
  rig.adapter->set_available(false);
  EXPECT_EQ(code_of([&] { rig.engine->create_slice(concert(false)); }),
            ErrorCode::kBackendUnavailable);
  EXPECT_EQ(code_of([&] { rig.engine->delete_slice(rec.id); }),
            ErrorCode::kBackendUnavailable);
  rig.adapter->set_available(true);
  EXPECT_EQ(rig.engine->get_slice(rec.id)->state, SliceState::kActive);
  EXPECT_EQ(rig.engine->list_slices().size(), 1u);
}

TEST(Tags, SmallestFreeValueReused) {
  Rig rig;
  auto r = concert(false);
  r.bandwidth = 100'000;
  auto a = rig.engine->create_slice(r);
  auto b = rig.engine->create_slice(r);
  auto c = rig.engine->create_slice(r);
  EXPECT_EQ(a.tag.ethertype, 0x88B5);
  EXPECT_EQ(b.tag.ethertype, 0x88B6);
  EXPECT_EQ(c.tag.ethertype, 0x88B7);
  rig.engine->delete_slice(b.id);
  EXPECT_EQ(rig.engine->create_slice(r).tag.ethertype, 0x88B6);
}

TEST(CreationTime, IncCostsTwoMoreSteps) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    EngineConfig cfg;
    auto rnd = [&] { return Duration(1 + rng() % 200'000'000); };
    cfg.costs = StepCosts{rnd(), rnd(), rnd(), rnd(), rnd()};
    Rig plain(cfg, trial % 2 ? BackendKind::kController : BackendKind::kDirectDevice);
    Rig inc(cfg, trial % 2 ? BackendKind::kController : BackendKind::kDirectDevice);
    auto a = plain.engine->create_slice(concert(false));
    auto b = inc.engine->create_slice(concert(true, PlacementKind::kNearAudience));
    EXPECT_EQ(b.creation_steps.size(), a.creation_steps.size() + 2);
    EXPECT_GT(b.creation_time(), a.creation_time());
  }
}

TEST(CreationTime, DefaultsIncludeAdapterCost) {
  Rig rig;
  auto a = rig.engine->create_slice(concert(false));
  Duration sum{0};
  for (const auto& s : a.creation_steps) sum += s.cost;
  EXPECT_EQ(a.creation_time(), sum);
  // 20 + 60 + 100 ms plus 5 ms per installed rule.
  EXPECT_EQ(a.creation_time(),
            std::chrono::milliseconds(180) +
                kControllerCommandCost * static_cast<int>(a.rules.size()));
}

// Randomised create/update/delete sequences; after every operation the
// reservation book stays within capacity and agrees with the engine ledger.
TEST(CapacitySafety, ThousandRandomSequences) {
  std::mt19937 rng(1234);
  auto topo = eval_topo();
  const PlacementKind kinds[] = {PlacementKind::kNearSource,
                                 PlacementKind::kNearAudience,
                                 PlacementKind::kGreedyMinLoad};
  std::size_t failures = 0, successes = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    Rig rig;
    std::vector<SliceId> ids;
    for (int op = 0; op < 8; ++op) {
      const auto before = rig.engine->collect_stats();
      const auto before_switches = rig.network.switches();
      const int what = static_cast<int>(rng() % 4);
      try {
        if (what <= 1 || ids.empty()) {
          SliceRequest r;
          r.source = "streamsrv";
          for (const auto& h : kHosts) {
            if (rng() % 2) r.attendees.push_back(h);
          }
          if (r.attendees.empty()) r.attendees.push_back("host3");
          r.max_attendees = static_cast<std::uint32_t>(r.attendees.size());
          r.bandwidth = 500'000 + rng() % 7'500'000;
          r.inc_enabled = rng() % 2;
          if (r.inc_enabled) {
            r.inc_function = "transcoder";
            r.placement.kind = kinds[rng() % 3];
          } else if (rng() % 3 == 0) {
            r.relay = rng() % 2 ? "edge1" : "edge2";
          }
          ids.push_back(rig.engine->create_slice(r).id);
        } else if (what == 2) {
          SliceUpdate u;
          u.bandwidth = 500'000 + rng() % 9'000'000;
          rig.engine->update_slice(ids[rng() % ids.size()], u);
        } else {
          rig.engine->delete_slice(ids[rng() % ids.size()]);
        }
        ++successes;
      } catch (const Error&) {
        ++failures;
        ASSERT_TRUE(rig.engine->collect_stats().same_state(before)) << "seq " << seq;
        ASSERT_EQ(rig.network.switches(), before_switches);
      }
      const auto ledger = rig.engine->ledger();
      ASSERT_EQ(ledger, rig.network.reserved());
      for (const auto& [c, bps] : ledger) ASSERT_LE(bps, topo->capacity(c));
      for (const auto& [id, sw] : rig.network.switches()) {
        ASSERT_LE(sw.cpu_used(), sw.cpu_capacity() + 1e-9);
      }
      std::set<std::uint16_t> tags;
      for (const auto& rec : rig.engine->list_slices()) {
        if (rec.state != SliceState::kActive) continue;
        ASSERT_TRUE(tags.insert(rec.tag.ethertype).second);
        for (const auto& pl : rec.placements) {
          bool on_path = false;
          for (const auto& [dst, p] : rec.embedding.paths) {
            on_path = on_path || p.contains(pl.node);
          }
          ASSERT_TRUE(on_path);
        }
      }
    }
  }
  EXPECT_GT(failures, 0u);
  EXPECT_GT(successes, failures);
}

TEST(SliceJson, RequestRoundTripAndErrors) {
  auto r = concert(true, PlacementKind::kExplicit);
  r.placement.nodes = {"S10"};
  r.route_hints["host1"] = net::PathSpec{{"streamsrv", "S10", "S8", "S11", "host1"}};
  EXPECT_EQ(slice_request_from_json(to_json(r)), r);
  EXPECT_EQ(code_of([] {
              slice_request_from_json(nlohmann::json::parse(
                  R"({"bandwidth_bps": -1, "attendees": ["host1"], "source": "streamsrv"})"));
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              slice_request_from_json(nlohmann::json::parse(R"({"attendees": 3})"));
            }),
            ErrorCode::kParse);
  auto mbps = slice_request_from_json(nlohmann::json::parse(
      R"({"bandwidth_mbps": 2.16, "attendees": ["host1"], "source": "streamsrv",
          "placement": "near_audience"})"));
  EXPECT_EQ(mbps.bandwidth, kConcertBps);
  EXPECT_EQ(mbps.max_attendees, 1u);
  EXPECT_EQ(mbps.placement.kind, PlacementKind::kNearAudience);
}

TEST(SliceJson, RecordDocument) {
  Rig rig;
  auto doc = to_json(rig.engine->create_slice(concert(true)));
  EXPECT_EQ(doc.at("schema"), kSliceSchema);
  EXPECT_EQ(doc.at("tag"), "0x88b5");
  EXPECT_EQ(doc.at("state"), "active");
  EXPECT_EQ(doc.at("creation_steps").size(), 5u);
  EXPECT_EQ(doc.at("placements")[0].at("node"), "S10");
}

}  // namespace
}  // namespace holoslice::control
