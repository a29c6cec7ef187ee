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

#ifndef HOLOSLICE_TESTS_SUPPORT_ORACLE_HPP_
#define HOLOSLICE_TESTS_SUPPORT_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Undirected graph by adjacency; nodes in `transit` may be intermediate hops.
struct Graph {
  std::map<std::string, std::set<std::string>> adj;
  std::set<std::string> transit;

  void link(const std::string& a, const std::string& b) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
};

// Every simple path from src to dst whose interior nodes are transit nodes.
std::vector<std::vector<std::string>> all_simple_paths(
    const Graph& g, const std::string& src, const std::string& dst);

// Minimum hop count, then lexicographically smallest hop sequence.
std::optional<std::vector<std::string>> best_path(const Graph& g,
                                                  const std::string& src,
                                                  const std::string& dst);

// ceil(bytes * 8 s / bps) in nanoseconds.
std::int64_t tx_ns(std::uint64_t bytes, std::uint64_t bps);

// Size after scaling by num/den, rounded up, at least one byte.
std::uint32_t scale(std::uint32_t size, std::uint32_t num, std::uint32_t den);

// Tandem FIFO queues. Links are numbered so that every packet's route visits
// them in increasing order.
struct Link {
  std::uint64_t bps = 0;
  std::int64_t prop_ns = 0;
};

struct Packet {
  std::int64_t inject_ns = 0;
  std::uint32_t size = 0;
  std::vector<int> route;  // link ids
  // Processing at the node after route[i], for i < route.size() - 1.
  std::vector<std::int64_t> delay_after;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ratio_after;  // num/den
};

struct Delivery {
  std::int64_t received_ns = 0;
  std::uint32_t size = 0;
};

std::vector<Delivery> tandem(const std::vector<Link>& links,
                             const std::vector<Packet>& packets);

}  // namespace oracle

#endif  // HOLOSLICE_TESTS_SUPPORT_ORACLE_HPP_
