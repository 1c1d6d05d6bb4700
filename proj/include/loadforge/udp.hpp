// Copyright 2026 The LoadForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Thin RAII wrapper over IPv4 UDP sockets.

#ifndef LOADFORGE_UDP_HPP_
#define LOADFORGE_UDP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace loadforge {

struct UdpEndpoint {
  uint32_t addr_be = 0;  // network byte order
  uint16_t port = 0;

  // Accepts "host:port" or "port" (host defaults to 127.0.0.1). Numeric
  // dotted-quad or resolvable names. Throws ValidationError on failure.
  static UdpEndpoint resolve(const std::string& spec);
  static UdpEndpoint loopback(uint16_t port);
  std::string to_string() const;
};

class UdpSocket {
 public:
  UdpSocket() = default;
  UdpSocket(UdpSocket&& other) noexcept;
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;
  ~UdpSocket();

  static UdpSocket open();
  // Binds immediately so port conflicts surface before any service starts.
  static UdpSocket bind(const std::string& bind_addr, uint16_t port);

  void enable_broadcast();
  void join_multicast(const std::string& group);
  // Source port actually bound (useful after binding port 0).
  uint16_t local_port() const;

  // Best-effort send; returns false instead of throwing.
  bool send_to(const UdpEndpoint& dest, const void* data, size_t len);

  // Blocks up to timeout_ms; empty optional on timeout. Datagrams longer
  // than 64 KiB cannot occur for this protocol.
  std::optional<std::vector<char>> recv(int timeout_ms);

  bool valid() const { return fd_ >= 0; }
  void close();

 private:
  int fd_ = -1;
};

}  // namespace loadforge

#endif  // LOADFORGE_UDP_HPP_
