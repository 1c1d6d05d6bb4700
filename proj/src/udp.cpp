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

#include "loadforge/udp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "loadforge/error.hpp"

namespace loadforge {

namespace {

sockaddr_in make_sockaddr(const UdpEndpoint& ep) {
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(ep.port);
  sa.sin_addr.s_addr = ep.addr_be;
  return sa;
}

}  // namespace

UdpEndpoint UdpEndpoint::resolve(const std::string& spec) {
  std::string host = "127.0.0.1";
  std::string port_text = spec;
  if (auto colon = spec.rfind(':'); colon != std::string::npos) {
    host = spec.substr(0, colon);
    port_text = spec.substr(colon + 1);
  }
  char* end = nullptr;
  const long port = std::strtol(port_text.c_str(), &end, 10);
  if (end == port_text.c_str() || *end != '\0' || port < 1 || port > 65535) {
    throw ValidationError("packet_sink", "bad port in '" + spec + "'");
  }

  UdpEndpoint ep;
  ep.port = static_cast<uint16_t>(port);
  in_addr parsed{};
  if (inet_aton(host.c_str(), &parsed) != 0) {
    ep.addr_be = parsed.s_addr;
    return ep;
  }
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_DGRAM;
  addrinfo* result = nullptr;
  if (getaddrinfo(host.c_str(), nullptr, &hints, &result) != 0 || result == nullptr) {
    throw ValidationError("packet_sink", "cannot resolve host '" + host + "'");
  }
  ep.addr_be = reinterpret_cast<sockaddr_in*>(result->ai_addr)->sin_addr.s_addr;
  freeaddrinfo(result);
  return ep;
}

UdpEndpoint UdpEndpoint::loopback(uint16_t port) {
  UdpEndpoint ep;
  ep.addr_be = htonl(INADDR_LOOPBACK);
  ep.port = port;
  return ep;
}

std::string UdpEndpoint::to_string() const {
  in_addr a{};
  a.s_addr = addr_be;
  return std::string(inet_ntoa(a)) + ":" + std::to_string(port);
}

UdpSocket::UdpSocket(UdpSocket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

UdpSocket::~UdpSocket() { close(); }

void UdpSocket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

UdpSocket UdpSocket::open() {
  UdpSocket s;
  s.fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (s.fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  return s;
}

UdpSocket UdpSocket::bind(const std::string& bind_addr, uint16_t port) {
  UdpSocket s = open();
  int reuse = 1;
  ::setsockopt(s.fd_, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof reuse);
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(port);
  if (inet_aton(bind_addr.c_str(), &sa.sin_addr) == 0) {
    throw ValidationError("bind", "bad bind address '" + bind_addr + "'");
  }
  if (::bind(s.fd_, reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0) {
    throw std::runtime_error("bind " + bind_addr + ":" + std::to_string(port) + ": " +
                             std::strerror(errno));
  }
  return s;
}

void UdpSocket::enable_broadcast() {
  int on = 1;
  if (::setsockopt(fd_, SOL_SOCKET, SO_BROADCAST, &on, sizeof on) != 0) {
    throw std::runtime_error(std::string("SO_BROADCAST: ") + std::strerror(errno));
  }
}

void UdpSocket::join_multicast(const std::string& group) {
  ip_mreq mreq{};
  if (inet_aton(group.c_str(), &mreq.imr_multiaddr) == 0) {
    throw ValidationError("multicast", "bad group address '" + group + "'");
  }
  mreq.imr_interface.s_addr = htonl(INADDR_ANY);
  if (::setsockopt(fd_, IPPROTO_IP, IP_ADD_MEMBERSHIP, &mreq, sizeof mreq) != 0) {
    throw std::runtime_error("IP_ADD_MEMBERSHIP " + group + ": " + std::strerror(errno));
  }
}

uint16_t UdpSocket::local_port() const {
  sockaddr_in sa{};
  socklen_t len = sizeof sa;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&sa), &len) != 0) return 0;
  return ntohs(sa.sin_port);
}

bool UdpSocket::send_to(const UdpEndpoint& dest, const void* data, size_t len) {
  const sockaddr_in sa = make_sockaddr(dest);
  const ssize_t n = ::sendto(fd_, data, len, 0,
                             reinterpret_cast<const sockaddr*>(&sa), sizeof sa);
  return n == static_cast<ssize_t>(len);
}

std::optional<std::vector<char>> UdpSocket::recv(int timeout_ms) {
  pollfd pfd{fd_, POLLIN, 0};
  const int ready = ::poll(&pfd, 1, timeout_ms);
  if (ready <= 0) return std::nullopt;
  std::vector<char> buf(65536);
  const ssize_t n = ::recvfrom(fd_, buf.data(), buf.size(), 0, nullptr, nullptr);
  if (n < 0) return std::nullopt;
  buf.resize(static_cast<size_t>(n));
  return buf;
}

}  // namespace loadforge
