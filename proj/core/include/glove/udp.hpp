// Copyright 2026 The Glove Twin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOVE_UDP_HPP_
#define GLOVE_UDP_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glove::net {

/// Thin RAII wrapper over a POSIX IPv4 datagram socket.
class UdpSocket {
 public:
  UdpSocket();
  ~UdpSocket();
  UdpSocket(UdpSocket&& other) noexcept;
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;

  /// Binds to host:port; port 0 picks an ephemeral port. Throws NetworkError.
  void bind(const std::string& host, std::uint16_t port);
  /// Fixes the destination for send(). Throws NetworkError.
  void connect(const std::string& host, std::uint16_t port);

  std::uint16_t local_port() const;

  /// False when the kernel refused the datagram.
  bool send(std::span<const std::uint8_t> payload);

  /// Waits up to `timeout` for one datagram.
  std::optional<std::vector<std::uint8_t>> receive(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
};

}  // namespace glove::net

#endif  // GLOVE_UDP_HPP_
