#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccx/comm.hpp"

namespace ccx {

// The listening process plays Alice, the connecting process plays Bob.
enum class Role { kListen, kConnect };

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 when listening picks an ephemeral port
};

// 16-bit FNV-1a fold of the canonical descriptor.
std::uint16_t protocol_id(const std::string& descriptor);

struct Handshake {
  std::uint16_t protocol = 0;
  std::uint64_t seed = 0;
  std::uint32_t n = 0;
  bool operator==(const Handshake&) const = default;
};

// "CCX1" | u16 protocol | u64 seed | u32 n, big-endian.
std::vector<std::uint8_t> encode_handshake(const Handshake& h);
Handshake decode_handshake(const std::vector<std::uint8_t>& bytes);

// u32 length of the rest | 0x01 | u16 bit count | bits MSB-first, zero padded.
std::vector<std::uint8_t> encode_frame(std::uint32_t width, std::uint64_t payload);
struct Frame {
  std::uint32_t width = 0;
  std::uint64_t payload = 0;
};
Frame decode_frame(const std::vector<std::uint8_t>& bytes);

struct RemoteOptions {
  int timeout_ms = 30000;
  // Called with the bound port once a listener is ready.
  std::function<void(std::uint16_t)> on_listening;
};

RunResult run_remote(Role role, const Endpoint& endpoint, const Protocol& protocol,
                     const BitString& local_input, std::uint64_t seed,
                     const RemoteOptions& options = {});

}  // namespace ccx
