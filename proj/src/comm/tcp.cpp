#include "ccx/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "ccx/errors.hpp"

namespace ccx {

namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'C', 'X', '1'};
constexpr std::uint8_t kClassicalFrame = 0x01;
constexpr std::size_t kHandshakeSize = 4 + 2 + 8 + 4;

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(const std::uint8_t* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | p[i];
  return v;
}

class Socket {
 public:
  explicit Socket(int fd = -1) : fd_(fd) {}
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
  Socket& operator=(Socket&& o) noexcept {
    if (this != &o) {
      if (fd_ >= 0) ::close(fd_);
      fd_ = o.fd_;
      o.fd_ = -1;
    }
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  int fd() const { return fd_; }

 private:
  int fd_;
};

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

void wait_ready(int fd, short events, int timeout_ms) {
  pollfd p{fd, events, 0};
  int rc;
  do {
    rc = ::poll(&p, 1, timeout_ms);
  } while (rc < 0 && errno == EINTR);
  if (rc < 0) throw TransportError(errno_text("poll"));
  if (rc == 0) throw TransportError("timed out waiting for peer");
}

void write_all(int fd, const std::vector<std::uint8_t>& bytes, int timeout_ms) {
  std::size_t off = 0;
  while (off < bytes.size()) {
    wait_ready(fd, POLLOUT, timeout_ms);
    ssize_t n = ::send(fd, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportError(errno_text("send"));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::vector<std::uint8_t> read_exact(int fd, std::size_t count, int timeout_ms) {
  std::vector<std::uint8_t> buf(count);
  std::size_t off = 0;
  while (off < count) {
    wait_ready(fd, POLLIN, timeout_ms);
    ssize_t n = ::recv(fd, buf.data() + off, count - off, 0);
    if (n == 0) throw TransportError("connection closed by peer");
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportError(errno_text("recv"));
    }
    off += static_cast<std::size_t>(n);
  }
  return buf;
}

class TcpTransport : public Transport {
 public:
  TcpTransport(int fd, Party local, int timeout_ms) : fd_(fd), local_(local), timeout_ms_(timeout_ms) {}

  std::uint64_t carry(Party from, std::uint32_t width, const Producer& produce) override {
    if (from == local_) {
      std::uint64_t payload = produce();
      write_all(fd_, encode_frame(width, payload), timeout_ms_);
      return payload;
    }
    auto header = read_exact(fd_, 4, timeout_ms_);
    const auto length = static_cast<std::uint32_t>(get_be(header.data(), 4));
    if (length < 3 || length > 3 + 8) throw TransportError("malformed frame length " + std::to_string(length));
    auto body = read_exact(fd_, length, timeout_ms_);
    header.insert(header.end(), body.begin(), body.end());
    Frame f = decode_frame(header);
    if (f.width != width) {
      throw TransportError("expected a " + std::to_string(width) + "-bit message, peer sent " +
                           std::to_string(f.width) + " bits");
    }
    return f.payload;
  }

  bool carries_quantum() const override { return false; }

 private:
  int fd_;
  Party local_;
  int timeout_ms_;
};

Socket listen_and_accept(const Endpoint& ep, const RemoteOptions& opt) {
  Socket server(::socket(AF_INET, SOCK_STREAM, 0));
  if (server.fd() < 0) throw TransportError(errno_text("socket"));
  int one = 1;
  ::setsockopt(server.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(ep.port);
  if (::inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) != 1) {
    throw TransportError("listen address must be an IPv4 literal, got '" + ep.host + "'");
  }
  if (::bind(server.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    throw TransportError(errno_text("bind"));
  }
  if (::listen(server.fd(), 1) < 0) throw TransportError(errno_text("listen"));
  socklen_t len = sizeof(addr);
  ::getsockname(server.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
  if (opt.on_listening) opt.on_listening(ntohs(addr.sin_port));
  wait_ready(server.fd(), POLLIN, opt.timeout_ms);
  Socket peer(::accept(server.fd(), nullptr, nullptr));
  if (peer.fd() < 0) throw TransportError(errno_text("accept"));
  return peer;
}

Socket connect_to(const Endpoint& ep, const RemoteOptions& opt) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(ep.port);
  if (int rc = ::getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &res); rc != 0) {
    throw TransportError("cannot resolve '" + ep.host + "': " + gai_strerror(rc));
  }
  Socket s(::socket(AF_INET, SOCK_STREAM, 0));
  int rc = s.fd() < 0 ? -1 : ::connect(s.fd(), res->ai_addr, res->ai_addrlen);
  ::freeaddrinfo(res);
  if (rc < 0) throw TransportError(errno_text("connect"));
  (void)opt;
  return s;
}

}  // namespace

std::uint16_t protocol_id(const std::string& descriptor) {
  std::uint32_t h = 2166136261U;
  for (unsigned char ch : descriptor) {
    h ^= ch;
    h *= 16777619U;
  }
  return static_cast<std::uint16_t>((h >> 16) ^ (h & 0xffffU));
}

std::vector<std::uint8_t> encode_handshake(const Handshake& h) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_be(out, h.protocol, 2);
  put_be(out, h.seed, 8);
  put_be(out, h.n, 4);
  return out;
}

Handshake decode_handshake(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() != kHandshakeSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw HandshakeError("peer did not send a CCX1 handshake");
  }
  Handshake h;
  h.protocol = static_cast<std::uint16_t>(get_be(bytes.data() + 4, 2));
  h.seed = get_be(bytes.data() + 6, 8);
  h.n = static_cast<std::uint32_t>(get_be(bytes.data() + 14, 4));
  return h;
}

std::vector<std::uint8_t> encode_frame(std::uint32_t width, std::uint64_t payload) {
  if (width == 0 || width > 64) throw InvariantError("frame width must be in [1, 64]");
  const std::uint32_t data_bytes = (width + 7) / 8;
  std::vector<std::uint8_t> out;
  put_be(out, 1 + 2 + data_bytes, 4);
  out.push_back(kClassicalFrame);
  put_be(out, width, 2);
  // Bit width-1 of the payload goes first; pad on the right.
  const std::uint64_t shifted = payload << (data_bytes * 8 - width);
  put_be(out, shifted, static_cast<int>(data_bytes));
  return out;
}

Frame decode_frame(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 7) throw TransportError("truncated frame");
  const auto length = static_cast<std::uint32_t>(get_be(bytes.data(), 4));
  if (length + 4 != bytes.size()) throw TransportError("frame length field does not match frame size");
  if (bytes[4] != kClassicalFrame) {
    throw TransportError("unsupported frame kind " + std::to_string(bytes[4]));
  }
  Frame f;
  f.width = static_cast<std::uint32_t>(get_be(bytes.data() + 5, 2));
  const std::uint32_t data_bytes = (f.width + 7) / 8;
  if (f.width == 0 || f.width > 64 || length != 3 + data_bytes) {
    throw TransportError("frame bit count " + std::to_string(f.width) + " is inconsistent");
  }
  const std::uint64_t raw = get_be(bytes.data() + 7, static_cast<int>(data_bytes));
  const std::uint32_t pad = data_bytes * 8 - f.width;
  if (pad && (raw & ((std::uint64_t{1} << pad) - 1))) throw TransportError("nonzero frame padding");
  f.payload = raw >> pad;
  return f;
}

RunResult run_remote(Role role, const Endpoint& endpoint, const Protocol& protocol,
                     const BitString& local_input, std::uint64_t seed,
                     const RemoteOptions& options) {
  if (protocol.uses_quantum()) {
    throw TransportError("quantum registers cannot traverse the TCP transport");
  }
  const Party local = role == Role::kListen ? Party::kAlice : Party::kBob;
  PartyInputs inputs;
  inputs.n = protocol.input_length();
  if (local == Party::kAlice) {
    inputs.x = local_input;
  } else {
    inputs.y = local_input;
  }
  check_lengths(protocol, inputs);
  protocol.check_inputs(inputs);

  Socket sock = role == Role::kListen ? listen_and_accept(endpoint, options)
                                      : connect_to(endpoint, options);
  int one = 1;
  ::setsockopt(sock.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));

  const Handshake mine{protocol_id(protocol.descriptor()), seed,
                       static_cast<std::uint32_t>(protocol.input_length())};
  write_all(sock.fd(), encode_handshake(mine), options.timeout_ms);
  const Handshake theirs = decode_handshake(read_exact(sock.fd(), kHandshakeSize, options.timeout_ms));
  if (theirs.protocol != mine.protocol) {
    throw HandshakeError("peer runs a different protocol (id " + std::to_string(theirs.protocol) +
                         ", ours " + std::to_string(mine.protocol) + ")");
  }
  if (theirs.seed != mine.seed) throw HandshakeError("peer uses a different seed");
  if (theirs.n != mine.n) throw HandshakeError("peer uses a different input length");

  TcpTransport transport(sock.fd(), local, options.timeout_ms);
  return run_with_transport(protocol, transport, inputs, seed);
}

}  // namespace ccx
