#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adaptivemon::peer {

enum class Role { follower, leader };

struct Register {
  std::string node;
  Role role = Role::follower;

  bool operator==(const Register&) const = default;
};

/// Aggregated window of one indicator, Follower to Leader.
struct Report {
  std::string node;
  std::string indicator;
  double ts = 0.0;
  double mean = 0.0;
  double var = 0.0;
  std::uint64_t n = 1;

  bool operator==(const Report&) const = default;
};

struct GossipEntry {
  std::string origin;
  std::string indicator;
  double ts = 0.0;
  double mean = 0.0;
  double var = 0.0;
  std::uint64_t n = 1;

  bool operator==(const GossipEntry&) const = default;
};

struct Gossip {
  std::string node;
  std::vector<GossipEntry> entries;

  bool operator==(const Gossip&) const = default;
};

struct Bye {
  std::string node;

  bool operator==(const Bye&) const = default;
};

using Message = std::variant<Register, Report, Gossip, Bye>;

std::string_view message_type(const Message& m) noexcept;

/// One JSON object followed by a single '\n'. Doubles keep full precision.
/// Throws adaptivemon::Error for non-finite numbers.
std::string encode_message(const Message& m);

/// Decodes one line as produced by encode_message, including its newline.
/// Throws DecodeError naming the offending field.
Message decode_message(std::string_view line);

/// Splits a byte stream into newline-terminated lines.
class LineFramer {
 public:
  explicit LineFramer(std::size_t max_line = 1 << 20) : max_line_(max_line) {}

  void feed(std::string_view bytes);

  /// Next complete line including its '\n', if any. Throws DecodeError when a
  /// line grows past the size limit.
  std::optional<std::string> next();

  std::size_t buffered() const noexcept { return buf_.size() - pos_; }

 private:
  std::string buf_;
  std::size_t pos_ = 0;
  std::size_t max_line_;
};

}  // namespace adaptivemon::peer
