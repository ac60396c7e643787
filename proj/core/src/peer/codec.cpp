#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "adaptivemon/error.hpp"
#include "adaptivemon/peer/messages.hpp"

namespace adaptivemon::peer {

using nlohmann::json;

namespace {

double finite(double v, const char* field) {
  if (!std::isfinite(v)) throw Error(fmt::format("cannot encode non-finite '{}'", field));
  return v;
}

json entry_json(const GossipEntry& e) {
  return json{{"origin", e.origin}, {"indicator", e.indicator}, {"ts", finite(e.ts, "ts")},
              {"mean", finite(e.mean, "mean")}, {"var", finite(e.var, "var")}, {"n", e.n}};
}

const json& field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) throw DecodeError(fmt::format("missing field \"{}\"", name), name);
  return *it;
}

std::string get_string(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_string()) throw DecodeError(fmt::format("field \"{}\" must be a string", name), name);
  return v.get<std::string>();
}

double get_number(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number()) throw DecodeError(fmt::format("field \"{}\" must be a number", name), name);
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const char* name) {
  const json& v = field(obj, name);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
    throw DecodeError(fmt::format("field \"{}\" must be a positive integer", name), name);
  }
  return v.get<std::uint64_t>();
}

double get_variance(const json& obj) {
  const double v = get_number(obj, "var");
  if (v < 0) throw DecodeError("field \"var\" must be >= 0", "var");
  return v;
}

GossipEntry entry_from(const json& obj) {
  if (!obj.is_object()) throw DecodeError("gossip entry must be an object", "entries");
  return {get_string(obj, "origin"), get_string(obj, "indicator"), get_number(obj, "ts"),
          get_number(obj, "mean"),   get_variance(obj),            get_count(obj, "n")};
}

}  // namespace

std::string_view message_type(const Message& m) noexcept {
  static constexpr std::string_view names[] = {"register", "report", "gossip", "bye"};
  return names[m.index()];
}

std::string encode_message(const Message& m) {
  json j = std::visit(
      [](const auto& msg) -> json {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, Register>) {
          return {{"type", "register"}, {"node", msg.node}, {"role", msg.role == Role::leader ? "leader" : "follower"}};
        } else if constexpr (std::is_same_v<T, Report>) {
          if (msg.n < 1) throw Error("report n must be >= 1");
          return {{"type", "report"},        {"node", msg.node},
                  {"indicator", msg.indicator}, {"ts", finite(msg.ts, "ts")},
                  {"mean", finite(msg.mean, "mean")}, {"var", finite(msg.var, "var")},
                  {"n", msg.n}};
        } else if constexpr (std::is_same_v<T, Gossip>) {
          json entries = json::array();
          for (const auto& e : msg.entries) entries.push_back(entry_json(e));
          return {{"type", "gossip"}, {"node", msg.node}, {"entries", std::move(entries)}};
        } else {
          return {{"type", "bye"}, {"node", msg.node}};
        }
      },
      m);
  std::string out = j.dump();
  out += '\n';
  return out;
}

Message decode_message(std::string_view line) {
  if (line.empty() || line.back() != '\n') throw DecodeError("truncated message: missing newline terminator");
  line.remove_suffix(1);
  if (line.find('\n') != std::string_view::npos) throw DecodeError("message contains more than one line");

  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DecodeError(fmt::format("malformed JSON: {}", e.what()));
  }
  if (!j.is_object()) throw DecodeError("message must be a JSON object");

  // type names are matched case-insensitively; encoding always emits lowercase
  std::string type = get_string(j, "type");
  std::transform(type.begin(), type.end(), type.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (type == "register") {
    const std::string role = get_string(j, "role");
    if (role != "follower" && role != "leader") {
      throw DecodeError(fmt::format("unknown role \"{}\"", role), "role");
    }
    return Register{get_string(j, "node"), role == "leader" ? Role::leader : Role::follower};
  }
  if (type == "report") {
    return Report{get_string(j, "node"), get_string(j, "indicator"), get_number(j, "ts"),
                  get_number(j, "mean"), get_variance(j),            get_count(j, "n")};
  }
  if (type == "gossip") {
    Gossip g{get_string(j, "node"), {}};
    const json& entries = field(j, "entries");
    if (!entries.is_array()) throw DecodeError("field \"entries\" must be an array", "entries");
    g.entries.reserve(entries.size());
    for (const auto& e : entries) g.entries.push_back(entry_from(e));
    return g;
  }
  if (type == "bye") return Bye{get_string(j, "node")};
  throw DecodeError(fmt::format("unknown message type \"{}\"", type), "type");
}

void LineFramer::feed(std::string_view bytes) {
  if (pos_ > 0 && pos_ == buf_.size()) {
    buf_.clear();
    pos_ = 0;
  }
  buf_.append(bytes);
}

std::optional<std::string> LineFramer::next() {
  const auto nl = buf_.find('\n', pos_);
  if (nl == std::string::npos) {
    if (buf_.size() - pos_ > max_line_) {
      buf_.clear();
      pos_ = 0;
      throw DecodeError("line exceeds maximum length");
    }
    if (pos_ > 0) {
      buf_.erase(0, pos_);
      pos_ = 0;
    }
    return std::nullopt;
  }
  std::string line = buf_.substr(pos_, nl + 1 - pos_);
  pos_ = nl + 1;
  return line;
}

}  // namespace adaptivemon::peer
