#include "adaptivemon/peer/probes.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace adaptivemon::peer {

namespace fs = std::filesystem;

namespace {

std::string first_token(const fs::path& path) {
  std::ifstream in(path);
  std::string tok;
  if (!in || !(in >> tok)) throw ProbeError(fmt::format("cannot read {}", path.string()));
  return tok;
}

double to_double(const std::string& tok, const fs::path& path) {
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ProbeError(fmt::format("{}: '{}' is not a number", path.string(), tok));
  }
  return v;
}

}  // namespace

Probe file_probe(fs::path path, IndicatorKind kind) {
  return [path = std::move(path), kind](double) -> Value {
    std::string tok = first_token(path);
    if (kind == IndicatorKind::categorical) return tok;
    return to_double(tok, path);
  };
}

Probe cpu_probe(fs::path proc_stat) {
  struct Totals {
    unsigned long long busy = 0, total = 0;
  };
  auto prev = std::make_shared<Totals>();
  return [proc_stat = std::move(proc_stat), prev](double) -> Value {
    std::ifstream in(proc_stat);
    std::string label;
    if (!in || !(in >> label) || label != "cpu") throw ProbeError("cannot parse " + proc_stat.string());
    std::vector<unsigned long long> f;
    unsigned long long x;
    while (f.size() < 8 && in >> x) f.push_back(x);
    if (f.size() < 4) throw ProbeError("cannot parse " + proc_stat.string());
    unsigned long long total = 0;
    for (auto v : f) total += v;
    const unsigned long long idle = f[3] + (f.size() > 4 ? f[4] : 0);
    Totals now{total - idle, total};
    const double dt = static_cast<double>(now.total - prev->total);
    const double db = static_cast<double>(now.busy - prev->busy);
    *prev = now;
    return dt > 0 ? db / dt : 0.0;
  };
}

Probe mem_probe(fs::path meminfo) {
  return [meminfo = std::move(meminfo)](double) -> Value {
    std::ifstream in(meminfo);
    std::string key;
    double total = -1, avail = -1, v;
    std::string unit;
    while (in >> key >> v) {
      std::getline(in, unit);
      if (key == "MemTotal:") total = v;
      if (key == "MemAvailable:") avail = v;
    }
    if (!(total > 0) || avail < 0) throw ProbeError("cannot parse " + meminfo.string());
    return 1.0 - avail / total;
  };
}

Probe power_probe(fs::path supply_dir) {
  return [supply_dir = std::move(supply_dir)](double) -> Value {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(supply_dir, ec)) {
      if (!entry.path().filename().string().starts_with("BAT")) continue;
      const auto cap = entry.path() / "capacity";
      return to_double(first_token(cap), cap) / 100.0;
    }
    throw ProbeError("no battery found under " + supply_dir.string());
  };
}

Probe make_probe(const IndicatorSpec& spec) {
  if (spec.source) return file_probe(*spec.source, spec.indicator.kind);
  const auto& name = spec.indicator.name;
  if (name == "cpu") return cpu_probe();
  if (name == "mem") return mem_probe();
  if (name == "power") return power_probe();
  throw ConfigError(fmt::format("indicator '{}' has no built-in probe; set \"source\"", name));
}

}  // namespace adaptivemon::peer
