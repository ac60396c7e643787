#pragma once

#include <filesystem>
#include <string>

#include "adaptivemon/error.hpp"
#include "adaptivemon/peer/config.hpp"
#include "adaptivemon/peer/follower.hpp"

namespace adaptivemon::peer {

class ProbeError : public Error {
 public:
  using Error::Error;
};

/// Reads the first whitespace-delimited token of `path` on every call,
/// as a number or a token depending on `kind`.
Probe file_probe(std::filesystem::path path, IndicatorKind kind);

/// CPU utilisation in [0, 1] from /proc/stat, measured between calls.
Probe cpu_probe(std::filesystem::path proc_stat = "/proc/stat");

/// Used memory fraction from /proc/meminfo (1 - MemAvailable / MemTotal).
Probe mem_probe(std::filesystem::path meminfo = "/proc/meminfo");

/// Battery charge in [0, 1] from the first /sys/class/power_supply/BAT*.
Probe power_probe(std::filesystem::path supply_dir = "/sys/class/power_supply");

/// `spec.source` when set, otherwise the built-in probe named like the
/// indicator (cpu, mem, power). Throws ConfigError when neither applies.
Probe make_probe(const IndicatorSpec& spec);

}  // namespace adaptivemon::peer
