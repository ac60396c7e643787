#include "adaptivemon/harness/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "adaptivemon/error.hpp"
#include "adaptivemon/random.hpp"

namespace adaptivemon::harness {

namespace {

constexpr std::array<std::string_view, 5> kNames = {"stable", "unstable", "stable_unstable", "random", "spiky"};

constexpr double kWalkLo = 0.5;
constexpr double kWalkHi = 0.85;
constexpr double kWalkStep = 0.05;

void alternate(std::vector<double>& out, std::size_t n) {
  for (std::size_t t = 0; t < n; ++t) out.push_back((t / 14) % 2 == 0 ? 0.8 : 0.83);
}

void walk(std::vector<double>& out, std::size_t n, double v, Rng& rng) {
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(v);
    v += rng.uniform(-kWalkStep, kWalkStep);
    if (v > kWalkHi) v = 2 * kWalkHi - v;
    if (v < kWalkLo) v = 2 * kWalkLo - v;
  }
}

}  // namespace

double Scenario::value_at(double t) const {
  if (truth.empty()) throw ConfigError("scenario has no ground truth");
  const auto i = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(truth.size() - 1)));
  return truth[i];
}

std::span<const std::string_view> scenario_names() noexcept { return kNames; }

Scenario gen_scenario(std::string_view name, std::uint64_t seed) {
  Scenario s;
  s.name = std::string(name);
  s.seed = seed;
  s.duration = 600;
  Rng rng(seed);

  if (name == "stable") {
    alternate(s.truth, 600);
  } else if (name == "unstable") {
    walk(s.truth, 600, rng.uniform(kWalkLo, kWalkHi), rng);
  } else if (name == "stable_unstable") {
    s.duration = 1200;
    for (int phase = 0; phase < 8; ++phase) {
      if (phase % 2 == 0) {
        alternate(s.truth, 150);
      } else {
        walk(s.truth, 150, s.truth.back(), rng);
      }
    }
  } else if (name == "random") {
    for (int t = 0; t < 600; ++t) s.truth.push_back(rng.uniform());
  } else if (name == "spiky") {
    for (int t = 0; t < 600; ++t) {
      const int m = t % 44;
      if (m < 28) {
        s.truth.push_back(0.3);
      } else if (m < 40) {
        s.truth.push_back(rng.uniform(0.2, 0.5));
      } else {
        s.truth.push_back(1.0);
        if (m == 40) s.spikes.push_back({static_cast<double>(t), std::min(t + 4.0, s.duration)});
      }
    }
  } else {
    throw ConfigError(fmt::format("unknown scenario '{}'", name));
  }
  return s;
}

}  // namespace adaptivemon::harness
