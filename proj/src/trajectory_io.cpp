#include "logistic/trajectory_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>

#include "logistic/errors.hpp"

namespace logistic {

namespace {

constexpr std::array<char, 4> kMagic{'L', 'G', 'T', 'R'};

template <class T>
void put(std::ostream& os, T value) {
  std::uint64_t bits = 0;
  if constexpr (sizeof(T) == 8) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = std::bit_cast<std::uint32_t>(value);
  }
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw DomainError("trajectory file: truncated");
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{buf[i]} << (8 * i);
  if constexpr (sizeof(T) == 8) {
    return std::bit_cast<T>(bits);
  } else {
    return std::bit_cast<T>(static_cast<std::uint32_t>(bits));
  }
}

void append_double(std::string& out, double v) {
  char buf[32];
  out.append(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const std::string& header) {
  os << header << "time,state\n";
  std::string line;
  for (const Event& e : traj.events) {
    line.clear();
    append_double(line, e.time);
    line += ',';
    line += std::to_string(e.state);
    line += '\n';
    os << line;
  }
}

void write_trajectory_binary(std::ostream& os, const Trajectory& traj) {
  os.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(os, kTrajectoryFormatVersion);
  put<double>(os, traj.params.b);
  put<double>(os, traj.params.mu);
  put<double>(os, traj.params.gamma);
  put<std::int64_t>(os, traj.params.L);
  put<std::uint32_t>(os, traj.params.variant == Variant::Modified ? 1u : 0u);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(traj.stop_reason));
  put<double>(os, traj.end_time);
  put<std::uint64_t>(os, traj.seed);
  put<std::uint64_t>(os, traj.events.size());
  for (const Event& e : traj.events) {
    put<double>(os, e.time);
    put<std::int64_t>(os, e.state);
  }
}

Trajectory read_trajectory_binary(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DomainError("trajectory file: bad magic");
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kTrajectoryFormatVersion) {
    throw DomainError("trajectory file: unsupported version " + std::to_string(version));
  }
  Trajectory traj;
  traj.params.b = get<double>(is);
  traj.params.mu = get<double>(is);
  traj.params.gamma = get<double>(is);
  traj.params.L = get<std::int64_t>(is);
  traj.params.variant = get<std::uint32_t>(is) == 1 ? Variant::Modified : Variant::Unmodified;
  const auto reason = get<std::uint32_t>(is);
  if (reason > 2) throw DomainError("trajectory file: bad stop reason");
  traj.stop_reason = static_cast<StopReason>(reason);
  traj.end_time = get<double>(is);
  traj.seed = get<std::uint64_t>(is);
  const auto n = get<std::uint64_t>(is);
  traj.events.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 20)));
  for (std::uint64_t i = 0; i < n; ++i) {
    const double t = get<double>(is);
    traj.events.push_back({t, get<std::int64_t>(is)});
  }
  if (traj.stop_reason == StopReason::HitTarget && !traj.events.empty()) {
    traj.hit_state = traj.events.back().state;
  }
  return traj;
}

}  // namespace logistic
